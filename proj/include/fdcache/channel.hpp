// Copyright 2026 The fdcache Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fdcache/random.hpp"

namespace fdcache {

/// Ordered link type; selects the pathloss exponent.
enum class LinkKind { ScToSc, ScToDl, UlToSc, UlToDl, Self };

/// Gamma law (shape, scale) fitted to the self-interference power.
struct GammaParams {
    double shape = 1.0;
    double scale = 0.0;
};

/**
 * Two-moment Gamma fit of a squared Rician envelope with mean
 * 10^(-si_attenuation_db / 10): shape (K+1)^2 / (2K+1), scale = mean / shape.
 *
 * An infinite attenuation yields scale 0 (perfect cancellation).
 */
GammaParams rician_gamma_params(double k_factor, double si_attenuation_db);

/**
 * Physical constants of the network. Defaults reproduce the reference
 * scenario (SC density 1e-4 /m^2).
 *
 * The self-interference Gamma law is always derived from (rician_k,
 * si_attenuation_db) through si_gamma(), so the two can never disagree.
 */
struct NetworkParams {
    double sc_density = 1e-4;       ///< SCs per m^2
    double ul_distance = 20.0;      ///< m
    double dl_distance = 5.0;       ///< m
    double ul_power = 1.0;          ///< W
    double dl_power = 0.2;          ///< W
    double alpha1 = 3.0;
    double alpha2 = 4.0;            ///< UL -> DL links only
    double rician_k = 1.0;
    double si_attenuation_db = 80.0;

    /// Throws InvalidArgument naming the first offending field.
    void validate() const;

    double exponent(LinkKind kind) const noexcept {
        return kind == LinkKind::UlToDl ? alpha2 : alpha1;
    }

    GammaParams si_gamma() const { return rician_gamma_params(rician_k, si_attenuation_db); }
};

/// distance^-alpha for the exponent of `kind`. Throws for distance <= 0 or kind == Self.
double pathloss(LinkKind kind, double distance, const NetworkParams& params);

/// Unit-mean exponential (chi-square with two degrees of freedom, normalized).
double sample_rayleigh_power(RandomStream& rng);

/// Gamma(shape, scale) self-interference power gain.
double sample_si_power(const NetworkParams& params, RandomStream& rng);
double sample_si_power(GammaParams gamma, RandomStream& rng);

}  // namespace fdcache
