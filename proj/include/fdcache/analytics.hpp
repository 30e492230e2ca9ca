// Copyright 2026 The fdcache Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

#include "fdcache/catalog.hpp"
#include "fdcache/channel.hpp"
#include "fdcache/quadrature.hpp"

namespace fdcache {

/// Storage size and geographic request/cache radii of every small cell.
struct CacheModel {
    std::size_t storage = 0;       ///< S, files
    double request_radius = 8.0;   ///< R_R, m
    double cache_radius = 40.0;    ///< R_C, m

    /// S = round(kappa * file_count).
    static CacheModel from_ratio(double kappa, std::size_t file_count,
                                 double request_radius = 8.0, double cache_radius = 40.0);

    double kappa(std::size_t file_count) const noexcept {
        return static_cast<double>(storage) / static_cast<double>(file_count);
    }

    void validate(const FileCatalog& catalog) const;
};

/// Cache hit probability under the geographic request/caching model:
/// (1/F) * sum_{i<=S} (1 - e^{-p_i eta pi R_R^2}) (1 - e^{-p_i eta pi R_C^2}).
double cache_hit_probability(const FileCatalog& catalog, const CacheModel& cache);

/// Closed-form radial kernel pi (s rho_DL)^{2/alpha1} csc(2pi/alpha1) / alpha1.
double upsilon_hat(double s, const NetworkParams& params);

/// 1 - omega(s, r): the probability-weighted loss caused by an uplink
/// interferer at distance `ul_distance` from an SC that is `r` away from the
/// receiver. Computed directly so it keeps full relative accuracy for large r.
double omega_complement(double s, double r, const NetworkParams& params,
                        const QuadratureSettings& settings = {},
                        LinkKind uplink = LinkKind::UlToDl);

/// Angular average of 1 / (1 + s rho_UL d(phi)^-alpha), with
/// d(phi)^2 = R_UL^2 + r^2 + 2 R_UL r cos(phi) and alpha the exponent of
/// `uplink` (UL->DL by default).
double omega(double s, double r, const NetworkParams& params,
             const QuadratureSettings& settings = {}, LinkKind uplink = LinkKind::UlToDl);

/// Radial kernel of cache-missing interferers,
/// integral_0^inf (1 - omega(s, r) / (1 + s rho_DL r^-alpha1)) r dr.
double upsilon_tilde(double s, const NetworkParams& params,
                     const QuadratureSettings& settings = {},
                     LinkKind uplink = LinkKind::UlToDl);

/**
 * Laplace transform of the interference from the other small cells and their
 * active uplink nodes:
 * exp(-2 pi lambda p_hit upsilon_hat(s)) * exp(-2 pi lambda (1 - p_hit) upsilon_tilde(s)).
 *
 * `uplink` is the link kind from an interfering UL node to the receiver:
 * UlToDl for the DL node (default), UlToSc when the receiver is the SC.
 */
double laplace_hit(double s, double p_hit, const NetworkParams& params,
                   const QuadratureSettings& settings = {},
                   LinkKind uplink = LinkKind::UlToDl);

/// Interference at the typical SC on a cache miss: the residual
/// self-interference factor (1 + s rho_DL b)^-a times the network term seen
/// by an SC receiver.
double laplace_miss_sc(double s, double p_hit, const NetworkParams& params,
                       const QuadratureSettings& settings = {});

/// Interference at the typical DL node on a cache miss: omega(s, R_DL) for
/// its own SC's uplink node times laplace_hit.
double laplace_miss_dl(double s, double p_hit, const NetworkParams& params,
                       const QuadratureSettings& settings = {});

/// Lower bound on the success probability at linear SIR threshold `theta`;
/// exact when UL and DL interferer locations are uncorrelated.
double success_probability_lb(double theta, double p_hit, const NetworkParams& params,
                              const QuadratureSettings& settings = {});

/// Full-duplex throughput gain against the cache-free half-duplex network.
double throughput_gain(double theta, double p_suc, const NetworkParams& params);

/// lambda * p_suc * log2(1 + theta), bits/s/Hz/m^2.
double area_spectral_efficiency(double theta, double p_suc, double sc_density);

/// Laplace evaluation points for the two hops at linear threshold `theta`.
struct HopArguments {
    double sc;  ///< theta rho_UL^-1 R_UL^alpha1
    double dl;  ///< theta rho_DL^-1 R_DL^alpha1
};
HopArguments hop_arguments(double theta, const NetworkParams& params);

struct AnalyticResult {
    double p_hit = 0.0;
    double p_suc_lb = 0.0;
    double laplace_hit = 1.0;      ///< at the DL hop argument
    double laplace_miss_sc = 1.0;  ///< at the SC hop argument
    double laplace_miss_dl = 1.0;  ///< at the DL hop argument
    double tg_fd = 0.0;
    double ase = 0.0;
};

/// All analytic quantities for one operating point.
AnalyticResult evaluate_analytic(double theta, const FileCatalog& catalog, const CacheModel& cache,
                                 const NetworkParams& params,
                                 const QuadratureSettings& settings = {});

/// Linear threshold from dB.
double db_to_linear(double db) noexcept;

}  // namespace fdcache
