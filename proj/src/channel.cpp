// Copyright 2026 The fdcache Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdcache/channel.hpp"

#include <cmath>
#include <random>
#include <string>

#include "fdcache/errors.hpp"

namespace fdcache {

namespace {

void require(bool ok, const char* field, const std::string& rule) {
    if (!ok) {
        throw InvalidArgument(std::string("NetworkParams.") + field + ": " + rule);
    }
}

}  // namespace

GammaParams rician_gamma_params(double k_factor, double si_attenuation_db) {
    if (!(k_factor >= 0.0) || !std::isfinite(k_factor)) {
        throw InvalidArgument("rician_gamma_params: K-factor must be finite and >= 0");
    }
    if (!(si_attenuation_db >= 0.0)) {
        throw InvalidArgument("rician_gamma_params: SI attenuation must be >= 0 dB");
    }
    const double mean = std::pow(10.0, -si_attenuation_db / 10.0);
    const double shape = (k_factor + 1.0) * (k_factor + 1.0) / (2.0 * k_factor + 1.0);
    return {shape, mean / shape};
}

void NetworkParams::validate() const {
    require(std::isfinite(sc_density) && sc_density >= 0.0, "sc_density", "must be >= 0");
    require(std::isfinite(ul_distance) && ul_distance > 0.0, "ul_distance", "must be > 0");
    require(std::isfinite(dl_distance) && dl_distance > 0.0, "dl_distance", "must be > 0");
    require(std::isfinite(ul_power) && ul_power >= 0.0, "ul_power", "must be >= 0");
    require(std::isfinite(dl_power) && dl_power > 0.0, "dl_power", "must be > 0");
    // Exponents within 1e-6 of 2 make csc(2pi/alpha) numerically degenerate.
    require(std::isfinite(alpha1) && alpha1 > 2.0 + 1e-6, "alpha1", "must be > 2");
    require(std::isfinite(alpha2) && alpha2 >= alpha1, "alpha2", "must be >= alpha1");
    require(std::isfinite(rician_k) && rician_k >= 0.0, "rician_k", "must be >= 0");
    require(si_attenuation_db >= 0.0, "si_attenuation_db", "must be >= 0 dB");
}

double pathloss(LinkKind kind, double distance, const NetworkParams& params) {
    if (kind == LinkKind::Self) {
        throw InvalidArgument("pathloss: self link has no distance");
    }
    if (!(distance > 0.0)) {
        throw InvalidArgument("pathloss: distance must be > 0");
    }
    return std::pow(distance, -params.exponent(kind));
}

double sample_rayleigh_power(RandomStream& rng) { return rng.exponential(); }

double sample_si_power(GammaParams gamma, RandomStream& rng) {
    if (gamma.scale == 0.0) {
        return 0.0;
    }
    std::gamma_distribution<double> dist(gamma.shape, gamma.scale);
    return dist(rng);
}

double sample_si_power(const NetworkParams& params, RandomStream& rng) {
    return sample_si_power(params.si_gamma(), rng);
}

}  // namespace fdcache
