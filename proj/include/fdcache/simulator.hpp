// Copyright 2026 The fdcache Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "fdcache/analytics.hpp"
#include "fdcache/catalog.hpp"
#include "fdcache/channel.hpp"
#include "fdcache/geometry.hpp"
#include "fdcache/random.hpp"

namespace fdcache {

/// Whether the two hops of a cache miss see the same interferers.
enum class Correlation {
    correlated,    ///< one realization shared by both SIR evaluations
    uncorrelated,  ///< interferers redrawn between the SC and DL evaluations
};

/// How interferer cache states are drawn.
enum class CacheMode {
    thinned,     ///< i.i.d. Bernoulli(1 - P_hit) flags
    geographic,  ///< per-cell caching policy on one shared file field
};

/// File fields used by estimate_cache_hit.
enum class RegionSampling {
    independent,  ///< request and cache regions see independent fields
    shared,       ///< both regions query one field
};

/// Treatment of interferers beyond the sampling window.
enum class FarField {
    compensate,  ///< account for the tail through its Campbell mean
    truncate,    ///< ignore everything outside the window
};

struct SimConfig {
    NetworkParams params;
    FileCatalog catalog{100, 0.7, 1.0};
    CacheModel cache{35, 8.0, 40.0};
    double theta = 1.0;  ///< linear SIR threshold
    std::size_t trials = 10000;
    double window_radius = 2000.0;  ///< m, disc around the typical SC
    Correlation mode = Correlation::correlated;
    CacheMode cache_mode = CacheMode::thinned;
    RegionSampling regions = RegionSampling::independent;
    FarField far_field = FarField::compensate;
    std::uint64_t seed = 1;
    unsigned workers = 1;

    void validate() const;
};

struct EstimateWithCI {
    double mean = 0.0;
    double half_width_95 = 0.0;
    std::size_t trials = 0;

    /// Frequency estimate with the normal-approximation 95% half-width
    /// 1.96 * sqrt(mean (1 - mean) / trials).
    static EstimateWithCI from_bernoulli(std::size_t successes, std::size_t trials);
};

struct Interferer {
    MarkedTriple node;
    bool cache_miss = false;
};

/// One sampled network seen from the typical SC at the origin.
struct NetworkRealization {
    MarkedTriple typical;
    std::vector<Interferer> interferers;
    double window_radius = 0.0;
};

/// Fading gains drawn from a random stream.
class RandomFading {
  public:
    RandomFading(RandomStream& rng, GammaParams si) : rng_(&rng), si_(si) {}

    double rayleigh() { return sample_rayleigh_power(*rng_); }
    double self_interference() { return sample_si_power(si_, *rng_); }

  private:
    RandomStream* rng_;
    GammaParams si_;
};

namespace detail {

/// d2^(-alpha/2) with exact fast paths for the common integer exponents.
inline double inverse_power(double d2, double alpha) noexcept {
    if (alpha == 4.0) {
        return 1.0 / (d2 * d2);
    }
    if (alpha == 3.0) {
        return 1.0 / (d2 * std::sqrt(d2));
    }
    return std::pow(d2, -0.5 * alpha);
}

/// Received interference power from one interfering SC and, if it misses,
/// its UL node. One Rayleigh draw per active transmitter, SC first.
template <class Fading>
double interferer_power(const Interferer& y, Point2D receiver, double ul_alpha,
                        const NetworkParams& p, Fading& fading) {
    double power = p.dl_power * inverse_power(distance_squared(y.node.sc, receiver), p.alpha1) *
                   fading.rayleigh();
    if (y.cache_miss) {
        power += p.ul_power * inverse_power(distance_squared(y.node.ul, receiver), ul_alpha) *
                 fading.rayleigh();
    }
    return power;
}

inline double ratio_or_infinite(double signal, double interference) noexcept {
    return interference > 0.0 ? signal / interference : std::numeric_limits<double>::infinity();
}

}  // namespace detail

/**
 * SIR of the backhaul hop at the typical SC.
 *
 * Signal rho_UL R_UL^-alpha1 h; interference from every other SC (rho_DL,
 * alpha1), from UL nodes of cache-missing SCs (rho_UL, alpha1), and the
 * self-interference rho_DL h_xx when `typical_miss`. Fading draw order:
 * signal, interferers in list order, self-interference. Returns +inf when
 * the interference is exactly zero.
 */
template <class Fading>
double sir_at_typical_sc(const NetworkRealization& net, bool typical_miss,
                         const NetworkParams& params, Fading& fading) {
    const double signal = params.ul_power *
                          std::pow(params.ul_distance, -params.alpha1) * fading.rayleigh();
    double interference = 0.0;
    for (const Interferer& y : net.interferers) {
        interference +=
            detail::interferer_power(y, net.typical.sc, params.alpha1, params, fading);
    }
    if (typical_miss) {
        interference += params.dl_power * fading.self_interference();
    }
    return detail::ratio_or_infinite(signal, interference);
}

/**
 * SIR of the downlink hop at the typical DL node d(x).
 *
 * Interference is measured at d(x): other SCs (rho_DL, alpha1), UL nodes of
 * cache-missing SCs (rho_UL, alpha2) and, when `typical_miss`, the typical
 * UL node (rho_UL, alpha2). Fading draw order: signal, interferers,
 * own UL node.
 */
template <class Fading>
double sir_at_typical_dl(const NetworkRealization& net, bool typical_miss,
                         const NetworkParams& params, Fading& fading) {
    const double signal = params.dl_power *
                          std::pow(params.dl_distance, -params.alpha1) * fading.rayleigh();
    double interference = 0.0;
    for (const Interferer& y : net.interferers) {
        interference +=
            detail::interferer_power(y, net.typical.dl, params.alpha2, params, fading);
    }
    if (typical_miss) {
        interference += params.ul_power *
                        detail::inverse_power(distance_squared(net.typical.ul, net.typical.dl),
                                              params.alpha2) *
                        fading.rayleigh();
    }
    return detail::ratio_or_infinite(signal, interference);
}

double sir_at_typical_sc(const NetworkRealization& net, bool typical_miss,
                         const NetworkParams& params, RandomStream& rng);
double sir_at_typical_dl(const NetworkRealization& net, bool typical_miss,
                         const NetworkParams& params, RandomStream& rng);

/// Typical triple at the origin plus PPP(lambda) interferers in the window,
/// each with isotropic marks and a cache-miss flag (Bernoulli(1 - p_hit) in
/// thinned mode, per-cell caching policy in geographic mode).
NetworkRealization realize_network(const SimConfig& config, double p_hit, RandomStream& rng);

/// Empirical cache hit probability: uniform request, file presence in the
/// request ball around d(x) and in the cache ball around x.
EstimateWithCI estimate_cache_hit(const SimConfig& config, const RandomStream& root);
EstimateWithCI estimate_cache_hit(const SimConfig& config);

/// Empirical success probability of the cache-aided full-duplex link.
EstimateWithCI estimate_success(const SimConfig& config, const RandomStream& root);
EstimateWithCI estimate_success(const SimConfig& config);

/// estimate_success mapped through throughput_gain, CI scaled alike.
EstimateWithCI estimate_throughput_gain(const SimConfig& config, const RandomStream& root);
EstimateWithCI estimate_throughput_gain(const SimConfig& config);

/// Exponent of the far-field success factor: expected s-weighted interference
/// from interferers beyond `window_radius` at one receiver (Campbell mean),
/// with `miss_fraction` of them carrying an active UL node.
double far_field_exponent(double s, double window_radius, double miss_fraction, double ul_alpha,
                          const NetworkParams& params);

}  // namespace fdcache
