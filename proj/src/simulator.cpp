// Copyright 2026 The fdcache Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdcache/simulator.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <thread>

#include "fdcache/errors.hpp"

namespace fdcache {

namespace {

constexpr double kPi = std::numbers::pi;

// Child-stream tags of one trial.
constexpr std::uint64_t kTypicalStream = 0;
constexpr std::uint64_t kFileFieldStream = 1;
constexpr std::uint64_t kRealizationStream = 16;  // + realization index
constexpr std::uint64_t kFadingStream = 64;       // + 2 * realization + hop

enum Hop : std::uint64_t { kScHop = 0, kDlHop = 1 };

RandomStream fading_stream(const RandomStream& trial, std::uint64_t realization, Hop hop) {
    return trial.split(kFadingStream + 2 * realization + hop);
}

std::size_t uniform_file(const FileCatalog& catalog, RandomStream& rng) {
    const auto n = catalog.file_count();
    return std::min<std::size_t>(static_cast<std::size_t>(rng.uniform() * static_cast<double>(n)),
                                 n - 1) + 1;
}

// Cache hit under the geographic policy: file requested from the DL node's
// request region and present in the SC's cache region, within storage S.
bool geographic_hit(const TiledFileField& field, const CacheModel& cache, std::size_t file,
                    const MarkedTriple& triple) {
    return file <= cache.storage &&
           field.any_in_ball(triple.dl, cache.request_radius, file) &&
           field.any_in_ball(triple.sc, cache.cache_radius, file);
}

/// Streams interferers outward from the typical SC. Each interferer consumes a
/// fixed number of draws so a wider window extends, never perturbs, a smaller one.
class InterfererSource {
  public:
    /// With `full_marks` false, marks that cannot transmit (every DL node, and
    /// the UL node of a hitting SC in thinned mode) are left at the SC position;
    /// their draws are still consumed.
    InterfererSource(const SimConfig& config, double miss_fraction, RandomStream rng,
                     const TiledFileField* field, bool full_marks = true)
        : config_(&config),
          miss_fraction_(miss_fraction),
          rng_(rng),
          sampler_(config.params.sc_density, Point2D{}, config.window_radius),
          field_(field),
          full_marks_(full_marks || field != nullptr) {}

    std::optional<Interferer> next() {
        const auto sc = sampler_.next(rng_);
        if (!sc) {
            return std::nullopt;
        }
        const NetworkParams& p = config_->params;
        Interferer y;
        y.node.sc = *sc;
        if (!full_marks_) {
            const double u_ul = rng_.uniform();
            rng_.uniform();
            y.node.dl = *sc;
            y.cache_miss = rng_.uniform() < miss_fraction_;
            if (y.cache_miss) {
                const Point2D dir = unit_direction(u_ul);
                y.node.ul = {sc->x + p.ul_distance * dir.x, sc->y + p.ul_distance * dir.y};
            } else {
                y.node.ul = *sc;
            }
            return y;
        }
        y.node.ul = isotropic_offset(*sc, p.ul_distance, rng_);
        y.node.dl = isotropic_offset(*sc, p.dl_distance, rng_);
        if (field_ == nullptr) {
            y.cache_miss = rng_.uniform() < miss_fraction_;
        } else {
            const std::size_t file = uniform_file(config_->catalog, rng_);
            y.cache_miss = !geographic_hit(*field_, config_->cache, file, y.node);
        }
        return y;
    }

  private:
    const SimConfig* config_;
    double miss_fraction_;
    RandomStream rng_;
    RadialPppSampler sampler_;
    const TiledFileField* field_;
    bool full_marks_;
};

/// Running interference at one receiver against its success limit
/// (signal / theta). SIR > theta holds iff the final total stays below it.
struct HopBudget {
    Point2D receiver;
    double ul_alpha;
    double limit;
    double total = 0.0;

    bool failed() const noexcept { return total >= limit; }
};

template <class Body>
std::size_t count_successes(std::size_t trials, unsigned workers, Body&& body) {
    workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(
                                                           std::max<std::size_t>(trials, 1))));
    if (workers == 1) {
        std::size_t successes = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            successes += body(t) ? 1 : 0;
        }
        return successes;
    }

    std::vector<std::size_t> partial(workers, 0);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                const std::size_t begin = trials * w / workers;
                const std::size_t end = trials * (w + 1) / workers;
                try {
                    for (std::size_t t = begin; t < end; ++t) {
                        partial[w] += body(t) ? 1 : 0;
                    }
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    std::size_t successes = 0;
    for (const auto n : partial) {
        successes += n;
    }
    return successes;
}

class SuccessTrial {
  public:
    SuccessTrial(const SimConfig& config, double p_hit)
        : config_(config),
          p_(config.params),
          p_hit_(p_hit),
          si_(config.params.si_gamma()),
          s_(hop_arguments(config.theta, config.params)) {
        if (config.far_field == FarField::compensate && config.cache_mode == CacheMode::thinned) {
            const double q = 1.0 - p_hit;
            far_dl_ = far_field_exponent(s_.dl, config.window_radius, q, p_.alpha2, p_);
            far_sc_ = std::isfinite(s_.sc)
                          ? far_field_exponent(s_.sc, config.window_radius, q, p_.alpha1, p_)
                          : 0.0;
        }
    }

    bool operator()(const RandomStream& trial) const {
        RandomStream typical_rng = trial.split(kTypicalStream);
        std::optional<TiledFileField> field;
        if (config_.cache_mode == CacheMode::geographic) {
            field.emplace(config_.catalog, trial.split(kFileFieldStream));
        }

        const double u_miss = typical_rng.uniform();
        MarkedTriple typical;
        typical.ul = isotropic_offset(typical.sc, p_.ul_distance, typical_rng);
        typical.dl = isotropic_offset(typical.sc, p_.dl_distance, typical_rng);
        const double h_sc = typical_rng.exponential();
        const double h_dl = typical_rng.exponential();
        const double u_far = typical_rng.uniform();

        bool miss = u_miss < 1.0 - p_hit_;
        if (field) {
            const std::size_t file = uniform_file(config_.catalog, typical_rng);
            miss = !geographic_hit(*field, config_.cache, file, typical);
        }

        const double theta = config_.theta;
        HopBudget dl{typical.dl, p_.alpha2,
                     p_.dl_power * std::pow(p_.dl_distance, -p_.alpha1) * h_dl / theta};
        HopBudget sc{typical.sc, p_.alpha1,
                     p_.ul_power * std::pow(p_.ul_distance, -p_.alpha1) * h_sc / theta};

        double far_exponent = far_dl_;
        if (miss) {
            far_exponent += far_sc_;
            sc.total += p_.dl_power * sample_si_power(si_, typical_rng);
            RandomStream own_fade = fading_stream(trial, 0, kDlHop).split(0);
            dl.total += p_.ul_power *
                        detail::inverse_power(distance_squared(typical.ul, typical.dl),
                                              p_.alpha2) *
                        own_fade.exponential();
            if (sc.failed() || dl.failed()) {
                return false;
            }
        }
        if (far_exponent > 0.0 && u_far >= std::exp(-far_exponent)) {
            return false;
        }

        const TiledFileField* field_ptr = field ? &*field : nullptr;
        if (!miss) {
            return survives(trial, 0, field_ptr, &dl, nullptr);
        }
        if (config_.mode == Correlation::correlated) {
            return survives(trial, 0, field_ptr, &dl, &sc);
        }
        return both_survive(trial, field_ptr, dl, sc);
    }

  private:
    // One outward walk over realization `k` with its fading streams.
    struct Walk {
        InterfererSource source;
        RandomStream fades;
        RandomFading fading;

        Walk(const SuccessTrial& t, const RandomStream& trial, std::uint64_t k, Hop hop,
             const TiledFileField* field)
            : source(t.config_, 1.0 - t.p_hit_, trial.split(kRealizationStream + k), field,
                     false),
              fades(fading_stream(trial, k, hop)),
              fading(fades, t.si_) {}

        Walk(const Walk&) = delete;
        Walk& operator=(const Walk&) = delete;
    };

    // Uncorrelated hops: DL over realization 0, SC over realization 1. The two
    // walks advance in lock-step so the trial ends at the first failure of
    // either; the outcome equals walking them one after the other.
    bool both_survive(const RandomStream& trial, const TiledFileField* field, HopBudget dl,
                      HopBudget sc) const {
        if (p_.sc_density == 0.0) {
            return true;
        }
        Walk dl_walk(*this, trial, 0, kDlHop, field);
        Walk sc_walk(*this, trial, 1, kScHop, field);
        bool dl_open = true;
        bool sc_open = true;
        while (dl_open || sc_open) {
            if (dl_open) {
                if (const auto y = dl_walk.source.next()) {
                    dl.total += detail::interferer_power(*y, dl.receiver, dl.ul_alpha, p_,
                                                         dl_walk.fading);
                    if (dl.failed()) {
                        return false;
                    }
                } else {
                    dl_open = false;
                }
            }
            if (sc_open) {
                if (const auto y = sc_walk.source.next()) {
                    sc.total += detail::interferer_power(*y, sc.receiver, sc.ul_alpha, p_,
                                                         sc_walk.fading);
                    if (sc.failed()) {
                        return false;
                    }
                } else {
                    sc_open = false;
                }
            }
        }
        return true;
    }

    // Walks realization `k` outward, adding each interferer's power to the
    // active hops; stops as soon as any active hop exceeds its limit.
    bool survives(const RandomStream& trial, std::uint64_t k, const TiledFileField* field,
                  HopBudget* dl, HopBudget* sc) const {
        if (p_.sc_density == 0.0) {
            return true;
        }
        InterfererSource source(config_, 1.0 - p_hit_, trial.split(kRealizationStream + k),
                                field, false);
        RandomStream dl_fades = fading_stream(trial, k, kDlHop);
        RandomStream sc_fades = fading_stream(trial, k, kScHop);
        RandomFading dl_fading(dl_fades, si_);
        RandomFading sc_fading(sc_fades, si_);
        while (const auto y = source.next()) {
            if (dl != nullptr) {
                dl->total += detail::interferer_power(*y, dl->receiver, dl->ul_alpha, p_, dl_fading);
                if (dl->failed()) {
                    return false;
                }
            }
            if (sc != nullptr) {
                sc->total += detail::interferer_power(*y, sc->receiver, sc->ul_alpha, p_, sc_fading);
                if (sc->failed()) {
                    return false;
                }
            }
        }
        return true;
    }

    const SimConfig& config_;
    const NetworkParams& p_;
    double p_hit_;
    GammaParams si_;
    HopArguments s_;
    double far_dl_ = 0.0;
    double far_sc_ = 0.0;
};

}  // namespace

void SimConfig::validate() const {
    params.validate();
    cache.validate(catalog);
    if (trials < 1) {
        throw InvalidArgument("SimConfig.trials: must be >= 1");
    }
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw InvalidArgument("SimConfig.theta: must be finite and > 0");
    }
    const double min_window = 10.0 * std::max(params.ul_distance, params.dl_distance);
    if (!(window_radius >= min_window) || !std::isfinite(window_radius)) {
        throw InvalidArgument("SimConfig.window_radius: must be finite and >= " +
                              std::to_string(min_window) + " m");
    }
    if (workers < 1) {
        throw InvalidArgument("SimConfig.workers: must be >= 1");
    }
}

EstimateWithCI EstimateWithCI::from_bernoulli(std::size_t successes, std::size_t trials) {
    if (trials == 0) {
        throw InvalidArgument("EstimateWithCI: trials must be >= 1");
    }
    const double mean = static_cast<double>(successes) / static_cast<double>(trials);
    return {mean, 1.96 * std::sqrt(mean * (1.0 - mean) / static_cast<double>(trials)), trials};
}

double far_field_exponent(double s, double window_radius, double miss_fraction, double ul_alpha,
                          const NetworkParams& p) {
    const double sc = p.dl_power * std::pow(window_radius, 2.0 - p.alpha1) / (p.alpha1 - 2.0);
    const double ul =
        miss_fraction * p.ul_power * std::pow(window_radius, 2.0 - ul_alpha) / (ul_alpha - 2.0);
    return 2.0 * kPi * p.sc_density * s * (sc + ul);
}

double sir_at_typical_sc(const NetworkRealization& net, bool typical_miss,
                         const NetworkParams& params, RandomStream& rng) {
    RandomFading fading(rng, params.si_gamma());
    return sir_at_typical_sc(net, typical_miss, params, fading);
}

double sir_at_typical_dl(const NetworkRealization& net, bool typical_miss,
                         const NetworkParams& params, RandomStream& rng) {
    RandomFading fading(rng, params.si_gamma());
    return sir_at_typical_dl(net, typical_miss, params, fading);
}

NetworkRealization realize_network(const SimConfig& config, double p_hit, RandomStream& rng) {
    config.validate();
    if (!(p_hit >= 0.0 && p_hit <= 1.0)) {
        throw InvalidArgument("realize_network: p_hit must lie in [0, 1]");
    }
    NetworkRealization net;
    net.window_radius = config.window_radius;
    net.typical.ul = isotropic_offset(net.typical.sc, config.params.ul_distance, rng);
    net.typical.dl = isotropic_offset(net.typical.sc, config.params.dl_distance, rng);

    std::optional<TiledFileField> field;
    if (config.cache_mode == CacheMode::geographic) {
        field.emplace(config.catalog, rng.split(kFileFieldStream));
    }
    if (config.params.sc_density > 0.0) {
        InterfererSource source(config, 1.0 - p_hit, rng.split(kRealizationStream),
                                field ? &*field : nullptr);
        while (const auto y = source.next()) {
            net.interferers.push_back(*y);
        }
    }
    return net;
}

EstimateWithCI estimate_cache_hit(const SimConfig& config, const RandomStream& root) {
    config.validate();
    const CacheModel& cache = config.cache;
    const NetworkParams& p = config.params;
    const Point2D origin{};

    auto trial = [&](std::size_t t) {
        RandomStream rng = root.split(t);
        const std::size_t file = uniform_file(config.catalog, rng);
        const Point2D dl = isotropic_offset(origin, p.dl_distance, rng);
        if (file > cache.storage || cache.request_radius == 0.0 || cache.cache_radius == 0.0) {
            return false;
        }
        if (config.regions == RegionSampling::independent) {
            RandomStream request_rng = rng.split(1);
            RandomStream cache_rng = rng.split(2);
            const FileField request =
                sample_file_points(config.catalog, file, dl, cache.request_radius, request_rng);
            if (count_in_ball(request, dl, cache.request_radius, file) == 0) {
                return false;
            }
            const FileField cached =
                sample_file_points(config.catalog, file, origin, cache.cache_radius, cache_rng);
            return count_in_ball(cached, origin, cache.cache_radius, file) > 0;
        }
        RandomStream shared_rng = rng.split(1);
        const double window =
            std::max(cache.cache_radius, p.dl_distance + cache.request_radius);
        const FileField field =
            sample_file_points(config.catalog, file, origin, window, shared_rng);
        return count_in_ball(field, dl, cache.request_radius, file) > 0 &&
               count_in_ball(field, origin, cache.cache_radius, file) > 0;
    };
    const std::size_t hits = count_successes(config.trials, config.workers, trial);
    return EstimateWithCI::from_bernoulli(hits, config.trials);
}

EstimateWithCI estimate_cache_hit(const SimConfig& config) {
    return estimate_cache_hit(config, RandomStream(config.seed));
}

EstimateWithCI estimate_success(const SimConfig& config, const RandomStream& root) {
    config.validate();
    const double p_hit = cache_hit_probability(config.catalog, config.cache);
    const SuccessTrial trial(config, p_hit);
    const std::size_t successes = count_successes(
        config.trials, config.workers, [&](std::size_t t) { return trial(root.split(t)); });
    return EstimateWithCI::from_bernoulli(successes, config.trials);
}

EstimateWithCI estimate_success(const SimConfig& config) {
    return estimate_success(config, RandomStream(config.seed));
}

EstimateWithCI estimate_throughput_gain(const SimConfig& config, const RandomStream& root) {
    const EstimateWithCI success = estimate_success(config, root);
    const double factor = throughput_gain(config.theta, 1.0, config.params) / 2.0;
    return {2.0 * factor * success.mean, 2.0 * factor * success.half_width_95, success.trials};
}

EstimateWithCI estimate_throughput_gain(const SimConfig& config) {
    return estimate_throughput_gain(config, RandomStream(config.seed));
}

}  // namespace fdcache
