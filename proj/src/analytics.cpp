// Copyright 2026 The fdcache Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdcache/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "fdcache/errors.hpp"

namespace fdcache {

namespace {

constexpr double kPi = std::numbers::pi;

void require_laplace_argument(double s, const char* where) {
    if (!(s >= 0.0)) {
        throw InvalidArgument(std::string(where) + ": Laplace argument must be >= 0");
    }
}

void require_probability(double p, const char* where) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidArgument(std::string(where) + ": probability must lie in [0, 1]");
    }
}

void require_threshold(double theta, const char* where) {
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw InvalidArgument(std::string(where) + ": SIR threshold must be finite and > 0");
    }
}

// csc(2pi/alpha) / alpha, the shape factor shared by the closed-form kernels.
double csc_factor(double alpha) {
    if (!(alpha > 2.0 + 1e-6)) {
        throw NumericalError("radial kernel diverges for pathloss exponent <= 2",
                             std::numeric_limits<double>::infinity());
    }
    return 1.0 / (std::sin(2.0 * kPi / alpha) * alpha);
}

// Neglected mean of the first-order expansion of the integrand beyond `radius`.
double radial_tail_bound(double s, double radius, const NetworkParams& p, double ul_alpha) {
    const double sc_term = p.dl_power * std::pow(radius, 2.0 - p.alpha1) / (p.alpha1 - 2.0);
    const double u = radius - p.ul_distance;
    const double ul_term = p.ul_power * (std::pow(u, 2.0 - ul_alpha) / (ul_alpha - 2.0) +
                                         p.ul_distance * std::pow(u, 1.0 - ul_alpha) /
                                             (ul_alpha - 1.0));
    return s * (sc_term + ul_term);
}

}  // namespace

CacheModel CacheModel::from_ratio(double kappa, std::size_t file_count, double request_radius,
                                  double cache_radius) {
    if (!(kappa >= 0.0 && kappa <= 1.0)) {
        throw InvalidArgument("CacheModel: kappa must lie in [0, 1]");
    }
    const auto storage =
        static_cast<std::size_t>(std::llround(kappa * static_cast<double>(file_count)));
    return {storage, request_radius, cache_radius};
}

void CacheModel::validate(const FileCatalog& catalog) const {
    if (storage > catalog.file_count()) {
        throw InvalidArgument("CacheModel: storage " + std::to_string(storage) +
                              " exceeds catalog size " + std::to_string(catalog.file_count()));
    }
    if (!(request_radius >= 0.0) || !std::isfinite(request_radius)) {
        throw InvalidArgument("CacheModel: request radius must be finite and >= 0");
    }
    if (!(cache_radius >= 0.0) || !std::isfinite(cache_radius)) {
        throw InvalidArgument("CacheModel: cache radius must be finite and >= 0");
    }
}

double cache_hit_probability(const FileCatalog& catalog, const CacheModel& cache) {
    cache.validate(catalog);
    const double request_area = kPi * cache.request_radius * cache.request_radius;
    const double cache_area = kPi * cache.cache_radius * cache.cache_radius;
    const auto popularity = catalog.popularity();
    double sum = 0.0;
    for (std::size_t i = 0; i < cache.storage; ++i) {
        const double density = popularity[i] * catalog.file_density();
        sum += -std::expm1(-density * request_area) * -std::expm1(-density * cache_area);
    }
    return sum / static_cast<double>(catalog.file_count());
}

double upsilon_hat(double s, const NetworkParams& params) {
    require_laplace_argument(s, "upsilon_hat");
    const double factor = csc_factor(params.alpha1);
    if (s == 0.0) {
        return 0.0;
    }
    return kPi * std::pow(s * params.dl_power, 2.0 / params.alpha1) * factor;
}

double omega_complement(double s, double r, const NetworkParams& params,
                        const QuadratureSettings& settings, LinkKind uplink) {
    require_laplace_argument(s, "omega");
    if (!(r >= 0.0)) {
        throw InvalidArgument("omega: distance must be >= 0");
    }
    const double scale = s * params.ul_power;
    if (scale == 0.0) {
        return 0.0;
    }
    const double alpha = params.exponent(uplink);
    const double half_alpha = 0.5 * alpha;
    const double rul = params.ul_distance;
    const double gap = rul - r;
    const double cross = 4.0 * rul * r;
    // d^2 as a function of psi = pi - phi, free of cancellation near psi = 0.
    auto loss_at = [&](double psi) {
        const double h = std::sin(0.5 * psi);
        const double d2 = gap * gap + cross * h * h;
        return 1.0 / (1.0 + std::pow(d2, half_alpha) / scale);
    };

    // Angular width of the loss peak at psi = 0. A narrow peak puts a branch
    // point close to the real axis, where the trapezoid rule stalls.
    const double width = cross > 0.0 ? std::max(std::abs(gap), std::pow(scale, 1.0 / alpha)) /
                                           std::sqrt(0.25 * cross)
                                     : kPi;
    if (width >= 1e-3) {
        return even_periodic_mean([&](double phi) { return loss_at(kPi - phi); },
                                  settings.angular_panels, settings.relative_tolerance,
                                  settings.absolute_tolerance, settings.max_angular_panels)
            .value;
    }
    std::vector<double> breaks = {0.0};
    for (double b = width; b < kPi; b *= 4.0) {
        breaks.push_back(b);
    }
    breaks.push_back(kPi);
    return integrate_adaptive(loss_at, breaks, kPi * settings.absolute_tolerance,
                              settings.relative_tolerance, settings.max_intervals)
               .value /
           kPi;
}

double omega(double s, double r, const NetworkParams& params, const QuadratureSettings& settings,
             LinkKind uplink) {
    return 1.0 - omega_complement(s, r, params, settings, uplink);
}

double upsilon_tilde(double s, const NetworkParams& params, const QuadratureSettings& settings,
                     LinkKind uplink) {
    require_laplace_argument(s, "upsilon_tilde");
    csc_factor(params.alpha1);
    if (s == 0.0) {
        return 0.0;
    }
    if (params.ul_power == 0.0) {
        return upsilon_hat(s, params);
    }

    const double ul_alpha = params.exponent(uplink);
    const double rul = params.ul_distance;
    const double knee = std::pow(s * params.dl_power, 1.0 / params.alpha1);

    std::vector<double> breaks = {0.0, rul};
    if (knee > 0.0 && knee < rul) {
        breaks.insert(breaks.begin() + 1, knee);
    }
    double edge = 2.0 * std::max(rul, knee);
    breaks.push_back(edge);
    while (radial_tail_bound(s, edge, params, ul_alpha) > settings.truncation_threshold) {
        edge *= 2.0;
        if (edge > 1e250) {
            throw NumericalError("upsilon_tilde: radial tail bound cannot reach tolerance",
                                 radial_tail_bound(s, edge, params, ul_alpha));
        }
        breaks.push_back(edge);
    }

    QuadratureSettings inner = settings;
    inner.relative_tolerance = 0.1 * settings.relative_tolerance;
    inner.absolute_tolerance = 0.1 * settings.absolute_tolerance;
    const double dl_scale = s * params.dl_power;
    auto integrand = [&](double r) {
        const double y = std::pow(r, params.alpha1) / dl_scale;
        const double c = omega_complement(s, r, params, inner, uplink);
        return r * (1.0 + c * y) / (1.0 + y);
    };
    return integrate_adaptive(integrand, breaks, settings.absolute_tolerance,
                              settings.relative_tolerance, settings.max_intervals)
        .value;
}

double laplace_hit(double s, double p_hit, const NetworkParams& params,
                   const QuadratureSettings& settings, LinkKind uplink) {
    require_laplace_argument(s, "laplace_hit");
    require_probability(p_hit, "laplace_hit");
    if (s == 0.0 || params.sc_density == 0.0) {
        return 1.0;
    }
    double exponent = p_hit * upsilon_hat(s, params);
    if (p_hit < 1.0) {
        exponent += (1.0 - p_hit) * upsilon_tilde(s, params, settings, uplink);
    }
    return std::exp(-2.0 * kPi * params.sc_density * exponent);
}

double laplace_miss_sc(double s, double p_hit, const NetworkParams& params,
                       const QuadratureSettings& settings) {
    require_laplace_argument(s, "laplace_miss_sc");
    const GammaParams si = params.si_gamma();
    const double residual = std::pow(1.0 + s * params.dl_power * si.scale, -si.shape);
    return residual * laplace_hit(s, p_hit, params, settings, LinkKind::UlToSc);
}

double laplace_miss_dl(double s, double p_hit, const NetworkParams& params,
                       const QuadratureSettings& settings) {
    require_laplace_argument(s, "laplace_miss_dl");
    return omega(s, params.dl_distance, params, settings, LinkKind::UlToDl) *
           laplace_hit(s, p_hit, params, settings, LinkKind::UlToDl);
}

HopArguments hop_arguments(double theta, const NetworkParams& params) {
    const double sc = params.ul_power > 0.0
                          ? theta * std::pow(params.ul_distance, params.alpha1) / params.ul_power
                          : std::numeric_limits<double>::infinity();
    const double dl = theta * std::pow(params.dl_distance, params.alpha1) / params.dl_power;
    return {sc, dl};
}

double success_probability_lb(double theta, double p_hit, const NetworkParams& params,
                              const QuadratureSettings& settings) {
    require_threshold(theta, "success_probability_lb");
    require_probability(p_hit, "success_probability_lb");
    const HopArguments s = hop_arguments(theta, params);
    const double hit_dl = laplace_hit(s.dl, p_hit, params, settings);
    double result = p_hit * hit_dl;
    // Without UL power the backhaul hop can never succeed.
    if (p_hit < 1.0 && params.ul_power > 0.0) {
        const double miss_dl =
            omega(s.dl, params.dl_distance, params, settings, LinkKind::UlToDl) * hit_dl;
        result += (1.0 - p_hit) * laplace_miss_sc(s.sc, p_hit, params, settings) * miss_dl;
    }
    return std::clamp(result, 0.0, 1.0);
}

double throughput_gain(double theta, double p_suc, const NetworkParams& params) {
    require_threshold(theta, "throughput_gain");
    require_probability(p_suc, "throughput_gain");
    const double r2 = params.ul_distance * params.ul_distance +
                      params.dl_distance * params.dl_distance;
    const double half_duplex_exponent =
        kPi * std::pow(theta, 2.0 / params.alpha1) * r2 * csc_factor(params.alpha1);
    return 2.0 * p_suc * std::exp(2.0 * kPi * params.sc_density * half_duplex_exponent);
}

double area_spectral_efficiency(double theta, double p_suc, double sc_density) {
    require_threshold(theta, "area_spectral_efficiency");
    return sc_density * p_suc * std::log2(1.0 + theta);
}

AnalyticResult evaluate_analytic(double theta, const FileCatalog& catalog, const CacheModel& cache,
                                 const NetworkParams& params,
                                 const QuadratureSettings& settings) {
    params.validate();
    settings.validate();
    AnalyticResult result;
    result.p_hit = cache_hit_probability(catalog, cache);
    const HopArguments s = hop_arguments(theta, params);
    result.laplace_hit = laplace_hit(s.dl, result.p_hit, params, settings);
    result.laplace_miss_dl = laplace_miss_dl(s.dl, result.p_hit, params, settings);
    if (std::isfinite(s.sc)) {
        result.laplace_miss_sc = laplace_miss_sc(s.sc, result.p_hit, params, settings);
    } else {
        result.laplace_miss_sc = 0.0;
    }
    result.p_suc_lb = success_probability_lb(theta, result.p_hit, params, settings);
    result.tg_fd = throughput_gain(theta, result.p_suc_lb, params);
    result.ase = area_spectral_efficiency(theta, result.p_suc_lb, params.sc_density);
    return result;
}

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

}  // namespace fdcache
