// Copyright 2026 The fdcache Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "fdcache/analytics.hpp"
#include "fdcache/errors.hpp"

using fdcache::CacheModel;
using fdcache::FileCatalog;
using fdcache::LinkKind;
using fdcache::NetworkParams;

namespace {

constexpr double kPi = std::numbers::pi;

bool close_rel(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

// Independent Monte Carlo of the hit event under the independent-regions
// model: a uniform request, then Poisson file fields of the requested file in
// the request ball around d(x) and in the cache ball around x.
oracle::McEstimate cache_hit_mc(const FileCatalog& catalog, const CacheModel& cache,
                                std::size_t trials, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<std::size_t> pick(1, catalog.file_count());
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto occupied = [&](double density, double radius) {
        // Sample the file points on a disc twice the ball radius, then test membership.
        const double window = 2.0 * radius;
        std::poisson_distribution<long> count(density * kPi * window * window);
        const long n = count(gen);
        bool hit = false;
        for (long i = 0; i < n; ++i) {
            const double r = window * std::sqrt(unif(gen));
            hit = hit || r <= radius;
        }
        return hit;
    };
    std::size_t hits = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t file = pick(gen);
        const double density = catalog.popularity(file) * catalog.file_density();
        const bool request = occupied(density, cache.request_radius);
        const bool cached = occupied(density, cache.cache_radius);
        hits += (file <= cache.storage && request && cached) ? 1 : 0;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(trials);
    return {p, std::sqrt(p * (1 - p) / static_cast<double>(trials))};
}

}  // namespace

TEST_CASE("cache hit probability examples") {
    const FileCatalog catalog(100, 0.7, 1.0);
    CHECK(fdcache::cache_hit_probability(catalog, {0, 8, 40}) == 0.0);
    for (const std::size_t s : {1UL, 35UL, 60UL, 100UL}) {
        const FileCatalog dense(100, 0.7, 1e12);
        CHECK(std::abs(fdcache::cache_hit_probability(dense, {s, 8, 40}) - s / 100.0) < 1e-9);
    }
    CHECK(CacheModel::from_ratio(0.35, 100).storage == 35);

    const CacheModel cache{35, 8, 40};
    const double model = fdcache::cache_hit_probability(catalog, cache);
    const auto mc = cache_hit_mc(catalog, cache, 100000, 21);
    CHECK(std::abs(model - mc.mean) < 3.0 * mc.sigma);
}

TEST_CASE("cache hit probability is monotone") {
    const CacheModel base{35, 8, 40};
    double previous = -1.0;
    for (double eta = 1e-4; eta < 1e3; eta *= 2.0) {
        const double v = fdcache::cache_hit_probability(FileCatalog(100, 0.7, eta), base);
        CHECK(v >= previous);
        CHECK(v <= 0.35 + 1e-15);
        previous = v;
    }
    const FileCatalog catalog(100, 0.7, 0.01);
    previous = -1.0;
    for (std::size_t s = 0; s <= 100; ++s) {
        const double v = fdcache::cache_hit_probability(catalog, {s, 8, 40});
        CHECK(v >= previous);
        previous = v;
    }
    previous = -1.0;
    for (double r = 0.0; r < 200.0; r += 3.7) {
        const double v = fdcache::cache_hit_probability(catalog, {35, r, 40});
        CHECK(v >= previous);
        previous = v;
    }
    previous = -1.0;
    for (double r = 0.0; r < 200.0; r += 3.7) {
        const double v = fdcache::cache_hit_probability(catalog, {35, 8, r});
        CHECK(v >= previous);
        previous = v;
    }
}

TEST_CASE("closed-form radial kernel") {
    NetworkParams p;
    CHECK(fdcache::upsilon_hat(0.0, p) == 0.0);
    CHECK(std::abs(fdcache::upsilon_hat(1.0, p) - 0.4135) < 5e-5);
    NetworkParams quartic;
    quartic.dl_power = 1.0;
    quartic.alpha1 = 4.0;
    quartic.alpha2 = 4.0;
    CHECK(fdcache::upsilon_hat(1.0, quartic) == doctest::Approx(kPi / 4.0).epsilon(1e-14));

    for (const double alpha : {2.5, 3.0, 3.7, 4.0}) {
        p.alpha1 = alpha;
        p.alpha2 = 4.0;
        for (const double s : {1e-3, 1.0, 1e3, 625.0, 8000.0}) {
            CHECK(close_rel(fdcache::upsilon_hat(s, p), oracle::upsilon_hat_quadrature(s, p),
                            1e-10));
        }
    }
    p.alpha1 = 2.0;
    CHECK_THROWS_AS(fdcache::upsilon_hat(1.0, p), fdcache::NumericalError);
    p.alpha1 = 2.0 + 5e-7;
    CHECK_THROWS_AS(fdcache::upsilon_hat(1.0, p), fdcache::NumericalError);
}

TEST_CASE("omega kernel") {
    const NetworkParams p;
    CHECK(fdcache::omega(0.0, 5.0, p) == 1.0);
    CHECK(std::abs(fdcache::omega(625.0, 1e9, p) - 1.0) < 1e-9);
    CHECK(fdcache::omega(1.0, 5.0, p) ==
          doctest::Approx(oracle::omega_midpoint(1.0, 5.0, p, 4.0)).epsilon(1e-8));
    CHECK(std::abs(fdcache::omega(625.0, 20.0, p) - oracle::omega_midpoint(625.0, 20.0, p, 4.0)) <
          1e-8);
    CHECK(std::abs(fdcache::omega(8000.0, 40.0, p, {}, LinkKind::UlToSc) -
                   oracle::omega_midpoint(8000.0, 40.0, p, 3.0)) < 1e-8);
    // UL node almost on top of the receiver: a narrow, nearly singular peak.
    CHECK(std::abs(fdcache::omega(8e-9, 20.00016, p, {}, LinkKind::UlToSc) -
                   oracle::omega_midpoint(8e-9, 20.00016, p, 3.0, std::size_t{1} << 24)) < 1e-10);
    for (double r = 0.0; r < 400.0; r += 7.3) {
        const double w = fdcache::omega(625.0, r, p);
        const double c = fdcache::omega_complement(625.0, r, p);
        CHECK(w >= 0.0);
        CHECK(w <= 1.0);
        CHECK(std::abs(w + c - 1.0) < 1e-12);
    }
}

TEST_CASE("omega reports non-convergence with the achieved tolerance") {
    const NetworkParams p;
    fdcache::QuadratureSettings tight;
    tight.relative_tolerance = 1e-16;
    tight.absolute_tolerance = 1e-300;
    tight.angular_panels = 16;
    tight.max_angular_panels = 64;
    try {
        (void)fdcache::omega(1.0, 20.5, p, tight);
        FAIL("expected NumericalError");
    } catch (const fdcache::NumericalError& e) {
        CHECK(e.achieved_tolerance() > 0.0);
    }
}

TEST_CASE("upsilon tilde kernel") {
    NetworkParams p;
    CHECK(fdcache::upsilon_tilde(0.0, p) == 0.0);
    for (const double s : {1e-3, 1.0, 625.0, 8000.0}) {
        CHECK(fdcache::upsilon_tilde(s, p) >= fdcache::upsilon_hat(s, p));
        CHECK(fdcache::upsilon_tilde(s, p, {}, LinkKind::UlToSc) >= fdcache::upsilon_hat(s, p));
    }
    NetworkParams silent = p;
    silent.ul_power = 0.0;
    CHECK(fdcache::upsilon_tilde(625.0, silent) == fdcache::upsilon_hat(625.0, silent));

    // Smaller version of the acceptance oracle: 2 x 400 x 200 strata per region.
    const auto mc = oracle::upsilon_tilde_mc(625.0, p, 4.0, 400, 200, 5);
    CHECK(std::abs(fdcache::upsilon_tilde(625.0, p) - mc.mean) < 3.0 * mc.sigma);
    const auto mc_sc = oracle::upsilon_tilde_mc(8000.0, p, 3.0, 400, 200, 6);
    CHECK(std::abs(fdcache::upsilon_tilde(8000.0, p, {}, LinkKind::UlToSc) - mc_sc.mean) <
          3.0 * mc_sc.sigma);
}

TEST_CASE("laplace transforms") {
    NetworkParams p;
    for (const double q : {0.0, 0.35, 1.0}) {
        CHECK(fdcache::laplace_hit(0.0, q, p) == 1.0);
        CHECK(fdcache::laplace_miss_sc(0.0, q, p) == 1.0);
        CHECK(fdcache::laplace_miss_dl(0.0, q, p) == 1.0);
    }
    NetworkParams empty = p;
    empty.sc_density = 0.0;
    CHECK(fdcache::laplace_hit(625.0, 0.3, empty) == 1.0);

    // Self-interference factor alone: (1 + 1e8 * 0.2 * 7.5e-9)^(-4/3).
    CHECK(std::abs(fdcache::laplace_miss_sc(1e8, 0.3, empty) - 0.8300) < 5e-5);
    CHECK(fdcache::laplace_miss_sc(1e8, 0.3, empty) ==
          doctest::Approx(std::pow(1.15, -4.0 / 3.0)).epsilon(1e-14));

    NetworkParams perfect = p;
    perfect.si_attenuation_db = std::numeric_limits<double>::infinity();
    CHECK(fdcache::laplace_miss_sc(8000.0, 0.3, perfect) ==
          doctest::Approx(fdcache::laplace_hit(8000.0, 0.3, perfect, {}, LinkKind::UlToSc))
              .epsilon(1e-15));

    NetworkParams silent = p;
    silent.ul_power = 0.0;
    CHECK(fdcache::laplace_miss_dl(625.0, 0.3, silent) ==
          doctest::Approx(fdcache::laplace_hit(625.0, 0.3, silent)).epsilon(1e-15));

    // Cache hit everywhere: the shot-noise oracle of the SC interferers.
    const auto mc = oracle::shot_noise_laplace(1.0, p, 2000.0, 20000, 31);
    const double model = fdcache::laplace_hit(1.0, 1.0, p);
    CHECK(model == doctest::Approx(std::exp(-2.0 * kPi * 1e-4 * fdcache::upsilon_hat(1.0, p))));
    CHECK(std::abs(model - mc.mean) < 3.0 * mc.sigma + 1e-9);
    const auto mc_dense = oracle::shot_noise_laplace(625.0, p, 500.0, 20000, 32);
    CHECK(std::abs(fdcache::laplace_hit(625.0, 1.0, p) - mc_dense.mean) < 3.0 * mc_dense.sigma);

    // The DL miss transform is the product of its two factors.
    const double s_dl = fdcache::hop_arguments(1.0, p).dl;
    CHECK(s_dl == doctest::Approx(625.0));
    CHECK(fdcache::hop_arguments(1.0, p).sc == doctest::Approx(8000.0));
    CHECK(fdcache::laplace_miss_dl(s_dl, 0.32, p) ==
          doctest::Approx(fdcache::omega(s_dl, 5.0, p) * fdcache::laplace_hit(s_dl, 0.32, p))
              .epsilon(1e-14));
}

TEST_CASE("laplace transforms lie in (0, 1] over a grid") {
    for (const double lambda : {0.0, 1e-5, 1e-4, 1e-3}) {
        NetworkParams p;
        p.sc_density = lambda;
        for (const double q : {0.0, 0.5, 1.0}) {
            for (const double s : {1e-3, 1.0, 30.0, 625.0, 8000.0, 1e5}) {
                for (const double v : {fdcache::laplace_hit(s, q, p),
                                       fdcache::laplace_miss_sc(s, q, p),
                                       fdcache::laplace_miss_dl(s, q, p)}) {
                    CHECK(v > 0.0);
                    CHECK(v <= 1.0);
                }
            }
        }
    }
}

TEST_CASE("success probability lower bound") {
    NetworkParams p;
    CHECK(std::abs(fdcache::success_probability_lb(1e-12, 0.3, p) - 1.0) < 1e-6);
    NetworkParams empty = p;
    empty.sc_density = 0.0;
    CHECK(fdcache::success_probability_lb(1.0, 1.0, empty) == 1.0);

    // Structure of the bound at the reference point.
    const double q = 0.32;
    const auto s = fdcache::hop_arguments(1.0, p);
    const double expected =
        q * fdcache::laplace_hit(s.dl, q, p) +
        (1 - q) * fdcache::laplace_miss_sc(s.sc, q, p) * fdcache::laplace_miss_dl(s.dl, q, p);
    CHECK(fdcache::success_probability_lb(1.0, q, p) == doctest::Approx(expected).epsilon(1e-14));

    // Regression pins: kappa = 0 and kappa = 0.6 (p_hit 0.5005) at 1e-4 and 1e-3 SCs/m^2.
    CHECK(fdcache::success_probability_lb(1.0, 0.0, p) == doctest::Approx(0.6643007653).epsilon(1e-9));
    NetworkParams dense = p;
    dense.sc_density = 1e-3;
    CHECK(fdcache::success_probability_lb(1.0, 0.0, dense) ==
          doctest::Approx(0.01751050844).epsilon(1e-9));
}

TEST_CASE("success probability lower bound monotonicity") {
    NetworkParams p;
    double previous = 2.0;
    for (double theta_db = -20.0; theta_db <= 20.0; theta_db += 2.5) {
        const double v = fdcache::success_probability_lb(fdcache::db_to_linear(theta_db), 0.3, p);
        CHECK(v <= previous);
        CHECK(v >= 0.0);
        previous = v;
    }
    previous = 2.0;
    for (double lambda = 1e-6; lambda < 2e-2; lambda *= 2.0) {
        p.sc_density = lambda;
        const double v = fdcache::success_probability_lb(1.0, 0.3, p);
        CHECK(v <= previous);
        previous = v;
    }
    p = {};
    previous = -1.0;
    for (double q = 0.0; q <= 1.0; q += 0.05) {
        const double v = fdcache::success_probability_lb(1.0, q, p);
        CHECK(v >= previous);
        previous = v;
    }
}

TEST_CASE("throughput gain and area spectral efficiency") {
    NetworkParams empty;
    empty.sc_density = 0.0;
    CHECK(fdcache::throughput_gain(1.0, 0.5, empty) == doctest::Approx(1.0));
    NetworkParams p;
    const double tg = fdcache::throughput_gain(1.0, 0.4, p);
    const double half_duplex =
        std::exp(-2.0 * kPi * 1e-4 * kPi * (400.0 + 25.0) / (3.0 * std::sin(2.0 * kPi / 3.0)));
    CHECK(tg == doctest::Approx(2.0 * 0.4 / half_duplex).epsilon(1e-12));

    CHECK(fdcache::area_spectral_efficiency(1.0, 0.0, 1e-4) == 0.0);
    CHECK(fdcache::area_spectral_efficiency(1.0, 1.0, 1e-4) == doctest::Approx(1e-4));
    CHECK(fdcache::area_spectral_efficiency(3.0, 0.5, 1e-3) == doctest::Approx(1e-3));

    const auto r = fdcache::evaluate_analytic(1.0, FileCatalog(100, 0.7, 1.0),
                                              CacheModel::from_ratio(0.6, 100), p);
    CHECK(r.p_hit == doctest::Approx(0.5005).epsilon(1e-3));
    CHECK(r.p_suc_lb >= 0.0);
    CHECK(r.p_suc_lb <= 1.0);
    CHECK(r.tg_fd == doctest::Approx(fdcache::throughput_gain(1.0, r.p_suc_lb, p)));
    CHECK(r.ase == doctest::Approx(1e-4 * r.p_suc_lb));
}
