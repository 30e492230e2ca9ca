// Copyright 2026 The fdcache Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fdcache/errors.hpp"
#include "fdcache/geometry.hpp"

using fdcache::Point2D;
using fdcache::RandomStream;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("empty and invalid discs") {
    RandomStream rng(1);
    CHECK(fdcache::sample_ppp_disc(0.0, 100.0, rng).empty());
    CHECK_THROWS_AS(fdcache::sample_ppp_disc(-1.0, 100.0, rng), fdcache::InvalidArgument);
}

TEST_CASE("disc point count is Poisson with mean density * area") {
    const RandomStream root(2);
    const int realizations = 10000;
    const double mean = 1e-4 * kPi * 1000.0 * 1000.0;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int k = 0; k < realizations; ++k) {
        RandomStream rng = root.split(k);
        const auto points = fdcache::sample_ppp_disc(1e-4, 1000.0, rng);
        for (const auto& p : points) {
            REQUIRE(std::hypot(p.x, p.y) <= 1000.0);
        }
        const double n = static_cast<double>(points.size());
        sum += n;
        sum_sq += n * n;
    }
    const double sample_mean = sum / realizations;
    CHECK(std::abs(sample_mean - mean) < 3.0 * std::sqrt(mean / realizations));
    // Poisson dispersion: variance equals the mean.
    const double sample_var = sum_sq / realizations - sample_mean * sample_mean;
    CHECK(std::abs(sample_var / mean - 1.0) < 0.05);
}

TEST_CASE("radial distribution is uniform on the disc (Kolmogorov-Smirnov)") {
    const RandomStream root(3);
    std::vector<double> radii;
    for (int k = 0; radii.size() < 20000; ++k) {
        RandomStream rng = root.split(k);
        for (const auto& p : fdcache::sample_ppp_disc(1e-3, {5.0, -2.0}, 10.0, rng)) {
            radii.push_back(std::hypot(p.x - 5.0, p.y + 2.0));
        }
    }
    std::sort(radii.begin(), radii.end());
    const double n = static_cast<double>(radii.size());
    double d = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double cdf = radii[i] * radii[i] / 100.0;
        d = std::max({d, std::abs(cdf - i / n), std::abs((i + 1) / n - cdf)});
    }
    CHECK(d < 1.628 / std::sqrt(n));  // 1% critical value
}

TEST_CASE("radial sampler yields a prefix when the radius grows") {
    RandomStream a(4);
    RandomStream b(4);
    const auto small = fdcache::sample_ppp_disc(1e-3, 100.0, a);
    const auto large = fdcache::sample_ppp_disc(1e-3, 200.0, b);
    REQUIRE(large.size() >= small.size());
    for (std::size_t i = 0; i < small.size(); ++i) {
        CHECK(small[i] == large[i]);
    }
}

TEST_CASE("marks sit at exact distances with uniform angles") {
    RandomStream rng(5);
    const Point2D origin{};
    const auto single = fdcache::attach_marks(std::span(&origin, 1), 20.0, 5.0, rng);
    REQUIRE(single.size() == 1);
    CHECK(std::hypot(single[0].ul.x, single[0].ul.y) == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(std::hypot(single[0].dl.x, single[0].dl.y) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(fdcache::attach_marks({}, 20.0, 5.0, rng).empty());

    std::vector<Point2D> scs;
    for (int i = 0; i < 100000; ++i) {
        scs.push_back({rng.uniform() * 1000.0, rng.uniform() * 1000.0});
    }
    const auto marked = fdcache::attach_marks(scs, 20.0, 5.0, rng);
    constexpr int kBins = 36;
    std::array<int, kBins> counts{};
    double worst = 0.0;
    for (const auto& t : marked) {
        const Point2D u = t.ul - t.sc;
        const Point2D d = t.dl - t.sc;
        worst = std::max({worst, std::abs(std::hypot(u.x, u.y) / 20.0 - 1.0),
                          std::abs(std::hypot(d.x, d.y) / 5.0 - 1.0)});
        double angle = std::atan2(u.y, u.x);
        if (angle < 0.0) {
            angle += 2.0 * kPi;
        }
        counts[std::min(kBins - 1, static_cast<int>(angle / (2.0 * kPi) * kBins))]++;
    }
    CHECK(worst < 1e-9);
    const double expected = 100000.0 / kBins;
    double chi2 = 0.0;
    for (const int c : counts) {
        chi2 += (c - expected) * (c - expected) / expected;
    }
    CHECK(chi2 < 57.34);  // chi-square(35) at 1%
}

TEST_CASE("count_in_ball containment and window guard") {
    fdcache::FileField field;
    field.center = {};
    field.radius = 50.0;
    field.points = {{{3.0, 0.0}, 2}, {{3.0, 1.0}, 1}, {{30.0, 0.0}, 2}};
    CHECK(fdcache::count_in_ball(field, {}, 5.0, 2) == 1);
    CHECK(fdcache::count_in_ball(field, {}, 5.0, 1) == 1);
    CHECK(fdcache::count_in_ball(field, {}, 0.0, 2) == 0);
    CHECK(fdcache::count_in_ball(field, {}, 50.0, 2) == 2);
    CHECK_THROWS_AS(fdcache::count_in_ball(field, {10.0, 0.0}, 45.0, 2), fdcache::WindowTooSmall);
}

TEST_CASE("void probability of a thinned file field") {
    // Uniform popularity over 20 files gives p_i = 0.05.
    const fdcache::FileCatalog catalog(20, 0.0, 1.0);
    const RandomStream root(6);
    const int fields = 10000;
    int occupied = 0;
    for (int k = 0; k < fields; ++k) {
        RandomStream rng = root.split(k);
        const auto f = fdcache::sample_file_points(catalog, 7, {}, 8.0, rng);
        occupied += fdcache::count_in_ball(f, {}, 8.0, 7) > 0 ? 1 : 0;
    }
    const double p = 1.0 - std::exp(-0.05 * kPi * 64.0);
    CHECK(std::abs(occupied / double(fields) - p) < 3.0 * std::sqrt(p * (1 - p) / fields));
}

TEST_CASE("full file field marks follow the popularity law") {
    const fdcache::FileCatalog catalog(4, 1.0, 0.05);
    RandomStream rng(7);
    const auto field = fdcache::sample_file_field(catalog, {}, 300.0, rng);
    std::array<double, 4> counts{};
    for (const auto& fp : field.points) {
        REQUIRE(fp.file >= 1);
        REQUIRE(fp.file <= 4);
        counts[fp.file - 1] += 1.0;
    }
    const double n = static_cast<double>(field.points.size());
    for (std::size_t i = 0; i < 4; ++i) {
        const double p = catalog.popularity(i + 1);
        CHECK(std::abs(counts[i] / n - p) < 4.0 * std::sqrt(p * (1 - p) / n));
    }
}

TEST_CASE("tiled field is consistent across overlapping queries") {
    const fdcache::FileCatalog catalog(10, 0.7, 0.5);
    const fdcache::TiledFileField field(catalog, RandomStream(8));
    const fdcache::TiledFileField again(catalog, RandomStream(8));
    for (std::size_t file = 1; file <= 10; ++file) {
        const auto big = field.count_in_ball({3.0, 4.0}, 40.0, file);
        CHECK(big == again.count_in_ball({3.0, 4.0}, 40.0, file));
        CHECK(field.count_in_ball({3.0, 4.0}, 10.0, file) <= big);
        CHECK(field.any_in_ball({3.0, 4.0}, 40.0, file) == (big > 0));
    }
    // Void probability of a single file over many independent fields.
    const RandomStream root(9);
    int occupied = 0;
    const int trials = 4000;
    for (int k = 0; k < trials; ++k) {
        const fdcache::TiledFileField f(catalog, root.split(k));
        occupied += f.any_in_ball({-7.0, 11.0}, 8.0, 3) ? 1 : 0;
    }
    const double p = 1.0 - std::exp(-catalog.popularity(3) * 0.5 * kPi * 64.0);
    CHECK(std::abs(occupied / double(trials) - p) < 3.0 * std::sqrt(p * (1 - p) / trials));
}
