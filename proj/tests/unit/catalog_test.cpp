// Copyright 2026 The fdcache Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <limits>

#include "fdcache/catalog.hpp"
#include "fdcache/errors.hpp"

using fdcache::FileCatalog;

namespace {

// Oracle: direct evaluation of i^-gamma / sum_j j^-gamma in long double.
long double zipf_oracle(std::size_t i, std::size_t n, double gamma) {
    long double norm = 0.0L;
    for (std::size_t j = 1; j <= n; ++j) {
        norm += std::pow(static_cast<long double>(j), -static_cast<long double>(gamma));
    }
    return std::pow(static_cast<long double>(i), -static_cast<long double>(gamma)) / norm;
}

}  // namespace

TEST_CASE("zipf examples") {
    const auto uniform = fdcache::zipf_popularity(5, 0.0);
    REQUIRE(uniform.size() == 5);
    for (const double p : uniform) {
        CHECK(p == doctest::Approx(0.2).epsilon(1e-15));
    }
    CHECK(fdcache::zipf_popularity(1, 0.7) == std::vector<double>{1.0});

    const auto p = fdcache::zipf_popularity(3, 0.7);
    CHECK(std::abs(p[0] - 0.4810) < 5e-5);
    CHECK(std::abs(p[1] - 0.2961) < 5e-5);
    CHECK(std::abs(p[2] - 0.2229) < 5e-5);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(p[i] - static_cast<double>(zipf_oracle(i + 1, 3, 0.7))) < 1e-15);
    }
}

TEST_CASE("zipf invariants over a parameter grid") {
    for (const std::size_t n : {1UL, 2UL, 10UL, 100UL, 1000UL, 100000UL}) {
        for (const double gamma : {0.0, 0.3, 0.7, 1.0, 1.5, 3.0}) {
            const auto p = fdcache::zipf_popularity(n, gamma);
            REQUIRE(p.size() == n);
            long double sum = 0.0L;
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(p[i] > 0.0);
                if (i > 0) {
                    CHECK(p[i] <= p[i - 1]);
                }
                sum += p[i];
            }
            CHECK(std::abs(static_cast<double>(sum) - 1.0) < 1e-12);
            CHECK(std::abs(p[n - 1] - static_cast<double>(zipf_oracle(n, n, gamma))) <
                  1e-12 * p[n - 1]);
        }
    }
}

TEST_CASE("zipf rejects bad arguments") {
    CHECK_THROWS_AS(fdcache::zipf_popularity(0, 0.7), fdcache::InvalidArgument);
    CHECK_THROWS_AS(fdcache::zipf_popularity(3, -0.1), fdcache::InvalidArgument);
    CHECK_THROWS_AS(fdcache::zipf_popularity(3, std::nan("")), fdcache::InvalidArgument);
}

TEST_CASE("file intensity") {
    CHECK(fdcache::file_intensity(FileCatalog(5, 0.0, 1.0), 3) == doctest::Approx(0.2));
    CHECK(fdcache::file_intensity(FileCatalog(1, 0.7, 0.5), 1) == doctest::Approx(0.5));
    const FileCatalog three(3, 0.7, 2.0);
    CHECK(std::abs(fdcache::file_intensity(three, 2) - 0.5922) < 1e-4);
    CHECK(fdcache::file_intensity(three, 2) == doctest::Approx(2.0 * three.popularity(2)));
    CHECK_THROWS_AS(fdcache::file_intensity(three, 0), fdcache::InvalidArgument);
    CHECK_THROWS_AS(fdcache::file_intensity(three, 4), fdcache::InvalidArgument);
    CHECK_THROWS_AS(FileCatalog(3, 0.7, -1.0), fdcache::InvalidArgument);
}
