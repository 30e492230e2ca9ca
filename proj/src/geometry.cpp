// Copyright 2026 The fdcache Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdcache/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "fdcache/errors.hpp"

namespace fdcache {

namespace {


void require_density(double density, const char* where) {
    if (!std::isfinite(density) || density < 0.0) {
        throw InvalidArgument(std::string(where) + ": density must be finite and >= 0");
    }
}

void require_radius(double radius, const char* where) {
    if (!std::isfinite(radius) || radius <= 0.0) {
        throw InvalidArgument(std::string(where) + ": radius must be finite and > 0");
    }
}

}  // namespace

double distance(Point2D a, Point2D b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

Point2D unit_direction(double turns) noexcept {
    // Reduce to r in [-pi/4, pi/4] plus a quadrant, then Taylor to degree 17.
    const double t = 4.0 * turns;
    const double q = std::nearbyint(t);
    const double r = (t - q) * (std::numbers::pi / 2.0);
    const double r2 = r * r;
    const double s =
        r * (1.0 + r2 * (-1.0 / 6 + r2 * (1.0 / 120 + r2 * (-1.0 / 5040 + r2 * (1.0 / 362880 +
            r2 * (-1.0 / 39916800 + r2 * (1.0 / 6227020800 + r2 * (-1.0 / 1307674368000.0 +
            r2 * (1.0 / 355687428096000.0)))))))));
    const double c =
        1.0 + r2 * (-0.5 + r2 * (1.0 / 24 + r2 * (-1.0 / 720 + r2 * (1.0 / 40320 +
            r2 * (-1.0 / 3628800 + r2 * (1.0 / 479001600 + r2 * (-1.0 / 87178291200.0 +
            r2 * (1.0 / 20922789888000.0))))))));
    switch (static_cast<int>(q) & 3) {
        case 0: return {c, s};
        case 1: return {-s, c};
        case 2: return {-c, -s};
        default: return {s, -c};
    }
}

Point2D isotropic_offset(Point2D origin, double dist, RandomStream& rng) {
    const Point2D u = unit_direction(rng.uniform());
    return {origin.x + dist * u.x, origin.y + dist * u.y};
}

RadialPppSampler::RadialPppSampler(double density, Point2D center, double radius)
    : density_(density), center_(center), radius_(radius) {
    require_density(density, "RadialPppSampler");
    require_radius(radius, "RadialPppSampler");
    exhausted_ = density == 0.0;
}

std::optional<Point2D> RadialPppSampler::next(RandomStream& rng) {
    if (exhausted_) {
        return std::nullopt;
    }
    area_ += rng.exponential() / density_;
    const double r = std::sqrt(area_ / std::numbers::pi);
    const Point2D u = unit_direction(rng.uniform());
    if (r > radius_) {
        exhausted_ = true;
        return std::nullopt;
    }
    last_radius_ = r;
    return Point2D{center_.x + r * u.x, center_.y + r * u.y};
}

std::vector<Point2D> sample_ppp_disc(double density, Point2D center, double radius,
                                     RandomStream& rng) {
    RadialPppSampler sampler(density, center, radius);
    std::vector<Point2D> points;
    while (auto p = sampler.next(rng)) {
        points.push_back(*p);
    }
    return points;
}

std::vector<Point2D> sample_ppp_disc(double density, double radius, RandomStream& rng) {
    return sample_ppp_disc(density, Point2D{}, radius, rng);
}

std::vector<MarkedTriple> attach_marks(std::span<const Point2D> sc_points, double ul_distance,
                                       double dl_distance, RandomStream& rng) {
    if (!(ul_distance > 0.0) || !(dl_distance > 0.0)) {
        throw InvalidArgument("attach_marks: UL and DL distances must be > 0");
    }
    std::vector<MarkedTriple> triples;
    triples.reserve(sc_points.size());
    for (const Point2D sc : sc_points) {
        const Point2D ul = isotropic_offset(sc, ul_distance, rng);
        const Point2D dl = isotropic_offset(sc, dl_distance, rng);
        triples.push_back({sc, ul, dl});
    }
    return triples;
}

FileField sample_file_field(const FileCatalog& catalog, Point2D center, double radius,
                            RandomStream& rng) {
    const auto popularity = catalog.popularity();
    std::vector<double> cumulative(popularity.size());
    std::partial_sum(popularity.begin(), popularity.end(), cumulative.begin());

    FileField field{{}, center, radius};
    for (const Point2D p : sample_ppp_disc(catalog.file_density(), center, radius, rng)) {
        const double u = rng.uniform() * cumulative.back();
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const auto index = static_cast<std::size_t>(
            std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                     static_cast<std::ptrdiff_t>(cumulative.size()) - 1));
        field.points.push_back({p, index + 1});
    }
    return field;
}

FileField sample_file_points(const FileCatalog& catalog, std::size_t file, Point2D center,
                             double radius, RandomStream& rng) {
    const double density = file_intensity(catalog, file);
    FileField field{{}, center, radius};
    for (const Point2D p : sample_ppp_disc(density, center, radius, rng)) {
        field.points.push_back({p, file});
    }
    return field;
}

std::size_t count_in_ball(const FileField& field, Point2D center, double radius,
                          std::size_t file) {
    if (!(radius >= 0.0)) {
        throw InvalidArgument("count_in_ball: radius must be >= 0");
    }
    const double reach = distance(center, field.center) + radius;
    if (reach > field.radius * (1.0 + 1e-12)) {
        throw WindowTooSmall("count_in_ball: ball reaches " + std::to_string(reach) +
                             " m from the window centre, window radius is " +
                             std::to_string(field.radius) + " m");
    }
    if (radius == 0.0) {
        return 0;
    }
    const double r2 = radius * radius;
    return static_cast<std::size_t>(
        std::count_if(field.points.begin(), field.points.end(), [&](const FilePoint& p) {
            return p.file == file && distance_squared(p.position, center) <= r2;
        }));
}

TiledFileField::TiledFileField(const FileCatalog& catalog, RandomStream base, double tile_size)
    : catalog_(&catalog), base_(base), tile_(tile_size) {
    require_radius(tile_size, "TiledFileField");
}

template <class Visitor>
bool TiledFileField::visit_ball(Point2D center, double radius, std::size_t file,
                                Visitor&& visit) const {
    const double mean = file_intensity(*catalog_, file) * tile_ * tile_;
    const auto ix0 = static_cast<std::int64_t>(std::floor((center.x - radius) / tile_));
    const auto ix1 = static_cast<std::int64_t>(std::floor((center.x + radius) / tile_));
    const auto iy0 = static_cast<std::int64_t>(std::floor((center.y - radius) / tile_));
    const auto iy1 = static_cast<std::int64_t>(std::floor((center.y + radius) / tile_));
    const double r2 = radius * radius;
    const RandomStream file_stream = base_.split(file);

    for (auto ix = ix0; ix <= ix1; ++ix) {
        for (auto iy = iy0; iy <= iy1; ++iy) {
            // Skip tiles that cannot intersect the ball.
            const double nx = std::clamp(center.x, ix * tile_, (ix + 1) * tile_);
            const double ny = std::clamp(center.y, iy * tile_, (iy + 1) * tile_);
            if (distance_squared({nx, ny}, center) > r2) {
                continue;
            }
            RandomStream tile = file_stream.split(static_cast<std::uint64_t>(ix))
                                    .split(static_cast<std::uint64_t>(iy));
            std::poisson_distribution<long> count_dist(mean);
            const long count = mean > 0.0 ? count_dist(tile) : 0;
            for (long k = 0; k < count; ++k) {
                const Point2D p{(ix + tile.uniform()) * tile_, (iy + tile.uniform()) * tile_};
                if (distance_squared(p, center) <= r2 && !visit()) {
                    return false;
                }
            }
        }
    }
    return true;
}

std::size_t TiledFileField::count_in_ball(Point2D center, double radius,
                                          std::size_t file) const {
    std::size_t count = 0;
    if (radius > 0.0) {
        visit_ball(center, radius, file, [&] {
            ++count;
            return true;
        });
    }
    return count;
}

bool TiledFileField::any_in_ball(Point2D center, double radius, std::size_t file) const {
    if (!(radius > 0.0)) {
        return false;
    }
    return !visit_ball(center, radius, file, [] { return false; });
}

}  // namespace fdcache
