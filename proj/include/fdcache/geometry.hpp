// Copyright 2026 The fdcache Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fdcache/catalog.hpp"
#include "fdcache/random.hpp"

namespace fdcache {

struct Point2D {
    double x = 0.0;
    double y = 0.0;

    friend Point2D operator+(Point2D a, Point2D b) noexcept { return {a.x + b.x, a.y + b.y}; }
    friend Point2D operator-(Point2D a, Point2D b) noexcept { return {a.x - b.x, a.y - b.y}; }
    friend bool operator==(Point2D, Point2D) = default;
};

inline double distance_squared(Point2D a, Point2D b) noexcept {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

double distance(Point2D a, Point2D b) noexcept;

/// A small cell with its uplink (backhaul) and downlink nodes.
struct MarkedTriple {
    Point2D sc;
    Point2D ul;
    Point2D dl;
};

/// (cos, sin) of the angle 2 pi `turns`, for turns in [0, 1). Accurate to a
/// few ulp; cheaper than std::cos plus std::sin.
Point2D unit_direction(double turns) noexcept;

/// Point at `distance` from `origin` in a direction drawn uniformly on [0, 2pi).
/// Consumes exactly one draw from `rng`.
Point2D isotropic_offset(Point2D origin, double distance, RandomStream& rng);

/**
 * Homogeneous PPP on a disc, generated in order of increasing distance from
 * the disc centre.
 *
 * Successive squared radii are the arrival times of a Poisson process in
 * area: pi * r_k^2 = sum of k unit-rate exponentials / density. The point
 * count on the disc is therefore Poisson(density * pi * radius^2) and, given
 * the count, points are i.i.d. uniform. Each point consumes two draws, so a
 * larger radius with the same stream reproduces the smaller disc as a
 * prefix.
 */
class RadialPppSampler {
  public:
    RadialPppSampler(double density, Point2D center, double radius);

    /// Next point outward, or nullopt once the disc is exhausted.
    std::optional<Point2D> next(RandomStream& rng);

    /// Distance from the centre of the last returned point.
    double last_radius() const noexcept { return last_radius_; }

  private:
    double density_;
    Point2D center_;
    double radius_;
    double area_ = 0.0;
    double last_radius_ = 0.0;
    bool exhausted_ = false;
};

/// PPP of `density` points/m^2 on the disc of `radius` around the origin.
std::vector<Point2D> sample_ppp_disc(double density, double radius, RandomStream& rng);
std::vector<Point2D> sample_ppp_disc(double density, Point2D center, double radius,
                                     RandomStream& rng);

/// Gives each SC an UL node at exactly `ul_distance` and a DL node at exactly
/// `dl_distance`, at independent uniform angles (UL angle drawn first).
std::vector<MarkedTriple> attach_marks(std::span<const Point2D> sc_points, double ul_distance,
                                       double dl_distance, RandomStream& rng);

struct FilePoint {
    Point2D position;
    std::size_t file;  ///< 1-based catalog index
};

/// Realized geographic file content inside a disc window.
struct FileField {
    std::vector<FilePoint> points;
    Point2D center;
    double radius = 0.0;
};

/// Full marked field: PPP of density eta with i.i.d. popularity-distributed file marks.
FileField sample_file_field(const FileCatalog& catalog, Point2D center, double radius,
                            RandomStream& rng);

/// Only the points carrying file `file`, i.e. the thinned PPP of density p_i * eta.
FileField sample_file_points(const FileCatalog& catalog, std::size_t file, Point2D center,
                             double radius, RandomStream& rng);

/// Number of file-`file` points within `radius` of `center`.
///
/// Throws WindowTooSmall if the ball is not contained in the field window,
/// since points outside the window were never sampled.
std::size_t count_in_ball(const FileField& field, Point2D center, double radius,
                          std::size_t file);

/**
 * Unbounded file field realized lazily on a square tiling.
 *
 * The points of file i in tile (ix, iy) are generated on demand from a stream
 * keyed by (i, ix, iy), so overlapping queries always see the same shared
 * realization without materializing the whole plane.
 */
class TiledFileField {
  public:
    TiledFileField(const FileCatalog& catalog, RandomStream base, double tile_size = 16.0);

    std::size_t count_in_ball(Point2D center, double radius, std::size_t file) const;
    bool any_in_ball(Point2D center, double radius, std::size_t file) const;

  private:
    template <class Visitor>
    bool visit_ball(Point2D center, double radius, std::size_t file, Visitor&& visit) const;

    const FileCatalog* catalog_;
    RandomStream base_;
    double tile_;
};

}  // namespace fdcache
