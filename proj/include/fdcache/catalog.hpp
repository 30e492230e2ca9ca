// Copyright 2026 The fdcache Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fdcache {

/// Zipf popularity p_i = 1 / (i^shape * sum_j j^-shape), i = 1..file_count.
///
/// Throws InvalidArgument for file_count == 0 or a negative/non-finite shape.
std::vector<double> zipf_popularity(std::size_t file_count, double shape);

/**
 * Global file catalog with Zipf popularity and a spatial file density.
 *
 * Files are indexed by popularity (index 1 is the most popular); all file
 * indices in the public API are 1-based. Immutable after construction.
 */
class FileCatalog {
  public:
    FileCatalog(std::size_t file_count, double zipf_shape, double file_density);

    std::size_t file_count() const noexcept { return popularity_.size(); }
    double zipf_shape() const noexcept { return shape_; }
    /// Files per square metre over the whole catalog.
    double file_density() const noexcept { return density_; }

    std::span<const double> popularity() const noexcept { return popularity_; }
    /// Popularity of file `index` (1-based).
    double popularity(std::size_t index) const;

  private:
    double shape_;
    double density_;
    std::vector<double> popularity_;
};

/// Density of the thinned file-`index` point process, p_i * eta (files/m^2).
double file_intensity(const FileCatalog& catalog, std::size_t index);

}  // namespace fdcache
