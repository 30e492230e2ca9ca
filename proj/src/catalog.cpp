// Copyright 2026 The fdcache Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdcache/catalog.hpp"

#include <cmath>
#include <string>

#include "fdcache/errors.hpp"

namespace fdcache {

std::vector<double> zipf_popularity(std::size_t file_count, double shape) {
    if (file_count == 0) {
        throw InvalidArgument("zipf_popularity: file count must be at least 1");
    }
    if (!std::isfinite(shape) || shape < 0.0) {
        throw InvalidArgument("zipf_popularity: shape must be finite and >= 0, got " +
                              std::to_string(shape));
    }

    // Neumaier summation of sum_j j^-shape.
    double sum = 0.0;
    double compensation = 0.0;
    for (std::size_t j = 1; j <= file_count; ++j) {
        const double term = std::pow(static_cast<double>(j), -shape);
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term)) {
            compensation += (sum - t) + term;
        } else {
            compensation += (term - t) + sum;
        }
        sum = t;
    }
    sum += compensation;

    std::vector<double> popularity(file_count);
    for (std::size_t i = 1; i <= file_count; ++i) {
        popularity[i - 1] = 1.0 / (std::pow(static_cast<double>(i), shape) * sum);
    }
    return popularity;
}

FileCatalog::FileCatalog(std::size_t file_count, double zipf_shape, double file_density)
    : shape_(zipf_shape), density_(file_density) {
    if (!std::isfinite(file_density) || file_density < 0.0) {
        throw InvalidArgument("FileCatalog: file density must be finite and >= 0");
    }
    popularity_ = zipf_popularity(file_count, zipf_shape);
}

double FileCatalog::popularity(std::size_t index) const {
    if (index < 1 || index > popularity_.size()) {
        throw InvalidArgument("FileCatalog: file index " + std::to_string(index) +
                              " outside [1, " + std::to_string(popularity_.size()) + "]");
    }
    return popularity_[index - 1];
}

double file_intensity(const FileCatalog& catalog, std::size_t index) {
    return catalog.popularity(index) * catalog.file_density();
}

}  // namespace fdcache
