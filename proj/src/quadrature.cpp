// Copyright 2026 The fdcache Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdcache/quadrature.hpp"

namespace fdcache {

void QuadratureSettings::validate() const {
    if (!(relative_tolerance > 0.0) || !(absolute_tolerance > 0.0)) {
        throw InvalidArgument("QuadratureSettings: tolerances must be > 0");
    }
    if (!(truncation_threshold > 0.0)) {
        throw InvalidArgument("QuadratureSettings: truncation threshold must be > 0");
    }
    const bool power_of_two = angular_panels != 0 && (angular_panels & (angular_panels - 1)) == 0;
    if (!power_of_two || angular_panels < 16) {
        throw InvalidArgument("QuadratureSettings: angular panel count must be a power of two >= 16");
    }
    if (max_angular_panels < 2 * angular_panels) {
        throw InvalidArgument("QuadratureSettings: max angular panels must allow one refinement");
    }
    if (max_intervals < 1) {
        throw InvalidArgument("QuadratureSettings: max intervals must be >= 1");
    }
}

}  // namespace fdcache
