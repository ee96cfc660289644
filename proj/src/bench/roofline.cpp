// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#include "larch/bench/roofline.hpp"

#include <string>

#include "larch/core/error.hpp"

namespace larch {


RooflineModel compute_bounds(double peak_bandwidth_gbs)
{
    if (!(peak_bandwidth_gbs > 0.0)) {
        throw ConfigurationError("peak bandwidth must be positive, got " +
                                 std::to_string(peak_bandwidth_gbs));
    }
    RooflineModel model;
    model.peak_bandwidth = peak_bandwidth_gbs;
    model.coo_bound = peak_bandwidth_gbs / 8.0;
    model.csr_bound = peak_bandwidth_gbs / 6.0;
    model.solver_bound = peak_bandwidth_gbs / 8.0;
    return model;
}


}  // namespace larch
