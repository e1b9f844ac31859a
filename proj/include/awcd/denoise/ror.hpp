// Copyright 2026 The AWCD Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AWCD_DENOISE_ROR_HPP_
#define AWCD_DENOISE_ROR_HPP_

#include <cmath>

#include "awcd/cloud/spatial_index.hpp"
#include "awcd/denoise/result.hpp"
#include "awcd/parallel.hpp"

namespace awcd::denoise {

/// Radius outlier removal: keep P_i when its closed d-ball, P_i included,
/// holds at least `min_count` points.
inline DenoiseResult ror(const cloud::PointCloud& cloud, const cloud::SpatialIndex& index, double radius,
                         std::size_t min_count, unsigned threads = 0) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw ParameterError("ror: radius must be finite and > 0");
    if (min_count < 1) throw ParameterError("ror: min-count must be >= 1");
    if (index.size() != cloud.size()) throw DomainError("ror: index was not built over this cloud");

    DenoiseResult out;
    out.method = "ror";
    out.parameters = {{"radius", radius}, {"min_count", static_cast<double>(min_count)}};
    out.statistic.resize(cloud.size());
    std::vector<char> keep(cloud.size(), 0);
    parallel_for(
        cloud.size(),
        [&](std::size_t i) {
            const std::size_t count = index.radius_count(cloud.point_span(i), radius);
            out.statistic[i] = static_cast<double>(count);
            keep[i] = count >= min_count;
        },
        threads);
    out.kept = collect_kept(keep);
    return out;
}

} // namespace awcd::denoise

#endif // AWCD_DENOISE_ROR_HPP_
