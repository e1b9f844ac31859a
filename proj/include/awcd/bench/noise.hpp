// Copyright 2026 The AWCD Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AWCD_BENCH_NOISE_HPP_
#define AWCD_BENCH_NOISE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "awcd/bench/random.hpp"
#include "awcd/cloud/point_cloud.hpp"

namespace awcd::bench {

inline constexpr double kDefaultExpansion = 1.2;

struct NoiseSpec {
    /// |D| / |N|.
    double snr = 1.0;
    /// Bounding-box half-extents are scaled by this factor about the center.
    double expansion = kDefaultExpansion;
    std::uint64_t seed = 0;
};

inline std::size_t noise_count(std::size_t real_count, double snr) {
    if (!(snr > 0.0) || !std::isfinite(snr)) throw ParameterError("noise: SNR must be finite and > 0");
    const double n = std::round(static_cast<double>(real_count) / snr);
    if (n < 1.0) throw ParameterError("noise: SNR too large, round(|D| / SNR) < 1");
    return static_cast<std::size_t>(n);
}

/// Returns D followed by round(|D| / snr) points uniform in the expanded
/// bounding box of D, labeled real/noise. Existing labels of D are kept.
inline cloud::PointCloud inject_noise(const cloud::PointCloud& clean, const NoiseSpec& spec) {
    if (clean.empty()) throw EmptyInputError("inject_noise: empty cloud");
    if (!(spec.expansion >= 1.0) || !std::isfinite(spec.expansion))
        throw ParameterError("inject_noise: expansion factor must be >= 1");
    const std::size_t count = noise_count(clean.size(), spec.snr);
    const std::size_t dim = clean.dim();

    std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
    std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < clean.size(); ++i) {
        const auto p = clean.point_span(i);
        for (std::size_t d = 0; d < dim; ++d) {
            lo[d] = std::min(lo[d], p[d]);
            hi[d] = std::max(hi[d], p[d]);
        }
    }
    for (std::size_t d = 0; d < dim; ++d) {
        const double center = 0.5 * (lo[d] + hi[d]);
        const double half = 0.5 * (hi[d] - lo[d]) * spec.expansion;
        lo[d] = center - half;
        hi[d] = center + half;
    }

    std::vector<cloud::Label> labels =
        clean.labels().value_or(std::vector<cloud::Label>(clean.size(), cloud::Label::real));
    std::vector<double> coords(clean.coords().begin(), clean.coords().end());
    coords.reserve((clean.size() + count) * dim);
    Rng rng(spec.seed);
    for (std::size_t j = 0; j < count; ++j) {
        for (std::size_t d = 0; d < dim; ++d) coords.push_back(rng.uniform(lo[d], hi[d]));
        labels.push_back(cloud::Label::noise);
    }
    return cloud::PointCloud(dim, std::move(coords), std::move(labels));
}

/// Uniform random subset of `target` points without replacement, in the
/// original order.
inline cloud::PointCloud downsample(const cloud::PointCloud& cloud, std::size_t target, std::uint64_t seed) {
    if (target < 1 || target > cloud.size())
        throw ParameterError("downsample: target " + std::to_string(target) + " outside [1, " +
                             std::to_string(cloud.size()) + "]");
    std::vector<std::size_t> idx(cloud.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = 0; i < target; ++i) std::swap(idx[i], idx[i + rng.below(cloud.size() - i)]);
    idx.resize(target);
    std::sort(idx.begin(), idx.end());
    return cloud.subset(idx);
}

} // namespace awcd::bench

#endif // AWCD_BENCH_NOISE_HPP_
