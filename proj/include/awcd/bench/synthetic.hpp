// Copyright 2026 The AWCD Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AWCD_BENCH_SYNTHETIC_HPP_
#define AWCD_BENCH_SYNTHETIC_HPP_

#include <array>
#include <cmath>
#include <numbers>

#include "awcd/bench/random.hpp"
#include "awcd/cloud/point_cloud.hpp"

namespace awcd::bench {

/// n points uniform on the sphere of the given radius centered at the origin
/// (uniform z and azimuth, Archimedes' projection).
inline cloud::PointCloud sphere_surface(std::size_t n, double radius, std::uint64_t seed) {
    Rng rng(seed);
    cloud::PointCloud out(3);
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = rng.uniform(-1.0, 1.0);
        const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const std::array<double, 3> p{radius * r * std::cos(phi), radius * r * std::sin(phi), radius * z};
        out.push_back(p);
    }
    return out;
}

} // namespace awcd::bench

#endif // AWCD_BENCH_SYNTHETIC_HPP_
