// Copyright 2026 The AWCD Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AWCD_DENOISE_CURVATURE_FIELD_HPP_
#define AWCD_DENOISE_CURVATURE_FIELD_HPP_

#include <vector>

#include "awcd/cloud/local_stats.hpp"
#include "awcd/spd/geometry.hpp"

namespace awcd::denoise {

struct CurvatureField {
    std::vector<double> values;
    std::vector<char> degenerate;

    std::size_t size() const { return values.size(); }
};

/// Scalar curvature of every local covariance. Geometry failures turn into a
/// capped value with the degenerate flag set; the field is never aborted.
inline CurvatureField curvature_field(const cloud::LocalStats& stats, unsigned threads = 0) {
    const std::size_t n = stats.covariances.size();
    CurvatureField field;
    field.values.resize(n);
    field.degenerate.resize(n);
    parallel_for(
        n,
        [&](std::size_t i) {
            const spd::SpdMatrix& sigma = stats.covariances[i];
            try {
                const spd::ScalarCurvature rho = spd::scalar_curvature(sigma);
                field.values[i] = rho.value;
                field.degenerate[i] = rho.degenerate;
            } catch (const NumericalError&) {
                field.values[i] = 3.0 * static_cast<double>(sigma.dim()) / sigma.eigenvalue_floor();
                field.degenerate[i] = 1;
            }
        },
        threads);
    return field;
}

inline CurvatureField curvature_field(const cloud::PointCloud& cloud, const cloud::SpatialIndex& index, std::size_t k,
                                      unsigned threads = 0) {
    return curvature_field(cloud::local_statistics(cloud, index, k, threads), threads);
}

} // namespace awcd::denoise

#endif // AWCD_DENOISE_CURVATURE_FIELD_HPP_
