// Copyright 2026 The AWCD Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AWCD_DENOISE_SOR_HPP_
#define AWCD_DENOISE_SOR_HPP_

#include "awcd/cloud/local_stats.hpp"
#include "awcd/denoise/result.hpp"

namespace awcd::denoise {

/// (P - mu)^T Sigma (P - mu) - ||P - mu||^4. Nonnegative means P lies in the
/// one-sigma confidence region of N(mu, Sigma); for Sigma = s^2 I this is
/// exactly ||P - mu|| <= s.
inline double confidence_margin(const Eigen::VectorXd& offset, const Eigen::MatrixXd& sigma) {
    const double sq = offset.squaredNorm();
    return offset.dot(sigma * offset) - sq * sq;
}

inline bool within_confidence(const Eigen::VectorXd& offset, const Eigen::MatrixXd& sigma) {
    return confidence_margin(offset, sigma) >= 0.0;
}

/// Statistical outlier removal with the generalized one-sigma test over the
/// k-nearest-neighbor Gaussian of every point.
inline DenoiseResult sor(const cloud::PointCloud& cloud, const cloud::SpatialIndex& index, std::size_t k,
                         unsigned threads = 0) {
    const cloud::LocalStats stats = cloud::local_statistics(cloud, index, k, threads);
    DenoiseResult out;
    out.method = "sor";
    out.parameters = {{"k", static_cast<double>(k)}};
    out.statistic.resize(cloud.size());
    std::vector<char> keep(cloud.size(), 0);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Eigen::VectorXd offset = cloud.point(i) - stats.means[i];
        out.statistic[i] = confidence_margin(offset, stats.covariances[i].matrix());
        keep[i] = out.statistic[i] >= 0.0;
    }
    out.kept = collect_kept(keep);
    return out;
}

} // namespace awcd::denoise

#endif // AWCD_DENOISE_SOR_HPP_
