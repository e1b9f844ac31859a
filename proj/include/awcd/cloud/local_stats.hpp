// Copyright 2026 The AWCD Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AWCD_CLOUD_LOCAL_STATS_HPP_
#define AWCD_CLOUD_LOCAL_STATS_HPP_

#include <optional>
#include <vector>

#include "awcd/cloud/spatial_index.hpp"
#include "awcd/parallel.hpp"
#include "awcd/spd/matrix.hpp"

namespace awcd::cloud {

/// Per-point Gaussian summary of the k nearest neighbors: the embedding of
/// the cloud into SPD(dim).
struct LocalStats {
    std::size_t k = 0;
    std::vector<Eigen::VectorXd> means;
    std::vector<spd::SpdMatrix> covariances;
    /// k < dim + 1: every covariance is rank deficient before flooring.
    bool rank_deficient = false;
};

/// Mean and centered, 1/k-normalized covariance of the k nearest neighbors
/// of one cloud point, the point itself excluded.
inline spd::GaussianModel neighborhood_gaussian(const PointCloud& cloud, const SpatialIndex& index, std::size_t i,
                                                std::size_t k) {
    const auto nbrs = index.knn(cloud.point_span(i), k, i);
    const auto dim = static_cast<Eigen::Index>(cloud.dim());
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(dim);
    for (const Neighbor& n : nbrs) mu += cloud.point(n.index);
    mu /= static_cast<double>(k);

    Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(dim, dim);
    for (const Neighbor& n : nbrs) {
        const Eigen::VectorXd c = cloud.point(n.index) - mu;
        sigma.noalias() += c * c.transpose();
    }
    sigma /= static_cast<double>(k);
    return {std::move(mu), spd::SpdMatrix(sigma)};
}

inline void check_neighbor_count(const PointCloud& cloud, std::size_t k) {
    if (cloud.size() < 2) throw ParameterError("local statistics need at least 2 points");
    if (k == 0 || k > cloud.size() - 1)
        throw ParameterError("k = " + std::to_string(k) + " outside [1, " + std::to_string(cloud.size() - 1) + "]");
}

inline LocalStats local_statistics(const PointCloud& cloud, const SpatialIndex& index, std::size_t k,
                                   unsigned threads = 0) {
    check_neighbor_count(cloud, k);
    if (index.size() != cloud.size() || index.dim() != cloud.dim())
        throw DomainError("local_statistics: index was not built over this cloud");

    const std::size_t n = cloud.size();
    std::vector<std::optional<spd::GaussianModel>> slots(n);
    parallel_for(n, [&](std::size_t i) { slots[i].emplace(neighborhood_gaussian(cloud, index, i, k)); }, threads);

    LocalStats out;
    out.k = k;
    out.rank_deficient = k < cloud.dim() + 1;
    out.means.reserve(n);
    out.covariances.reserve(n);
    for (auto& s : slots) {
        out.means.push_back(std::move(s->mean));
        out.covariances.push_back(std::move(s->covariance));
    }
    return out;
}

} // namespace awcd::cloud

#endif // AWCD_CLOUD_LOCAL_STATS_HPP_
