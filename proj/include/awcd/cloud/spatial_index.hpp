// Copyright 2026 The AWCD Authors
// SPDX-License-Identifier: Apache-2.0
//
// Exact KD-tree for k-nearest-neighbor and closed-ball radius queries.

#ifndef AWCD_CLOUD_SPATIAL_INDEX_HPP_
#define AWCD_CLOUD_SPATIAL_INDEX_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "awcd/cloud/point_cloud.hpp"

namespace awcd::cloud {

struct Neighbor {
    std::size_t index;
    double distance;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Squared Euclidean distance, summed in coordinate order.
inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        acc += diff * diff;
    }
    return acc;
}

/// Immutable KD-tree over a copy of the cloud's coordinates.
///
/// Nodes split at the median of the axis with the widest spread; leaves hold
/// at most `leaf_size` points. Queries are exact: kNN returns the k smallest
/// (distance, index) pairs in lexicographic order, so equal distances are
/// broken by the lower point index.
class SpatialIndex {
public:
    static constexpr std::size_t kDefaultLeafSize = 16;

    explicit SpatialIndex(const PointCloud& cloud, std::size_t leaf_size = kDefaultLeafSize)
        : dim_(cloud.dim()), size_(cloud.size()), leaf_size_(std::max<std::size_t>(leaf_size, 1)) {
        if (cloud.empty()) throw EmptyInputError("SpatialIndex: cannot index an empty cloud");
        order_.resize(size_);
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        source_ = cloud.coords();
        build(0, size_);
        points_.resize(size_ * dim_);
        for (std::size_t slot = 0; slot < size_; ++slot) {
            const auto p = cloud.point_span(order_[slot]);
            std::copy(p.begin(), p.end(), points_.begin() + static_cast<std::ptrdiff_t>(slot * dim_));
        }
        source_ = {};
    }

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return size_; }
    std::size_t leaf_size() const { return leaf_size_; }

    /// The k nearest points to `query`, ascending by (distance, index).
    /// `exclude` removes one point index from consideration (self-exclusion).
    std::vector<Neighbor> knn(std::span<const double> query, std::size_t k,
                              std::optional<std::size_t> exclude = std::nullopt) const {
        check_query(query);
        const std::size_t available = size_ - (exclude && *exclude < size_ ? 1 : 0);
        if (k == 0 || k > available)
            throw ParameterError("knn: k = " + std::to_string(k) + " outside [1, " + std::to_string(available) + "]");

        Heap heap;
        knn_visit(0, query, k, exclude, heap);
        std::vector<Neighbor> out(heap.size());
        for (std::size_t i = heap.size(); i-- > 0;) {
            const Candidate c = heap.top();
            heap.pop();
            out[i] = {c.index, std::sqrt(c.d2)};
        }
        return out;
    }

    /// Indices of every point with ||p - query|| <= radius, ascending.
    std::vector<std::size_t> radius_neighbors(std::span<const double> query, double radius) const {
        check_radius(query, radius);
        std::vector<std::size_t> out;
        radius_visit(0, query, radius * radius, [&](std::size_t idx) { out.push_back(idx); });
        std::sort(out.begin(), out.end());
        return out;
    }

    std::size_t radius_count(std::span<const double> query, double radius) const {
        check_radius(query, radius);
        std::size_t count = 0;
        radius_visit(0, query, radius * radius, [&](std::size_t) { ++count; });
        return count;
    }

private:
    struct Node {
        std::size_t begin = 0;
        std::size_t end = 0;
        std::uint32_t left = 0;  // 0 marks a leaf; the root is never a child
        std::uint32_t right = 0;
    };

    struct Candidate {
        double d2;
        std::size_t index;
        bool operator<(const Candidate& o) const { return d2 < o.d2 || (d2 == o.d2 && index < o.index); }
    };
    using Heap = std::priority_queue<Candidate>;

    std::size_t build(std::size_t begin, std::size_t end) {
        const std::size_t id = nodes_.size();
        nodes_.push_back({begin, end, 0, 0});
        lo_.resize((id + 1) * dim_);
        hi_.resize((id + 1) * dim_);

        for (std::size_t d = 0; d < dim_; ++d) {
            double lo = std::numeric_limits<double>::infinity();
            double hi = -lo;
            for (std::size_t i = begin; i < end; ++i) {
                const double v = source_[order_[i] * dim_ + d];
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            lo_[id * dim_ + d] = lo;
            hi_[id * dim_ + d] = hi;
        }
        if (end - begin <= leaf_size_) return id;

        std::size_t axis = 0;
        double widest = -1.0;
        for (std::size_t d = 0; d < dim_; ++d) {
            const double spread = hi_[id * dim_ + d] - lo_[id * dim_ + d];
            if (spread > widest) {
                widest = spread;
                axis = d;
            }
        }
        const std::size_t mid = begin + (end - begin) / 2;
        std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                         order_.begin() + static_cast<std::ptrdiff_t>(mid),
                         order_.begin() + static_cast<std::ptrdiff_t>(end), [&](std::size_t a, std::size_t b) {
                             const double va = source_[a * dim_ + axis];
                             const double vb = source_[b * dim_ + axis];
                             return va < vb || (va == vb && a < b);
                         });
        const std::size_t left = build(begin, mid);
        const std::size_t right = build(mid, end);
        nodes_[id].left = static_cast<std::uint32_t>(left);
        nodes_[id].right = static_cast<std::uint32_t>(right);
        return id;
    }

    double box_distance2(std::size_t node, std::span<const double> q) const {
        double acc = 0.0;
        for (std::size_t d = 0; d < dim_; ++d) {
            const double lo = lo_[node * dim_ + d];
            const double hi = hi_[node * dim_ + d];
            double gap = 0.0;
            if (q[d] < lo) gap = lo - q[d];
            else if (q[d] > hi) gap = q[d] - hi;
            acc += gap * gap;
        }
        return acc;
    }

    std::span<const double> slot_point(std::size_t slot) const { return {points_.data() + slot * dim_, dim_}; }

    void knn_visit(std::size_t node_id, std::span<const double> q, std::size_t k,
                   std::optional<std::size_t> exclude, Heap& heap) const {
        const Node& node = nodes_[node_id];
        if (node.left == 0) {
            for (std::size_t slot = node.begin; slot < node.end; ++slot) {
                const std::size_t idx = order_[slot];
                if (exclude && *exclude == idx) continue;
                const Candidate c{squared_distance(slot_point(slot), q), idx};
                if (heap.size() < k) {
                    heap.push(c);
                } else if (c < heap.top()) {
                    heap.pop();
                    heap.push(c);
                }
            }
            return;
        }
        const double dl = box_distance2(node.left, q);
        const double dr = box_distance2(node.right, q);
        const std::size_t first = dl <= dr ? node.left : node.right;
        const std::size_t second = dl <= dr ? node.right : node.left;
        const double d_first = std::min(dl, dr);
        const double d_second = std::max(dl, dr);
        // Equal box distance can still hide a lower-index tie, so prune only on '>'.
        if (heap.size() < k || d_first <= heap.top().d2) knn_visit(first, q, k, exclude, heap);
        if (heap.size() < k || d_second <= heap.top().d2) knn_visit(second, q, k, exclude, heap);
    }

    template <class Emit>
    void radius_visit(std::size_t node_id, std::span<const double> q, double r2, Emit&& emit) const {
        if (box_distance2(node_id, q) > r2) return;
        const Node& node = nodes_[node_id];
        if (node.left == 0) {
            for (std::size_t slot = node.begin; slot < node.end; ++slot)
                if (squared_distance(slot_point(slot), q) <= r2) emit(order_[slot]);
            return;
        }
        radius_visit(node.left, q, r2, emit);
        radius_visit(node.right, q, r2, emit);
    }

    void check_query(std::span<const double> q) const {
        if (q.size() != dim_) throw DomainError("SpatialIndex: query dimension mismatch");
    }
    void check_radius(std::span<const double> q, double radius) const {
        check_query(q);
        if (!(radius >= 0.0) || !std::isfinite(radius))
            throw ParameterError("radius_neighbors: radius must be finite and >= 0");
    }

    std::size_t dim_;
    std::size_t size_;
    std::size_t leaf_size_;
    std::vector<std::size_t> order_;
    std::vector<double> points_;
    std::vector<Node> nodes_;
    std::vector<double> lo_;
    std::vector<double> hi_;
    std::span<const double> source_;  // valid only during construction
};

inline SpatialIndex build_index(const PointCloud& cloud) { return SpatialIndex(cloud); }

inline std::vector<Neighbor> knn(const SpatialIndex& index, std::span<const double> query, std::size_t k) {
    return index.knn(query, k);
}

inline std::vector<std::size_t> radius_neighbors(const SpatialIndex& index, std::span<const double> query,
                                                 double radius) {
    return index.radius_neighbors(query, radius);
}

} // namespace awcd::cloud

#endif // AWCD_CLOUD_SPATIAL_INDEX_HPP_
