// Copyright 2026 The AWCD Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AWCD_CLOUD_POINT_CLOUD_HPP_
#define AWCD_CLOUD_POINT_CLOUD_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "awcd/error.hpp"

namespace awcd::cloud {

/// Benchmark ground truth.
enum class Label : std::uint8_t { real, noise };

inline const char* to_string(Label l) { return l == Label::real ? "real" : "noise"; }

/// Ordered points of a common dimension, stored contiguously point by point.
class PointCloud {
public:
    using ConstPoint = Eigen::Map<const Eigen::VectorXd>;

    explicit PointCloud(std::size_t dim = 3) : dim_(dim) {
        if (dim == 0) throw DomainError("PointCloud: dimension must be positive");
    }

    /// `coords` holds dim * n values, point-major.
    PointCloud(std::size_t dim, std::vector<double> coords, std::optional<std::vector<Label>> labels = std::nullopt)
        : PointCloud(dim) {
        if (coords.size() % dim != 0) throw DomainError("PointCloud: coordinate count is not a multiple of dim");
        coords_ = std::move(coords);
        if (labels) set_labels(std::move(*labels));
    }

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return coords_.size() / dim_; }
    bool empty() const { return coords_.empty(); }

    ConstPoint point(std::size_t i) const {
        return ConstPoint(coords_.data() + i * dim_, static_cast<Eigen::Index>(dim_));
    }
    std::span<const double> point_span(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
    std::span<const double> coords() const { return coords_; }

    void push_back(std::span<const double> p) {
        if (p.size() != dim_) throw DomainError("PointCloud: point dimension mismatch");
        if (labels_) throw DomainError("PointCloud: labeled cloud requires a label for every point");
        coords_.insert(coords_.end(), p.begin(), p.end());
    }
    void push_back(std::span<const double> p, Label label) {
        if (p.size() != dim_) throw DomainError("PointCloud: point dimension mismatch");
        if (!labels_) {
            if (!empty()) throw DomainError("PointCloud: cannot add a label to an unlabeled cloud");
            labels_.emplace();
        }
        coords_.insert(coords_.end(), p.begin(), p.end());
        labels_->push_back(label);
    }
    void push_back(const Eigen::VectorXd& p) { push_back(std::span<const double>(p.data(), p.size())); }
    void push_back(const Eigen::VectorXd& p, Label l) { push_back(std::span<const double>(p.data(), p.size()), l); }

    void reserve(std::size_t n) { coords_.reserve(n * dim_); }

    const std::optional<std::vector<Label>>& labels() const { return labels_; }
    bool has_labels() const { return labels_.has_value(); }
    void set_labels(std::vector<Label> labels) {
        if (labels.size() != size()) throw DomainError("PointCloud: label count differs from point count");
        labels_ = std::move(labels);
    }
    void clear_labels() { labels_.reset(); }

    /// Points at `indices`, in the given order, with their labels.
    PointCloud subset(std::span<const std::size_t> indices) const {
        PointCloud out(dim_);
        out.coords_.reserve(indices.size() * dim_);
        if (labels_) out.labels_.emplace();
        for (std::size_t i : indices) {
            if (i >= size()) throw DomainError("PointCloud::subset: index out of range");
            const auto p = point_span(i);
            out.coords_.insert(out.coords_.end(), p.begin(), p.end());
            if (labels_) out.labels_->push_back((*labels_)[i]);
        }
        return out;
    }

    friend bool operator==(const PointCloud&, const PointCloud&) = default;

private:
    std::size_t dim_;
    std::vector<double> coords_;
    std::optional<std::vector<Label>> labels_;
};

} // namespace awcd::cloud

#endif // AWCD_CLOUD_POINT_CLOUD_HPP_
