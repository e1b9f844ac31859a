// Copyright 2026 The AWCD Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AWCD_BENCH_METRICS_HPP_
#define AWCD_BENCH_METRICS_HPP_

#include <limits>
#include <span>
#include <vector>

#include "awcd/cloud/point_cloud.hpp"

namespace awcd::bench {

/// Denoising scores from raw counts. FPR is the noise retention rate
/// |D1 n N| / |N|, so lower is better and SNRG = TPR / FPR - 1.
struct MetricsRow {
    std::size_t real = 0;        // |D|
    std::size_t noise = 0;       // |N|
    std::size_t kept_real = 0;   // |D1 n D|
    std::size_t kept_noise = 0;  // |D1 n N|
    double tpr = 0.0;
    double fpr = 0.0;
    double snrg = 0.0;
};

/// Fills the rates from the counts; SNRG is +inf when no noise survives.
inline MetricsRow metrics_from_counts(std::size_t real, std::size_t noise, std::size_t kept_real,
                                      std::size_t kept_noise) {
    if (real == 0 || noise == 0) throw DomainError("metrics undefined: both |D| and |N| must be nonzero");
    if (kept_real > real || kept_noise > noise) throw DomainError("metrics: kept counts exceed class sizes");
    MetricsRow m{real, noise, kept_real, kept_noise, 0.0, 0.0, 0.0};
    m.tpr = static_cast<double>(kept_real) / static_cast<double>(real);
    m.fpr = static_cast<double>(kept_noise) / static_cast<double>(noise);
    if (kept_noise == 0) {
        m.snrg = std::numeric_limits<double>::infinity();
    } else {
        m.snrg = (static_cast<double>(kept_real) / static_cast<double>(kept_noise)) *
                     (static_cast<double>(noise) / static_cast<double>(real)) -
                 1.0;
    }
    return m;
}

inline MetricsRow compute_metrics(std::span<const cloud::Label> labels, std::span<const std::size_t> kept) {
    std::size_t real = 0;
    for (cloud::Label l : labels) real += l == cloud::Label::real;
    const std::size_t noise = labels.size() - real;

    std::vector<char> seen(labels.size(), 0);
    std::size_t kept_real = 0;
    std::size_t kept_noise = 0;
    for (std::size_t i : kept) {
        if (i >= labels.size()) throw DomainError("compute_metrics: kept index out of range");
        if (seen[i]) throw DomainError("compute_metrics: duplicate kept index");
        seen[i] = 1;
        (labels[i] == cloud::Label::real ? kept_real : kept_noise)++;
    }
    return metrics_from_counts(real, noise, kept_real, kept_noise);
}

} // namespace awcd::bench

#endif // AWCD_BENCH_METRICS_HPP_
