// Copyright 2026 The AWCD Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AWCD_DENOISE_AWCD_HPP_
#define AWCD_DENOISE_AWCD_HPP_

#include <optional>

#include "awcd/denoise/curvature_field.hpp"
#include "awcd/denoise/histogram.hpp"
#include "awcd/denoise/result.hpp"
#include "awcd/denoise/sor.hpp"

namespace awcd::denoise {

inline constexpr std::size_t kDefaultK = 30;

struct AwcdOptions {
    std::size_t k = kDefaultK;
    /// Manual mark curvature; skips the histogram.
    std::optional<double> rho0;
    /// Also require the one-sigma confidence test of SOR.
    bool regular_term = false;
    std::optional<std::size_t> bins;
    unsigned threads = 0;
};

/// Adaptive Wasserstein curvature denoising: keep P_i when the scalar
/// curvature of its local covariance reaches the mark curvature rho0.
inline DenoiseResult awcd(const cloud::PointCloud& cloud, const cloud::SpatialIndex& index,
                          const AwcdOptions& opt = {}) {
    if (opt.rho0 && std::isnan(*opt.rho0)) throw ParameterError("awcd: rho0 must not be NaN");
    const cloud::LocalStats stats = cloud::local_statistics(cloud, index, opt.k, opt.threads);
    const CurvatureField field = curvature_field(stats, opt.threads);

    DenoiseResult out;
    out.method = "awcd";
    out.parameters = {{"k", static_cast<double>(opt.k)}, {"regular_term", opt.regular_term ? 1.0 : 0.0}};
    if (opt.rho0) {
        out.mark = MarkCurvature{*opt.rho0, MarkMethod::manual, {}, {}, {}, {}};
    } else {
        out.histogram = build_histogram(field.values, opt.bins);
        out.mark = mark_curvature(*out.histogram, field.values);
    }
    const double rho0 = out.mark->value;
    out.parameters["rho0"] = rho0;

    std::vector<char> keep(cloud.size(), 0);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        bool keep_i = field.values[i] >= rho0;
        if (keep_i && opt.regular_term)
            keep_i = within_confidence(cloud.point(i) - stats.means[i], stats.covariances[i].matrix());
        keep[i] = keep_i;
    }
    out.statistic = field.values;
    out.kept = collect_kept(keep);
    return out;
}

} // namespace awcd::denoise

#endif // AWCD_DENOISE_AWCD_HPP_
