// Copyright 2026 The AWCD Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AWCD_DENOISE_RESULT_HPP_
#define AWCD_DENOISE_RESULT_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "awcd/denoise/histogram.hpp"

namespace awcd::denoise {

struct DenoiseResult {
    std::string method;
    /// Ascending indices of retained points.
    std::vector<std::size_t> kept;
    std::map<std::string, double> parameters;
    /// Per point: neighbor count (ror), confidence margin (sor) or curvature (awcd).
    std::vector<double> statistic;
    /// awcd only.
    std::optional<MarkCurvature> mark;
    std::optional<CurvatureHistogram> histogram;
};

inline std::vector<std::size_t> collect_kept(const std::vector<char>& keep) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < keep.size(); ++i)
        if (keep[i]) out.push_back(i);
    return out;
}

} // namespace awcd::denoise

#endif // AWCD_DENOISE_RESULT_HPP_
