// Copyright 2026 The AWCD Authors
// SPDX-License-Identifier: Apache-2.0
//
// Curvature histogram and the adaptive mark curvature: the trough between
// the noise hill and the structure hill, with an Otsu fallback.

#ifndef AWCD_DENOISE_HISTOGRAM_HPP_
#define AWCD_DENOISE_HISTOGRAM_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "awcd/error.hpp"
#include "awcd/text.hpp"

namespace awcd::denoise {

inline constexpr std::size_t kMinBins = 32;
inline constexpr std::size_t kMaxBins = 256;
inline constexpr std::size_t kSmoothingWindow = 5;
/// A second hill must reach this fraction of the highest smoothed peak.
inline constexpr double kMinPeakRatio = 0.05;
/// The valley must fall to at most this fraction of the lower peak.
inline constexpr double kMaxValleyRatio = 0.5;

struct CurvatureHistogram {
    std::vector<double> edges;        // bins() + 1, strictly increasing
    std::vector<std::size_t> counts;  // per bin; the last bin is closed
    std::size_t total = 0;

    std::size_t bins() const { return counts.size(); }
    double center(std::size_t bin) const { return 0.5 * (edges[bin] + edges[bin + 1]); }
};

enum class MarkMethod { trough, otsu_fallback, manual };

inline const char* to_string(MarkMethod m) {
    switch (m) {
    case MarkMethod::trough: return "trough";
    case MarkMethod::otsu_fallback: return "otsu-fallback";
    case MarkMethod::manual: return "manual";
    }
    return "?";
}

struct MarkCurvature {
    double value = 0.0;
    MarkMethod method = MarkMethod::manual;
    std::optional<std::size_t> low_peak;   // bin indices, trough method only
    std::optional<std::size_t> high_peak;
    std::optional<std::size_t> trough;
    std::vector<double> smoothed;
};

namespace detail {

/// Type-7 (linear interpolation) quantile of sorted data.
inline double quantile_sorted(std::span<const double> sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

inline void check_values(std::span<const double> values) {
    if (values.empty()) throw EmptyInputError("histogram: no curvature values");
    for (double v : values)
        if (!std::isfinite(v)) throw DomainError("histogram: non-finite curvature value");
}

} // namespace detail

/// Freedman-Diaconis bin count, width 2 * IQR / n^(1/3), clamped to [32, 256].
inline std::size_t freedman_diaconis_bins(std::span<const double> values) {
    detail::check_values(values);
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double range = sorted.back() - sorted.front();
    const double iqr = detail::quantile_sorted(sorted, 0.75) - detail::quantile_sorted(sorted, 0.25);
    const double width = 2.0 * iqr / std::cbrt(static_cast<double>(sorted.size()));
    if (!(width > 0.0)) return kMaxBins;
    const double bins = std::ceil(range / width);
    return static_cast<std::size_t>(std::clamp(bins, static_cast<double>(kMinBins), static_cast<double>(kMaxBins)));
}

/// Equal-width bins over [min, max]. Throws DegenerateHistogramError when all
/// values coincide.
inline CurvatureHistogram build_histogram(std::span<const double> values, std::optional<std::size_t> bins = {}) {
    detail::check_values(values);
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!(hi > lo))
        throw DegenerateHistogramError("all curvatures are equal; no trough exists, supply the mark curvature manually");
    const std::size_t nb = bins.value_or(freedman_diaconis_bins(values));
    if (nb == 0) throw ParameterError("histogram: bin count must be positive");

    CurvatureHistogram h;
    h.total = values.size();
    h.counts.assign(nb, 0);
    h.edges.resize(nb + 1);
    const double width = (hi - lo) / static_cast<double>(nb);
    for (std::size_t i = 0; i < nb; ++i) h.edges[i] = lo + width * static_cast<double>(i);
    h.edges[nb] = hi;
    for (std::size_t i = 0; i < nb; ++i)
        if (!(h.edges[i + 1] > h.edges[i]))
            throw DegenerateHistogramError("curvature range too narrow for " + std::to_string(nb) + " bins");

    for (double v : values) {
        auto bin = static_cast<std::size_t>(std::floor((v - lo) / width));
        bin = std::min(bin, nb - 1);
        // Keep membership consistent with the stored edges.
        while (bin > 0 && v < h.edges[bin]) --bin;
        while (bin + 1 < nb && v >= h.edges[bin + 1]) ++bin;
        ++h.counts[bin];
    }
    return h;
}

/// Centered moving average; windows are truncated at the histogram ends.
inline std::vector<double> smooth_counts(std::span<const std::size_t> counts, std::size_t window = kSmoothingWindow) {
    const std::size_t half = window / 2;
    std::vector<double> out(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const std::size_t a = i >= half ? i - half : 0;
        const std::size_t b = std::min(counts.size() - 1, i + half);
        double acc = 0.0;
        for (std::size_t j = a; j <= b; ++j) acc += static_cast<double>(counts[j]);
        out[i] = acc / static_cast<double>(b - a + 1);
    }
    return out;
}

/// Otsu's between-class-variance split on the raw values; the threshold is
/// the midpoint between the last value of the lower class and the first value
/// of the upper class.
inline double otsu_threshold(std::span<const double> values) {
    detail::check_values(values);
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    if (!(v.back() > v.front()))
        throw DegenerateHistogramError("all curvatures are equal; supply the mark curvature manually");

    const auto n = static_cast<double>(v.size());
    double total = 0.0;
    for (double x : v) total += x;

    double prefix = 0.0;
    double best = -1.0;
    std::size_t best_split = 1;
    for (std::size_t k = 1; k < v.size(); ++k) {
        prefix += v[k - 1];
        if (!(v[k] > v[k - 1])) continue;
        const double w0 = static_cast<double>(k) / n;
        const double w1 = 1.0 - w0;
        const double mu0 = prefix / static_cast<double>(k);
        const double mu1 = (total - prefix) / static_cast<double>(v.size() - k);
        const double between = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
        if (between > best) {
            best = between;
            best_split = k;
        }
    }
    return 0.5 * (v[best_split - 1] + v[best_split]);
}

/// Locates the trough between the two dominant hills of the smoothed
/// histogram. Falls back to Otsu on `values` when no qualifying pair of hills
/// exists.
inline MarkCurvature mark_curvature(const CurvatureHistogram& hist, std::span<const double> values) {
    if (hist.bins() == 0 || hist.total == 0) throw DegenerateHistogramError("empty histogram");

    MarkCurvature out;
    out.smoothed = smooth_counts(hist.counts);
    const std::vector<double>& s = out.smoothed;
    const std::size_t nb = s.size();

    std::vector<std::size_t> peaks;
    for (std::size_t i = 0; i < nb; ++i) {
        const bool above_left = i == 0 || s[i] > s[i - 1];
        const bool above_right = i + 1 == nb || s[i] > s[i + 1];
        if (above_left && above_right) peaks.push_back(i);
    }
    std::stable_sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return s[a] > s[b]; });

    if (!peaks.empty()) {
        const std::size_t main = peaks.front();
        for (std::size_t c = 1; c < peaks.size(); ++c) {
            const std::size_t other = peaks[c];
            if (s[other] < kMinPeakRatio * s[main]) break;
            const std::size_t lo = std::min(main, other);
            const std::size_t hi = std::max(main, other);
            if (hi - lo < 2) continue;

            std::size_t valley = lo + 1;
            for (std::size_t i = lo + 2; i < hi; ++i)
                if (s[i] < s[valley]) valley = i;
            if (s[valley] > kMaxValleyRatio * std::min(s[lo], s[hi])) continue;

            out.value = hist.center(valley);
            out.method = MarkMethod::trough;
            out.low_peak = lo;
            out.high_peak = hi;
            out.trough = valley;
            return out;
        }
    }

    out.value = otsu_threshold(values);
    out.method = MarkMethod::otsu_fallback;
    return out;
}

inline std::string histogram_csv(const CurvatureHistogram& h) {
    std::string out = "bin_lo,bin_hi,count\n";
    for (std::size_t i = 0; i < h.bins(); ++i)
        out += text::format_roundtrip(h.edges[i]) + ',' + text::format_roundtrip(h.edges[i + 1]) + ',' +
               std::to_string(h.counts[i]) + '\n';
    return out;
}

inline nlohmann::json mark_json(const MarkCurvature& m, const CurvatureHistogram* h = nullptr) {
    nlohmann::json diag = nlohmann::json::object();
    auto opt = [](const std::optional<std::size_t>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    diag["low_peak_bin"] = opt(m.low_peak);
    diag["high_peak_bin"] = opt(m.high_peak);
    diag["trough_bin"] = opt(m.trough);
    if (h) {
        auto center = [&](const std::optional<std::size_t>& v) {
            return v ? nlohmann::json(h->center(*v)) : nlohmann::json(nullptr);
        };
        diag["low_peak_center"] = center(m.low_peak);
        diag["high_peak_center"] = center(m.high_peak);
        diag["bins"] = h->bins();
    }
    return {{"value", m.value}, {"method", to_string(m.method)}, {"diagnostics", diag}};
}

} // namespace awcd::denoise

#endif // AWCD_DENOISE_HISTOGRAM_HPP_
