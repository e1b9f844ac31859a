// Copyright 2026 The AWCD Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <numeric>

#include "awcd/denoise/histogram.hpp"
#include "support/test_support.hpp"

namespace {

using namespace awcd;
using namespace awcd::denoise;
using awcd::testing::TestRng;

CurvatureHistogram from_counts(std::vector<std::size_t> counts) {
    CurvatureHistogram h;
    h.counts = std::move(counts);
    h.total = std::accumulate(h.counts.begin(), h.counts.end(), std::size_t{0});
    for (std::size_t i = 0; i <= h.counts.size(); ++i) h.edges.push_back(static_cast<double>(i));
    return h;
}

TEST(Histogram, TwoClustersFillEndBins) {
    std::vector<double> v(100, 1.0);
    v.insert(v.end(), 100, 10.0);
    const CurvatureHistogram h = build_histogram(v, 16);
    ASSERT_EQ(h.bins(), 16u);
    EXPECT_EQ(h.counts.front(), 100u);
    EXPECT_EQ(h.counts.back(), 100u);
    EXPECT_EQ(h.total, 200u);
    EXPECT_EQ(h.edges.front(), 1.0);
    EXPECT_EQ(h.edges.back(), 10.0);
}

TEST(Histogram, TotalPreservedAndEdgesIncreasing) {
    TestRng rng(401);
    std::vector<double> v;
    for (int i = 0; i < 3000; ++i) v.push_back(std::exp(rng.normal()));
    const CurvatureHistogram h = build_histogram(v);
    EXPECT_GE(h.bins(), kMinBins);
    EXPECT_LE(h.bins(), kMaxBins);
    EXPECT_EQ(std::accumulate(h.counts.begin(), h.counts.end(), std::size_t{0}), v.size());
    EXPECT_EQ(h.total, v.size());
    for (std::size_t i = 0; i < h.bins(); ++i) EXPECT_LT(h.edges[i], h.edges[i + 1]);
}

TEST(Histogram, UniformCountsWithinFiveSigma) {
    TestRng rng(403);
    std::vector<double> v;
    for (int i = 0; i < 10000; ++i) v.push_back(rng.uniform(0.0, 1.0));
    const CurvatureHistogram h = build_histogram(v, 10);
    const double sigma = std::sqrt(10000 * 0.1 * 0.9);
    for (std::size_t c : h.counts) EXPECT_LT(std::abs(static_cast<double>(c) - 1000.0), 5.0 * sigma);
}

TEST(Histogram, ConstantValuesAreDegenerate) {
    const std::vector<double> v(50, 3.0);
    EXPECT_THROW(build_histogram(v), DegenerateHistogramError);
    EXPECT_THROW(otsu_threshold(v), DegenerateHistogramError);
    EXPECT_THROW(build_histogram(std::vector<double>{}), EmptyInputError);
    EXPECT_THROW(build_histogram(std::vector<double>{1.0, NAN}), DomainError);
}

TEST(Histogram, FreedmanDiaconisClamped) {
    std::vector<double> spread;
    for (int i = 0; i < 8; ++i) spread.push_back(i);
    EXPECT_EQ(freedman_diaconis_bins(spread), kMinBins);
    std::vector<double> heavy(1000, 0.0);
    heavy.back() = 1e9;
    heavy[0] = -1.0;
    EXPECT_EQ(freedman_diaconis_bins(heavy), kMaxBins);
}

TEST(Smoothing, TruncatedWindowAtEdges) {
    const std::vector<std::size_t> c{10, 0, 0, 0, 5};
    const auto s = smooth_counts(c);
    EXPECT_DOUBLE_EQ(s[0], 10.0 / 3.0);
    EXPECT_DOUBLE_EQ(s[1], 10.0 / 4.0);
    EXPECT_DOUBLE_EQ(s[2], 15.0 / 5.0);
    EXPECT_DOUBLE_EQ(s[4], 5.0 / 3.0);
}

TEST(MarkCurvature, BimodalTroughInGap) {
    TestRng rng(405);
    std::vector<double> v;
    for (int i = 0; i < 1000; ++i) v.push_back(1.0 + 0.2 * rng.normal());
    for (int i = 0; i < 1000; ++i) v.push_back(10.0 + 0.2 * rng.normal());
    const CurvatureHistogram h = build_histogram(v);
    const MarkCurvature m = mark_curvature(h, v);
    EXPECT_EQ(m.method, MarkMethod::trough);
    EXPECT_GT(m.value, 2.0);
    EXPECT_LT(m.value, 9.0);
    ASSERT_TRUE(m.low_peak && m.high_peak && m.trough);
    EXPECT_LT(h.center(*m.low_peak), m.value);
    EXPECT_GT(h.center(*m.high_peak), m.value);
}

TEST(MarkCurvature, UnimodalFallsBackToOtsu) {
    TestRng rng(407);
    std::vector<double> v;
    for (int i = 0; i < 5000; ++i) v.push_back(5.0 + rng.normal());
    const MarkCurvature m = mark_curvature(build_histogram(v), v);
    EXPECT_EQ(m.method, MarkMethod::otsu_fallback);
    EXPECT_TRUE(std::isfinite(m.value));
    EXPECT_FALSE(m.trough.has_value());
}

TEST(MarkCurvature, EqualTroughsPickLowerBin) {
    // Smoothed profile is symmetric about bin 12 with equal minima at 9 and 15.
    std::vector<std::size_t> c(25, 0);
    for (std::size_t centre : {4u, 20u}) {
        c[centre - 2] = c[centre + 2] = 10;
        c[centre - 1] = c[centre + 1] = 30;
        c[centre] = 100;
    }
    c[12] = 40;
    const CurvatureHistogram h = from_counts(c);
    const auto s = smooth_counts(h.counts);
    ASSERT_EQ(s[9], s[15]);
    const MarkCurvature m = mark_curvature(h, std::vector<double>{0.0, 1.0});
    ASSERT_EQ(m.method, MarkMethod::trough);
    EXPECT_EQ(*m.low_peak, 4u);
    EXPECT_EQ(*m.high_peak, 20u);
    EXPECT_EQ(*m.trough, 9u);
    EXPECT_DOUBLE_EQ(m.value, 9.5);
}

TEST(MarkCurvature, MinorBumpIgnored) {
    std::vector<std::size_t> c(40, 0);
    for (std::size_t i = 5; i < 12; ++i) c[i] = 1000;
    c[30] = 10;
    TestRng rng(409);
    std::vector<double> v;
    for (int i = 0; i < 200; ++i) v.push_back(rng.uniform(0, 40));
    const MarkCurvature m = mark_curvature(from_counts(c), v);
    EXPECT_EQ(m.method, MarkMethod::otsu_fallback);
}

TEST(Otsu, SeparatesTwoClusters) {
    const std::vector<double> v{1, 1.1, 0.9, 1.05, 8, 8.2, 7.9};
    EXPECT_DOUBLE_EQ(otsu_threshold(v), 0.5 * (1.1 + 7.9));
}

TEST(Export, CsvAndJson) {
    const CurvatureHistogram h = from_counts({1, 2});
    EXPECT_EQ(histogram_csv(h), "bin_lo,bin_hi,count\n0,1,1\n1,2,2\n");
    const MarkCurvature m{0.5, MarkMethod::manual, {}, {}, {}, {}};
    const auto j = mark_json(m, &h);
    EXPECT_EQ(j["method"], "manual");
    EXPECT_EQ(j["value"], 0.5);
    EXPECT_TRUE(j["diagnostics"]["trough_bin"].is_null());
}

} // namespace
