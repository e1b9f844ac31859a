// Copyright 2026 The AWCD Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "awcd/awcd.hpp"
#include "awcd/spd/curvature_oracle.hpp"
#include "support/test_support.hpp"

namespace {

using namespace awcd;
using awcd::testing::TestRng;
using Clock = std::chrono::steady_clock;

struct Verdict {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

Verdict sylvester_residual() {
    TestRng rng(1001);
    const auto start = Clock::now();
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
        const Eigen::Index n = 2 + t % 5;
        const spd::SpdMatrix a(rng.spd(n, 0.01, 100.0));
        const spd::SymMatrix y(rng.symmetric(n));
        const Eigen::MatrixXd tm = spd::sylvester_solve(a, y).matrix();
        const double res = (a.matrix() * tm + tm * a.matrix() - y.matrix()).norm() / y.matrix().norm();
        worst = std::max(worst, res);
    }
    const double secs = seconds_since(start);
    return {worst <= 1e-10 && secs < 5.0, fmt("worst relative residual %.3g, %.3f s", worst, secs)};
}

Verdict closed_form_identity() {
    double worst = 0.0;
    for (Eigen::Index n = 1; n <= 6; ++n) {
        const double want = 3.0 * n * (n - 1) * (n + 4) / 16.0;
        worst = std::max(worst, std::abs(spd::scalar_curvature(spd::SpdMatrix::identity(n)).value - want));
    }
    std::string detail = fmt("max |rho(I_n) - 3n(n-1)(n+4)/16| = %.3g for n = 1..6; basis-sum oracle:", worst);
    for (Eigen::Index n = 2; n <= 4; ++n) {
        const spd::SpdMatrix id = spd::SpdMatrix::identity(n);
        detail += fmt(" n=%.0f closed %.6g sum %.6g", double(n), spd::scalar_curvature(id).value,
                      spd::scalar_curvature_bruteforce(id));
    }
    return {worst <= 1e-10, detail};
}

Verdict curvature_bound() {
    TestRng rng(1003);
    int violations = 0;
    double max_ratio = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const spd::SpdMatrix a(rng.spd(3, 0.1, 10.0));
        const double rho = spd::scalar_curvature(a).value;
        const double bound = spd::scalar_curvature_bound(a);
        if (!(rho > 0.0 && rho < bound)) ++violations;
        max_ratio = std::max(max_ratio, rho / bound);
    }
    return {violations == 0, fmt("%.0f violations, max rho/bound %.4f", violations, max_ratio)};
}

Verdict homogeneity_invariance() {
    TestRng rng(1005);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const Eigen::Index n = 2 + t % 5;
        const Eigen::MatrixXd a = rng.spd(n, 0.05, 20.0);
        const double c = std::exp(rng.uniform(-4.0, 4.0));
        const Eigen::MatrixXd q = rng.orthogonal(n);
        const double rho = spd::scalar_curvature(spd::SpdMatrix(a)).value;
        const double scaled = spd::scalar_curvature(spd::SpdMatrix(c * a)).value;
        const double rotated = spd::scalar_curvature(spd::SpdMatrix(q * a * q.transpose())).value;
        worst = std::max({worst, awcd::testing::rel_diff(scaled, rho / c), awcd::testing::rel_diff(rotated, rho)});
    }
    return {worst <= 1e-9, fmt("worst relative deviation %.3g", worst)};
}

Verdict snrg_metric_identities() {
    struct Row {
        std::size_t kept_real, kept_noise;
        double tpr, fpr, snrg;
    };
    const Row rows[] = {{10000, 181, 1.0000, 0.1810, 4.525}, {9928, 48, 0.9928, 0.0480, 19.683}};
    double worst = 0.0;
    for (const Row& r : rows) {
        const bench::MetricsRow m = bench::metrics_from_counts(10000, 1000, r.kept_real, r.kept_noise);
        worst = std::max({worst, awcd::testing::rel_diff(m.tpr, r.tpr), awcd::testing::rel_diff(m.fpr, r.fpr),
                          awcd::testing::rel_diff(m.snrg, r.snrg), awcd::testing::rel_diff(m.snrg, m.tpr / m.fpr - 1.0)});
    }
    return {worst <= 0.005, fmt("worst relative deviation %.3g", worst)};
}

Verdict exact_spatial_queries() {
    TestRng rng(1007);
    std::size_t mismatches = 0, queries = 0;
    for (int cloud_no = 0; cloud_no < 50; ++cloud_no) {
        const std::size_t size = 1 + rng.index(2000);
        cloud::PointCloud c(3);
        const bool quantized = cloud_no % 5 == 0;
        for (std::size_t i = 0; i < size; ++i) {
            std::array<double, 3> p{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
            if (quantized)
                for (double& v : p) v = std::round(v * 4.0) / 4.0;
            c.push_back(p);
        }
        const cloud::SpatialIndex idx(c);
        for (int q = 0; q < 100; ++q, ++queries) {
            const std::array<double, 3> p{rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)};
            const std::size_t k = 1 + rng.index(std::min<std::size_t>(size, 40));
            const auto got = idx.knn(p, k);
            const auto want = awcd::testing::scan_knn(c, p, k);
            bool ok = got.size() == want.size();
            for (std::size_t i = 0; ok && i < got.size(); ++i)
                ok = got[i].index == want[i].second && got[i].distance == std::sqrt(want[i].first);
            const double r = rng.uniform(0.0, 0.5);
            ok = ok && idx.radius_neighbors(p, r) == awcd::testing::scan_radius(c, p, r);
            mismatches += !ok;
        }
    }
    return {mismatches == 0, fmt("%.0f mismatches in %.0f queries", double(mismatches), double(queries))};
}

const bench::detail::Instance& fixture() {
    static const bench::detail::Instance inst = [] {
        const bench::Dataset ds{"sphere", bench::sphere_surface(5000, 1.0, 1)};
        return bench::detail::make_instance(ds, std::nullopt, 1.0, 1, bench::kDefaultExpansion);
    }();
    return inst;
}

Verdict dense_noise_pattern() {
    const cloud::PointCloud& c = fixture().cloud;
    const auto start = Clock::now();
    const cloud::SpatialIndex idx(c);
    denoise::AwcdOptions opt;
    opt.k = 30;
    opt.threads = 1;
    const denoise::DenoiseResult a = denoise::awcd(c, idx, opt);
    const double secs = seconds_since(start);
    const denoise::DenoiseResult s = denoise::sor(c, idx, 30, 1);
    const bench::MetricsRow ma = bench::compute_metrics(*c.labels(), a.kept);
    const bench::MetricsRow ms = bench::compute_metrics(*c.labels(), s.kept);
    const bool pass = ma.tpr >= 0.95 && ma.fpr <= 0.10 && ma.snrg >= 3.0 * ms.snrg && secs < 10.0;
    return {pass, fmt("awcd tpr %.4f fpr %.4f snrg %.3f; sor snrg %.3f", ma.tpr, ma.fpr, ma.snrg, ms.snrg) +
                      fmt("; %.0f points in %.3f s single-threaded", double(c.size()), secs)};
}

Verdict sor_one_sigma() {
    TestRng rng(1009);
    int mismatches = 0, inside = 0;
    for (int t = 0; t < 1000; ++t) {
        // Six axis points at +-s around a center: centered covariance (s^2 / 3) I.
        const double s = std::exp(rng.uniform(-3.0, 3.0));
        const Eigen::Vector3d center(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5));
        cloud::PointCloud c(3);
        for (int axis = 0; axis < 3; ++axis)
            for (double sign : {-1.0, 1.0}) {
                Eigen::Vector3d p = center;
                p(axis) += sign * s;
                c.push_back(p);
            }
        const double sigma = s / std::sqrt(3.0);
        Eigen::Vector3d dir(rng.normal(), rng.normal(), rng.normal());
        const double dist = sigma * rng.uniform(0.0, 2.0);
        c.push_back(Eigen::VectorXd(center + dist * dir.normalized()));
        const denoise::DenoiseResult r = denoise::sor(c, cloud::SpatialIndex(c), 6, 1);
        const bool kept = !r.kept.empty() && r.kept.back() == 6;
        const Eigen::Vector3d offset = c.point(6) - center;
        inside += offset.norm() <= sigma;
        if (kept != (offset.norm() <= sigma)) ++mismatches;
    }
    return {mismatches == 0, fmt("%.0f mismatches in 1000 neighborhoods (%.0f within one sigma)", mismatches, inside)};
}

Verdict determinism() {
    bench::BenchConfig cfg;
    cfg.datasets.push_back({"sphere", bench::sphere_surface(3000, 1.0, 1)});
    cfg.snrs = {1.0, 10.0};
    cfg.seeds = {1, 2};
    cfg.ror_radius = 0.1;
    cfg.record_timing = false;
    cfg.threads = 1;
    const std::string serial_a = bench::report_csv(bench::run_benchmark(cfg));
    const std::string serial_b = bench::report_csv(bench::run_benchmark(cfg));
    cfg.threads = 4;
    const std::string parallel_a = bench::report_csv(bench::run_benchmark(cfg));
    const std::string parallel_b = bench::report_csv(bench::run_benchmark(cfg));
    const bool pass = serial_a == serial_b && parallel_a == parallel_b && serial_a == parallel_a;
    return {pass, fmt("%.0f-byte report, serial and 4-thread reruns ", double(serial_a.size())) +
                      (pass ? "identical" : "differ")};
}

Verdict rigid_motion() {
    const cloud::PointCloud& c = fixture().cloud;
    TestRng rng(1011);
    const cloud::PointCloud moved =
        awcd::testing::rigid_transform(c, rng.rotation(3), Eigen::Vector3d(rng.uniform(-50, 50), rng.uniform(-50, 50),
                                                                         rng.uniform(-50, 50)));
    const denoise::DenoiseResult a = denoise::awcd(c, cloud::SpatialIndex(c));
    const denoise::DenoiseResult b = denoise::awcd(moved, cloud::SpatialIndex(moved));
    std::vector<std::size_t> diff;
    std::set_symmetric_difference(a.kept.begin(), a.kept.end(), b.kept.begin(), b.kept.end(),
                                  std::back_inserter(diff));
    const double frac = static_cast<double>(diff.size()) / static_cast<double>(c.size());
    return {frac <= 0.001, fmt("%.0f of %.0f classifications changed (%.4f%%)", double(diff.size()),
                               double(c.size()), 100.0 * frac)};
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
        {"sylvester residual", sylvester_residual},
        {"closed-form identity curvature", closed_form_identity},
        {"curvature upper bound", curvature_bound},
        {"homogeneity and spectral invariance", homogeneity_invariance},
        {"snrg metric identities", snrg_metric_identities},
        {"exact spatial queries", exact_spatial_queries},
        {"dense-noise denoising pattern", dense_noise_pattern},
        {"sor one-sigma equivalence", sor_one_sigma},
        {"benchmark determinism", determinism},
        {"rigid-motion stability", rigid_motion},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.pass;
        std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
