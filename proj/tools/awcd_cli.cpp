// Copyright 2026 The AWCD Authors
// SPDX-License-Identifier: Apache-2.0
//
// awcd: command-line front end for curvature inspection, denoising and
// benchmarking of point clouds.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#ifdef AWCD_CLI11_PACKAGE
#include <CLI/CLI.hpp>
#else
#include "CLI11.hpp"
#endif

#include "awcd/awcd.hpp"

namespace {

using namespace awcd;

enum ExitCode : int {
    kOk = 0,
    kCellFailed = 1,
    kIoError = 2,
    kParameterError = 3,
    kDegenerateHistogram = 4,
};

constexpr std::size_t kDefaultSphereSize = 5000;

struct Common {
    std::string input;
    std::string output;
    std::size_t k = denoise::kDefaultK;
    unsigned threads = 0;
};

struct DenoiseFlags {
    std::string method = "awcd";
    std::optional<double> radius;
    std::size_t min_count = 2;
    std::optional<double> rho0;
    bool regular_term = false;
    std::optional<std::size_t> bins;
    std::string labels;
    std::string classified;
};

struct HistFlags {
    std::optional<std::size_t> bins;
    std::string mark;
};

struct BenchFlags {
    std::vector<std::string> datasets;
    std::size_t sphere = 0;
    std::uint64_t fixture_seed = 1;
    std::vector<std::size_t> sizes;
    std::vector<double> snrs{1.0};
    std::vector<std::uint64_t> seeds{1};
    std::vector<std::string> methods{"sor", "awcd"};
    std::optional<double> radius;
    std::size_t min_count = 2;
    bool regular_term = false;
    std::optional<std::size_t> bins;
    double expansion = bench::kDefaultExpansion;
    std::string format = "csv";
    bool no_timing = false;
};

void emit(const std::string& path, const std::string& data) {
    if (path.empty() || path == "-") {
        std::cout << data;
        std::cout.flush();
    } else {
        cloud::write_file_atomic(path, data);
    }
}

void check_k(std::size_t k) {
    if (k < 1) throw ParameterError("--k must be >= 1");
}

int run_denoise(const Common& c, const DenoiseFlags& f) {
    const bench::Method method = bench::parse_method(f.method);
    check_k(c.k);
    if (method == bench::Method::ror) {
        if (!f.radius || !(*f.radius > 0.0)) throw ParameterError("ror needs --radius > 0");
        if (f.min_count < 1) throw ParameterError("--min-count must be >= 1");
    }
    if (f.bins && *f.bins < 1) throw ParameterError("--bins must be >= 1");
    if (c.output.empty()) throw ParameterError("denoise needs --output");

    cloud::PointCloud input = cloud::load_cloud(c.input);
    std::optional<std::vector<cloud::Label>> truth;
    if (!f.labels.empty()) {
        truth = cloud::load_labels(f.labels);
        if (truth->size() != input.size())
            throw ParameterError("--labels has " + std::to_string(truth->size()) + " entries for " +
                                 std::to_string(input.size()) + " points");
    }

    const cloud::SpatialIndex index(input);
    denoise::DenoiseResult res;
    switch (method) {
    case bench::Method::ror: res = denoise::ror(input, index, *f.radius, f.min_count, c.threads); break;
    case bench::Method::sor: res = denoise::sor(input, index, c.k, c.threads); break;
    case bench::Method::awcd: {
        denoise::AwcdOptions opt;
        opt.k = c.k;
        opt.rho0 = f.rho0;
        opt.regular_term = f.regular_term;
        opt.bins = f.bins;
        opt.threads = c.threads;
        res = denoise::awcd(input, index, opt);
        break;
    }
    }

    cloud::save_cloud(input.subset(res.kept), c.output);
    if (!f.classified.empty()) cloud::save_classified(input, res.kept, truth, f.classified);

    std::cout << "method=" << res.method << " kept=" << res.kept.size()
              << " removed=" << input.size() - res.kept.size();
    if (res.mark)
        std::cout << " rho0=" << text::format_roundtrip(res.mark->value)
                  << " selection=" << denoise::to_string(res.mark->method);
    if (truth) {
        const bench::MetricsRow m = bench::compute_metrics(*truth, res.kept);
        std::cout << " tpr=" << text::format_roundtrip(m.tpr) << " fpr=" << text::format_roundtrip(m.fpr)
                  << " snrg=" << text::format_roundtrip(m.snrg);
    }
    std::cout << '\n';
    return kOk;
}

denoise::CurvatureField field_for(const Common& c) {
    check_k(c.k);
    const cloud::PointCloud input = cloud::load_cloud(c.input);
    const cloud::SpatialIndex index(input);
    return denoise::curvature_field(input, index, c.k, c.threads);
}

int run_curvature(const Common& c) {
    const denoise::CurvatureField field = field_for(c);
    std::string out = "index,rho,degenerate\n";
    for (std::size_t i = 0; i < field.size(); ++i)
        out += std::to_string(i) + ',' + text::format_roundtrip(field.values[i]) + ',' +
               (field.degenerate[i] ? "1" : "0") + '\n';
    emit(c.output, out);
    return kOk;
}

int run_hist(const Common& c, const HistFlags& f) {
    if (f.bins && *f.bins < 1) throw ParameterError("--bins must be >= 1");
    const denoise::CurvatureField field = field_for(c);
    const denoise::CurvatureHistogram h = denoise::build_histogram(field.values, f.bins);
    const denoise::MarkCurvature mark = denoise::mark_curvature(h, field.values);
    emit(c.output, denoise::histogram_csv(h));
    const std::string json = denoise::mark_json(mark, &h).dump(2) + "\n";
    if (!f.mark.empty()) emit(f.mark, json);
    else if (!c.output.empty() && c.output != "-") std::cout << json;
    return kOk;
}

int run_bench(const Common& c, const BenchFlags& f) {
    bench::BenchConfig cfg;
    cfg.methods.clear();
    for (const std::string& m : f.methods) cfg.methods.push_back(bench::parse_method(m));
    cfg.sizes = f.sizes;
    cfg.snrs = f.snrs;
    cfg.seeds = f.seeds;
    cfg.k = c.k;
    cfg.ror_radius = f.radius;
    cfg.ror_min_count = f.min_count;
    cfg.awcd_regular_term = f.regular_term;
    cfg.bins = f.bins;
    cfg.expansion = f.expansion;
    cfg.threads = c.threads;
    cfg.record_timing = !f.no_timing;
    if (f.format != "csv" && f.format != "json") throw ParameterError("--format must be csv or json");

    std::vector<std::pair<std::string, std::string>> sources;
    for (const std::string& spec : f.datasets) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
            throw ParameterError("--dataset expects NAME=PATH, got '" + spec + "'");
        sources.emplace_back(spec.substr(0, eq), spec.substr(eq + 1));
    }
    bench::validate_parameters(cfg);

    const std::size_t sphere = f.sphere > 0 ? f.sphere : (sources.empty() ? kDefaultSphereSize : 0);
    if (sphere > 0) cfg.datasets.push_back({"sphere", bench::sphere_surface(sphere, 1.0, f.fixture_seed)});
    for (const auto& [name, path] : sources) cfg.datasets.push_back({name, cloud::load_cloud(path)});

    const bench::BenchReport report = bench::run_benchmark(cfg);
    emit(c.output, f.format == "csv" ? bench::report_csv(report) : bench::report_json(report).dump(2) + "\n");
    return report.any_failed() ? kCellFailed : kOk;
}

void add_common(CLI::App* sub, Common& c, bool needs_input) {
    auto* in = sub->add_option("-i,--input", c.input, "Input cloud (.xyz or .ply)");
    if (needs_input) in->required();
    sub->add_option("-o,--output", c.output, "Output path ('-' or omitted: stdout where allowed)");
    sub->add_option("-k,--k", c.k, "Neighbors per local Gaussian")->capture_default_str();
    sub->add_option("--threads", c.threads, "Worker threads (0: $AWCD_THREADS or hardware)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"awcd - point cloud denoising with Wasserstein curvature"};
    app.require_subcommand(1);

    Common common;
    DenoiseFlags dflags;
    HistFlags hflags;
    BenchFlags bflags;

    auto* den = app.add_subcommand("denoise", "Remove noise points with awcd, ror or sor");
    add_common(den, common, true);
    den->add_option("-m,--method", dflags.method, "awcd | ror | sor")->capture_default_str();
    den->add_option("--radius", dflags.radius, "ror neighborhood radius d");
    den->add_option("--min-count", dflags.min_count, "ror minimum neighbors alpha (self included)")
        ->capture_default_str();
    den->add_option("--rho0", dflags.rho0, "Manual mark curvature for awcd");
    den->add_flag("--regular-term", dflags.regular_term, "awcd: also require the one-sigma confidence test");
    den->add_option("--bins", dflags.bins, "Histogram bins (default: Freedman-Diaconis in [32, 256])");
    den->add_option("--labels", dflags.labels, "Ground-truth labels file (real|noise per line)");
    den->add_option("--classified", dflags.classified, "Write a color-classified PLY here");

    auto* cur = app.add_subcommand("curvature", "Per-point scalar curvature CSV");
    add_common(cur, common, true);

    auto* hist = app.add_subcommand("hist", "Curvature histogram CSV and mark-curvature JSON");
    add_common(hist, common, true);
    hist->add_option("--bins", hflags.bins, "Histogram bins (default: Freedman-Diaconis in [32, 256])");
    hist->add_option("--mark", hflags.mark, "Mark-curvature JSON path");

    auto* ben = app.add_subcommand("bench", "Seeded noise-injection benchmark");
    add_common(ben, common, false);
    ben->add_option("--dataset", bflags.datasets, "NAME=PATH, repeatable");
    ben->add_option("--sphere", bflags.sphere, "Synthetic unit-sphere dataset size (default 5000 without --dataset)");
    ben->add_option("--fixture-seed", bflags.fixture_seed, "Seed of the synthetic sphere")->capture_default_str();
    ben->add_option("--sizes", bflags.sizes, "Downsampled sizes of the clean cloud")->delimiter(',');
    ben->add_option("--snr", bflags.snrs, "SNR values |D|/|N|")->delimiter(',')->capture_default_str();
    ben->add_option("--seeds", bflags.seeds, "Noise seeds")->delimiter(',')->capture_default_str();
    ben->add_option("--methods", bflags.methods, "Subset of awcd,ror,sor")->delimiter(',')->capture_default_str();
    ben->add_option("--radius", bflags.radius, "ror radius");
    ben->add_option("--min-count", bflags.min_count, "ror minimum neighbors")->capture_default_str();
    ben->add_flag("--regular-term", bflags.regular_term, "awcd regular term");
    ben->add_option("--bins", bflags.bins, "awcd histogram bins");
    ben->add_option("--expansion", bflags.expansion, "Noise bounding-box expansion")->capture_default_str();
    ben->add_option("--format", bflags.format, "csv | json")->capture_default_str();
    ben->add_flag("--no-timing", bflags.no_timing, "Write wall_ms as 0 for byte-identical reruns");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParameterError;
    }

    try {
        if (*den) return run_denoise(common, dflags);
        if (*cur) return run_curvature(common);
        if (*hist) return run_hist(common, hflags);
        if (*ben) return run_bench(common, bflags);
    } catch (const DegenerateHistogramError& e) {
        std::cerr << "awcd: " << e.what() << " (pass --rho0 to set it manually)\n";
        return kDegenerateHistogram;
    } catch (const ParseError& e) {
        std::cerr << "awcd: parse error: " << e.what() << '\n';
        return kIoError;
    } catch (const IoError& e) {
        std::cerr << "awcd: " << e.what() << '\n';
        return kIoError;
    } catch (const EmptyInputError& e) {
        std::cerr << "awcd: " << e.what() << '\n';
        return kIoError;
    } catch (const ParameterError& e) {
        std::cerr << "awcd: invalid parameter: " << e.what() << '\n';
        return kParameterError;
    } catch (const DomainError& e) {
        std::cerr << "awcd: invalid parameter: " << e.what() << '\n';
        return kParameterError;
    } catch (const std::exception& e) {
        std::cerr << "awcd: " << e.what() << '\n';
        return kIoError;
    }
    return kParameterError;
}
