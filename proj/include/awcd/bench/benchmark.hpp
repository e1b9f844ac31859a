// Copyright 2026 The AWCD Authors
// SPDX-License-Identifier: Apache-2.0
//
// Cross-product benchmark runner: datasets x sizes x SNRs x seeds x methods.

#ifndef AWCD_BENCH_BENCHMARK_HPP_
#define AWCD_BENCH_BENCHMARK_HPP_

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "awcd/bench/metrics.hpp"
#include "awcd/bench/noise.hpp"
#include "awcd/denoise/awcd.hpp"
#include "awcd/denoise/ror.hpp"
#include "awcd/denoise/sor.hpp"

namespace awcd::bench {

enum class Method { awcd, ror, sor };

inline const char* to_string(Method m) {
    switch (m) {
    case Method::awcd: return "awcd";
    case Method::ror: return "ror";
    case Method::sor: return "sor";
    }
    return "?";
}

inline Method parse_method(std::string_view s) {
    if (s == "awcd") return Method::awcd;
    if (s == "ror") return Method::ror;
    if (s == "sor") return Method::sor;
    throw ParameterError("unknown method '" + std::string(s) + "' (expected awcd, ror or sor)");
}

struct Dataset {
    std::string name;
    cloud::PointCloud cloud;
};

struct BenchConfig {
    std::vector<Dataset> datasets;
    /// Downsampled sizes of D; empty means the full dataset.
    std::vector<std::size_t> sizes;
    std::vector<double> snrs;
    std::vector<std::uint64_t> seeds;
    std::vector<Method> methods{Method::ror, Method::sor, Method::awcd};
    std::size_t k = denoise::kDefaultK;
    std::optional<double> ror_radius;
    std::size_t ror_min_count = 2;
    bool awcd_regular_term = false;
    std::optional<std::size_t> bins;
    double expansion = kDefaultExpansion;
    unsigned threads = 0;
    /// When false wall_ms is written as 0 so reruns are byte-identical.
    bool record_timing = true;
};

struct BenchRow {
    std::string dataset;
    std::size_t size = 0;
    double snr = 0.0;
    std::string method;
    std::string params;
    std::uint64_t seed = 0;
    std::optional<MetricsRow> metrics;
    double wall_ms = 0.0;
    std::string error;
};

struct BenchReport {
    std::vector<BenchRow> rows;

    bool any_failed() const {
        for (const auto& r : rows)
            if (!r.error.empty()) return true;
        return false;
    }
};

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

inline std::string method_params(Method m, const BenchConfig& cfg) {
    using text::format_roundtrip;
    switch (m) {
    case Method::ror:
        return "radius=" + (cfg.ror_radius ? format_roundtrip(*cfg.ror_radius) : std::string("unset")) +
               ";min_count=" + std::to_string(cfg.ror_min_count);
    case Method::sor: return "k=" + std::to_string(cfg.k);
    case Method::awcd:
        return "k=" + std::to_string(cfg.k) + ";regular=" + (cfg.awcd_regular_term ? "1" : "0") +
               (cfg.bins ? ";bins=" + std::to_string(*cfg.bins) : std::string());
    }
    return {};
}

struct Instance {
    cloud::PointCloud cloud;
    std::size_t real = 0;
};

/// D (optionally downsampled) plus injected noise; seeds depend on the cell
/// key only, so every method of a cell sees the same polluted cloud.
inline Instance make_instance(const Dataset& ds, std::optional<std::size_t> size, double snr, std::uint64_t seed,
                              double expansion) {
    const std::string key = ds.name + "|" + (size ? std::to_string(*size) : std::string("full"));
    cloud::PointCloud clean = ds.cloud;
    clean.clear_labels();
    if (size) clean = downsample(clean, *size, derive_seed(seed, "downsample|" + key));
    const std::size_t real = clean.size();
    NoiseSpec spec{snr, expansion, derive_seed(seed, "noise|" + key + "|" + text::format_roundtrip(snr))};
    return {inject_noise(clean, spec), real};
}

inline denoise::DenoiseResult run_method(Method m, const cloud::PointCloud& polluted, const BenchConfig& cfg,
                                         unsigned threads) {
    const cloud::SpatialIndex index(polluted);
    switch (m) {
    case Method::ror: return denoise::ror(polluted, index, *cfg.ror_radius, cfg.ror_min_count, threads);
    case Method::sor: return denoise::sor(polluted, index, cfg.k, threads);
    case Method::awcd: {
        denoise::AwcdOptions opt;
        opt.k = cfg.k;
        opt.regular_term = cfg.awcd_regular_term;
        opt.bins = cfg.bins;
        opt.threads = threads;
        return denoise::awcd(polluted, index, opt);
    }
    }
    throw ParameterError("unknown method");
}

} // namespace detail

/// Checks everything except the datasets, so callers can fail before any IO.
inline void validate_parameters(const BenchConfig& cfg) {
    if (cfg.snrs.empty()) throw ParameterError("bench: no SNR values");
    if (cfg.seeds.empty()) throw ParameterError("bench: no seeds");
    if (cfg.methods.empty()) throw ParameterError("bench: no methods");
    for (double s : cfg.snrs)
        if (!(s > 0.0) || !std::isfinite(s)) throw ParameterError("bench: SNR must be finite and > 0");
    for (Method m : cfg.methods) {
        if (m == Method::ror && !(cfg.ror_radius && *cfg.ror_radius > 0.0))
            throw ParameterError("bench: ror needs a positive radius");
        if (m == Method::ror && cfg.ror_min_count < 1) throw ParameterError("bench: ror min-count must be >= 1");
    }
    if (cfg.k == 0) throw ParameterError("bench: k must be >= 1");
    if (!(cfg.expansion >= 1.0)) throw ParameterError("bench: expansion must be >= 1");
    if (cfg.bins && *cfg.bins < 1) throw ParameterError("bench: bins must be >= 1");
}

inline void validate(const BenchConfig& cfg) {
    if (cfg.datasets.empty()) throw ParameterError("bench: no datasets");
    validate_parameters(cfg);
}

/// Runs every cell of the cross product. Cells run in parallel with
/// cfg.threads workers; a failing cell records its error and the run goes on.
inline BenchReport run_benchmark(const BenchConfig& cfg) {
    validate(cfg);

    struct Cell {
        const Dataset* ds;
        std::optional<std::size_t> size;
        double snr;
        std::uint64_t seed;
        Method method;
    };
    std::vector<Cell> cells;
    std::vector<std::optional<std::size_t>> sizes;
    if (cfg.sizes.empty()) sizes.emplace_back();
    for (std::size_t s : cfg.sizes) sizes.emplace_back(s);
    for (const Dataset& ds : cfg.datasets)
        for (const auto& size : sizes)
            for (double snr : cfg.snrs)
                for (std::uint64_t seed : cfg.seeds)
                    for (Method m : cfg.methods) cells.push_back({&ds, size, snr, seed, m});

    BenchReport report;
    report.rows.resize(cells.size());
    const unsigned workers = resolve_threads(cfg.threads);
    const unsigned inner = workers > 1 ? 1 : cfg.threads;
    parallel_for(
        cells.size(),
        [&](std::size_t c) {
            const Cell& cell = cells[c];
            BenchRow& row = report.rows[c];
            row.dataset = cell.ds->name;
            row.size = cell.size.value_or(cell.ds->cloud.size());
            row.snr = cell.snr;
            row.method = to_string(cell.method);
            row.params = detail::method_params(cell.method, cfg);
            row.seed = cell.seed;
            try {
                const detail::Instance inst =
                    detail::make_instance(*cell.ds, cell.size, cell.snr, cell.seed, cfg.expansion);
                row.size = inst.real;
                const auto start = std::chrono::steady_clock::now();
                const denoise::DenoiseResult res = detail::run_method(cell.method, inst.cloud, cfg, inner);
                const auto stop = std::chrono::steady_clock::now();
                if (cfg.record_timing) row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
                row.metrics = compute_metrics(*inst.cloud.labels(), res.kept);
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        },
        workers);
    return report;
}

inline std::string report_csv(const BenchReport& report) {
    using text::format_roundtrip;
    std::string out = "dataset,size,snr,method,params,tpr,fpr,snrg,wall_ms,seed,real,noise,kept_real,kept_noise,error\n";
    for (const BenchRow& r : report.rows) {
        out += detail::csv_field(r.dataset) + ',' + std::to_string(r.size) + ',' + format_roundtrip(r.snr) + ',' +
               r.method + ',' + detail::csv_field(r.params) + ',';
        if (r.metrics) {
            const MetricsRow& m = *r.metrics;
            out += format_roundtrip(m.tpr) + ',' + format_roundtrip(m.fpr) + ',' + format_roundtrip(m.snrg) + ',';
        } else {
            out += "nan,nan,nan,";
        }
        out += format_roundtrip(r.wall_ms) + ',' + std::to_string(r.seed) + ',';
        if (r.metrics) {
            const MetricsRow& m = *r.metrics;
            out += std::to_string(m.real) + ',' + std::to_string(m.noise) + ',' + std::to_string(m.kept_real) + ',' +
                   std::to_string(m.kept_noise) + ',';
        } else {
            out += ",,,,";
        }
        out += detail::csv_field(r.error) + '\n';
    }
    return out;
}

inline nlohmann::json report_json(const BenchReport& report) {
    auto number = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(text::format_roundtrip(v)); };
    nlohmann::json rows = nlohmann::json::array();
    for (const BenchRow& r : report.rows) {
        nlohmann::json j = {{"dataset", r.dataset}, {"size", r.size},   {"snr", r.snr},
                            {"method", r.method},   {"params", r.params}, {"wall_ms", r.wall_ms},
                            {"seed", r.seed}};
        if (r.metrics) {
            const MetricsRow& m = *r.metrics;
            j["tpr"] = number(m.tpr);
            j["fpr"] = number(m.fpr);
            j["snrg"] = number(m.snrg);
            j["real"] = m.real;
            j["noise"] = m.noise;
            j["kept_real"] = m.kept_real;
            j["kept_noise"] = m.kept_noise;
        }
        if (!r.error.empty()) j["error"] = r.error;
        rows.push_back(std::move(j));
    }
    return {{"rows", rows}};
}

} // namespace awcd::bench

#endif // AWCD_BENCH_BENCHMARK_HPP_
