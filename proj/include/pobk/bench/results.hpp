#ifndef POBK_BENCH_RESULTS_HPP
#define POBK_BENCH_RESULTS_HPP

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pobk/solvers/config.hpp"

namespace pobk::bench {

/// One (matrix, solver) cell of a benchmark grid.
///
/// A cell where any repetition fails to converge reports mean_it = +inf and
/// mean_cpu_s = NaN, written as the strings "Inf" and "NAN".
struct ResultRow {
    std::string matrix;
    std::size_t m = 0;
    std::size_t nnz = 0;
    double density = 0.0; ///< nnz / m^2
    std::string solver;
    std::size_t k = 0;
    double thr = 0.0;
    double theta = 0.0;
    double mean_it = 0.0;
    double mean_cpu_s = 0.0;
    std::size_t converged = 0; ///< repetitions that converged
    std::size_t reps = 0;
    double final_rse = 0.0;    ///< worst final RSE over repetitions

    friend bool operator==(const ResultRow& a, const ResultRow& b) {
        auto same = [](double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); };
        return a.matrix == b.matrix && a.m == b.m && a.nnz == b.nnz && same(a.density, b.density) &&
               a.solver == b.solver && a.k == b.k && same(a.thr, b.thr) && same(a.theta, b.theta) &&
               same(a.mean_it, b.mean_it) && same(a.mean_cpu_s, b.mean_cpu_s) && a.converged == b.converged &&
               a.reps == b.reps && same(a.final_rse, b.final_rse);
    }
};

inline constexpr const char* csv_header = "matrix,m,nnz,density,solver,k,thr,theta,mean_it,mean_cpu_s,converged,reps,final_rse";

/// Shortest text that parses back to the same double; sentinels for non-finite values.
inline std::string format_real(double v) {
    if (std::isnan(v)) return "NAN";
    if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline double parse_real(const std::string& s) {
    if (s == "NAN" || s == "NaN" || s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "Inf" || s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-Inf" || s == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw invalid_argument("not a number: '" + s + "'");
    return v;
}

inline void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << csv_header << '\n';
    for (const auto& r : rows) {
        out << r.matrix << ',' << r.m << ',' << r.nnz << ',' << format_real(r.density) << ',' << r.solver << ','
            << r.k << ',' << format_real(r.thr) << ',' << format_real(r.theta) << ',' << format_real(r.mean_it) << ','
            << format_real(r.mean_cpu_s) << ',' << r.converged << ',' << r.reps << ',' << format_real(r.final_rse)
            << '\n';
    }
}

inline nlohmann::json to_json(const std::vector<ResultRow>& rows) {
    // non-finite reals become the sentinel strings; finite ones stay numbers
    auto real = [](double v) -> nlohmann::json {
        if (std::isfinite(v)) return v;
        return format_real(v);
    };
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"matrix", r.matrix},
                       {"m", r.m},
                       {"nnz", r.nnz},
                       {"density", real(r.density)},
                       {"solver", r.solver},
                       {"k", r.k},
                       {"thr", real(r.thr)},
                       {"theta", real(r.theta)},
                       {"mean_it", real(r.mean_it)},
                       {"mean_cpu_s", real(r.mean_cpu_s)},
                       {"converged", r.converged},
                       {"reps", r.reps},
                       {"final_rse", real(r.final_rse)}});
    }
    return arr;
}

inline std::vector<ResultRow> from_json(const nlohmann::json& arr) {
    auto real = [](const nlohmann::json& v) {
        return v.is_string() ? parse_real(v.get<std::string>()) : v.get<double>();
    };
    std::vector<ResultRow> rows;
    for (const auto& o : arr) {
        ResultRow r;
        r.matrix = o.at("matrix").get<std::string>();
        r.m = o.at("m").get<std::size_t>();
        r.nnz = o.at("nnz").get<std::size_t>();
        r.density = real(o.at("density"));
        r.solver = o.at("solver").get<std::string>();
        r.k = o.at("k").get<std::size_t>();
        r.thr = real(o.at("thr"));
        r.theta = real(o.at("theta"));
        r.mean_it = real(o.at("mean_it"));
        r.mean_cpu_s = real(o.at("mean_cpu_s"));
        r.converged = o.at("converged").get<std::size_t>();
        r.reps = o.at("reps").get<std::size_t>();
        r.final_rse = real(o.at("final_rse"));
        rows.push_back(std::move(r));
    }
    return rows;
}

enum class ResultFormat { csv, json };

inline void emit_results(const std::vector<ResultRow>& rows, ResultFormat format, const std::filesystem::path& path) {
    if (rows.empty()) throw invalid_argument("emit_results: no rows");
    std::ofstream out(path);
    if (!out) throw error("cannot write " + path.string());
    if (format == ResultFormat::csv) write_csv(out, rows);
    else out << to_json(rows).dump(2) << '\n';
    if (!out) throw error("write failed for " + path.string());
}

/// `outer_iter,rse`, one row per recorded RSE starting at iteration 0.
inline void write_trace(std::ostream& out, const SolveReport& report) {
    out << "outer_iter,rse\n";
    for (std::size_t i = 0; i < report.rse_trace.size(); ++i) out << i << ',' << format_real(report.rse_trace[i]) << '\n';
}

inline void emit_trace(const SolveReport& report, const std::filesystem::path& path) {
    if (report.rse_trace.empty()) throw invalid_argument("emit_trace: report has no trace");
    std::ofstream out(path);
    if (!out) throw error("cannot write " + path.string());
    write_trace(out, report);
    if (!out) throw error("write failed for " + path.string());
}

} // namespace pobk::bench

#endif // POBK_BENCH_RESULTS_HPP
