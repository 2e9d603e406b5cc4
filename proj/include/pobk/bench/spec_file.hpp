#ifndef POBK_BENCH_SPEC_FILE_HPP
#define POBK_BENCH_SPEC_FILE_HPP

#include <filesystem>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "pobk/bench/experiment.hpp"

namespace pobk::bench {

/// Experiment files are INI text. Top-level keys describe the grid and give
/// solver defaults; `[solver:<name>]` sections override settings for one
/// solver and `[matrix:<name>]` sections set that matrix's block count.
///
///     matrices = ex29, tests/data/small.mtx
///     solvers = pobk, grbk
///     repetitions = 10
///     rhs = ones            ; or random, with rhs_seed
///     format = csv          ; or json
///     out = results.csv
///     trace_dir = traces    ; optional, first repetition of each cell
///     guided_k = false      ; true applies the built-in per-matrix block counts
///     tol = 1e-6
///     max_iters = 500000
///     k = 20
///
///     [solver:pobk]
///     thr = 0.05
///
///     [matrix:ex29]
///     k = 5

namespace detail {

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

inline const std::set<std::string>& solver_keys() {
    static const std::set<std::string> keys = {"tol",   "max_iters",   "theta", "k",       "thr",
                                               "alpha", "sample_size", "seed",  "reorder", "weights"};
    return keys;
}

template <class T>
T get_value(const boost::property_tree::ptree& node, const std::string& key) {
    try {
        return node.get_value<T>();
    } catch (const boost::property_tree::ptree_error&) {
        throw invalid_argument("bad value for '" + key + "': '" + node.data() + "'");
    }
}

inline void apply_solver_key(SolverConfig& cfg, const std::string& key, const boost::property_tree::ptree& v) {
    if (key == "tol") cfg.tol = get_value<double>(v, key);
    else if (key == "max_iters") cfg.max_iters = static_cast<std::size_t>(get_value<double>(v, key));
    else if (key == "theta") cfg.theta = get_value<double>(v, key);
    else if (key == "k") cfg.k = get_value<std::size_t>(v, key);
    else if (key == "thr") cfg.thr = get_value<double>(v, key);
    else if (key == "alpha") cfg.alpha = get_value<double>(v, key);
    else if (key == "sample_size") cfg.sample_size = get_value<std::size_t>(v, key);
    else if (key == "seed") cfg.seed = get_value<std::uint64_t>(v, key);
    else if (key == "reorder") cfg.reorder = get_value<bool>(v, key);
    else if (key == "weights") {
        cfg.weights.clear();
        for (const auto& w : split_list(v.data())) cfg.weights.push_back(parse_real(w));
    }
}

} // namespace detail

inline ExperimentSpec parse_experiment(std::istream& in) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw parse_error(e.line(), e.message());
    }

    ExperimentSpec spec;
    SolverConfig defaults;
    std::vector<std::string> solver_names;
    bool guided = false;
    for (const auto& [key, node] : tree) {
        if (!node.empty()) continue; // sections handled below
        if (key == "matrices") spec.matrices = detail::split_list(node.data());
        else if (key == "solvers") solver_names = detail::split_list(node.data());
        else if (key == "repetitions") spec.repetitions = detail::get_value<std::size_t>(node, key);
        else if (key == "rhs") spec.rhs = parse_rhs_mode(node.data());
        else if (key == "rhs_seed") spec.rhs_seed = detail::get_value<std::uint64_t>(node, key);
        else if (key == "out") spec.out = node.data();
        else if (key == "format") {
            if (node.data() == "csv") spec.format = ResultFormat::csv;
            else if (node.data() == "json") spec.format = ResultFormat::json;
            else throw invalid_argument("format must be csv or json");
        } else if (key == "trace_dir") spec.trace_dir = node.data();
        else if (key == "cache_dir") spec.cache_dir = node.data();
        else if (key == "guided_k") guided = detail::get_value<bool>(node, key);
        else if (detail::solver_keys().count(key)) detail::apply_solver_key(defaults, key, node);
        else throw invalid_argument("unknown key '" + key + "'");
    }

    if (guided)
        for (const auto& [name, k] : guided_block_counts()) spec.matrix_k[name] = k;

    for (const auto& name : solver_names) {
        SolverEntry entry{parse_method(name), defaults};
        if (const auto sec = tree.find("solver:" + name); sec != tree.not_found()) {
            for (const auto& [key, node] : sec->second) {
                if (!detail::solver_keys().count(key))
                    throw invalid_argument("unknown key '" + key + "' in [solver:" + name + "]");
                detail::apply_solver_key(entry.config, key, node);
            }
        }
        spec.solvers.push_back(std::move(entry));
    }
    for (const auto& [key, node] : tree) {
        if (node.empty() || key.rfind("matrix:", 0) != 0) continue;
        const std::string name = key.substr(7);
        for (const auto& [mk, mv] : node) {
            if (mk != "k") throw invalid_argument("unknown key '" + mk + "' in [" + key + "]");
            spec.matrix_k[name] = detail::get_value<std::size_t>(mv, mk);
        }
    }
    spec.validate();
    return spec;
}

inline ExperimentSpec parse_experiment_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open " + path.string());
    return parse_experiment(in);
}

} // namespace pobk::bench

#endif // POBK_BENCH_SPEC_FILE_HPP
