// Acceptance gate. Prints one PASS/FAIL line per criterion and exits nonzero
// when any criterion fails. Criteria that need collection matrices look them
// up in the matrix cache (downloading when possible) and fail when the data
// cannot be obtained.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <Eigen/QR>

#include "oracle.hpp"
#include "pobk/bench.hpp"
#include "pobk/pobk.hpp"

using namespace pobk;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const Method all_methods[] = {Method::rk, Method::grbk, Method::rbkk, Method::grebkk, Method::arbk, Method::pobk};

struct Loaded {
    std::optional<SparseMatrix> matrix;
    std::string error;
};

const Loaded& collection_matrix(const std::string& name) {
    static std::map<std::string, Loaded> cache;
    if (auto it = cache.find(name); it != cache.end()) return it->second;
    Loaded l;
    try {
        l.matrix = mm::read_file(bench::locate_matrix(name));
    } catch (const std::exception& e) {
        l.error = e.what();
    }
    return cache[name] = std::move(l);
}

std::string unavailable(const std::string& name) {
    return "matrix data unavailable for " + name + " (" + collection_matrix(name).error + ")";
}

// Seeded consistent system: banded with a dominant diagonal, optionally
// scrambled by a symmetric random relabelling.
struct System {
    SparseMatrix a;
    Vector f;
    Vector x_star;
};

System random_system(std::uint64_t seed, std::size_t max_m) {
    rng gen(seed);
    const std::size_t m = 8 + gen.below(max_m - 7);
    const std::size_t half = 1 + gen.below(4);
    SparseMatrix a = oracle::random_banded(m, half, gen);
    if (seed % 2 == 1)
        a = apply_permutation(a, Permutation::from_order(oracle::random_order(m, gen)), PermuteSide::both);
    auto x = oracle::random_vector(m, gen);
    auto f = spmv(a, x);
    return {std::move(a), std::move(f), std::move(x)};
}

SolverConfig config_for(const System& s, std::uint64_t seed) {
    SolverConfig c;
    c.tol = 1e-6;
    c.k = 2 + seed % 5;
    c.seed = seed;
    c.k = std::min<std::size_t>(c.k, s.a.rows());
    return c;
}

Outcome oracle_equivalence() {
    const auto t0 = Clock::now();
    std::size_t checked = 0, converged = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto sys = random_system(1000 + seed, 60);
        const auto direct = oracle::solve(oracle::densify(sys.a), sys.f);
        for (auto m : all_methods) {
            const auto r = solve(m, sys.a, sys.f, sys.x_star, config_for(sys, seed));
            ++checked;
            if (!r.converged()) continue;
            ++converged;
            worst = std::max(worst, oracle::rel_diff(r.solution, direct));
        }
    }
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << converged << "/" << checked << " runs converged, worst RSE vs direct solve " << worst << ", " << secs << " s";
    return {converged > 0 && worst <= 1e-5 && secs < 60.0, d.str()};
}

Outcome monotone_contraction() {
    std::size_t traces = 0, violations = 0;
    double worst = 0.0, lowest_rse = 1.0;
    std::map<std::string, std::size_t> by_solver;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto sys = random_system(5000 + seed, 80);
        for (auto m : all_methods) {
            const auto r = solve(m, sys.a, sys.f, sys.x_star, config_for(sys, seed));
            ++traces;
            for (std::size_t i = 1; i < r.rse_trace.size(); ++i) {
                const double growth = r.rse_trace[i] / r.rse_trace[i - 1] - 1.0;
                worst = std::max(worst, growth);
                if (growth > 1e-12) {
                    ++violations;
                    ++by_solver[std::string(to_string(m))];
                    lowest_rse = std::min(lowest_rse, r.rse_trace[i]);
                }
            }
        }
    }
    std::ostringstream d;
    d << traces << " traces, " << violations << " increases beyond 1e-12, largest relative step " << worst;
    if (violations) {
        d << " (";
        for (const auto& [name, n] : by_solver) d << name << ": " << n << " ";
        d << "smallest RSE at an increase " << lowest_rse << ")";
    }
    return {violations == 0, d.str()};
}

Outcome two_projection_exactness() {
    rng gen(7);
    double worst_exact = 0.0;
    for (int start = 0; start < 100; ++start) {
        // orthogonal rows of random length and orientation
        const double phi = gen.uniform(0, 2 * std::numbers::pi), s1 = gen.uniform(0.5, 3), s2 = gen.uniform(0.5, 3);
        const auto a = SparseMatrix::from_dense(
            2, 2, Vector{s1 * std::cos(phi), s1 * std::sin(phi), -s2 * std::sin(phi), s2 * std::cos(phi)});
        const Vector x_star{gen.uniform(-1, 1), gen.uniform(-1, 1)};
        const auto f = spmv(a, x_star);
        Vector x{gen.uniform(-10, 10), gen.uniform(-10, 10)};
        row_project_inplace(a, f, x, 0);
        row_project_inplace(a, f, x, 1);
        worst_exact = std::max(worst_exact, distance2(x, x_star));
    }
    double worst_ratio = 0.0;
    for (double deg : {10.0, 45.0, 80.0}) {
        const double th = deg * std::numbers::pi / 180.0;
        const auto a = SparseMatrix::from_dense(2, 2, Vector{1, 0, std::cos(th), std::sin(th)});
        for (int start = 0; start < 20; ++start) {
            const Vector x_star{gen.uniform(-1, 1), gen.uniform(-1, 1)};
            const auto f = spmv(a, x_star);
            Vector x{gen.uniform(-10, 10), gen.uniform(-10, 10)};
            row_project_inplace(a, f, x, 0);
            for (int step = 0; step < 2; ++step) {
                const double before = distance2(x, x_star);
                row_project_inplace(a, f, x, step == 0 ? 1 : 0);
                worst_ratio = std::max(worst_ratio, std::abs(distance2(x, x_star) / before - std::cos(th)));
            }
        }
    }
    std::ostringstream d;
    d << "orthogonal rows: worst error after two projections " << worst_exact
      << "; angled rows: worst |ratio - cos(theta)| " << worst_ratio;
    return {worst_exact <= 1e-12 && worst_ratio <= 1e-9, d.str()};
}

Outcome spectral_envelope() {
    // orthogonal Q with rows rescaled into [1, 2]
    rng gen(64);
    Eigen::MatrixXd g(64, 64);
    for (Eigen::Index i = 0; i < 64; ++i)
        for (Eigen::Index j = 0; j < 64; ++j) g(i, j) = gen.normal();
    const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
    Vector dense(64 * 64);
    for (Eigen::Index i = 0; i < 64; ++i) {
        const double s = gen.uniform(1.0, 2.0);
        for (Eigen::Index j = 0; j < 64; ++j) dense[static_cast<std::size_t>(i * 64 + j)] = s * q(i, j);
    }
    const auto a = SparseMatrix::from_dense(64, 64, dense);
    Vector x_star(64);
    for (double& v : x_star) v = gen.uniform(-1, 1);
    const auto f = spmv(a, x_star);

    SolverConfig c;
    c.k = 4;
    c.tol = 1e-300;
    c.max_iters = 5;
    const auto plan = pobk_plan(a, f, c);
    std::vector<SparseMatrix> blocks;
    for (const auto& r : plan.ranges) blocks.push_back(row_block(plan.matrix, r.first, r.last));
    const auto report = pobk_iterate(plan, x_star, c);
    if (report.rse_trace.size() != 6) return {false, "expected 5 sweeps, got " + std::to_string(report.iterations)};
    bool ok = true;
    std::ostringstream d;
    d << "worst-block factor " << block_spectral_bound(blocks, 1) << ";";
    for (std::size_t j = 1; j <= 5; ++j) {
        const double bound = 1.1 * block_spectral_bound(blocks, j * c.k) * report.rse_trace[0];
        ok = ok && report.rse_trace[j] <= bound;
        d << " j=" << j << ": " << report.rse_trace[j] << " <= " << bound;
    }
    return {ok, d.str()};
}

Outcome rcm_effectiveness() {
    std::ostringstream d;
    bool ok = true;
    double rcm_secs = 0.0;
    {
        std::vector<Triplet> t;
        for (std::size_t i = 0; i < 2000; ++i) {
            t.push_back({i, i, 4.0});
            if (i + 1 < 2000) t.push_back({i, i + 1, -1.0}), t.push_back({i + 1, i, -1.0});
        }
        rng gen(2000);
        const auto a = apply_permutation(SparseMatrix::from_triplets(2000, 2000, t),
                                         Permutation::from_order(oracle::random_order(2000, gen)), PermuteSide::both);
        const auto t0 = Clock::now();
        const auto sys = preprocess_system(a, Vector(2000, 1.0));
        rcm_secs += seconds_since(t0);
        const auto bw = bandwidth(sys.matrix);
        ok = ok && bw <= 5;
        d << "scrambled tridiagonal bandwidth " << bandwidth(a) << " -> " << bw;
    }
    for (const std::string name : {"blckhole", "jagmesh4"}) {
        const auto& l = collection_matrix(name);
        if (!l.matrix) {
            ok = false;
            d << "; " << unavailable(name);
            continue;
        }
        const auto t0 = Clock::now();
        const auto sys = preprocess_system(*l.matrix, Vector(l.matrix->rows(), 1.0));
        rcm_secs += seconds_since(t0);
        const auto before = bandwidth(*l.matrix), after = bandwidth(sys.matrix);
        ok = ok && after < before;
        d << "; " << name << " bandwidth " << before << " -> " << after;
    }
    ok = ok && rcm_secs < 10.0;
    d << "; " << rcm_secs << " s";
    return {ok, d.str()};
}

Outcome collection_convergence() {
    struct Case {
        std::string name;
        std::size_t k;
        std::size_t cap;
    };
    const Case cases[] = {{"ex29", 5, 200}, {"chem97ztz", 20, 200}, {"jagmesh4", 20, 30000}};
    bool ok = true;
    std::ostringstream d;
    for (const auto& cs : cases) {
        if (!d.str().empty()) d << "; ";
        const auto& l = collection_matrix(cs.name);
        if (!l.matrix) {
            ok = false;
            d << unavailable(cs.name);
            continue;
        }
        const auto rhs = bench::generate_rhs(*l.matrix, bench::RhsMode::ones);
        SolverConfig c;
        c.k = cs.k;
        c.max_iters = cs.cap;
        const auto r = pobk_solve(*l.matrix, rhs.f, rhs.x_star, c);
        ok = ok && r.converged() && r.iterations <= cs.cap;
        d << cs.name << " IT " << r.iterations << " (" << to_string(r.termination) << ", cap " << cs.cap << ")";
    }
    return {ok, d.str()};
}

Outcome relative_performance() {
    bool ok = true;
    std::ostringstream d;
    for (const std::string name : {"jagmesh4", "blckhole"}) {
        if (!d.str().empty()) d << "; ";
        const auto& l = collection_matrix(name);
        if (!l.matrix) {
            ok = false;
            d << unavailable(name);
            continue;
        }
        const auto rhs = bench::generate_rhs(*l.matrix, bench::RhsMode::ones);
        double mean[2] = {0.0, 0.0};
        std::size_t converged[2] = {0, 0};
        const Method methods[2] = {Method::pobk, Method::grbk};
        for (int s = 0; s < 2; ++s) {
            for (std::uint64_t rep = 0; rep < 10; ++rep) {
                SolverConfig c;
                c.seed = rep;
                const auto t0 = Clock::now();
                const auto r = solve(methods[s], *l.matrix, rhs.f, rhs.x_star, c);
                mean[s] += seconds_since(t0) / 10.0;
                if (r.converged()) ++converged[s];
            }
        }
        ok = ok && converged[0] == 10 && mean[0] < mean[1];
        d << name << " pobk " << mean[0] << " s (" << converged[0] << "/10 converged) vs grbk " << mean[1] << " s ("
          << converged[1] << "/10)";
    }
    return {ok, d.str()};
}

Outcome stability() {
    const auto& l = collection_matrix("ex29");
    if (!l.matrix) return {false, unavailable("ex29")};
    const auto rhs = bench::generate_rhs(*l.matrix, bench::RhsMode::ones);
    std::vector<SolveReport> runs;
    std::vector<double> times;
    for (std::uint64_t rep = 0; rep < 10; ++rep) {
        SolverConfig c;
        c.k = 5;
        c.seed = rep;
        const auto t0 = Clock::now();
        runs.push_back(pobk_solve(*l.matrix, rhs.f, rhs.x_star, c));
        times.push_back(seconds_since(t0));
    }
    bool same = true;
    for (const auto& r : runs) same = same && r.iterations == runs[0].iterations && r.rse_trace == runs[0].rse_trace;
    double mean = 0.0, var = 0.0;
    for (double t : times) mean += t / 10.0;
    for (double t : times) var += (t - mean) * (t - mean) / 9.0;
    const double cv = std::sqrt(var) / mean;
    std::ostringstream d;
    d << "IT " << runs[0].iterations << (same ? ", identical" : ", differing") << " iterations and traces, wall-time CV "
      << cv;
    return {same && cv < 0.25, d.str()};
}

Outcome permutation_invariance() {
    double worst = 0.0;
    std::size_t converged = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        rng gen(9000 + seed);
        const std::size_t m = 50 + gen.below(200);
        const auto a = apply_permutation(oracle::random_banded(m, 1 + gen.below(3), gen),
                                         Permutation::from_order(oracle::random_order(m, gen)), PermuteSide::both);
        const auto x = oracle::random_vector(m, gen);
        const auto f = spmv(a, x);
        const auto q = Permutation::from_order(oracle::random_order(m, gen));
        SolverConfig c;
        c.k = 4 + seed % 8;
        c.tol = 1e-10;
        const auto r1 = pobk_solve(a, f, x, c);
        const auto r2 = pobk_solve(apply_permutation(a, q, PermuteSide::both), permute_vector(f, q, PermuteDirection::forward),
                                   permute_vector(x, q, PermuteDirection::forward), c);
        if (r1.converged() && r2.converged()) ++converged;
        worst = std::max(worst, oracle::rel_diff(permute_vector(r2.solution, q, PermuteDirection::inverse), r1.solution));
    }
    std::ostringstream d;
    d << converged << "/20 pairs converged, worst aligned relative difference " << worst;
    return {converged == 20 && worst <= 1e-8, d.str()};
}

Outcome orthogonality_diagnostics() {
    const CosineTable fixture(3, Vector{1, 0.4, 0, 0.4, 1, 0, 0, 0, 1});
    const auto m = zn_nn_metrics(fixture);
    bool ok = m.zn == 4.0 / 9.0 && m.nn == 3.8 / 9.0;
    std::ostringstream d;
    d << "fixture zn " << m.zn << " nn " << m.nn;
    const auto& l = collection_matrix("ex29");
    if (!l.matrix) return {false, d.str() + "; " + unavailable("ex29")};
    const auto rhs = bench::generate_rhs(*l.matrix, bench::RhsMode::ones);
    double prev = -1.0;
    for (std::size_t k : {2u, 3u, 5u}) {
        SolverConfig c;
        c.k = k;
        const double zn = zn_nn_metrics(pobk_plan(*l.matrix, rhs.f, c).cosines).zn;
        ok = ok && zn >= prev;
        prev = zn;
        d << "; ex29 k=" << k << " zn " << zn;
    }
    return {ok, d.str()};
}

} // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"oracle equivalence", oracle_equivalence},
        {"monotone contraction", monotone_contraction},
        {"two-projection exactness", two_projection_exactness},
        {"spectral envelope", spectral_envelope},
        {"RCM effectiveness", rcm_effectiveness},
        {"collection convergence", collection_convergence},
        {"relative performance", relative_performance},
        {"stability", stability},
        {"permutation invariance", permutation_invariance},
        {"zn/nn diagnostics", orthogonality_diagnostics},
    };
    int failures = 0;
    int id = 0;
    for (const auto& [name, run] : criteria) {
        ++id;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << " (" << name << "): " << o.detail << std::endl;
    }
    std::cout << (10 - failures) << "/10 criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
