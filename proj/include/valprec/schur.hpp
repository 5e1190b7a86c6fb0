#ifndef VALPREC_SCHUR_HPP
#define VALPREC_SCHUR_HPP

// Schur number decision models: can [1, n] be split into k sum-free classes?
// X_i is the class of i; for every a <= b with a + b <= n the classes of a, b and a + b
// must not all coincide (a = b included, since x = y + y is also forbidden).

#include <valprec/engine.hpp>
#include <valprec/precedence.hpp>
#include <valprec/propagators.hpp>
#include <valprec/search.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace valprec {

enum class SymmetryMode { none, adjacent, all };

inline const char * to_string(SymmetryMode s)
{
    switch (s) {
    case SymmetryMode::none:
        return "none";
    case SymmetryMode::adjacent:
        return "adjacent";
    case SymmetryMode::all:
        return "all";
    }
    return "?";
}

inline SymmetryMode parse_symmetry_mode(const std::string & s)
{
    if (s == "none")
        return SymmetryMode::none;
    if (s == "adjacent")
        return SymmetryMode::adjacent;
    if (s == "all")
        return SymmetryMode::all;
    throw std::invalid_argument("unknown symmetry mode '" + s + "'");
}

struct SchurInstance {
    int n = 1;
    int k = 1;
    SymmetryMode sym = SymmetryMode::none;

    [[nodiscard]] std::string label() const { return "S(" + std::to_string(n) + "," + std::to_string(k) + ")"; }
};

struct SchurModel {
    Model model;
    std::vector<VarId> xs;
    std::size_t triples = 0;
};

inline SchurModel build_schur_model(const SchurInstance & inst)
{
    if (inst.n < 1 || inst.k < 1)
        throw ConstructionError("Schur instance needs n >= 1 and k >= 1");
    SchurModel s;
    for (int i = 1; i <= inst.n; ++i)
        s.xs.push_back(s.model.add_fd_var_range(1, inst.k));
    auto x = [&](int i) { return s.xs[static_cast<std::size_t>(i - 1)]; };
    for (int a = 1; a <= inst.n; ++a)
        for (int b = a; a + b <= inst.n; ++b) {
            post_not_all_equal3(s.model, x(a), x(b), x(a + b));
            ++s.triples;
        }

    switch (inst.sym) {
    case SymmetryMode::none:
        break;
    case SymmetryMode::adjacent:
        for (int v = 1; v < inst.k; ++v)
            encode_pair_precedence(s.model, v, v + 1, s.xs);
        break;
    case SymmetryMode::all: {
        std::vector<int> values(static_cast<std::size_t>(inst.k));
        std::iota(values.begin(), values.end(), 1);
        encode_all_precedence(s.model, values, s.xs);
        break;
    }
    }
    return s;
}

struct ReportRow {
    std::string instance;
    SymmetryMode sym = SymmetryMode::none;
    std::size_t triples = 0;
    SearchStats stats;
};

struct BenchOptions {
    SolveMode mode = SolveMode::all;
    Heuristic heuristic;
    std::chrono::milliseconds budget = std::chrono::seconds(600);
    unsigned jobs = 1;
};

inline ReportRow run_one(const SchurInstance & inst, const BenchOptions & options)
{
    auto s = build_schur_model(inst);
    SearchOptions so;
    so.heuristic = options.heuristic;
    so.mode = options.mode;
    so.budget.time = options.budget;
    so.record_solutions = false;
    auto r = solve(s.model, s.xs, so);
    return {inst.label(), inst.sym, s.triples, r.stats};
}

/// Every (n, k) instance under every mode. Rows come back in input order whatever the
/// number of worker threads.
inline std::vector<ReportRow> run_bench(const std::vector<SchurInstance> & instances, const std::vector<SymmetryMode> & modes,
    const BenchOptions & options = {})
{
    std::vector<SchurInstance> work;
    for (const auto & inst : instances)
        for (auto m : modes)
            work.push_back({inst.n, inst.k, m});
    std::vector<ReportRow> rows(work.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < work.size();)
            rows[i] = run_one(work[i], options);
    };
    auto jobs = std::clamp<unsigned>(options.jobs, 1, static_cast<unsigned>(std::max<std::size_t>(work.size(), 1)));
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j)
        pool.emplace_back(worker);
    worker();
    for (auto & t : pool)
        t.join();
    return rows;
}

inline double millis(std::chrono::nanoseconds t) { return std::chrono::duration<double, std::milli>(t).count(); }

inline void write_csv(std::ostream & out, const std::vector<ReportRow> & rows)
{
    out << "instance,sym,user_constraints,encoding_constraints,backtracks,nodes,solutions,time_ms,halted\n";
    char time[32];
    for (const auto & r : rows) {
        std::snprintf(time, sizeof time, "%.3f", millis(r.stats.wall_time));
        out << r.instance << ',' << to_string(r.sym) << ',' << r.stats.user_constraints << ','
            << r.stats.encoding_constraints << ',' << r.stats.backtracks << ',' << r.stats.nodes << ','
            << r.stats.solutions << ',' << time << ',' << (r.stats.halted ? "true" : "false") << '\n';
    }
}

/// Aligned text table. Runs stopped by the budget show "cut off" in place of their counts,
/// since those counts are partial.
inline void write_table(std::ostream & out, const std::vector<ReportRow> & rows)
{
    const char * head = "%-10s %-9s %8s %10s %12s %12s %10s %12s\n";
    char line[160];
    std::snprintf(line, sizeof line, head, "instance", "sym", "triples", "encoding", "backtracks", "nodes", "solutions",
        "time_ms");
    out << line;
    for (const auto & r : rows) {
        auto num = [&](auto v) { return r.stats.halted ? std::string("cut off") : std::to_string(v); };
        char time[32];
        std::snprintf(time, sizeof time, "%.1f", millis(r.stats.wall_time));
        std::snprintf(line, sizeof line, head, r.instance.c_str(), to_string(r.sym), std::to_string(r.triples).c_str(),
            std::to_string(r.stats.encoding_constraints).c_str(), num(r.stats.backtracks).c_str(),
            num(r.stats.nodes).c_str(), num(r.stats.solutions).c_str(), time);
        out << line;
    }
}

} // namespace valprec

#endif // VALPREC_SCHUR_HPP
