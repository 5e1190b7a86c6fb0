// Acceptance suite: prints one PASS/FAIL line per criterion, exit status is the number of failures.

#include <valprec/fuzz.hpp>
#include <valprec/oracle.hpp>
#include <valprec/precedence.hpp>
#include <valprec/schur.hpp>
#include <valprec/search.hpp>
#include <valprec/theorems.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace valprec;
namespace oc = valprec::oracle;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;

    void fail(const std::string & why)
    {
        if (passed)
            detail.clear();
        else
            detail += "; ";
        passed = false;
        detail += why;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// 1 ---------------------------------------------------------------------------------------

Outcome theorem_witnesses()
{
    Outcome out;
    auto t0 = Clock::now();
    int ok = 0;
    auto checks = verify_theorems();
    for (const auto & c : checks) {
        if (c.passed)
            ++ok;
        else
            out.fail(c.name + ": expected " + c.expected + ", observed " + c.observed);
    }
    if (out.passed)
        out.detail = std::to_string(ok) + "/" + std::to_string(checks.size()) + " witnesses";
    out.detail += " (" + std::to_string(int(seconds_since(t0) * 1000)) + " ms)";
    return out;
}

// 2 ---------------------------------------------------------------------------------------

Outcome oracle_equivalence()
{
    Outcome out;
    auto t0 = Clock::now();
    std::ostringstream counts;
    for (auto kind : {EncodingKind::pair, EncodingKind::full, EncodingKind::partition, EncodingKind::wreath,
             EncodingKind::set}) {
        auto s = exhaustive_sweep(kind, kind == EncodingKind::set ? 3 : 4);
        counts << to_string(kind) << " " << s.instances << " ";
        if (s.divergences != 0)
            out.fail(std::string(to_string(kind)) + " sweep: " + std::to_string(s.divergences) + " divergences, e.g. " +
                (s.examples.empty() ? "" : s.examples.front()));
    }
    auto fuzz = fuzz_equivalence(20240601, 300);
    for (const auto & k : fuzz.kinds) {
        if (k.instances < 300)
            out.fail(std::string(to_string(k.kind)) + " fuzz ran only " + std::to_string(k.instances) + " cases");
        if (k.divergences != 0)
            out.fail(std::string(to_string(k.kind)) + " fuzz: " + std::to_string(k.divergences) + " divergences, e.g. " +
                (k.examples.empty() ? "" : k.examples.front()));
    }
    auto secs = seconds_since(t0);
    if (secs > 300)
        out.fail("took " + std::to_string(secs) + " s");
    if (out.passed)
        out.detail = "swept " + counts.str() + "plus 300 random cases per kind, 0 divergences (" +
            std::to_string(int(secs)) + " s)";
    return out;
}

// 3 ---------------------------------------------------------------------------------------

// Exactly one solution of the posted model per orbit of the full assignment space.
std::string one_per_orbit(const SymmetrySpec & group, oc::VariableGroup vg, const std::vector<int> & values, std::size_t n,
    const std::function<void(Model &, std::vector<VarId> &)> & post)
{
    Model m;
    std::vector<VarId> xs;
    for (std::size_t i = 0; i < n; ++i)
        xs.push_back(m.add_fd_var(values));
    post(m, xs);
    auto solutions = solve(m, xs).solutions;

    auto perms = oc::value_permutations(group);
    std::map<oc::Assignment, int> hits;
    oc::for_each_assignment(oc::Domains(n, values), [&](std::span<const int> a) { hits.try_emplace(oc::canonical_form(a, perms, vg), 0); });
    for (const auto & s : solutions) {
        auto it = hits.find(oc::canonical_form(s, perms, vg));
        if (it == hits.end())
            return "solution outside the space";
        ++it->second;
    }
    for (const auto & [canon, count] : hits)
        if (count != 1) {
            std::string c;
            for (int v : canon)
                c += std::to_string(v) + " ";
            return "n=" + std::to_string(n) + " orbit of [ " + c + "] has " + std::to_string(count) + " solutions";
        }
    return {};
}

Outcome completeness()
{
    Outcome out;
    std::size_t checked = 0;
    auto run = [&](const std::string & name, const SymmetrySpec & group, oc::VariableGroup vg, const std::vector<int> & values,
                   std::size_t max_n, const std::function<void(Model &, std::vector<VarId> &)> & post) {
        for (std::size_t n = 1; n <= max_n; ++n) {
            ++checked;
            auto why = one_per_orbit(group, vg, values, n, post);
            if (! why.empty()) {
                out.fail(name + ": " + why);
                return;
            }
        }
    };
    for (std::vector<int> values : {std::vector<int>{1}, std::vector<int>{1, 2}, std::vector<int>{1, 2, 3}}) {
        FullInterchange f{values};
        run("full m=" + std::to_string(values.size()), f, oc::VariableGroup::none, values, 6,
            [&](Model & m, auto & xs) { encode_precedence(m, f, xs); });
        run("increasing seq m=" + std::to_string(values.size()), f, oc::VariableGroup::full, values, 6,
            [&](Model & m, auto & xs) { encode_increasing_seq(m, xs, values); });
    }
    for (PartitionInterchange p : {PartitionInterchange{{{1, 2}, {3}}}, PartitionInterchange{{{1, 2}, {3, 4}}}}) {
        std::vector<int> values;
        for (const auto & c : p.classes)
            values.insert(values.end(), c.begin(), c.end());
        std::sort(values.begin(), values.end());
        run("partition " + detail::show(p), p, oc::VariableGroup::none, values, 6,
            [&](Model & m, auto & xs) { encode_precedence(m, p, xs); });
    }
    {
        WreathInterchange w{{1, 2}, {0, 1}, {}};
        run("wreath 2x2", w, oc::VariableGroup::none, {10, 11, 20, 21}, 6, [&](Model & m, auto & xs) { encode_precedence(m, w, xs); });
    }
    if (out.passed)
        out.detail = std::to_string(checked) + " (group, n) combinations, one solution in every orbit";
    return out;
}

// 4 ---------------------------------------------------------------------------------------

Outcome schur_reproduction()
{
    Outcome out;
    std::vector<SchurInstance> instances;
    for (int k : {3, 4})
        for (int n : {13, 14, 15})
            instances.push_back({n, k, SymmetryMode::none});
    BenchOptions opts;
    opts.budget = std::chrono::seconds(600);
    auto rows = run_bench(instances, {SymmetryMode::none, SymmetryMode::adjacent, SymmetryMode::all}, opts);

    std::map<std::string, std::map<SymmetryMode, const ReportRow *>> by;
    for (const auto & r : rows)
        by[r.instance][r.sym] = &r;
    double slowest_k3 = 0;
    for (const auto & inst : instances) {
        bool expect_sat = inst.k == 4 || inst.n == 13;
        const auto & modes = by[inst.label()];
        for (const auto & [sym, r] : modes) {
            auto where = inst.label() + " " + to_string(sym);
            if (r->stats.halted) {
                out.fail(where + " hit the budget");
                continue;
            }
            if ((r->stats.solutions > 0) != expect_sat)
                out.fail(where + (expect_sat ? " found no solution" : " found a solution"));
            double secs = std::chrono::duration<double>(r->stats.wall_time).count();
            if (inst.k == 3) {
                slowest_k3 = std::max(slowest_k3, secs);
                if (secs > 10)
                    out.fail(where + " took " + std::to_string(secs) + " s");
            }
        }
        auto b = [&](SymmetryMode s) { return modes.at(s)->stats.backtracks; };
        if (! (b(SymmetryMode::all) <= b(SymmetryMode::adjacent) && b(SymmetryMode::adjacent) <= b(SymmetryMode::none)))
            out.fail(inst.label() + " backtracks not monotone: all " + std::to_string(b(SymmetryMode::all)) + ", adjacent " +
                std::to_string(b(SymmetryMode::adjacent)) + ", none " + std::to_string(b(SymmetryMode::none)));
    }
    if (out.passed) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "slowest k=3 run %.2f ms", slowest_k3 * 1000);
        out.detail = "S(13,3) sat, S(14,3) S(15,3) unsat, S(13..15,4) sat, backtracks all <= adjacent <= none, " +
            std::string(buf);
    }
    return out;
}

// 5 ---------------------------------------------------------------------------------------

Outcome orbit_accounting()
{
    Outcome out;
    int cases = 0;
    for (int k = 1; k <= 3; ++k)
        for (int n = 1; n <= 8; ++n) {
            auto plain = build_schur_model({n, k, SymmetryMode::none});
            SearchOptions count_only;
            count_only.record_solutions = false;
            auto none = solve(plain.model, plain.xs, count_only).stats.solutions;

            auto broken = build_schur_model({n, k, SymmetryMode::all});
            auto reps = solve(broken.model, broken.xs).solutions;
            std::vector<int> values(static_cast<std::size_t>(k));
            std::iota(values.begin(), values.end(), 1);
            auto perms = oc::value_permutations(FullInterchange{values});
            std::uint64_t total = 0;
            for (const auto & s : reps)
                total += oc::orbit_size(s, perms);
            ++cases;
            if (total != none)
                out.fail("S(" + std::to_string(n) + "," + std::to_string(k) + "): " + std::to_string(none) +
                    " solutions, orbit sizes sum to " + std::to_string(total));
        }
    if (out.passed)
        out.detail = std::to_string(cases) + " instances, exact";
    return out;
}

// 6 ---------------------------------------------------------------------------------------

std::uint64_t ground_solutions(const std::vector<int> & xs, const std::function<void(Model &, std::vector<VarId> &)> & post)
{
    Model m;
    std::vector<VarId> vars;
    for (int v : xs)
        vars.push_back(m.add_fd_var({v}));
    post(m, vars);
    return solve(m, vars).stats.solutions;
}

Outcome incompleteness()
{
    Outcome out;
    const std::vector<int> values{1, 2};
    auto perms = oc::value_permutations(FullInterchange{values});
    struct Pair {
        std::string name;
        std::vector<int> a, b;
        oc::VariableGroup g;
        std::function<void(Model &, std::vector<VarId> &)> post;
    };
    std::vector<Pair> pairs{
        {"reflection + interchange", {1, 2, 2}, {1, 1, 2}, oc::VariableGroup::reflection,
            [&](Model & m, auto & xs) {
                encode_all_precedence(m, values, xs);
                encode_reflection_lex(m, xs);
            }},
        {"rotation + interchange", {1, 1, 2, 1, 2}, {1, 2, 1, 2, 2}, oc::VariableGroup::rotation,
            [&](Model & m, auto & xs) {
                encode_all_precedence(m, values, xs);
                encode_rotation_lex(m, xs);
            }},
    };
    for (const auto & p : pairs) {
        if (oc::canonical_form(p.a, perms, p.g) != oc::canonical_form(p.b, perms, p.g))
            out.fail(p.name + ": pair is not symmetric");
        if (ground_solutions(p.a, p.post) != 1 || ground_solutions(p.b, p.post) != 1)
            out.fail(p.name + ": a member violates the combined constraints");
    }
    if (out.passed)
        out.detail = "both pairs symmetric and both members kept";
    return out;
}

// 7 ---------------------------------------------------------------------------------------

// Median seconds for one propagate() of a fresh pair chain over n variables with d values,
// a couple of which are removed up front so the chain has work to do.
double chain_propagation_time(std::size_t n, int d)
{
    std::vector<int> values(static_cast<std::size_t>(d));
    std::iota(values.begin(), values.end(), 1);
    constexpr int batch = 20;
    std::vector<double> samples;
    for (int rep = 0; rep < 15; ++rep) {
        std::vector<Model> models(batch);
        for (auto & m : models) {
            std::vector<VarId> xs;
            for (std::size_t i = 0; i < n; ++i)
                xs.push_back(m.add_fd_var(values));
            encode_pair_precedence(m, 1, 2, xs);
            m.remove(xs[n / 2], 1);
            m.remove(xs[n - 1], 2);
        }
        auto t0 = Clock::now();
        for (auto & m : models)
            if (m.propagate() == PropagationStatus::failed)
                return -1;
        samples.push_back(seconds_since(t0) / batch);
    }
    std::nth_element(samples.begin(), samples.begin() + long(samples.size() / 2), samples.end());
    return samples[samples.size() / 2];
}

Outcome linear_propagation()
{
    Outcome out;
    const std::vector<double> ns{100, 200, 400, 800};
    constexpr int d = 8;
    chain_propagation_time(100, d); // warm-up
    std::vector<double> ts;
    for (double n : ns)
        ts.push_back(chain_propagation_time(static_cast<std::size_t>(n), d));
    if (std::any_of(ts.begin(), ts.end(), [](double t) { return t <= 0; })) {
        out.fail("propagation failed or was not measurable");
        return out;
    }
    // least squares t = a + b n; linear means every t_i / n_i lies within a factor 2 of b
    double mn = std::accumulate(ns.begin(), ns.end(), 0.0) / double(ns.size());
    double mt = std::accumulate(ts.begin(), ts.end(), 0.0) / double(ts.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        sxy += (ns[i] - mn) * (ts[i] - mt);
        sxx += (ns[i] - mn) * (ns[i] - mn);
    }
    double slope = sxy / sxx;
    std::ostringstream report;
    report.precision(3);
    report << "slope " << slope * 1e9 << " ns/var; per-var";
    for (std::size_t i = 0; i < ns.size(); ++i) {
        double per = ts[i] / ns[i];
        report << " n=" << ns[i] << ":" << per * 1e9;
        if (slope <= 0 || per < slope / 2 || per > slope * 2)
            out.fail("n=" + std::to_string(int(ns[i])) + " per-variable time off the linear fit");
    }
    report << " ns";
    out.detail = out.passed ? report.str() : out.detail + " (" + report.str() + ")";
    return out;
}

} // namespace

int main()
{
    struct Criterion {
        const char * name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"1 theorem witnesses", theorem_witnesses},
        {"2 oracle equivalence", oracle_equivalence},
        {"3 symmetry-breaking completeness", completeness},
        {"4 Schur reproduction", schur_reproduction},
        {"5 orbit accounting", orbit_accounting},
        {"6 incompleteness pairs", incompleteness},
        {"7 linear propagation", linear_propagation},
    };
    int failures = 0;
    for (const auto & c : criteria) {
        Outcome o;
        try {
            o = c.run();
        }
        catch (const std::exception & e) {
            o.fail(std::string("exception: ") + e.what());
        }
        failures += o.passed ? 0 : 1;
        std::printf("%s  %s: %s\n", o.passed ? "PASS" : "FAIL", c.name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, std::size(criteria));
    return failures;
}
