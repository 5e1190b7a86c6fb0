// Command-line front end: Schur benchmark runs, witness-instance verification and
// encoding-vs-oracle fuzzing.

#include <valprec/fuzz.hpp>
#include <valprec/schur.hpp>
#include <valprec/theorems.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

namespace {

valprec::Heuristic parse_heuristic(const std::string & s)
{
    static const std::map<std::string, valprec::Heuristic> known{
        {"lex-asc", {valprec::VarOrder::static_lex, valprec::ValueOrder::ascending}},
        {"lex-desc", {valprec::VarOrder::static_lex, valprec::ValueOrder::descending}},
        {"dom-asc", {valprec::VarOrder::smallest_domain, valprec::ValueOrder::ascending}},
        {"dom-desc", {valprec::VarOrder::smallest_domain, valprec::ValueOrder::descending}},
    };
    return known.at(s);
}

int run_schur(int n, int k, const std::string & sym, const std::string & mode, double budget_secs,
    const std::string & heuristic, bool d_way, const std::string & csv_path, unsigned jobs)
{
    valprec::BenchOptions opts;
    opts.mode = mode == "first" ? valprec::SolveMode::first : valprec::SolveMode::all;
    opts.heuristic = parse_heuristic(heuristic);
    if (d_way)
        opts.heuristic.branching = valprec::Branching::d_way;
    opts.budget = std::chrono::milliseconds(static_cast<long long>(budget_secs * 1000));
    opts.jobs = jobs;

    std::vector<valprec::SymmetryMode> modes;
    if (sym == "every")
        modes = {valprec::SymmetryMode::none, valprec::SymmetryMode::adjacent, valprec::SymmetryMode::all};
    else
        modes = {valprec::parse_symmetry_mode(sym)};

    auto rows = valprec::run_bench({{n, k}}, modes, opts);
    valprec::write_table(std::cout, rows);
    if (! csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (! csv) {
            std::cerr << "cannot write " << csv_path << "\n";
            return 2;
        }
        valprec::write_csv(csv, rows);
    }
    return 0;
}

int run_verify()
{
    int failures = 0;
    for (const auto & c : valprec::verify_theorems()) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "\n"
                  << "  expected: " << c.expected << "\n"
                  << "  observed: " << c.observed << "\n";
        failures += c.passed ? 0 : 1;
    }
    std::cout << failures << " of 6 checks failed\n";
    return failures == 0 ? 0 : 1;
}

int run_fuzz(std::uint64_t seed, std::size_t cases)
{
    auto report = valprec::fuzz_equivalence(seed, cases);
    std::cout << report.text();
    return report.divergences() == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Value precedence encodings: benchmarks and self-checks"};
    app.require_subcommand(1);

    int n = 13, k = 3;
    std::string sym = "all", mode = "all", heuristic = "lex-asc", csv;
    double budget_secs = 600;
    bool d_way = false;
    unsigned jobs = 1;
    auto * schur = app.add_subcommand("schur", "Search for partitions of [1,n] into k sum-free sets");
    schur->add_option("--n", n, "Interval length")->required()->check(CLI::PositiveNumber);
    schur->add_option("--k", k, "Number of classes")->required()->check(CLI::PositiveNumber);
    schur->add_option("--sym", sym, "Symmetry breaking: none, adjacent, all, or every (runs all three)")
        ->check(CLI::IsMember({"none", "adjacent", "all", "every"}));
    schur->add_option("--mode", mode, "Stop at the first solution or enumerate all")->check(CLI::IsMember({"first", "all"}));
    schur->add_option("--budget-secs", budget_secs, "Time limit per run")->check(CLI::PositiveNumber);
    schur->add_option("--heuristic", heuristic, "Variable and value order")
        ->check(CLI::IsMember({"lex-asc", "lex-desc", "dom-asc", "dom-desc"}));
    schur->add_flag("--d-way", d_way, "Branch on every value instead of x = v / x != v");
    schur->add_option("--csv", csv, "Also write the rows as CSV");
    schur->add_option("--jobs", jobs, "Runs in parallel when --sym every")->check(CLI::Range(1U, 256U));

    auto * verify = app.add_subcommand("verify-theorems", "Check the witness instances against the oracle");

    std::uint64_t seed = 1;
    std::size_t cases = 300;
    auto * fuzz = app.add_subcommand("fuzz", "Compare encodings with the brute-force oracle on random instances");
    fuzz->add_option("--seed", seed, "Random seed");
    fuzz->add_option("--cases", cases, "Instances per encoding");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*schur)
            return run_schur(n, k, sym, mode, budget_secs, heuristic, d_way, csv, jobs);
        if (*verify)
            return run_verify();
        if (*fuzz)
            return run_fuzz(seed, cases);
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
