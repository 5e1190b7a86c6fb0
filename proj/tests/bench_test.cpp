#include <valprec/fuzz.hpp>
#include <valprec/schur.hpp>
#include <valprec/theorems.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

using namespace valprec;

namespace {

SearchResult solve_schur(int n, int k, SymmetryMode sym)
{
    auto s = build_schur_model({n, k, sym});
    return solve(s.model, s.xs);
}

} // namespace

TEST(Schur, TwoColoursStopAtFour)
{
    EXPECT_GT(solve_schur(4, 2, SymmetryMode::none).stats.solutions, 0U);
    EXPECT_EQ(solve_schur(5, 2, SymmetryMode::none).stats.solutions, 0U);
    // 1,4 | 2,3 and its swap
    auto r = solve_schur(4, 2, SymmetryMode::none);
    std::sort(r.solutions.begin(), r.solutions.end());
    EXPECT_EQ(r.solutions, (std::vector<std::vector<int>>{{1, 2, 2, 1}, {2, 1, 1, 2}}));
    EXPECT_EQ(solve_schur(4, 2, SymmetryMode::all).solutions, (std::vector<std::vector<int>>{{1, 2, 2, 1}}));
}

TEST(Schur, ThreeColoursStopAtThirteen)
{
    for (auto sym : {SymmetryMode::none, SymmetryMode::adjacent, SymmetryMode::all}) {
        EXPECT_GT(solve_schur(13, 3, sym).stats.solutions, 0U) << to_string(sym);
        EXPECT_EQ(solve_schur(14, 3, sym).stats.solutions, 0U) << to_string(sym);
    }
}

TEST(Schur, TripleCount)
{
    // pairs a <= b with a + b <= n
    auto s = build_schur_model({6, 2, SymmetryMode::none});
    EXPECT_EQ(s.triples, 9U);
    EXPECT_EQ(s.model.user_constraints(), 9U);
    EXPECT_EQ(s.model.encoding_constraints(), 0U);
    auto t = build_schur_model({6, 3, SymmetryMode::adjacent});
    EXPECT_EQ(t.model.user_constraints(), 9U);
    EXPECT_EQ(t.model.encoding_constraints(), 12U);
    EXPECT_THROW(build_schur_model({0, 3, SymmetryMode::none}), ConstructionError);
}

TEST(Schur, SymmetryBreakingKeepsOneSolutionPerOrbit)
{
    for (int k = 2; k <= 3; ++k)
        for (int n = 1; n <= 8; ++n) {
            auto plain = solve_schur(n, k, SymmetryMode::none);
            std::vector<int> values(static_cast<std::size_t>(k));
            std::iota(values.begin(), values.end(), 1);
            auto orbits = oracle::enumerate_orbits(plain.solutions, FullInterchange{values});
            EXPECT_EQ(orbits.total_size(), plain.stats.solutions);
            for (auto sym : {SymmetryMode::adjacent, SymmetryMode::all}) {
                auto broken = solve_schur(n, k, sym);
                ASSERT_EQ(broken.stats.solutions, orbits.orbits.size()) << "n=" << n << " k=" << k;
                std::vector<oracle::Assignment> canon;
                for (const auto & o : orbits.orbits)
                    canon.push_back(o.canonical);
                std::sort(broken.solutions.begin(), broken.solutions.end());
                EXPECT_EQ(broken.solutions, canon);
            }
        }
}

TEST(Bench, EmptyInput)
{
    EXPECT_TRUE(run_bench({}, {SymmetryMode::none}, {}).empty());
    EXPECT_TRUE(run_bench({{5, 2, SymmetryMode::none}}, {}, {}).empty());
}

TEST(Bench, RowsFollowInputOrderWithThreads)
{
    BenchOptions o;
    o.jobs = 4;
    auto rows = run_bench({{8, 3, SymmetryMode::none}, {5, 2, SymmetryMode::none}},
        {SymmetryMode::none, SymmetryMode::adjacent, SymmetryMode::all}, o);
    ASSERT_EQ(rows.size(), 6U);
    EXPECT_EQ(rows[0].instance, "S(8,3)");
    EXPECT_EQ(rows[2].sym, SymmetryMode::all);
    EXPECT_EQ(rows[3].instance, "S(5,2)");
    EXPECT_EQ(rows[3].stats.solutions, 0U);
    EXPECT_EQ(rows[0].stats.solutions, 6 * rows[2].stats.solutions);
}

TEST(Bench, CsvAndTable)
{
    auto rows = run_bench({{4, 2, SymmetryMode::none}}, {SymmetryMode::all}, {});
    std::ostringstream csv;
    write_csv(csv, rows);
    std::string header, line;
    std::istringstream in(csv.str());
    std::getline(in, header);
    std::getline(in, line);
    EXPECT_EQ(header, "instance,sym,user_constraints,encoding_constraints,backtracks,nodes,solutions,time_ms,halted");
    EXPECT_EQ(line.rfind("S(4,2),all,4,4,", 0), 0U) << line;
    EXPECT_NE(line.find(",false"), std::string::npos);

    rows[0].stats.halted = true;
    std::ostringstream table;
    write_table(table, rows);
    EXPECT_NE(table.str().find("cut off"), std::string::npos);
}

TEST(Bench, BudgetCutsOff)
{
    BenchOptions o;
    o.budget = std::chrono::milliseconds(1);
    auto rows = run_bench({{40, 5, SymmetryMode::none}}, {SymmetryMode::none}, o);
    ASSERT_EQ(rows.size(), 1U);
    EXPECT_TRUE(rows[0].stats.halted);
}

TEST(Bench, SymmetryModeNames)
{
    for (auto s : {SymmetryMode::none, SymmetryMode::adjacent, SymmetryMode::all})
        EXPECT_EQ(parse_symmetry_mode(to_string(s)), s);
    EXPECT_THROW(parse_symmetry_mode("some"), std::invalid_argument);
}

TEST(Theorems, SoundChecksPass)
{
    auto checks = verify_theorems();
    ASSERT_EQ(checks.size(), 6U);
    for (std::size_t i : {0U, 1U, 4U, 5U})
        EXPECT_TRUE(checks[i].passed) << checks[i].name << ": " << checks[i].observed;
}

TEST(Fuzz, SameSeedSameReport)
{
    auto a = fuzz_equivalence(7, 40);
    auto b = fuzz_equivalence(7, 40);
    EXPECT_EQ(a.text(), b.text());
    EXPECT_EQ(a.divergences(), 0U) << a.text();
    EXPECT_EQ(a.kinds.size(), 5U);
}

TEST(Fuzz, RefusesCapsBeyondTheOracle)
{
    FuzzCaps caps;
    caps.max_n = 30;
    EXPECT_THROW(fuzz_equivalence(1, 1, caps), std::invalid_argument);
    caps = {};
    caps.max_values = 1;
    EXPECT_THROW(fuzz_equivalence(1, 1, caps), std::invalid_argument);
}

TEST(Fuzz, SmallSweepsAgree)
{
    for (auto kind : {EncodingKind::pair, EncodingKind::full, EncodingKind::partition, EncodingKind::wreath}) {
        auto s = exhaustive_sweep(kind, 2);
        EXPECT_GT(s.instances, 0U);
        EXPECT_EQ(s.divergences, 0U) << to_string(kind) << ": " << (s.examples.empty() ? "" : s.examples[0]);
    }
    auto sets = exhaustive_sweep(EncodingKind::set, 2);
    EXPECT_EQ(sets.divergences, 0U);
}

TEST(Fuzz, MinimizeLeavesAgreeingCasesAlone)
{
    FdCase c{PairSymmetry{1, 2}, {{1, 2}, {1, 2}, {1, 2, 3}}};
    EXPECT_FALSE(divergence(c));
    auto same = minimize(c);
    EXPECT_EQ(std::get<FdCase>(same).domains, c.domains);
}
