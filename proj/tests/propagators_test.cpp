#include "test_support.hpp"

#include <valprec/oracle.hpp>
#include <valprec/propagators.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace valprec;
using namespace testing_support;
namespace oc = valprec::oracle;

namespace {

std::vector<int> slice(std::span<const int> a, std::size_t from, std::size_t len)
{
    return {a.begin() + static_cast<std::ptrdiff_t>(from), a.begin() + static_cast<std::ptrdiff_t>(from + len)};
}

} // namespace

TEST(TernaryTable, MatchesOracleOnRandomTables)
{
    std::mt19937_64 g(11);
    for (int round = 0; round < 400; ++round) {
        std::vector<Triple> rows;
        auto count = g() % 12;
        for (std::size_t i = 0; i < count; ++i)
            rows.push_back({int(g() % 4), int(g() % 4), int(g() % 4)});
        auto table = make_table(rows);
        auto d = random_domains(g, 3, 0, 3);
        auto got = fixpoint(d, [&](Model & m, auto & xs) { post_table3(m, xs[0], xs[1], xs[2], table); });
        auto ref = oc::gac_by_definition(
            [&](auto a) { return std::binary_search(table->begin(), table->end(), Triple{a[0], a[1], a[2]}); }, d);
        ASSERT_EQ(got, ref) << "round " << round;
    }
}

TEST(TernaryTable, EntailedWhenEveryCombinationIsAllowed)
{
    Model m;
    auto x = m.add_fd_var({0, 1});
    auto y = m.constant(0);
    auto z = m.constant(1);
    auto p = post_table3(m, x, y, z, std::vector<Triple>{{0, 0, 1}, {1, 0, 1}, {1, 1, 1}});
    m.propagate();
    EXPECT_TRUE(m.entailed(p));
}

TEST(LexLeq, MatchesOracle)
{
    std::mt19937_64 g(12);
    for (int round = 0; round < 600; ++round) {
        auto len = 1 + g() % 4;
        bool strict = g() % 2;
        auto d = random_domains(g, 2 * len, 0, 2);
        auto got = fixpoint(d, [&](Model & m, auto & xs) {
            post_lex_leq(m, {xs.begin(), xs.begin() + long(len)}, {xs.begin() + long(len), xs.end()}, strict);
        });
        auto ref = oc::gac_by_definition(
            [&](auto a) { return oc::lex_leq_holds(slice(a, 0, len), slice(a, len, len), strict); }, d);
        ASSERT_EQ(got, ref) << "round " << round;
    }
}

TEST(LexLeq, LengthMismatchIsAUsageError)
{
    Model m;
    auto a = m.add_bool_var();
    EXPECT_THROW(post_lex_leq(m, {a}, {a, a}), UsageError);
}

TEST(LexChain, CompleteFilteringMatchesOracle)
{
    std::mt19937_64 g(13);
    for (int round = 0; round < 500; ++round) {
        auto cols = 2 + g() % 3;
        auto len = 1 + g() % 3;
        bool strict = g() % 4 == 0;
        auto d = random_domains(g, cols * len, 0, 1 + int(g() % 2));
        auto got = fixpoint(d, [&](Model & m, auto & xs) {
            std::vector<std::vector<VarId>> columns;
            for (std::size_t c = 0; c < cols; ++c)
                columns.emplace_back(xs.begin() + long(c * len), xs.begin() + long((c + 1) * len));
            post_lex_chain(m, columns, strict, ChainFiltering::complete);
        });
        auto ref = oc::gac_by_definition(
            [&](auto a) {
                for (std::size_t c = 0; c + 1 < cols; ++c)
                    if (! oc::lex_leq_holds(slice(a, c * len, len), slice(a, (c + 1) * len, len), strict))
                        return false;
                return true;
            },
            d);
        ASSERT_EQ(got, ref) << "round " << round;
    }
}

TEST(LexChain, PairwiseFilteringIsSoundButWeaker)
{
    std::mt19937_64 g(14);
    bool weaker_seen = false;
    for (int round = 0; round < 500; ++round) {
        auto cols = 3 + g() % 2;
        auto len = 2 + g() % 2;
        auto d = random_domains(g, cols * len, 0, 1);
        auto post = [&](ChainFiltering f) {
            return fixpoint(d, [&](Model & m, auto & xs) {
                std::vector<std::vector<VarId>> columns;
                for (std::size_t c = 0; c < cols; ++c)
                    columns.emplace_back(xs.begin() + long(c * len), xs.begin() + long((c + 1) * len));
                post_lex_chain(m, columns, false, f);
            });
        };
        auto complete = post(ChainFiltering::complete);
        auto pairwise = post(ChainFiltering::pairwise);
        ASSERT_TRUE(within(complete, pairwise));
        weaker_seen = weaker_seen || complete != pairwise;
    }
    EXPECT_TRUE(weaker_seen);
}

TEST(Channel, MatchesOracle)
{
    std::mt19937_64 g(15);
    for (int round = 0; round < 400; ++round) {
        auto d = random_domains(g, 1, 1, 4);
        auto bools = random_domains(g, 3, 0, 1);
        d.insert(d.end(), bools.begin(), bools.end());
        std::vector<int> vals{1, 2, 3};
        auto got = fixpoint(d, [&](Model & m, auto & xs) { post_channel(m, xs[0], vals, {xs[1], xs[2], xs[3]}); });
        auto ref = oc::gac_by_definition(
            [&](auto a) {
                for (std::size_t j = 0; j < 3; ++j)
                    if ((a[0] == vals[j]) != (a[j + 1] == 1))
                        return false;
                return true;
            },
            d);
        ASSERT_EQ(got, ref) << "round " << round;
    }
}

TEST(Channel, SizeMismatch)
{
    Model m;
    auto x = m.add_fd_var({1, 2});
    EXPECT_THROW(post_channel(m, x, {1, 2}, {m.add_bool_var()}), UsageError);
    EXPECT_THROW(post_exactly_one(m, {}), UsageError);
}

TEST(NotAllEqual3, MatchesOracle)
{
    std::mt19937_64 g(16);
    for (int round = 0; round < 400; ++round) {
        auto d = random_domains(g, 3, 1, 3);
        auto got = fixpoint(d, [&](Model & m, auto & xs) { post_not_all_equal3(m, xs[0], xs[1], xs[2]); });
        auto ref = oc::gac_by_definition([](auto a) { return ! (a[0] == a[1] && a[1] == a[2]); }, d);
        ASSERT_EQ(got, ref) << "round " << round;
    }
}

TEST(NotAllEqual3, SharedVariable)
{
    // X_b, X_b, X_2b: the repeated variable must differ from the third
    Model m;
    auto b = m.add_fd_var({1, 2});
    auto c = m.constant(1);
    m.post<NotAllEqual3>(b, b, c);
    m.propagate();
    EXPECT_EQ(m.value(b), 2);
}

TEST(Implications, EachClauseIsArcConsistent)
{
    std::mt19937_64 g(17);
    for (int round = 0; round < 600; ++round) {
        auto d = random_domains(g, 2, 1, 4);
        Implication clause{VarId{0}, 1 + int(g() % 4), VarId{1}, Relation(g() % 4), 1 + int(g() % 4)};
        auto got = fixpoint(d, [&](Model & m, auto &) { post_implications(m, std::span<const Implication>(&clause, 1)); });
        auto ref = oc::gac_by_definition(
            [&](auto a) {
                if (a[0] != clause.if_value)
                    return true;
                switch (clause.rel) {
                case Relation::eq:
                    return a[1] == clause.then_value;
                case Relation::le:
                    return a[1] <= clause.then_value;
                case Relation::lt:
                    return a[1] < clause.then_value;
                case Relation::ne:
                    return a[1] != clause.then_value;
                }
                return false;
            },
            d);
        ASSERT_EQ(got, ref) << "round " << round;
    }
}

TEST(Less, MatchesOracle)
{
    std::mt19937_64 g(18);
    for (int round = 0; round < 400; ++round) {
        auto d = random_domains(g, 2, 1, 5);
        bool strict = g() % 2;
        auto got = fixpoint(d, [&](Model & m, auto & xs) { post_less(m, xs[0], xs[1], strict); });
        auto ref = oc::gac_by_definition([&](auto a) { return strict ? a[0] < a[1] : a[0] <= a[1]; }, d);
        ASSERT_EQ(got, ref) << "round " << round;
    }
}

TEST(BoolSum, MatchesOracle)
{
    std::mt19937_64 g(19);
    for (int round = 0; round < 400; ++round) {
        auto n = 1 + g() % 5;
        auto d = random_domains(g, n, 0, 1);
        int lo = int(g() % (n + 1));
        int hi = lo + int(g() % 3);
        auto got = fixpoint(d, [&](Model & m, auto & xs) { post_bool_sum(m, xs, Interval{lo, hi}); });
        auto ref = oc::gac_by_definition(
            [&](auto a) {
                int s = 0;
                for (int v : a)
                    s += v;
                return lo <= s && s <= hi;
            },
            d);
        ASSERT_EQ(got, ref) << "round " << round;
    }
}

TEST(Propagators, StayCorrectUnderBacktracking)
{
    // propagate a chain at two depths and check the root state comes back intact
    Model m;
    std::vector<VarId> a, b;
    for (int i = 0; i < 3; ++i) {
        a.push_back(m.add_fd_var({0, 1, 2}));
        b.push_back(m.add_fd_var({0, 1, 2}));
    }
    post_lex_leq(m, b, a, true);
    ASSERT_EQ(m.propagate(), PropagationStatus::at_fixpoint);
    std::vector<std::vector<int>> root;
    for (auto x : a)
        root.push_back(m.dom(x).values());
    m.push_choice();
    ASSERT_TRUE(m.assign(a[0], 0));
    ASSERT_EQ(m.propagate(), PropagationStatus::at_fixpoint);
    EXPECT_EQ(m.value(b[0]), 0);
    m.push_choice();
    ASSERT_TRUE(m.assign(a[1], 0));
    ASSERT_TRUE(m.assign(a[2], 0));
    EXPECT_EQ(m.propagate(), PropagationStatus::failed);
    m.pop_choice();
    m.pop_choice();
    for (std::size_t i = 0; i < a.size(); ++i)
        EXPECT_EQ(m.dom(a[i]).values(), root[i]);
    EXPECT_EQ(m.propagate(), PropagationStatus::at_fixpoint);
}
