#ifndef VALPREC_PRECEDENCE_HPP
#define VALPREC_PRECEDENCE_HPP

#include <valprec/engine.hpp>
#include <valprec/propagators.hpp>
#include <valprec/symmetry.hpp>

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

// Value precedence posted as a chain of ternary table constraints
//
//     T(X_1, Y_1, Y_2), T(X_2, Y_2, Y_3), ..., T(X_n, Y_n, Y_{n+1})
//
// where Y_i summarises what the prefix X_1..X_{i-1} has used and T allows (x, y, y')
// iff x is permitted after a prefix with summary y and y' is the summary after x.
// Every Y_i is shared by exactly two constraints and consecutive constraints share
// only Y_i, so the constraint hypergraph is Berge-acyclic and GAC on each table gives
// GAC on the whole conjunction.

namespace valprec {

struct PrecedenceOptions {
    /// Upper bound on the number of chain states before construction is refused.
    std::size_t max_states = std::size_t{1} << 16;
};

/// What an encoding introduced and posted.
struct PostedConstraints {
    /// Chain state variables Y_1..Y_{n+1} (B_1..B_{n+1} for a pair), or Z_1..Z_m for the
    /// surjection form.
    std::vector<VarId> state;
    /// Channelled 0/1 rows, for encodings that build a matrix.
    std::vector<std::vector<VarId>> matrix;
    std::vector<PropId> propagators;

    [[nodiscard]] bool entailed(const Model & m) const
    {
        return std::all_of(propagators.begin(), propagators.end(), [&](PropId p) { return m.entailed(p); });
    }
};

namespace detail {

inline std::vector<int> union_of_domains(const Model & m, std::span<const VarId> xs)
{
    std::set<int> all;
    for (auto x : xs)
        for (int v : m.dom(x))
            all.insert(v);
    return {all.begin(), all.end()};
}

/// Step returns the next state code, or nothing if the value is not allowed in that state.
using TransitionFn = std::function<std::optional<int>(int state, int value)>;

inline PostedConstraints post_transition_chain(Model & m, std::span<const VarId> xs, int initial, const TransitionFn & step,
    const std::function<bool(int)> & accepting, std::size_t max_states)
{
    auto values = union_of_domains(m, xs);

    std::set<int> states{initial};
    std::deque<int> frontier{initial};
    std::vector<Triple> triples;
    while (! frontier.empty()) {
        int s = frontier.front();
        frontier.pop_front();
        for (int v : values) {
            auto next = step(s, v);
            if (! next)
                continue;
            triples.push_back({v, s, *next});
            if (states.insert(*next).second) {
                if (states.size() > max_states)
                    throw ConstructionError("precedence chain needs more than " + std::to_string(max_states) +
                        " states; decompose the symmetry into smaller constraints");
                frontier.push_back(*next);
            }
        }
    }

    std::vector<int> all_states(states.begin(), states.end());
    std::vector<int> final_states;
    std::copy_if(all_states.begin(), all_states.end(), std::back_inserter(final_states),
        [&](int s) { return ! accepting || accepting(s); });
    if (final_states.empty())
        throw ConstructionError("precedence chain has no accepting state");

    Model::EncodingScope scope(m);
    PostedConstraints out;
    out.state.push_back(m.constant(initial));
    for (std::size_t i = 0; i < xs.size(); ++i)
        out.state.push_back(m.add_fd_var(i + 1 == xs.size() ? final_states : all_states));
    if (xs.empty() && accepting && ! accepting(initial))
        throw ConstructionError("precedence chain rejects the empty sequence");

    auto table = make_table(std::move(triples));
    for (std::size_t i = 0; i < xs.size(); ++i)
        out.propagators.push_back(post_table3(m, xs[i], out.state[i], out.state[i + 1], table));
    return out;
}

inline int position_in(std::span<const int> values, int v)
{
    auto it = std::find(values.begin(), values.end(), v);
    return it == values.end() ? 0 : static_cast<int>(it - values.begin()) + 1;
}

} // namespace detail

/// Precedence([first, second], xs): second may not be used before first has been.
/// B_i = 1 iff first occurs among X_1..X_{i-1}.
inline PostedConstraints encode_pair_precedence(Model & m, int first, int second, std::span<const VarId> xs)
{
    validate(PairSymmetry{first, second});
    auto step = [first, second](int b, int x) -> std::optional<int> {
        if (b == 0 && x == second)
            return std::nullopt;
        return x == first ? 1 : b;
    };
    return detail::post_transition_chain(m, xs, 0, step, nullptr, 2);
}

/// Precedence([v_1..v_m], xs): the first occurrence of v_j comes before that of v_k for j < k.
/// Y_i is the number of listed values used by X_1..X_{i-1}; unlisted values pass through.
inline PostedConstraints encode_all_precedence(Model & m, std::span<const int> values, std::span<const VarId> xs)
{
    std::vector<int> vals(values.begin(), values.end());
    validate(FullInterchange{vals});
    auto step = [vals](int used, int x) -> std::optional<int> {
        int k = detail::position_in(vals, x);
        if (k == 0)
            return used;
        if (k > used + 1)
            return std::nullopt;
        return k == used + 1 ? used + 1 : used;
    };
    return detail::post_transition_chain(m, xs, 0, step, nullptr, vals.size() + 1);
}

/// Precedence within each class of a value partition. Y_i is a tuple of per-class counts,
/// coded mixed-radix with radix |class|+1. Singleton classes impose nothing and are dropped.
inline PostedConstraints encode_partial_precedence(Model & m, const std::vector<std::vector<int>> & classes,
    std::span<const VarId> xs, PrecedenceOptions options = {})
{
    validate(PartitionInterchange{classes});
    std::vector<std::vector<int>> kept;
    std::copy_if(classes.begin(), classes.end(), std::back_inserter(kept), [](const auto & c) { return c.size() > 1; });
    if (kept.empty())
        return {};

    std::vector<int> weight;
    std::size_t space = 1;
    for (const auto & c : kept) {
        weight.push_back(static_cast<int>(space));
        space *= c.size() + 1;
        if (space > options.max_states)
            throw ConstructionError("partition precedence needs more than " + std::to_string(options.max_states) +
                " states; decompose into one precedence constraint per class");
    }

    // value -> (class, 1-based position in class)
    std::unordered_map<int, std::pair<std::size_t, int>> where;
    for (std::size_t j = 0; j < kept.size(); ++j)
        for (std::size_t k = 0; k < kept[j].size(); ++k)
            where[kept[j][k]] = {j, static_cast<int>(k) + 1};

    auto step = [kept, weight, where](int code, int x) -> std::optional<int> {
        auto it = where.find(x);
        if (it == where.end())
            return code;
        auto [j, k] = it->second;
        int radix = static_cast<int>(kept[j].size()) + 1;
        int used = (code / weight[j]) % radix;
        if (k > used + 1)
            return std::nullopt;
        return k == used + 1 ? code + weight[j] : code;
    };
    return detail::post_transition_chain(m, xs, 0, step, nullptr, options.max_states);
}

/// Wreath precedence over pair values coded with `coding`. Outer values must first occur in
/// list order, and for each outer value its inner values must first occur in list order.
/// The state keeps, per outer value, how many inner values it has used (0 = outer unused),
/// coded mixed-radix with radix |inner|+1.
inline PostedConstraints encode_wreath_precedence(Model & m, const std::vector<int> & outer, const std::vector<int> & inner,
    std::span<const VarId> xs, PairCoding coding = {}, PrecedenceOptions options = {})
{
    validate(WreathInterchange{outer, inner, coding});
    for (int v : detail::union_of_domains(m, xs)) {
        auto [u, w] = coding.decode(v);
        if (detail::position_in(outer, u) == 0 || detail::position_in(inner, w) == 0)
            throw ConstructionError("wreath precedence value " + std::to_string(v) + " is not a listed pair");
    }

    const int radix = static_cast<int>(inner.size()) + 1;
    std::vector<int> weight;
    int w = 1;
    for (std::size_t j = 0; j < outer.size(); ++j) {
        weight.push_back(w);
        if (static_cast<std::size_t>(w) > options.max_states / static_cast<std::size_t>(radix))
            throw ConstructionError("wreath precedence state space too large; reduce the number of outer values");
        w *= radix;
    }

    auto step = [outer, inner, coding, weight, radix](int code, int x) -> std::optional<int> {
        auto [u, v] = coding.decode(x);
        int j = detail::position_in(outer, u) - 1;
        int k = detail::position_in(inner, v);
        int outer_used = 0;
        while (outer_used < static_cast<int>(outer.size()) && (code / weight[static_cast<std::size_t>(outer_used)]) % radix > 0)
            ++outer_used;
        if (j > outer_used)
            return std::nullopt;
        int inner_used = (code / weight[static_cast<std::size_t>(j)]) % radix;
        if (k > inner_used + 1)
            return std::nullopt;
        return k == inner_used + 1 ? code + weight[static_cast<std::size_t>(j)] : code;
    };
    return detail::post_transition_chain(m, xs, 0, step, nullptr, options.max_states);
}

inline PostedConstraints encode_precedence(Model & m, const SymmetrySpec & spec, std::span<const VarId> xs,
    PrecedenceOptions options = {})
{
    struct Visitor {
        Model & m;
        std::span<const VarId> xs;
        PrecedenceOptions options;
        PostedConstraints operator()(const PairSymmetry & p) const { return encode_pair_precedence(m, p.first, p.second, xs); }
        PostedConstraints operator()(const FullInterchange & f) const { return encode_all_precedence(m, f.values, xs); }
        PostedConstraints operator()(const PartitionInterchange & p) const
        {
            return encode_partial_precedence(m, p.classes, xs, options);
        }
        PostedConstraints operator()(const WreathInterchange & w) const
        {
            return encode_wreath_precedence(m, w.outer, w.inner, xs, w.coding, options);
        }
    };
    return std::visit(Visitor{m, xs, options}, spec);
}

/// Channels each X_i into a 0/1 row (B_ij = 1 iff X_i = v_j), posts exactly-one per row and
/// orders the value columns with column j >=lex column j+1, each as its own constraint.
inline PostedConstraints encode_matrix_precedence(Model & m, std::span<const int> values, std::span<const VarId> xs)
{
    std::vector<int> vals(values.begin(), values.end());
    validate(FullInterchange{vals});
    for (auto x : xs)
        for (int v : m.dom(x))
            if (detail::position_in(vals, v) == 0)
                throw ConstructionError("matrix precedence needs every domain value to be listed");

    Model::EncodingScope scope(m);
    PostedConstraints out;
    for (auto x : xs) {
        std::vector<VarId> row;
        for (int v : vals)
            row.push_back(m.contains(x, v) ? m.add_bool_var() : m.constant(0));
        out.propagators.push_back(post_channel(m, x, vals, row));
        out.propagators.push_back(post_exactly_one(m, row));
        out.matrix.push_back(std::move(row));
    }
    for (std::size_t j = 0; j + 1 < vals.size(); ++j) {
        std::vector<VarId> left, right;
        for (const auto & row : out.matrix) {
            left.push_back(row[j]);
            right.push_back(row[j + 1]);
        }
        out.propagators.push_back(post_lex_leq(m, right, left));
    }
    return out;
}

/// Dual first-index variables Z_j with X_i = v_j -> Z_j <= i, Z_j = i -> X_i = v_j and
/// Z_j < Z_{j+1} (positions are 1-based). Forces every value to be used. The overload
/// taking `zs` links caller-made Z variables instead of creating Z_j in 1..n.
inline PostedConstraints encode_puget_surjection(Model & m, std::span<const VarId> xs, std::span<const int> values,
    std::span<const VarId> zs)
{
    std::vector<int> vals(values.begin(), values.end());
    validate(FullInterchange{vals});
    if (zs.size() != vals.size())
        throw UsageError("surjection encoding needs one Z variable per value");

    Model::EncodingScope scope(m);
    PostedConstraints out;
    out.state.assign(zs.begin(), zs.end());
    const int n = static_cast<int>(xs.size());
    std::vector<Implication> clauses;
    for (int i = 1; i <= n; ++i) {
        for (std::size_t j = 0; j < vals.size(); ++j) {
            auto x = xs[static_cast<std::size_t>(i - 1)];
            clauses.push_back({x, vals[j], out.state[j], Relation::le, i});
            clauses.push_back({out.state[j], i, x, Relation::eq, vals[j]});
        }
    }
    out.propagators = post_implications(m, clauses);
    for (std::size_t j = 0; j + 1 < vals.size(); ++j)
        out.propagators.push_back(post_less(m, out.state[j], out.state[j + 1], true));
    return out;
}

inline PostedConstraints encode_puget_surjection(Model & m, std::span<const VarId> xs, std::span<const int> values)
{
    if (xs.empty())
        throw ConstructionError("surjection encoding needs at least one variable");
    std::vector<VarId> zs;
    {
        Model::EncodingScope scope(m);
        for (std::size_t j = 0; j < values.size(); ++j)
            zs.push_back(m.add_fd_var_range(1, static_cast<int>(xs.size())));
    }
    return encode_puget_surjection(m, xs, values, zs);
}

/// Set-variable precedence: the first set telling v_j and v_k apart contains v_j. Posted as
/// a lex chain on the value columns of the characteristic 0/1 matrix.
///
/// With cardinality bounds on the sets this remains sound but is not complete: bound
/// consistency for that case is NP-hard, and only the membership variables are reasoned on.
inline PostedConstraints encode_set_precedence(Model & m, std::span<const int> values, std::span<const SetVarId> sets,
    ChainFiltering filtering = ChainFiltering::complete)
{
    std::vector<int> vals(values.begin(), values.end());
    validate(FullInterchange{vals});

    Model::EncodingScope scope(m);
    PostedConstraints out;
    std::optional<VarId> zero;
    for (auto s : sets) {
        std::vector<VarId> row;
        for (int v : vals) {
            if (auto b = m.member(s, v)) {
                row.push_back(*b);
            }
            else {
                if (! zero)
                    zero = m.constant(0);
                row.push_back(*zero);
            }
        }
        out.matrix.push_back(std::move(row));
    }
    // column of v_m <=lex ... <=lex column of v_1
    std::vector<std::vector<VarId>> columns;
    for (std::size_t j = vals.size(); j-- > 0;) {
        std::vector<VarId> col;
        for (const auto & row : out.matrix)
            col.push_back(row[j]);
        columns.push_back(std::move(col));
    }
    out.propagators.push_back(post_lex_chain(m, std::move(columns), false, filtering));
    return out;
}

/// IncreasingSeq: X_1 = v_1, each step repeats the value or moves to the next listed value,
/// and the run lengths of the values used are non-decreasing. Posted as a transition chain
/// whose state is (value index, current run length, previous run length).
inline PostedConstraints encode_increasing_seq(Model & m, std::span<const VarId> xs, std::span<const int> values)
{
    std::vector<int> vals(values.begin(), values.end());
    validate(FullInterchange{vals});
    const int base = static_cast<int>(xs.size()) + 1;
    auto code = [base](int j, int run, int prev) { return (j * base + run) * base + prev; };

    auto step = [vals, base, code](int s, int x) -> std::optional<int> {
        int prev = s % base, run = (s / base) % base, j = s / (base * base);
        int k = detail::position_in(vals, x);
        if (k == 0)
            return std::nullopt;
        if (j == 0)
            return k == 1 ? std::optional<int>(code(1, 1, 0)) : std::nullopt;
        if (k == j)
            return code(j, run + 1, prev);
        if (k == j + 1 && run >= prev)
            return code(j + 1, 1, run);
        return std::nullopt;
    };
    auto accepting = [base](int s) {
        int prev = s % base, run = (s / base) % base;
        return s == 0 || run >= prev;
    };
    return detail::post_transition_chain(m, xs, 0, step, accepting, std::numeric_limits<std::size_t>::max());
}

/// [X_1..X_h] <=lex [X_n..X_{n-h+1}] with h = floor(n/2); an odd middle element is skipped.
inline PostedConstraints encode_reflection_lex(Model & m, std::span<const VarId> xs)
{
    Model::EncodingScope scope(m);
    PostedConstraints out;
    const auto half = xs.size() / 2;
    if (half == 0)
        return out;
    std::vector<VarId> front(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(half));
    std::vector<VarId> back(xs.rbegin(), xs.rbegin() + static_cast<std::ptrdiff_t>(half));
    out.propagators.push_back(post_lex_leq(m, front, back));
    return out;
}

/// X <=lex every non-trivial rotation of X.
inline PostedConstraints encode_rotation_lex(Model & m, std::span<const VarId> xs)
{
    Model::EncodingScope scope(m);
    PostedConstraints out;
    std::vector<VarId> seq(xs.begin(), xs.end());
    for (std::size_t shift = 1; shift < seq.size(); ++shift) {
        std::vector<VarId> rotated;
        for (std::size_t i = 0; i < seq.size(); ++i)
            rotated.push_back(seq[(i + shift) % seq.size()]);
        out.propagators.push_back(post_lex_leq(m, seq, rotated));
    }
    return out;
}

} // namespace valprec

#endif // VALPREC_PRECEDENCE_HPP
