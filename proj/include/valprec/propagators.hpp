#ifndef VALPREC_PROPAGATORS_HPP
#define VALPREC_PROPAGATORS_HPP

#include <valprec/engine.hpp>

#include <algorithm>
#include <array>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace valprec {

using Triple = std::array<int, 3>;

/// Sorted, duplicate-free list of allowed triples. Immutable once built, so it can be shared.
using TripleTable = std::vector<Triple>;

inline std::shared_ptr<const TripleTable> make_table(std::vector<Triple> allowed)
{
    std::sort(allowed.begin(), allowed.end());
    allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
    return std::make_shared<const TripleTable>(std::move(allowed));
}

namespace detail {

inline bool distinct(std::span<const VarId> vars)
{
    std::vector<VarId> sorted(vars.begin(), vars.end());
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

inline bool intersects(const Model & m, VarId x, VarId y)
{
    auto dx = m.dom(x), dy = m.dom(y);
    if (dx.max() < dy.min() || dy.max() < dx.min())
        return false;
    if (dx.size() > dy.size())
        std::swap(dx, dy);
    return std::any_of(dx.begin(), dx.end(), [&](int v) { return dy.contains(v); });
}

/// Every completion satisfies a <=lex b (or <lex).
inline bool lex_entailed(const Model & m, std::span<const VarId> a, std::span<const VarId> b, bool strict)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (m.max(a[i]) < m.min(b[i]))
            return true;
        if (! (m.fixed(a[i]) && m.fixed(b[i]) && m.value(a[i]) == m.value(b[i])))
            return false;
    }
    return ! strict;
}

/// GAC on a <=lex b (a <lex b when strict), positions treated as independent variables.
/// A two-state automaton (still equal / already less) gives forward and backward reachability.
inline FilterResult filter_lex(Model & m, std::span<const VarId> a, std::span<const VarId> b, bool strict)
{
    const auto n = a.size();
    std::vector<char> can_eq(n), can_lt(n);
    for (std::size_t i = 0; i < n; ++i) {
        can_lt[i] = m.min(a[i]) < m.max(b[i]);
        can_eq[i] = intersects(m, a[i], b[i]);
    }

    std::vector<char> eq_fwd(n + 1), lt_fwd(n + 1);
    eq_fwd[0] = 1;
    lt_fwd[0] = 0;
    for (std::size_t i = 0; i < n; ++i) {
        eq_fwd[i + 1] = eq_fwd[i] && can_eq[i];
        lt_fwd[i + 1] = lt_fwd[i] || (eq_fwd[i] && can_lt[i]);
    }

    // From "less" every suffix is accepted, so only "equal" needs a backward pass.
    std::vector<char> eq_bwd(n + 1);
    eq_bwd[n] = ! strict;
    for (std::size_t i = n; i-- > 0;)
        eq_bwd[i] = can_lt[i] || (can_eq[i] && eq_bwd[i + 1]);
    if (! eq_bwd[0])
        return FilterResult::failed;

    for (std::size_t i = 0; i < n; ++i) {
        if (lt_fwd[i] || ! eq_fwd[i])
            continue;
        int b_max = m.max(b[i]);
        int a_min = m.min(a[i]);
        bool keep_equal = eq_bwd[i + 1];
        auto db = m.dom(b[i]);
        if (! m.retain_if(a[i], [&](int v) { return v < b_max || (keep_equal && db.contains(v)); }))
            return FilterResult::failed;
        auto da = m.dom(a[i]);
        if (! m.retain_if(b[i], [&](int v) { return a_min < v || (keep_equal && da.contains(v)); }))
            return FilterResult::failed;
    }
    return lex_entailed(m, a, b, strict) ? FilterResult::entailed : FilterResult::ok;
}

} // namespace detail

/// GAC table constraint over three variables.
class TernaryTable : public Propagator {
public:
    TernaryTable(VarId x, VarId y, VarId z, std::shared_ptr<const TripleTable> allowed) :
        _vars{x, y, z}, _allowed(std::move(allowed))
    {
    }

    void subscribe(Model & model, PropId self) override
    {
        for (auto v : _vars)
            model.watch(v, Event::domain, self);
    }

    FilterResult filter(Model & model) override
    {
        auto d0 = model.dom(_vars[0]), d1 = model.dom(_vars[1]), d2 = model.dom(_vars[2]);
        std::array<ValueMask, 3> supported{model.empty_mask(_vars[0]), model.empty_mask(_vars[1]), model.empty_mask(_vars[2])};
        std::size_t valid = 0;
        for (const auto & t : *_allowed) {
            if (d0.contains(t[0]) && d1.contains(t[1]) && d2.contains(t[2])) {
                supported[0].insert(t[0]);
                supported[1].insert(t[1]);
                supported[2].insert(t[2]);
                ++valid;
            }
        }
        if (valid == 0)
            return FilterResult::failed;
        for (std::size_t i = 0; i < 3; ++i)
            if (! model.retain(_vars[i], supported[i]))
                return FilterResult::failed;
        if (valid == model.size(_vars[0]) * model.size(_vars[1]) * model.size(_vars[2]))
            return FilterResult::entailed;
        return FilterResult::ok;
    }

    [[nodiscard]] bool idempotent() const override { return detail::distinct(_vars); }
    [[nodiscard]] std::string_view name() const override { return "table3"; }

    [[nodiscard]] const TripleTable & allowed() const { return *_allowed; }

private:
    std::array<VarId, 3> _vars;
    std::shared_ptr<const TripleTable> _allowed;
};

/// a <=lex b, or a <lex b when strict.
class LexLeq : public Propagator {
public:
    LexLeq(std::vector<VarId> a, std::vector<VarId> b, bool strict) : _a(std::move(a)), _b(std::move(b)), _strict(strict)
    {
        std::vector<VarId> all(_a);
        all.insert(all.end(), _b.begin(), _b.end());
        _idempotent = detail::distinct(all);
    }

    void subscribe(Model & model, PropId self) override
    {
        for (auto v : _a)
            model.watch(v, Event::domain, self);
        for (auto v : _b)
            model.watch(v, Event::domain, self);
    }

    FilterResult filter(Model & model) override { return detail::filter_lex(model, _a, _b, _strict); }

    [[nodiscard]] bool idempotent() const override { return _idempotent; }
    [[nodiscard]] std::string_view name() const override { return _strict ? "lex_less" : "lex_leq"; }

private:
    std::vector<VarId> _a, _b;
    bool _strict;
    bool _idempotent;
};

enum class ChainFiltering { pairwise, complete };

/// columns[0] <=lex columns[1] <=lex ... (strict variant uses <lex).
///
/// Complete filtering computes, left to right, the lex-least column value that has a
/// feasible left chain and, right to left, the lex-greatest one with a feasible right
/// chain. A value of column j then has a support on the whole chain iff it has one on
/// lower[j-1] <= column j <= upper[j+1], which is checked with a small automaton.
/// Pairwise filtering only runs the two-column filter on adjacent columns to a fixpoint.
class LexChain : public Propagator {
public:
    LexChain(std::vector<std::vector<VarId>> columns, bool strict, ChainFiltering filtering) :
        _columns(std::move(columns)), _strict(strict), _filtering(filtering)
    {
    }

    void subscribe(Model & model, PropId self) override
    {
        for (const auto & col : _columns)
            for (auto v : col)
                model.watch(v, Event::domain, self);
    }

    FilterResult filter(Model & model) override
    {
        if (_columns.size() < 2)
            return FilterResult::entailed;
        auto r = _filtering == ChainFiltering::complete ? filter_complete(model) : filter_pairwise(model);
        if (r == FilterResult::failed)
            return r;
        for (std::size_t j = 0; j + 1 < _columns.size(); ++j)
            if (! detail::lex_entailed(model, _columns[j], _columns[j + 1], _strict))
                return FilterResult::ok;
        return FilterResult::entailed;
    }

    [[nodiscard]] bool idempotent() const override { return false; }
    [[nodiscard]] std::string_view name() const override { return "lex_chain"; }

private:
    using Vector = std::vector<int>;

    [[nodiscard]] std::size_t total_size(const Model & model) const
    {
        std::size_t s = 0;
        for (const auto & col : _columns)
            for (auto v : col)
                s += model.size(v);
        return s;
    }

    FilterResult filter_pairwise(Model & model)
    {
        for (;;) {
            auto before = total_size(model);
            for (std::size_t j = 0; j + 1 < _columns.size(); ++j)
                if (detail::filter_lex(model, _columns[j], _columns[j + 1], _strict) == FilterResult::failed)
                    return FilterResult::failed;
            if (total_size(model) == before)
                return FilterResult::ok;
        }
    }

    // Lex-least x in the column's domains with x >= bound (x > bound when strict).
    std::optional<Vector> least_above(const Model & model, const std::vector<VarId> & col, const Vector & bound) const
    {
        const auto n = col.size();
        std::size_t prefix = 0;
        while (prefix < n && model.contains(col[prefix], bound[prefix]))
            ++prefix;
        if (prefix == n && ! _strict)
            return bound;
        if (n == 0)
            return std::nullopt;
        for (std::size_t p = std::min(prefix, n - 1) + 1; p-- > 0;) {
            auto d = model.dom(col[p]);
            auto it = std::find_if(d.begin(), d.end(), [&](int v) { return v > bound[p]; });
            if (it == d.end())
                continue;
            Vector x(bound.begin(), bound.begin() + static_cast<std::ptrdiff_t>(p));
            x.push_back(*it);
            for (std::size_t i = p + 1; i < n; ++i)
                x.push_back(model.min(col[i]));
            return x;
        }
        return std::nullopt;
    }

    // Lex-greatest x in the column's domains with x <= bound (x < bound when strict).
    std::optional<Vector> greatest_below(const Model & model, const std::vector<VarId> & col, const Vector & bound) const
    {
        const auto n = col.size();
        std::size_t prefix = 0;
        while (prefix < n && model.contains(col[prefix], bound[prefix]))
            ++prefix;
        if (prefix == n && ! _strict)
            return bound;
        if (n == 0)
            return std::nullopt;
        for (std::size_t p = std::min(prefix, n - 1) + 1; p-- > 0;) {
            std::optional<int> below;
            for (int v : model.dom(col[p]))
                if (v < bound[p])
                    below = v;
            if (! below)
                continue;
            Vector x(bound.begin(), bound.begin() + static_cast<std::ptrdiff_t>(p));
            x.push_back(*below);
            for (std::size_t i = p + 1; i < n; ++i)
                x.push_back(model.max(col[i]));
            return x;
        }
        return std::nullopt;
    }

    // GAC on lower <= col <= upper for fixed vectors. States: bit 0 = still equal to lower,
    // bit 1 = still equal to upper.
    FilterResult filter_between(Model & model, const std::vector<VarId> & col, const Vector * lower, const Vector * upper) const
    {
        const auto n = col.size();
        auto step = [&](unsigned state, std::size_t i, int c) -> std::optional<unsigned> {
            unsigned next = 0;
            if ((state & 1U) && lower) {
                if (c < (*lower)[i])
                    return std::nullopt;
                if (c == (*lower)[i])
                    next |= 1U;
            }
            if ((state & 2U) && upper) {
                if (c > (*upper)[i])
                    return std::nullopt;
                if (c == (*upper)[i])
                    next |= 2U;
            }
            return next;
        };
        auto accepting = [&](unsigned state) { return ! (_strict && state != 0); };

        unsigned start = (lower ? 1U : 0U) | (upper ? 2U : 0U);
        std::vector<unsigned> fwd(n + 1, 0), bwd(n + 1, 0);
        fwd[0] = 1U << start;
        for (std::size_t i = 0; i < n; ++i)
            for (unsigned s = 0; s < 4; ++s)
                if (fwd[i] & (1U << s))
                    for (int c : model.dom(col[i]))
                        if (auto t = step(s, i, c))
                            fwd[i + 1] |= 1U << *t;
        for (unsigned s = 0; s < 4; ++s)
            if (accepting(s))
                bwd[n] |= 1U << s;
        for (std::size_t i = n; i-- > 0;)
            for (unsigned s = 0; s < 4; ++s)
                for (int c : model.dom(col[i]))
                    if (auto t = step(s, i, c); t && (bwd[i + 1] & (1U << *t))) {
                        bwd[i] |= 1U << s;
                        break;
                    }
        if (! (bwd[0] & (1U << start)))
            return FilterResult::failed;

        for (std::size_t i = 0; i < n; ++i) {
            auto keep = [&](int c) {
                for (unsigned s = 0; s < 4; ++s)
                    if (fwd[i] & (1U << s))
                        if (auto t = step(s, i, c); t && (bwd[i + 1] & (1U << *t)))
                            return true;
                return false;
            };
            if (! model.retain_if(col[i], keep))
                return FilterResult::failed;
        }
        return FilterResult::ok;
    }

    FilterResult filter_complete(Model & model)
    {
        const auto m = _columns.size();
        std::vector<Vector> lower(m), upper(m);
        for (auto v : _columns[0])
            lower[0].push_back(model.min(v));
        for (std::size_t j = 1; j < m; ++j) {
            auto x = least_above(model, _columns[j], lower[j - 1]);
            if (! x)
                return FilterResult::failed;
            lower[j] = std::move(*x);
        }
        for (auto v : _columns[m - 1])
            upper[m - 1].push_back(model.max(v));
        for (std::size_t j = m - 1; j-- > 0;) {
            auto x = greatest_below(model, _columns[j], upper[j + 1]);
            if (! x)
                return FilterResult::failed;
            upper[j] = std::move(*x);
        }
        for (std::size_t j = 0; j < m; ++j) {
            const Vector * lo = j > 0 ? &lower[j - 1] : nullptr;
            const Vector * hi = j + 1 < m ? &upper[j + 1] : nullptr;
            if (filter_between(model, _columns[j], lo, hi) == FilterResult::failed)
                return FilterResult::failed;
        }
        return FilterResult::ok;
    }

    std::vector<std::vector<VarId>> _columns;
    bool _strict;
    ChainFiltering _filtering;
};

/// x = values[j] iff row[j] = 1, for every j.
class Channel : public Propagator {
public:
    Channel(VarId x, std::vector<int> values, std::vector<VarId> row) : _x(x), _values(std::move(values)), _row(std::move(row)) {}

    void subscribe(Model & model, PropId self) override
    {
        model.watch(_x, Event::domain, self);
        for (auto b : _row)
            model.watch(b, Event::fixed, self);
    }

    FilterResult filter(Model & model) override
    {
        for (std::size_t j = 0; j < _values.size(); ++j) {
            if (! model.fixed(_row[j]))
                continue;
            bool ok = model.value(_row[j]) == 1 ? model.assign(_x, _values[j]) : model.remove(_x, _values[j]);
            if (! ok)
                return FilterResult::failed;
        }
        bool all_fixed = model.fixed(_x);
        for (std::size_t j = 0; j < _values.size(); ++j) {
            if (! model.contains(_x, _values[j])) {
                if (! model.assign(_row[j], 0))
                    return FilterResult::failed;
            }
            else if (model.fixed(_x) && ! model.assign(_row[j], 1)) {
                return FilterResult::failed;
            }
            all_fixed = all_fixed && model.fixed(_row[j]);
        }
        return all_fixed ? FilterResult::entailed : FilterResult::ok;
    }

    [[nodiscard]] bool idempotent() const override { return true; }
    [[nodiscard]] std::string_view name() const override { return "channel"; }

private:
    VarId _x;
    std::vector<int> _values;
    std::vector<VarId> _row;
};

/// Not (x = y = z).
class NotAllEqual3 : public Propagator {
public:
    NotAllEqual3(VarId x, VarId y, VarId z) : _vars{x, y, z} {}

    void subscribe(Model & model, PropId self) override
    {
        for (auto v : _vars)
            model.watch(v, Event::fixed, self);
    }

    FilterResult filter(Model & model) override
    {
        // a repeated variable, as in X_a + X_a = X_2a, reduces the constraint to a disequality
        for (std::size_t i = 0; i < 3; ++i) {
            auto u = _vars[(i + 1) % 3], w = _vars[(i + 2) % 3];
            if (u != w)
                continue;
            auto x = _vars[i];
            if (x == u)
                return FilterResult::failed;
            if (model.fixed(x) && ! model.remove(u, model.value(x)))
                return FilterResult::failed;
            if (model.fixed(u) && ! model.remove(x, model.value(u)))
                return FilterResult::failed;
            return model.fixed(x) || model.fixed(u) ? FilterResult::entailed : FilterResult::ok;
        }
        for (std::size_t i = 0; i < 3; ++i) {
            auto u = _vars[(i + 1) % 3], w = _vars[(i + 2) % 3];
            if (model.fixed(u) && model.fixed(w) && model.value(u) == model.value(w))
                if (! model.remove(_vars[i], model.value(u)))
                    return FilterResult::failed;
        }
        for (std::size_t i = 0; i < 3; ++i)
            if (! detail::intersects(model, _vars[i], _vars[(i + 1) % 3]))
                return FilterResult::entailed;
        return FilterResult::ok;
    }

    [[nodiscard]] bool idempotent() const override { return true; }
    [[nodiscard]] std::string_view name() const override { return "not_all_equal3"; }

private:
    std::array<VarId, 3> _vars;
};

enum class Relation { eq, le, lt, ne };

/// (if_var = if_value) -> (then_var rel then_value)
struct Implication {
    VarId if_var;
    int if_value;
    VarId then_var;
    Relation rel;
    int then_value;
};

class ImplicationPropagator : public Propagator {
public:
    explicit ImplicationPropagator(Implication c) : _c(c) {}

    void subscribe(Model & model, PropId self) override
    {
        model.watch(_c.if_var, Event::domain, self);
        model.watch(_c.then_var, Event::domain, self);
    }

    FilterResult filter(Model & model) override
    {
        if (! model.contains(_c.if_var, _c.if_value))
            return FilterResult::entailed;
        if (! some_satisfy(model)) {
            if (! model.remove(_c.if_var, _c.if_value))
                return FilterResult::failed;
            return FilterResult::entailed;
        }
        if (model.fixed(_c.if_var)) {
            if (! model.retain_if(_c.then_var, [this](int v) { return holds(v); }))
                return FilterResult::failed;
            return FilterResult::entailed;
        }
        return all_satisfy(model) ? FilterResult::entailed : FilterResult::ok;
    }

    [[nodiscard]] bool idempotent() const override { return true; }
    [[nodiscard]] std::string_view name() const override { return "implication"; }

private:
    [[nodiscard]] bool holds(int v) const
    {
        switch (_c.rel) {
        case Relation::eq: return v == _c.then_value;
        case Relation::le: return v <= _c.then_value;
        case Relation::lt: return v < _c.then_value;
        case Relation::ne: return v != _c.then_value;
        }
        return false;
    }

    [[nodiscard]] bool some_satisfy(const Model & model) const
    {
        auto y = _c.then_var;
        switch (_c.rel) {
        case Relation::eq: return model.contains(y, _c.then_value);
        case Relation::le: return model.min(y) <= _c.then_value;
        case Relation::lt: return model.min(y) < _c.then_value;
        case Relation::ne: return ! (model.fixed(y) && model.value(y) == _c.then_value);
        }
        return false;
    }

    [[nodiscard]] bool all_satisfy(const Model & model) const
    {
        auto y = _c.then_var;
        switch (_c.rel) {
        case Relation::eq: return model.fixed(y) && model.value(y) == _c.then_value;
        case Relation::le: return model.max(y) <= _c.then_value;
        case Relation::lt: return model.max(y) < _c.then_value;
        case Relation::ne: return ! model.contains(y, _c.then_value);
        }
        return false;
    }

    Implication _c;
};

/// x < y, or x <= y when not strict. Bounds filtering, which is GAC for a binary order.
class Less : public Propagator {
public:
    Less(VarId x, VarId y, bool strict) : _x(x), _y(y), _gap(strict ? 1 : 0) {}

    void subscribe(Model & model, PropId self) override
    {
        model.watch(_x, Event::bounds, self);
        model.watch(_y, Event::bounds, self);
    }

    FilterResult filter(Model & model) override
    {
        if (! model.set_max(_x, model.max(_y) - _gap) || ! model.set_min(_y, model.min(_x) + _gap))
            return FilterResult::failed;
        return model.max(_x) + _gap <= model.min(_y) ? FilterResult::entailed : FilterResult::ok;
    }

    [[nodiscard]] bool idempotent() const override { return _x != _y; }
    [[nodiscard]] std::string_view name() const override { return _gap ? "less" : "less_equal"; }

private:
    VarId _x, _y;
    int _gap;
};

// --- posting helpers -----------------------------------------------------

inline PropId post_table3(Model & m, VarId x, VarId y, VarId z, std::shared_ptr<const TripleTable> allowed)
{
    return m.post<TernaryTable>(x, y, z, std::move(allowed));
}

inline PropId post_table3(Model & m, VarId x, VarId y, VarId z, std::vector<Triple> allowed)
{
    return post_table3(m, x, y, z, make_table(std::move(allowed)));
}

inline PropId post_lex_leq(Model & m, std::vector<VarId> a, std::vector<VarId> b, bool strict = false)
{
    if (a.size() != b.size())
        throw UsageError("lex ordering needs vectors of equal length");
    return m.post<LexLeq>(std::move(a), std::move(b), strict);
}

inline PropId post_lex_chain(Model & m, std::vector<std::vector<VarId>> columns, bool strict = false,
    ChainFiltering filtering = ChainFiltering::complete)
{
    for (const auto & col : columns)
        if (col.size() != columns.front().size())
            throw UsageError("lex chain needs columns of equal length");
    return m.post<LexChain>(std::move(columns), strict, filtering);
}

inline PropId post_bool_sum(Model & m, std::vector<VarId> bools, Interval bounds)
{
    return m.post<BoolSumBetween>(std::move(bools), bounds);
}

inline PropId post_exactly_one(Model & m, std::vector<VarId> row)
{
    if (row.empty())
        throw UsageError("exactly-one needs a non-empty row");
    return post_bool_sum(m, std::move(row), Interval{1, 1});
}

inline PropId post_channel(Model & m, VarId x, std::vector<int> values, std::vector<VarId> row)
{
    if (values.size() != row.size())
        throw UsageError("channel needs one 0/1 variable per value");
    return m.post<Channel>(x, std::move(values), std::move(row));
}

inline PropId post_not_all_equal3(Model & m, VarId x, VarId y, VarId z) { return m.post<NotAllEqual3>(x, y, z); }

inline std::vector<PropId> post_implications(Model & m, std::span<const Implication> clauses)
{
    std::vector<PropId> ids;
    ids.reserve(clauses.size());
    for (const auto & c : clauses)
        ids.push_back(m.post<ImplicationPropagator>(c));
    return ids;
}

inline PropId post_less(Model & m, VarId x, VarId y, bool strict = true) { return m.post<Less>(x, y, strict); }

} // namespace valprec

#endif // VALPREC_PROPAGATORS_HPP
