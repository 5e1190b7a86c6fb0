#ifndef VALPREC_ORACLE_HPP
#define VALPREC_ORACLE_HPP

// Brute-force ground truth. Nothing here looks at propagators or encodings: consistency is
// computed by enumerating every assignment and testing the constraint's definition.

#include <valprec/engine.hpp>
#include <valprec/symmetry.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace valprec::oracle {

using Assignment = std::vector<int>;
using Domains = std::vector<std::vector<int>>;
using Predicate = std::function<bool(std::span<const int>)>;

struct OracleLimits {
    std::uint64_t max_assignments = 10'000'000;
};

class OracleLimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------------------
// Constraint definitions

namespace detail {

// 0-based index of the first position satisfying `hit`, or `absent` if there is none.
template <class Hit>
std::size_t first_where(std::size_t n, std::size_t absent, Hit && hit)
{
    for (std::size_t i = 0; i < n; ++i)
        if (hit(i))
            return i;
    return absent;
}

} // namespace detail

/// First occurrence of a strictly before first occurrence of b; an absent a counts as
/// position n, an absent b as n+1.
inline bool precedes(std::span<const int> xs, int a, int b)
{
    auto n = xs.size();
    return detail::first_where(n, n, [&](auto i) { return xs[i] == a; }) <
        detail::first_where(n, n + 1, [&](auto i) { return xs[i] == b; });
}

inline bool pair_precedence_holds(int first, int second, std::span<const int> xs) { return precedes(xs, first, second); }

/// Every earlier listed value precedes every later one.
inline bool precedence_holds(std::span<const int> values, std::span<const int> xs)
{
    for (std::size_t j = 0; j < values.size(); ++j)
        for (std::size_t k = j + 1; k < values.size(); ++k)
            if (! precedes(xs, values[j], values[k]))
                return false;
    return true;
}

inline bool partition_precedence_holds(const std::vector<std::vector<int>> & classes, std::span<const int> xs)
{
    return std::all_of(classes.begin(), classes.end(), [&](const auto & c) { return precedence_holds(c, xs); });
}

inline bool wreath_precedence_holds(const std::vector<int> & outer, const std::vector<int> & inner, PairCoding coding,
    std::span<const int> xs)
{
    auto n = xs.size();
    for (std::size_t j = 0; j + 1 < outer.size(); ++j) {
        auto a = detail::first_where(n, n, [&](auto i) { return coding.decode(xs[i]).first == outer[j]; });
        auto b = detail::first_where(n, n + 1, [&](auto i) { return coding.decode(xs[i]).first == outer[j + 1]; });
        if (a >= b)
            return false;
    }
    for (int u : outer)
        for (std::size_t k = 0; k + 1 < inner.size(); ++k)
            if (! precedes(xs, coding.encode(u, inner[k]), coding.encode(u, inner[k + 1])))
                return false;
    return true;
}

/// Sets as sorted value lists. For each j < k the first set holding exactly one of v_j, v_k
/// holds v_j.
inline bool set_precedence_holds(std::span<const int> values, const std::vector<std::vector<int>> & sets)
{
    auto n = sets.size();
    auto has = [&](std::size_t i, int v) { return std::binary_search(sets[i].begin(), sets[i].end(), v); };
    for (std::size_t j = 0; j < values.size(); ++j)
        for (std::size_t k = j + 1; k < values.size(); ++k) {
            int a = values[j], b = values[k];
            auto fa = detail::first_where(n, n, [&](auto i) { return has(i, a) && ! has(i, b); });
            auto fb = detail::first_where(n, n + 1, [&](auto i) { return has(i, b) && ! has(i, a); });
            if (fa >= fb)
                return false;
        }
    return true;
}

/// X_1 = v_1; each step repeats the value or moves to the next listed one; occurrence
/// counts of the values used are non-decreasing in list order.
inline bool increasing_seq_holds(std::span<const int> values, std::span<const int> xs)
{
    if (xs.empty())
        return true;
    auto index = [&](int v) -> std::ptrdiff_t {
        auto it = std::find(values.begin(), values.end(), v);
        return it == values.end() ? -1 : it - values.begin();
    };
    if (index(xs[0]) != 0)
        return false;
    std::vector<std::size_t> runs{1};
    for (std::size_t i = 1; i < xs.size(); ++i) {
        auto prev = index(xs[i - 1]), cur = index(xs[i]);
        if (cur == prev)
            ++runs.back();
        else if (cur == prev + 1)
            runs.push_back(1);
        else
            return false;
    }
    return std::is_sorted(runs.begin(), runs.end());
}

inline bool lex_leq_holds(std::span<const int> a, std::span<const int> b, bool strict = false)
{
    auto c = std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
    return strict ? c < 0 : c <= 0;
}

/// Every listed value is used and first occurrences follow list order.
inline bool puget_holds(std::span<const int> values, std::span<const int> xs)
{
    for (int v : values)
        if (std::find(xs.begin(), xs.end(), v) == xs.end())
            return false;
    return precedence_holds(values, xs);
}

// ---------------------------------------------------------------------------------------
// Enumeration

/// Product of domain sizes, saturating at UINT64_MAX.
inline std::uint64_t space_size(const Domains & domains)
{
    std::uint64_t total = 1;
    for (const auto & d : domains) {
        if (d.empty())
            return 0;
        if (total > std::numeric_limits<std::uint64_t>::max() / d.size())
            return std::numeric_limits<std::uint64_t>::max();
        total *= d.size();
    }
    return total;
}

inline void check_limit(std::uint64_t size, OracleLimits limits)
{
    if (size > limits.max_assignments)
        throw OracleLimitExceeded("oracle refuses to enumerate " + std::to_string(size) + " assignments (limit " +
            std::to_string(limits.max_assignments) + ")");
}

/// Calls f(span) for every assignment in the product of the domains, in lexicographic
/// order of domain positions.
template <class F>
void for_each_assignment(const Domains & domains, F && f, OracleLimits limits = {})
{
    auto size = space_size(domains);
    check_limit(size, limits);
    if (size == 0)
        return;
    std::vector<std::size_t> pos(domains.size(), 0);
    Assignment a(domains.size());
    for (std::size_t i = 0; i < domains.size(); ++i)
        a[i] = domains[i][0];
    for (;;) {
        f(std::span<const int>(a));
        std::size_t i = domains.size();
        while (i > 0) {
            --i;
            if (++pos[i] < domains[i].size()) {
                a[i] = domains[i][pos[i]];
                break;
            }
            pos[i] = 0;
            a[i] = domains[i][0];
            if (i == 0)
                return;
        }
        if (domains.empty())
            return;
    }
}

inline std::vector<Assignment> all_solutions(const Predicate & pred, const Domains & domains, OracleLimits limits = {})
{
    std::vector<Assignment> out;
    for_each_assignment(domains, [&](std::span<const int> a) {
        if (pred(a))
            out.emplace_back(a.begin(), a.end());
    }, limits);
    return out;
}

/// Values of each variable that appear in some satisfying assignment; nothing if none exists.
inline std::optional<Domains> gac_by_definition(const Predicate & pred, const Domains & domains, OracleLimits limits = {})
{
    std::vector<std::set<int>> supported(domains.size());
    bool any = false;
    for_each_assignment(domains, [&](std::span<const int> a) {
        if (! pred(a))
            return;
        any = true;
        for (std::size_t i = 0; i < a.size(); ++i)
            supported[i].insert(a[i]);
    }, limits);
    if (! any)
        return std::nullopt;
    Domains out;
    for (const auto & s : supported)
        out.emplace_back(s.begin(), s.end());
    return out;
}

// ---------------------------------------------------------------------------------------
// Bound consistency over integer intervals and set bounds

struct SetBounds {
    std::vector<int> lb;
    std::vector<int> ub;
    std::optional<Interval> card;

    friend bool operator==(const SetBounds &, const SetBounds &) = default;
};

struct BoundsState {
    std::vector<Interval> ints;
    std::vector<SetBounds> sets;

    friend bool operator==(const BoundsState &, const BoundsState &) = default;
};

struct MixedAssignment {
    std::vector<int> ints;
    std::vector<std::vector<int>> sets; // sorted
};

using MixedPredicate = std::function<bool(const MixedAssignment &)>;

namespace detail {

inline std::vector<std::vector<int>> sets_between(const SetBounds & b)
{
    std::vector<int> lb = b.lb, ub = b.ub;
    std::sort(lb.begin(), lb.end());
    std::sort(ub.begin(), ub.end());
    std::vector<int> free;
    std::set_difference(ub.begin(), ub.end(), lb.begin(), lb.end(), std::back_inserter(free));
    if (free.size() >= 63)
        throw OracleLimitExceeded("set variable with too many undecided values");
    std::vector<std::vector<int>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
        std::vector<int> s = lb;
        for (std::size_t i = 0; i < free.size(); ++i)
            if (mask >> i & 1U)
                s.push_back(free[i]);
        if (b.card && ! b.card->contains(static_cast<int>(s.size())))
            continue;
        std::sort(s.begin(), s.end());
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace detail

/// Integer variables range over their whole interval and sets over every set between their
/// bounds (respecting cardinality). Integer bounds shrink to the extreme supported values;
/// a set's upper bound keeps the values in some support and its lower bound gains the
/// values in every support. Cardinality bounds are returned unchanged.
inline std::optional<BoundsState> bc_by_definition(const MixedPredicate & pred, const BoundsState & bounds,
    OracleLimits limits = {})
{
    std::vector<std::vector<std::vector<int>>> set_choices;
    Domains positions;
    for (auto iv : bounds.ints) {
        std::vector<int> vals;
        for (int v = iv.lo; v <= iv.hi; ++v)
            vals.push_back(v);
        positions.push_back(std::move(vals));
    }
    for (const auto & sb : bounds.sets) {
        set_choices.push_back(detail::sets_between(sb));
        std::vector<int> idx(set_choices.back().size());
        std::iota(idx.begin(), idx.end(), 0);
        positions.push_back(std::move(idx));
    }

    const auto ni = bounds.ints.size();
    std::vector<Interval> ints(ni);
    std::vector<std::set<int>> unions(bounds.sets.size());
    std::vector<std::optional<std::vector<int>>> inters(bounds.sets.size());
    bool any = false;
    MixedAssignment ma;
    ma.sets.resize(bounds.sets.size());
    for_each_assignment(positions, [&](std::span<const int> a) {
        ma.ints.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(ni));
        for (std::size_t s = 0; s < bounds.sets.size(); ++s)
            ma.sets[s] = set_choices[s][static_cast<std::size_t>(a[ni + s])];
        if (! pred(ma))
            return;
        for (std::size_t i = 0; i < ni; ++i) {
            if (! any) {
                ints[i] = {ma.ints[i], ma.ints[i]};
            }
            else {
                ints[i].lo = std::min(ints[i].lo, ma.ints[i]);
                ints[i].hi = std::max(ints[i].hi, ma.ints[i]);
            }
        }
        for (std::size_t s = 0; s < bounds.sets.size(); ++s) {
            const auto & set = ma.sets[s];
            unions[s].insert(set.begin(), set.end());
            if (! inters[s]) {
                inters[s] = set;
            }
            else {
                std::vector<int> keep;
                std::set_intersection(inters[s]->begin(), inters[s]->end(), set.begin(), set.end(), std::back_inserter(keep));
                inters[s] = std::move(keep);
            }
        }
        any = true;
    }, limits);
    if (! any)
        return std::nullopt;

    BoundsState out;
    out.ints = ints;
    for (std::size_t s = 0; s < bounds.sets.size(); ++s)
        out.sets.push_back({*inters[s], {unions[s].begin(), unions[s].end()}, bounds.sets[s].card});
    return out;
}

// ---------------------------------------------------------------------------------------
// Orbits

/// A value bijection; values it does not mention are fixed.
struct ValuePermutation {
    std::map<int, int> image;

    [[nodiscard]] int operator()(int v) const
    {
        auto it = image.find(v);
        return it == image.end() ? v : it->second;
    }
};

enum class VariableGroup { none, full, reflection, rotation };

namespace detail {

inline std::vector<std::vector<int>> all_orderings(std::vector<int> values)
{
    std::vector<std::vector<int>> out;
    std::sort(values.begin(), values.end());
    do
        out.push_back(values);
    while (std::next_permutation(values.begin(), values.end()));
    return out;
}

inline std::vector<ValuePermutation> product(const std::vector<ValuePermutation> & a, const std::vector<ValuePermutation> & b)
{
    std::vector<ValuePermutation> out;
    for (const auto & p : a)
        for (const auto & q : b) {
            ValuePermutation r = p;
            for (auto [k, v] : q.image)
                r.image[k] = v;
            out.push_back(std::move(r));
        }
    return out;
}

inline std::vector<ValuePermutation> symmetric_group_on(const std::vector<int> & values)
{
    std::vector<int> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<ValuePermutation> out;
    for (const auto & order : all_orderings(values)) {
        ValuePermutation p;
        for (std::size_t i = 0; i < sorted.size(); ++i)
            p.image[sorted[i]] = order[i];
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace detail

/// Every element of the value-symmetry group described by `spec`.
inline std::vector<ValuePermutation> value_permutations(const SymmetrySpec & spec)
{
    validate(spec);
    struct Visitor {
        std::vector<ValuePermutation> operator()(const PairSymmetry & p) const
        {
            return detail::symmetric_group_on({p.first, p.second});
        }
        std::vector<ValuePermutation> operator()(const FullInterchange & f) const { return detail::symmetric_group_on(f.values); }
        std::vector<ValuePermutation> operator()(const PartitionInterchange & p) const
        {
            std::vector<ValuePermutation> out{ValuePermutation{}};
            for (const auto & c : p.classes)
                out = detail::product(out, detail::symmetric_group_on(c));
            return out;
        }
        std::vector<ValuePermutation> operator()(const WreathInterchange & w) const
        {
            // <u, v> -> <sigma(u), tau_u(v)>
            std::vector<std::map<int, int>> inner_maps{{}};
            for (std::size_t j = 0; j < w.outer.size(); ++j) {
                std::vector<std::map<int, int>> next;
                for (const auto & partial : inner_maps)
                    for (const auto & tau : detail::symmetric_group_on(w.inner)) {
                        auto m = partial;
                        for (int v : w.inner)
                            m[w.coding.encode(w.outer[j], v)] = tau(v); // inner image, outer applied below
                        next.push_back(std::move(m));
                    }
                inner_maps = std::move(next);
            }
            std::vector<ValuePermutation> out;
            for (const auto & sigma : detail::symmetric_group_on(w.outer))
                for (const auto & tau : inner_maps) {
                    ValuePermutation p;
                    for (int u : w.outer)
                        for (int v : w.inner) {
                            int code = w.coding.encode(u, v);
                            p.image[code] = w.coding.encode(sigma(u), tau.at(code));
                        }
                    out.push_back(std::move(p));
                }
            return out;
        }
    };
    return std::visit(Visitor{}, spec);
}

namespace detail {

inline Assignment apply(const ValuePermutation & p, std::span<const int> a)
{
    Assignment out;
    out.reserve(a.size());
    for (int v : a)
        out.push_back(p(v));
    return out;
}

// Variable-group images of a, except for the full group which is handled by sorting.
inline std::vector<Assignment> variable_images(const Assignment & a, VariableGroup g)
{
    switch (g) {
    case VariableGroup::none:
    case VariableGroup::full:
        return {a};
    case VariableGroup::reflection:
        return {a, Assignment(a.rbegin(), a.rend())};
    case VariableGroup::rotation: {
        std::vector<Assignment> out;
        for (std::size_t s = 0; s < std::max<std::size_t>(a.size(), 1); ++s) {
            Assignment r(a.size());
            for (std::size_t i = 0; i < a.size(); ++i)
                r[i] = a[(i + s) % a.size()];
            out.push_back(std::move(r));
        }
        return out;
    }
    }
    return {a};
}

inline std::uint64_t arrangements(const Assignment & sorted)
{
    // multinomial n! / prod(count!) computed incrementally to stay exact
    std::uint64_t result = 1;
    std::map<int, std::uint64_t> seen;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        auto c = ++seen[sorted[i]];
        result = result * (i + 1) / c;
    }
    return result;
}

} // namespace detail

/// Lexicographically least member of the orbit of a.
inline Assignment canonical_form(std::span<const int> a, const std::vector<ValuePermutation> & perms,
    VariableGroup g = VariableGroup::none)
{
    std::optional<Assignment> best;
    for (const auto & p : perms) {
        auto img = detail::apply(p, a);
        if (g == VariableGroup::full)
            std::sort(img.begin(), img.end());
        for (auto & cand : detail::variable_images(img, g))
            if (! best || cand < *best)
                best = std::move(cand);
    }
    return best.value_or(Assignment(a.begin(), a.end()));
}

/// Number of distinct assignments in the orbit of a.
inline std::uint64_t orbit_size(std::span<const int> a, const std::vector<ValuePermutation> & perms,
    VariableGroup g = VariableGroup::none)
{
    std::set<Assignment> images;
    for (const auto & p : perms) {
        auto img = detail::apply(p, a);
        if (g == VariableGroup::full)
            std::sort(img.begin(), img.end());
        for (auto & cand : detail::variable_images(img, g))
            images.insert(std::move(cand));
    }
    if (g != VariableGroup::full)
        return images.size();
    std::uint64_t total = 0;
    for (const auto & sorted : images)
        total += detail::arrangements(sorted);
    return total;
}

struct Orbit {
    Assignment canonical;
    std::uint64_t size = 0;   // members in the whole assignment space
    std::uint64_t listed = 0; // members among the solutions passed in
};

struct OrbitReport {
    std::vector<Orbit> orbits; // ordered by canonical member

    [[nodiscard]] std::uint64_t total_size() const
    {
        std::uint64_t t = 0;
        for (const auto & o : orbits)
            t += o.size;
        return t;
    }
};

inline OrbitReport enumerate_orbits(const std::vector<Assignment> & solutions, const SymmetrySpec & spec,
    VariableGroup g = VariableGroup::none)
{
    auto perms = value_permutations(spec);
    std::map<Assignment, Orbit> by_canon;
    for (const auto & s : solutions) {
        auto c = canonical_form(s, perms, g);
        auto [it, fresh] = by_canon.try_emplace(c);
        if (fresh) {
            it->second.canonical = c;
            it->second.size = orbit_size(s, perms, g);
        }
        ++it->second.listed;
    }
    OrbitReport report;
    for (auto & [c, o] : by_canon)
        report.orbits.push_back(std::move(o));
    return report;
}

} // namespace valprec::oracle

#endif // VALPREC_ORACLE_HPP
