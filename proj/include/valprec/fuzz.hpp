#ifndef VALPREC_FUZZ_HPP
#define VALPREC_FUZZ_HPP

// Encoding-versus-definition comparison. An instance is a symmetry spec plus initial
// domains; the encoding's propagation fixpoint must equal the oracle's GAC domains (BC
// bounds for sets), failure included.

#include <valprec/engine.hpp>
#include <valprec/oracle.hpp>
#include <valprec/precedence.hpp>
#include <valprec/symmetry.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace valprec {

enum class EncodingKind { pair, full, partition, wreath, set };

inline const char * to_string(EncodingKind k)
{
    switch (k) {
    case EncodingKind::pair:
        return "pair";
    case EncodingKind::full:
        return "full";
    case EncodingKind::partition:
        return "partition";
    case EncodingKind::wreath:
        return "wreath";
    case EncodingKind::set:
        return "set";
    }
    return "?";
}

struct FdCase {
    SymmetrySpec spec;
    oracle::Domains domains;
};

struct SetCase {
    std::vector<int> values;
    std::vector<oracle::SetBounds> sets;
};

using Case = std::variant<FdCase, SetCase>;

namespace detail {

inline std::string show(const std::vector<int> & v)
{
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

inline std::string show(const std::optional<oracle::Domains> & d)
{
    if (! d)
        return "fail";
    std::string s;
    for (std::size_t i = 0; i < d->size(); ++i)
        s += (i ? " " : "") + show((*d)[i]);
    return s;
}

inline std::string show(const std::optional<std::vector<oracle::SetBounds>> & d)
{
    if (! d)
        return "fail";
    std::string s;
    for (std::size_t i = 0; i < d->size(); ++i)
        s += (i ? " " : "") + show((*d)[i].lb) + ".." + show((*d)[i].ub);
    return s;
}

inline std::string show(const SymmetrySpec & spec)
{
    struct Visitor {
        std::string operator()(const PairSymmetry & p) const
        {
            return "pair[" + std::to_string(p.first) + "," + std::to_string(p.second) + "]";
        }
        std::string operator()(const FullInterchange & f) const { return "full" + show(f.values); }
        std::string operator()(const PartitionInterchange & p) const
        {
            std::string s = "partition[";
            for (std::size_t i = 0; i < p.classes.size(); ++i)
                s += (i ? "," : "") + show(p.classes[i]);
            return s + "]";
        }
        std::string operator()(const WreathInterchange & w) const
        {
            return "wreath" + show(w.outer) + "x" + show(w.inner) + "/" + std::to_string(w.coding.base);
        }
    };
    return std::visit(Visitor{}, spec);
}

} // namespace detail

/// The definition of the constraint a spec stands for.
inline oracle::Predicate definition_of(const SymmetrySpec & spec)
{
    struct Visitor {
        oracle::Predicate operator()(const PairSymmetry & p) const
        {
            return [p](std::span<const int> xs) { return oracle::pair_precedence_holds(p.first, p.second, xs); };
        }
        oracle::Predicate operator()(const FullInterchange & f) const
        {
            return [f](std::span<const int> xs) { return oracle::precedence_holds(f.values, xs); };
        }
        oracle::Predicate operator()(const PartitionInterchange & p) const
        {
            return [p](std::span<const int> xs) { return oracle::partition_precedence_holds(p.classes, xs); };
        }
        oracle::Predicate operator()(const WreathInterchange & w) const
        {
            return [w](std::span<const int> xs) { return oracle::wreath_precedence_holds(w.outer, w.inner, w.coding, xs); };
        }
    };
    return std::visit(Visitor{}, spec);
}

/// Domains after posting the encoding and propagating; nothing on failure.
inline std::optional<oracle::Domains> encoding_fixpoint(const FdCase & c)
{
    Model m;
    std::vector<VarId> xs;
    for (const auto & d : c.domains)
        xs.push_back(m.add_fd_var(d));
    encode_precedence(m, c.spec, xs);
    if (m.propagate() == PropagationStatus::failed)
        return std::nullopt;
    oracle::Domains out;
    for (auto x : xs)
        out.push_back(m.dom(x).values());
    return out;
}

inline std::optional<std::vector<oracle::SetBounds>> encoding_fixpoint(const SetCase & c)
{
    Model m;
    std::vector<SetVarId> sets;
    for (const auto & s : c.sets)
        sets.push_back(m.add_set_var(s.lb, s.ub, s.card));
    encode_set_precedence(m, c.values, sets);
    if (m.propagate() == PropagationStatus::failed)
        return std::nullopt;
    std::vector<oracle::SetBounds> out;
    for (std::size_t i = 0; i < sets.size(); ++i)
        out.push_back({m.lb(sets[i]), m.ub(sets[i]), c.sets[i].card});
    return out;
}

inline std::optional<std::vector<oracle::SetBounds>> oracle_fixpoint(const SetCase & c, oracle::OracleLimits limits = {})
{
    auto values = c.values;
    auto pred = [values](const oracle::MixedAssignment & a) { return oracle::set_precedence_holds(values, a.sets); };
    auto r = oracle::bc_by_definition(pred, {{}, c.sets}, limits);
    if (! r)
        return std::nullopt;
    return r->sets;
}

/// A description of the mismatch, or nothing when encoding and oracle agree.
inline std::optional<std::string> divergence(const Case & c, oracle::OracleLimits limits = {})
{
    if (const auto * fd = std::get_if<FdCase>(&c)) {
        auto enc = encoding_fixpoint(*fd);
        auto ref = oracle::gac_by_definition(definition_of(fd->spec), fd->domains, limits);
        if (enc == ref)
            return std::nullopt;
        return detail::show(fd->spec) + " on " + detail::show(std::optional(fd->domains)) + ": encoding " +
            detail::show(enc) + ", oracle " + detail::show(ref);
    }
    const auto & sc = std::get<SetCase>(c);
    auto enc = encoding_fixpoint(sc);
    auto ref = oracle_fixpoint(sc, limits);
    if (enc == ref)
        return std::nullopt;
    return "set" + detail::show(sc.values) + " on " + detail::show(std::optional(sc.sets)) + ": encoding " + detail::show(enc) +
        ", oracle " + detail::show(ref);
}

/// Greedily drops variables and values while the case still diverges.
inline Case minimize(Case c, oracle::OracleLimits limits = {})
{
    auto diverges = [&](const Case & x) {
        try {
            return divergence(x, limits).has_value();
        }
        catch (const ConstructionError &) {
            return false;
        }
    };
    for (bool shrunk = true; shrunk;) {
        shrunk = false;
        std::vector<Case> candidates;
        if (auto * fd = std::get_if<FdCase>(&c)) {
            for (std::size_t i = 0; i < fd->domains.size(); ++i) {
                auto smaller = *fd;
                smaller.domains.erase(smaller.domains.begin() + static_cast<std::ptrdiff_t>(i));
                candidates.emplace_back(std::move(smaller));
            }
            for (std::size_t i = 0; i < fd->domains.size(); ++i)
                for (std::size_t j = 0; fd->domains[i].size() > 1 && j < fd->domains[i].size(); ++j) {
                    auto smaller = *fd;
                    auto & d = smaller.domains[i];
                    d.erase(d.begin() + static_cast<std::ptrdiff_t>(j));
                    candidates.emplace_back(std::move(smaller));
                }
        }
        else {
            auto & sc = std::get<SetCase>(c);
            for (std::size_t i = 0; i < sc.sets.size(); ++i) {
                auto smaller = sc;
                smaller.sets.erase(smaller.sets.begin() + static_cast<std::ptrdiff_t>(i));
                candidates.emplace_back(std::move(smaller));
            }
            for (std::size_t i = 0; i < sc.sets.size(); ++i)
                for (int v : sc.sets[i].ub) {
                    auto smaller = sc;
                    auto & s = smaller.sets[i];
                    if (std::find(s.lb.begin(), s.lb.end(), v) != s.lb.end())
                        s.lb.erase(std::find(s.lb.begin(), s.lb.end(), v)); // undecided instead of forced
                    else
                        s.ub.erase(std::find(s.ub.begin(), s.ub.end(), v));
                    candidates.emplace_back(std::move(smaller));
                }
        }
        for (auto & cand : candidates)
            if (diverges(cand)) {
                c = std::move(cand);
                shrunk = true;
                break;
            }
    }
    return c;
}

// ---------------------------------------------------------------------------------------
// Exhaustive sweeps

namespace detail {

inline std::vector<std::vector<int>> nonempty_subsets(const std::vector<int> & universe)
{
    std::vector<std::vector<int>> out;
    for (std::uint32_t mask = 1; mask < (1U << universe.size()); ++mask) {
        std::vector<int> s;
        for (std::size_t i = 0; i < universe.size(); ++i)
            if (mask >> i & 1U)
                s.push_back(universe[i]);
        out.push_back(std::move(s));
    }
    return out;
}

// Calls f on every tuple of n choices from `options`.
template <class T, class F>
void for_each_tuple(const std::vector<T> & options, std::size_t n, F && f)
{
    std::vector<std::size_t> idx(n, 0);
    std::vector<T> tuple(n, options.front());
    for (;;) {
        f(tuple);
        std::size_t i = n;
        for (;;) {
            if (i == 0)
                return;
            --i;
            if (++idx[i] < options.size()) {
                tuple[i] = options[idx[i]];
                break;
            }
            idx[i] = 0;
            tuple[i] = options[0];
        }
    }
}

} // namespace detail

struct SweepSummary {
    EncodingKind kind = EncodingKind::full;
    std::uint64_t instances = 0;
    std::uint64_t divergences = 0;
    std::vector<std::string> examples; // first few, minimized
};

/// The layouts each kind is swept with. Domains range over all non-empty subsets of the
/// universe, which also holds values the constraint does not mention.
inline std::vector<SymmetrySpec> sweep_specs(EncodingKind kind)
{
    switch (kind) {
    case EncodingKind::pair:
        return {PairSymmetry{1, 2}, PairSymmetry{3, 1}};
    case EncodingKind::full:
        return {FullInterchange{{1}}, FullInterchange{{1, 2}}, FullInterchange{{1, 2, 3}}, FullInterchange{{3, 1, 4}}};
    case EncodingKind::partition:
        return {PartitionInterchange{{{1, 2}, {3, 4}}}, PartitionInterchange{{{1, 3}, {2}}},
            PartitionInterchange{{{1, 2, 3}, {4}}}, PartitionInterchange{{{4, 2}, {1, 3}}}};
    case EncodingKind::wreath:
        return {WreathInterchange{{1, 2}, {0, 1}, {}}, WreathInterchange{{2, 1}, {1, 0}, {}}};
    case EncodingKind::set:
        return {};
    }
    return {};
}

inline std::vector<int> sweep_universe(const SymmetrySpec & spec)
{
    if (const auto * w = std::get_if<WreathInterchange>(&spec)) {
        std::vector<int> codes;
        for (int u : w->outer)
            for (int v : w->inner)
                codes.push_back(w->coding.encode(u, v));
        std::sort(codes.begin(), codes.end());
        return codes;
    }
    return {1, 2, 3, 4};
}

/// Every instance with n <= max_n (set kind: n <= max_n, values {0,1} and {0,1,2}).
inline SweepSummary exhaustive_sweep(EncodingKind kind, std::size_t max_n, std::size_t keep_examples = 3)
{
    SweepSummary sum;
    sum.kind = kind;
    auto check = [&](const Case & c) {
        ++sum.instances;
        if (divergence(c)) {
            ++sum.divergences;
            if (sum.examples.size() < keep_examples)
                sum.examples.push_back(*divergence(minimize(c)));
        }
    };
    if (kind == EncodingKind::set) {
        for (std::vector<int> values : {std::vector<int>{0, 1}, std::vector<int>{0, 1, 2}}) {
            std::vector<oracle::SetBounds> bounds;
            for (const auto & ub : detail::nonempty_subsets({0, 1, 2}))
                for (const auto & lb : detail::nonempty_subsets(ub))
                    bounds.push_back({lb, ub, std::nullopt});
            bounds.push_back({{}, {}, std::nullopt});
            for (const auto & ub : detail::nonempty_subsets({0, 1, 2}))
                bounds.push_back({{}, ub, std::nullopt});
            for (std::size_t n = 1; n <= max_n; ++n)
                detail::for_each_tuple(bounds, n, [&](const auto & t) { check(SetCase{values, t}); });
        }
        return sum;
    }
    for (const auto & spec : sweep_specs(kind)) {
        auto subsets = detail::nonempty_subsets(sweep_universe(spec));
        for (std::size_t n = 1; n <= max_n; ++n)
            detail::for_each_tuple(subsets, n, [&](const auto & t) { check(FdCase{spec, t}); });
    }
    return sum;
}

// ---------------------------------------------------------------------------------------
// Random testing

struct FuzzCaps {
    std::size_t max_n = 7;
    std::size_t max_values = 4;   // values named by the constraint
    std::size_t max_domain = 5;   // values per domain, unnamed ones included
    std::size_t set_max_n = 4;
    std::size_t set_universe = 4;
    oracle::OracleLimits limits;
};

struct FuzzReport {
    std::uint64_t seed = 0;
    std::vector<SweepSummary> kinds;

    [[nodiscard]] std::uint64_t divergences() const
    {
        std::uint64_t d = 0;
        for (const auto & k : kinds)
            d += k.divergences;
        return d;
    }

    [[nodiscard]] std::string text() const
    {
        std::ostringstream out;
        out << "fuzz seed " << seed << "\n";
        for (const auto & k : kinds) {
            out << "  " << to_string(k.kind) << ": " << k.instances << " cases, " << k.divergences << " divergences\n";
            for (const auto & e : k.examples)
                out << "    minimized: " << e << "\n";
        }
        out << (divergences() == 0 ? "OK" : "DIVERGENT") << "\n";
        return out.str();
    }
};

namespace detail {

// Draws are reduced from raw 64-bit outputs so the sequence depends only on the seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : _g(seed) {}

    std::size_t below(std::size_t n) { return static_cast<std::size_t>(_g() % n); }
    std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

    std::vector<int> subset(const std::vector<int> & universe, std::size_t max_size)
    {
        auto pool = universe;
        for (std::size_t i = pool.size(); i > 1; --i)
            std::swap(pool[i - 1], pool[below(i)]);
        pool.resize(between(1, std::min(max_size, pool.size())));
        std::sort(pool.begin(), pool.end());
        return pool;
    }

private:
    std::mt19937_64 _g;
};

inline std::uint64_t power(std::uint64_t base, std::size_t exp)
{
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (r > std::numeric_limits<std::uint64_t>::max() / std::max<std::uint64_t>(base, 1))
            return std::numeric_limits<std::uint64_t>::max();
        r *= base;
    }
    return r;
}

inline Case random_case(EncodingKind kind, Rng & rng, const FuzzCaps & caps)
{
    auto n = rng.between(1, caps.max_n);
    auto listed = [&](std::size_t m) {
        std::vector<int> vals(m);
        std::iota(vals.begin(), vals.end(), 1);
        for (std::size_t i = m; i > 1; --i)
            std::swap(vals[i - 1], vals[rng.below(i)]);
        return vals;
    };
    auto m = rng.between(2, std::max<std::size_t>(caps.max_values, 2));
    std::vector<int> universe(m + 1);
    std::iota(universe.begin(), universe.end(), 1); // m + 1 is never named
    auto domains = [&](const std::vector<int> & uni) {
        oracle::Domains d;
        for (std::size_t i = 0; i < n; ++i)
            d.push_back(rng.subset(uni, caps.max_domain));
        return d;
    };
    switch (kind) {
    case EncodingKind::pair: {
        auto v = listed(m);
        return FdCase{PairSymmetry{v[0], v[1]}, domains(universe)};
    }
    case EncodingKind::full:
        return FdCase{FullInterchange{listed(m)}, domains(universe)};
    case EncodingKind::partition: {
        auto v = listed(m);
        auto cut = rng.between(1, m - 1);
        std::vector<std::vector<int>> classes{{v.begin(), v.begin() + static_cast<std::ptrdiff_t>(cut)},
            {v.begin() + static_cast<std::ptrdiff_t>(cut), v.end()}};
        return FdCase{PartitionInterchange{classes}, domains(universe)};
    }
    case EncodingKind::wreath: {
        auto outer = listed(rng.between(1, 3));
        std::vector<int> inner(rng.between(1, 3));
        std::iota(inner.begin(), inner.end(), 0);
        for (std::size_t i = inner.size(); i > 1; --i)
            std::swap(inner[i - 1], inner[rng.below(i)]);
        WreathInterchange w{outer, inner, {}};
        std::vector<int> codes;
        for (int u : outer)
            for (int v : inner)
                codes.push_back(w.coding.encode(u, v));
        std::sort(codes.begin(), codes.end());
        return FdCase{w, domains(codes)};
    }
    case EncodingKind::set: {
        std::vector<int> uni(caps.set_universe);
        std::iota(uni.begin(), uni.end(), 0);
        auto values = listed(rng.between(2, std::max<std::size_t>(caps.set_universe - 1, 2)));
        for (auto & v : values)
            --v; // 0-based; the top universe value stays unnamed
        std::vector<oracle::SetBounds> sets;
        auto count = rng.between(1, caps.set_max_n);
        for (std::size_t i = 0; i < count; ++i) {
            std::vector<int> ub, lb;
            for (int v : uni)
                switch (rng.below(4)) {
                case 0:
                    break;
                case 1:
                    ub.push_back(v);
                    lb.push_back(v);
                    break;
                default:
                    ub.push_back(v);
                }
            sets.push_back({lb, ub, std::nullopt});
        }
        return SetCase{values, sets};
    }
    }
    throw std::logic_error("unknown encoding kind");
}

} // namespace detail

/// `cases` random instances of every kind. Caps whose worst case the oracle could not
/// enumerate are refused with std::invalid_argument. The report text depends only on the
/// seed, the case count and the caps.
inline FuzzReport fuzz_equivalence(std::uint64_t seed, std::size_t cases, const FuzzCaps & caps = {},
    std::size_t keep_examples = 3)
{
    if (caps.max_n == 0 || caps.max_values < 2 || caps.max_domain == 0 || caps.set_max_n == 0 || caps.set_universe < 3)
        throw std::invalid_argument("fuzz caps too small to form instances");
    const auto limit = caps.limits.max_assignments;
    if (detail::power(std::max<std::size_t>(caps.max_domain, 1), caps.max_n) > limit ||
        detail::power(2, caps.set_universe * caps.set_max_n) > limit)
        throw std::invalid_argument("fuzz caps exceed the oracle enumeration limit of " + std::to_string(limit));

    FuzzReport report;
    report.seed = seed;
    detail::Rng rng(seed);
    for (auto kind : {EncodingKind::pair, EncodingKind::full, EncodingKind::partition, EncodingKind::wreath, EncodingKind::set}) {
        SweepSummary sum;
        sum.kind = kind;
        for (std::size_t i = 0; i < cases; ++i) {
            auto c = detail::random_case(kind, rng, caps);
            ++sum.instances;
            if (divergence(c, caps.limits)) {
                ++sum.divergences;
                if (sum.examples.size() < keep_examples)
                    sum.examples.push_back(*divergence(minimize(c, caps.limits), caps.limits));
            }
        }
        report.kinds.push_back(std::move(sum));
    }
    return report;
}

} // namespace valprec

#endif // VALPREC_FUZZ_HPP
