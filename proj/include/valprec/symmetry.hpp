#ifndef VALPREC_SYMMETRY_HPP
#define VALPREC_SYMMETRY_HPP

#include <valprec/engine.hpp>

#include <algorithm>
#include <set>
#include <utility>
#include <variant>
#include <vector>

namespace valprec {

/// Packs a pair <outer, inner> into one finite-domain value: outer * base + inner.
struct PairCoding {
    int base = 10;

    [[nodiscard]] constexpr int encode(int outer, int inner) const { return outer * base + inner; }

    [[nodiscard]] constexpr std::pair<int, int> decode(int code) const
    {
        int q = code / base, r = code % base;
        if (r < 0) {
            --q;
            r += base;
        }
        return {q, r};
    }

    friend constexpr bool operator==(PairCoding, PairCoding) = default;
};

/// first must be used before second.
struct PairSymmetry {
    int first = 0;
    int second = 0;
};

/// All listed values interchangeable; precedence order is list order.
struct FullInterchange {
    std::vector<int> values;
};

/// Values interchangeable only within a class.
struct PartitionInterchange {
    std::vector<std::vector<int>> classes;
};

/// Pair values <u, v>: the u are interchangeable, and for each fixed u so are the v.
struct WreathInterchange {
    std::vector<int> outer;
    std::vector<int> inner;
    PairCoding coding;
};

using SymmetrySpec = std::variant<PairSymmetry, FullInterchange, PartitionInterchange, WreathInterchange>;

namespace detail {

inline void require_distinct(const std::vector<int> & values, const char * what)
{
    std::set<int> seen(values.begin(), values.end());
    if (seen.size() != values.size())
        throw ConstructionError(std::string(what) + " lists a value twice");
}

} // namespace detail

inline void validate(const SymmetrySpec & spec)
{
    struct Visitor {
        void operator()(const PairSymmetry & p) const
        {
            if (p.first == p.second)
                throw ConstructionError("pair precedence needs two different values");
        }
        void operator()(const FullInterchange & f) const
        {
            if (f.values.empty())
                throw ConstructionError("precedence needs at least one value");
            detail::require_distinct(f.values, "precedence");
        }
        void operator()(const PartitionInterchange & p) const
        {
            std::vector<int> all;
            for (const auto & c : p.classes) {
                if (c.empty())
                    throw ConstructionError("partition classes must be non-empty");
                all.insert(all.end(), c.begin(), c.end());
            }
            detail::require_distinct(all, "partition");
        }
        void operator()(const WreathInterchange & w) const
        {
            if (w.outer.empty() || w.inner.empty())
                throw ConstructionError("wreath precedence needs outer and inner values");
            detail::require_distinct(w.outer, "wreath outer list");
            detail::require_distinct(w.inner, "wreath inner list");
            if (w.coding.base <= 0)
                throw ConstructionError("pair coding base must be positive");
            for (int v : w.inner)
                if (v < 0 || v >= w.coding.base)
                    throw ConstructionError("inner wreath values must lie in [0, coding base)");
        }
    };
    std::visit(Visitor{}, spec);
}

} // namespace valprec

#endif // VALPREC_SYMMETRY_HPP
