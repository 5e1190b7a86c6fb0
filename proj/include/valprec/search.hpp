#ifndef VALPREC_SEARCH_HPP
#define VALPREC_SEARCH_HPP

#include <valprec/engine.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace valprec {

enum class VarOrder { static_lex, smallest_domain };
enum class ValueOrder { ascending, descending };
/// binary: x = v, then x != v. d_way: one child per value.
enum class Branching { binary, d_way };

struct Heuristic {
    VarOrder var_order = VarOrder::static_lex;
    ValueOrder value_order = ValueOrder::ascending;
    Branching branching = Branching::binary;
};

enum class SolveMode { first, all };

struct Budget {
    std::optional<std::chrono::milliseconds> time;
    std::optional<std::uint64_t> nodes;
};

struct SearchStats {
    std::size_t user_constraints = 0;
    std::size_t encoding_constraints = 0;
    std::uint64_t backtracks = 0; // nodes whose propagation failed
    std::uint64_t nodes = 0;
    std::uint64_t solutions = 0;
    std::chrono::nanoseconds wall_time{0};
    bool halted = false;
};

struct SearchOptions {
    Heuristic heuristic;
    SolveMode mode = SolveMode::all;
    Budget budget;
    /// Keep the decision-variable values of each solution (all-mode can be large).
    bool record_solutions = true;
    /// Called with decision values of every solution; returning false stops the search.
    std::function<bool(std::span<const int>)> on_solution;
};

struct SearchResult {
    std::vector<std::vector<int>> solutions;
    SearchStats stats;
};

namespace detail {

class Search {
public:
    Search(Model & model, std::span<const VarId> decisions, const SearchOptions & options) :
        _model(model), _options(options), _start(std::chrono::steady_clock::now())
    {
        _order.assign(decisions.begin(), decisions.end());
        _decision_count = _order.size();
        std::vector<char> seen(model.num_vars(), 0);
        for (auto x : decisions)
            seen[x.index] = 1;
        // auxiliary variables are branched on last so every solution is fully ground
        for (std::uint32_t i = 0; i < model.num_vars(); ++i)
            if (! seen[i])
                _order.push_back(VarId{i});
    }

    SearchResult run()
    {
        _result.stats.user_constraints = _model.user_constraints();
        _result.stats.encoding_constraints = _model.encoding_constraints();
        _model.push_choice();
        node();
        _model.pop_choice();
        _result.stats.wall_time = std::chrono::steady_clock::now() - _start;
        return std::move(_result);
    }

private:
    // Returns false once the search must stop.
    bool node()
    {
        auto & st = _result.stats;
        if (out_of_budget()) {
            st.halted = true;
            return false;
        }
        ++st.nodes;
        if (_model.propagate() == PropagationStatus::failed) {
            ++st.backtracks;
            return true;
        }
        auto x = choose();
        if (! x)
            return record();
        const auto & h = _options.heuristic;
        if (h.branching == Branching::binary) {
            int v = h.value_order == ValueOrder::ascending ? _model.min(*x) : _model.max(*x);
            return child([&] { return _model.assign(*x, v); }) && child([&] { return _model.remove(*x, v); });
        }
        auto values = _model.dom(*x).values();
        if (h.value_order == ValueOrder::descending)
            std::reverse(values.begin(), values.end());
        for (int v : values)
            if (! child([&] { return _model.assign(*x, v); }))
                return false;
        return true;
    }

    template <class Decide>
    bool child(Decide && decide)
    {
        _model.push_choice();
        bool go_on = true;
        if (decide()) {
            go_on = node();
        }
        else {
            // the decision itself emptied a domain: a failed node without propagation
            ++_result.stats.nodes;
            ++_result.stats.backtracks;
        }
        _model.pop_choice();
        return go_on;
    }

    std::optional<VarId> choose() const
    {
        std::optional<VarId> best;
        for (auto x : _order) {
            if (_model.fixed(x))
                continue;
            if (_options.heuristic.var_order == VarOrder::static_lex)
                return x;
            if (! best || _model.size(x) < _model.size(*best))
                best = x;
        }
        return best;
    }

    bool record()
    {
        auto & st = _result.stats;
        ++st.solutions;
        std::vector<int> sol;
        sol.reserve(_decision_count);
        for (std::size_t i = 0; i < _decision_count; ++i)
            sol.push_back(_model.value(_order[i]));
        bool go_on = _options.mode == SolveMode::all;
        if (_options.on_solution && ! _options.on_solution(sol))
            go_on = false;
        if (_options.record_solutions)
            _result.solutions.push_back(std::move(sol));
        return go_on;
    }

    bool out_of_budget()
    {
        const auto & b = _options.budget;
        if (b.nodes && _result.stats.nodes >= *b.nodes)
            return true;
        if (b.time && (++_clock_tick & 0xFFU) == 0)
            _timed_out = std::chrono::steady_clock::now() - _start >= *b.time;
        return _timed_out;
    }

    Model & _model;
    const SearchOptions & _options;
    std::chrono::steady_clock::time_point _start;
    std::vector<VarId> _order;
    std::size_t _decision_count = 0;
    SearchResult _result;
    std::uint32_t _clock_tick = 0;
    bool _timed_out = false;
};

} // namespace detail

/// Depth-first search with propagation at every node. The model is left as it was on entry.
/// `decisions` are branched on first, in the given order for static_lex, and are what each
/// recorded solution lists; other variables are branched on afterwards.
inline SearchResult solve(Model & model, std::span<const VarId> decisions, const SearchOptions & options = {})
{
    return detail::Search(model, decisions, options).run();
}

} // namespace valprec

#endif // VALPREC_SEARCH_HPP
