#ifndef VALPREC_ENGINE_HPP
#define VALPREC_ENGINE_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <iterator>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace valprec {

/// Thrown when a variable or constraint cannot be built from its arguments.
class ConstructionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when the engine API is called in a state that does not allow it.
class UsageError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct VarId {
    std::uint32_t index = 0;
    friend constexpr auto operator<=>(VarId, VarId) = default;
};

struct SetVarId {
    std::uint32_t index = 0;
    friend constexpr auto operator<=>(SetVarId, SetVarId) = default;
};

struct PropId {
    std::uint32_t index = 0;
    friend constexpr auto operator<=>(PropId, PropId) = default;
};

/// Inclusive integer interval; empty when lo > hi.
struct Interval {
    int lo = 0;
    int hi = -1;

    [[nodiscard]] constexpr bool empty() const { return lo > hi; }
    [[nodiscard]] constexpr bool contains(int v) const { return lo <= v && v <= hi; }
    friend constexpr bool operator==(Interval, Interval) = default;
};

enum class PropagationStatus { at_fixpoint, failed };

/// What a single filter run concluded about its constraint.
enum class FilterResult { ok, failed, entailed };

/// Wake conditions a propagator can subscribe to.
enum class Event : std::uint8_t { domain, bounds, fixed };

namespace detail {

inline constexpr int word_bits = 64;

inline std::size_t words_for(int span) { return static_cast<std::size_t>((span + word_bits - 1) / word_bits); }

} // namespace detail

/// Read-only view of a finite domain stored as a bitset over [offset, offset + 64 * words).
class DomainView {
public:
    class const_iterator {
    public:
        using value_type = int;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::forward_iterator_tag;
        using pointer = const int *;
        using reference = int;

        const_iterator() = default;
        const_iterator(std::span<const std::uint64_t> words, std::size_t index, int offset) :
            _words(words), _index(index), _offset(offset)
        {
            if (_index < _words.size()) {
                _bits = _words[_index];
                skip_empty();
            }
        }

        int operator*() const
        {
            return _offset + static_cast<int>(_index) * detail::word_bits + std::countr_zero(_bits);
        }

        const_iterator & operator++()
        {
            _bits &= _bits - 1;
            skip_empty();
            return *this;
        }

        const_iterator operator++(int)
        {
            auto copy = *this;
            ++*this;
            return copy;
        }

        friend bool operator==(const const_iterator & a, const const_iterator & b)
        {
            return a._index == b._index && a._bits == b._bits;
        }

    private:
        void skip_empty()
        {
            while (_bits == 0 && ++_index < _words.size())
                _bits = _words[_index];
            if (_index >= _words.size()) {
                _index = _words.size();
                _bits = 0;
            }
        }

        std::span<const std::uint64_t> _words;
        std::size_t _index = 0;
        std::uint64_t _bits = 0;
        int _offset = 0;
    };

    DomainView(int offset, std::span<const std::uint64_t> words, int min, int max, std::size_t size) :
        _offset(offset), _words(words), _min(min), _max(max), _size(size)
    {
    }

    [[nodiscard]] bool contains(int v) const
    {
        if (v < _min || v > _max)
            return false;
        auto bit = static_cast<std::size_t>(v - _offset);
        return (_words[bit / detail::word_bits] >> (bit % detail::word_bits)) & 1U;
    }

    [[nodiscard]] int min() const { return _min; }
    [[nodiscard]] int max() const { return _max; }
    [[nodiscard]] std::size_t size() const { return _size; }
    [[nodiscard]] bool fixed() const { return _size == 1; }

    /// Only meaningful when fixed().
    [[nodiscard]] int value() const { return _min; }

    [[nodiscard]] const_iterator begin() const { return {_words, 0, _offset}; }
    [[nodiscard]] const_iterator end() const { return {_words, _words.size(), _offset}; }

    [[nodiscard]] std::vector<int> values() const { return {begin(), end()}; }

    [[nodiscard]] int offset() const { return _offset; }
    [[nodiscard]] std::span<const std::uint64_t> words() const { return _words; }

private:
    int _offset;
    std::span<const std::uint64_t> _words;
    int _min;
    int _max;
    std::size_t _size;
};

/// Scratch bitset laid out like one variable's domain; used to collect supported values.
class ValueMask {
public:
    ValueMask(int offset, std::size_t words) : _offset(offset), _words(words, 0) {}

    void insert(int v)
    {
        auto bit = static_cast<std::size_t>(v - _offset);
        _words[bit / detail::word_bits] |= std::uint64_t{1} << (bit % detail::word_bits);
    }

    [[nodiscard]] bool contains(int v) const
    {
        if (v < _offset)
            return false;
        auto bit = static_cast<std::size_t>(v - _offset);
        if (bit / detail::word_bits >= _words.size())
            return false;
        return (_words[bit / detail::word_bits] >> (bit % detail::word_bits)) & 1U;
    }

    [[nodiscard]] int offset() const { return _offset; }
    [[nodiscard]] std::span<const std::uint64_t> words() const { return _words; }

private:
    int _offset;
    std::vector<std::uint64_t> _words;
};

class Model;

/// A constraint with a filtering procedure. Filters must be sound and monotone.
class Propagator {
public:
    virtual ~Propagator() = default;

    /// Register wake conditions; called once when posted.
    virtual void subscribe(Model & model, PropId self) = 0;

    virtual FilterResult filter(Model & model) = 0;

    /// True if one filter run always reaches this propagator's own fixpoint.
    [[nodiscard]] virtual bool idempotent() const { return false; }

    [[nodiscard]] virtual std::string_view name() const = 0;
};

/// Variable store, trail and propagation queue. Single-threaded; distinct models are independent.
class Model {
public:
    Model() = default;
    Model(const Model &) = delete;
    Model & operator=(const Model &) = delete;
    Model(Model &&) noexcept = default;
    Model & operator=(Model &&) noexcept = default;
    ~Model() = default;

    /// Marks constraints posted while alive as encoding-internal rather than user constraints.
    class EncodingScope {
    public:
        explicit EncodingScope(Model & m) : _model(&m) { ++_model->_encoding_depth; }
        EncodingScope(const EncodingScope &) = delete;
        EncodingScope & operator=(const EncodingScope &) = delete;
        ~EncodingScope() { --_model->_encoding_depth; }

    private:
        Model * _model;
    };

    // --- variables -------------------------------------------------------

    VarId add_fd_var(std::span<const int> values)
    {
        require_root("add_fd_var");
        if (values.empty())
            throw ConstructionError("finite domain variable needs at least one value");
        auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
        int lo = *lo_it, hi = *hi_it;
        if (static_cast<long long>(hi) - lo >= std::numeric_limits<int>::max() / 2)
            throw ConstructionError("finite domain value range too wide for an explicit domain");

        VarState s;
        s.offset = lo;
        s.first_word = static_cast<std::uint32_t>(_words.size());
        s.word_count = static_cast<std::uint32_t>(detail::words_for(hi - lo + 1));
        _words.resize(_words.size() + s.word_count, 0);
        std::uint32_t size = 0;
        for (int v : values) {
            auto bit = static_cast<std::size_t>(v - lo);
            auto & w = _words[s.first_word + bit / detail::word_bits];
            auto mask = std::uint64_t{1} << (bit % detail::word_bits);
            if (! (w & mask)) {
                w |= mask;
                ++size;
            }
        }
        s.min = lo;
        s.max = hi;
        s.size = size;
        _vars.push_back(s);
        _watches.emplace_back();
        return VarId{static_cast<std::uint32_t>(_vars.size() - 1)};
    }

    VarId add_fd_var(std::initializer_list<int> values) { return add_fd_var(std::span<const int>(values.begin(), values.size())); }

    VarId add_fd_var_range(int lo, int hi)
    {
        if (lo > hi)
            throw ConstructionError("empty range for finite domain variable");
        std::vector<int> values(static_cast<std::size_t>(hi - lo + 1));
        for (std::size_t i = 0; i < values.size(); ++i)
            values[i] = lo + static_cast<int>(i);
        return add_fd_var(values);
    }

    VarId add_bool_var() { return add_fd_var({0, 1}); }

    /// A fresh variable fixed to v.
    VarId constant(int v) { return add_fd_var({v}); }

    SetVarId add_set_var(std::span<const int> lb, std::span<const int> ub, std::optional<Interval> card = std::nullopt);

    SetVarId add_set_var(std::initializer_list<int> lb, std::initializer_list<int> ub, std::optional<Interval> card = std::nullopt)
    {
        return add_set_var(std::span<const int>(lb.begin(), lb.size()), std::span<const int>(ub.begin(), ub.size()), card);
    }

    [[nodiscard]] std::size_t num_vars() const { return _vars.size(); }
    [[nodiscard]] std::size_t num_set_vars() const { return _sets.size(); }

    [[nodiscard]] DomainView dom(VarId x) const
    {
        const auto & s = _vars.at(x.index);
        return {s.offset, std::span<const std::uint64_t>(_words.data() + s.first_word, s.word_count), s.min, s.max, s.size};
    }

    [[nodiscard]] bool contains(VarId x, int v) const { return dom(x).contains(v); }
    [[nodiscard]] int min(VarId x) const { return _vars[x.index].min; }
    [[nodiscard]] int max(VarId x) const { return _vars[x.index].max; }
    [[nodiscard]] std::size_t size(VarId x) const { return _vars[x.index].size; }
    [[nodiscard]] bool fixed(VarId x) const { return _vars[x.index].size == 1; }
    [[nodiscard]] int value(VarId x) const
    {
        if (! fixed(x))
            throw UsageError("value() on a variable that is not fixed");
        return _vars[x.index].min;
    }

    [[nodiscard]] ValueMask empty_mask(VarId x) const
    {
        const auto & s = _vars[x.index];
        return {s.offset, s.word_count};
    }

    // --- set variables (views over 0/1 membership variables) -------------

    [[nodiscard]] std::span<const int> universe(SetVarId s) const { return _sets.at(s.index).universe; }

    /// The 0/1 membership variable for v, or nothing if v is outside ub at creation.
    [[nodiscard]] std::optional<VarId> member(SetVarId s, int v) const
    {
        const auto & d = _sets.at(s.index);
        auto it = std::lower_bound(d.universe.begin(), d.universe.end(), v);
        if (it == d.universe.end() || *it != v)
            return std::nullopt;
        return d.members[static_cast<std::size_t>(it - d.universe.begin())];
    }

    [[nodiscard]] std::vector<int> lb(SetVarId s) const
    {
        const auto & d = _sets.at(s.index);
        std::vector<int> r;
        for (std::size_t i = 0; i < d.universe.size(); ++i)
            if (min(d.members[i]) == 1)
                r.push_back(d.universe[i]);
        return r;
    }

    [[nodiscard]] std::vector<int> ub(SetVarId s) const
    {
        const auto & d = _sets.at(s.index);
        std::vector<int> r;
        for (std::size_t i = 0; i < d.universe.size(); ++i)
            if (max(d.members[i]) == 1)
                r.push_back(d.universe[i]);
        return r;
    }

    [[nodiscard]] Interval card(SetVarId s) const { return _sets.at(s.index).card; }

    // --- pruning; each returns false instead of emptying a domain --------

    bool remove(VarId x, int v)
    {
        auto & s = _vars[x.index];
        if (! dom(x).contains(v))
            return true;
        if (s.size == 1)
            return false;
        save(x);
        int old_min = s.min, old_max = s.max;
        auto bit = static_cast<std::size_t>(v - s.offset);
        _words[s.first_word + bit / detail::word_bits] &= ~(std::uint64_t{1} << (bit % detail::word_bits));
        --s.size;
        if (v == s.min)
            s.min = next_value(x, v + 1);
        if (v == s.max)
            s.max = prev_value(x, v - 1);
        changed(x, old_min, old_max);
        return true;
    }

    bool assign(VarId x, int v)
    {
        auto & s = _vars[x.index];
        if (! dom(x).contains(v))
            return false;
        if (s.size == 1)
            return true;
        save(x);
        int old_min = s.min, old_max = s.max;
        std::fill_n(_words.begin() + s.first_word, s.word_count, 0);
        auto bit = static_cast<std::size_t>(v - s.offset);
        _words[s.first_word + bit / detail::word_bits] = std::uint64_t{1} << (bit % detail::word_bits);
        s.min = s.max = v;
        s.size = 1;
        changed(x, old_min, old_max);
        return true;
    }

    bool set_min(VarId x, int lo)
    {
        const auto & s = _vars[x.index];
        if (lo <= s.min)
            return true;
        if (lo > s.max)
            return false;
        return retain_if(x, [lo](int v) { return v >= lo; });
    }

    bool set_max(VarId x, int hi)
    {
        const auto & s = _vars[x.index];
        if (hi >= s.max)
            return true;
        if (hi < s.min)
            return false;
        return retain_if(x, [hi](int v) { return v <= hi; });
    }

    /// Intersect the domain of x with a mask obtained from empty_mask(x).
    bool retain(VarId x, const ValueMask & mask)
    {
        auto & s = _vars[x.index];
        auto mw = mask.words();
        std::uint32_t new_size = 0;
        for (std::uint32_t i = 0; i < s.word_count; ++i)
            new_size += static_cast<std::uint32_t>(std::popcount(_words[s.first_word + i] & mw[i]));
        if (new_size == 0)
            return false;
        if (new_size == s.size)
            return true;
        save(x);
        int old_min = s.min, old_max = s.max;
        for (std::uint32_t i = 0; i < s.word_count; ++i)
            _words[s.first_word + i] &= mw[i];
        s.size = new_size;
        s.min = next_value(x, s.min);
        s.max = prev_value(x, s.max);
        changed(x, old_min, old_max);
        return true;
    }

    template <typename Pred>
    bool retain_if(VarId x, Pred && keep)
    {
        auto mask = empty_mask(x);
        for (int v : dom(x))
            if (keep(v))
                mask.insert(v);
        return retain(x, mask);
    }

    // --- propagators -----------------------------------------------------

    PropId post(std::unique_ptr<Propagator> p)
    {
        require_root("post");
        auto id = PropId{static_cast<std::uint32_t>(_props.size())};
        _props.push_back(std::move(p));
        _entailed.push_back(0);
        _in_queue.push_back(0);
        if (_encoding_depth > 0)
            ++_encoding_constraints;
        else
            ++_user_constraints;
        _props.back()->subscribe(*this, id);
        schedule(id);
        return id;
    }

    template <typename P, typename... Args>
    PropId post(Args &&... args)
    {
        return post(std::make_unique<P>(std::forward<Args>(args)...));
    }

    void watch(VarId x, Event e, PropId p) { _watches.at(x.index)[static_cast<std::size_t>(e)].push_back(p); }

    [[nodiscard]] bool entailed(PropId p) const { return _entailed.at(p.index) != 0; }
    [[nodiscard]] const Propagator & propagator(PropId p) const { return *_props.at(p.index); }
    [[nodiscard]] std::size_t num_propagators() const { return _props.size(); }
    [[nodiscard]] std::size_t user_constraints() const { return _user_constraints; }
    [[nodiscard]] std::size_t encoding_constraints() const { return _encoding_constraints; }

    /// Run a single propagator's filter outside the queue; for fixpoint checks in tests.
    FilterResult run_filter(PropId p) { return _props.at(p.index)->filter(*this); }

    /// Run scheduled propagators until nothing changes or a domain would become empty.
    PropagationStatus propagate()
    {
        if (_failed)
            return PropagationStatus::failed;
        while (! _queue.empty()) {
            auto p = _queue.front();
            _queue.pop_front();
            _in_queue[p.index] = 0;
            if (_entailed[p.index])
                continue;
            _running = p.index;
            auto r = _props[p.index]->filter(*this);
            _running = no_prop;
            if (r == FilterResult::failed) {
                _failed = true;
                clear_queue();
                return PropagationStatus::failed;
            }
            if (r == FilterResult::entailed)
                mark_entailed(p);
        }
        return PropagationStatus::at_fixpoint;
    }

    [[nodiscard]] bool failed() const { return _failed; }

    // --- choice points ---------------------------------------------------

    void push_choice()
    {
        _markers.push_back(Marker{_trail.size(), _trail_words.size(), _stamp, _failed, {_queue.begin(), _queue.end()}});
        _stamp = ++_stamp_counter;
    }

    void pop_choice()
    {
        if (_markers.empty())
            throw UsageError("pop_choice() without a matching push_choice()");
        auto marker = std::move(_markers.back());
        _markers.pop_back();
        while (_trail.size() > marker.trail_size) {
            const auto & e = _trail.back();
            if (e.kind == TrailEntry::Kind::entailment) {
                _entailed[e.id] = 0;
            }
            else {
                auto & s = _vars[e.id];
                std::copy_n(_trail_words.begin() + static_cast<std::ptrdiff_t>(e.words_at), s.word_count,
                    _words.begin() + s.first_word);
                s.min = e.min;
                s.max = e.max;
                s.size = e.size;
                s.stamp = e.stamp;
            }
            _trail.pop_back();
        }
        _trail_words.resize(marker.words_size);
        _stamp = marker.stamp;
        _failed = marker.failed;
        clear_queue();
        for (auto p : marker.queue)
            schedule(p);
    }

    [[nodiscard]] std::size_t depth() const { return _markers.size(); }

private:
    static constexpr std::uint32_t no_prop = std::numeric_limits<std::uint32_t>::max();

    struct VarState {
        int offset = 0;
        std::uint32_t first_word = 0;
        std::uint32_t word_count = 0;
        int min = 0;
        int max = 0;
        std::uint32_t size = 0;
        std::uint64_t stamp = 0;
    };

    struct TrailEntry {
        enum class Kind : std::uint8_t { domain, entailment };
        Kind kind;
        std::uint32_t id;
        int min = 0;
        int max = 0;
        std::uint32_t size = 0;
        std::uint64_t stamp = 0;
        std::size_t words_at = 0;
    };

    struct Marker {
        std::size_t trail_size;
        std::size_t words_size;
        std::uint64_t stamp;
        bool failed;
        std::vector<PropId> queue;
    };

    struct SetData {
        std::vector<int> universe;
        std::vector<VarId> members;
        Interval card;
    };

    using WatchLists = std::array<std::vector<PropId>, 3>;

    void require_root(const char * what) const
    {
        if (! _markers.empty())
            throw UsageError(std::string(what) + " is only allowed with no open choice point");
    }

    // Saves x once per choice point; nothing to save at the root.
    void save(VarId x)
    {
        if (_markers.empty())
            return;
        auto & s = _vars[x.index];
        if (s.stamp == _stamp)
            return;
        TrailEntry e{TrailEntry::Kind::domain, x.index, s.min, s.max, s.size, s.stamp, _trail_words.size()};
        _trail_words.insert(_trail_words.end(), _words.begin() + s.first_word, _words.begin() + s.first_word + s.word_count);
        _trail.push_back(e);
        s.stamp = _stamp;
    }

    void mark_entailed(PropId p)
    {
        _entailed[p.index] = 1;
        if (! _markers.empty())
            _trail.push_back(TrailEntry{TrailEntry::Kind::entailment, p.index});
    }

    int next_value(VarId x, int from) const
    {
        const auto & s = _vars[x.index];
        auto bit = static_cast<std::size_t>(from - s.offset);
        auto wi = bit / detail::word_bits;
        if (wi >= s.word_count)
            return s.max;
        auto w = _words[s.first_word + wi] & (~std::uint64_t{0} << (bit % detail::word_bits));
        while (w == 0) {
            if (++wi >= s.word_count)
                return s.max;
            w = _words[s.first_word + wi];
        }
        return s.offset + static_cast<int>(wi) * detail::word_bits + std::countr_zero(w);
    }

    int prev_value(VarId x, int from) const
    {
        const auto & s = _vars[x.index];
        auto bit = static_cast<std::size_t>(from - s.offset);
        auto wi = static_cast<std::ptrdiff_t>(bit / detail::word_bits);
        auto shift = static_cast<int>(bit % detail::word_bits);
        auto w = _words[s.first_word + static_cast<std::size_t>(wi)] & (~std::uint64_t{0} >> (detail::word_bits - 1 - shift));
        while (w == 0) {
            if (--wi < 0)
                return s.min;
            w = _words[s.first_word + static_cast<std::size_t>(wi)];
        }
        return s.offset + static_cast<int>(wi) * detail::word_bits + (detail::word_bits - 1 - std::countl_zero(w));
    }

    void changed(VarId x, int old_min, int old_max)
    {
        const auto & s = _vars[x.index];
        const auto & lists = _watches[x.index];
        for (auto p : lists[static_cast<std::size_t>(Event::domain)])
            schedule(p);
        if (s.min != old_min || s.max != old_max)
            for (auto p : lists[static_cast<std::size_t>(Event::bounds)])
                schedule(p);
        if (s.size == 1)
            for (auto p : lists[static_cast<std::size_t>(Event::fixed)])
                schedule(p);
    }

    void schedule(PropId p)
    {
        if (_entailed[p.index] || _in_queue[p.index])
            return;
        if (p.index == _running && _props[p.index]->idempotent())
            return;
        _in_queue[p.index] = 1;
        _queue.push_back(p);
    }

    void clear_queue()
    {
        for (auto p : _queue)
            _in_queue[p.index] = 0;
        _queue.clear();
    }

    std::vector<VarState> _vars;
    std::vector<std::uint64_t> _words;
    std::vector<WatchLists> _watches;
    std::vector<SetData> _sets;

    std::vector<std::unique_ptr<Propagator>> _props;
    std::vector<char> _entailed;
    std::vector<char> _in_queue;
    std::deque<PropId> _queue;
    std::uint32_t _running = no_prop;
    bool _failed = false;

    std::vector<TrailEntry> _trail;
    std::vector<std::uint64_t> _trail_words;
    std::vector<Marker> _markers;
    std::uint64_t _stamp = 0;
    std::uint64_t _stamp_counter = 0;

    std::size_t _user_constraints = 0;
    std::size_t _encoding_constraints = 0;
    int _encoding_depth = 0;
};

/// lo <= sum(bools) <= hi over 0/1 variables. GAC.
class BoolSumBetween : public Propagator {
public:
    BoolSumBetween(std::vector<VarId> bools, Interval bounds) : _bools(std::move(bools)), _bounds(bounds) {}

    void subscribe(Model & model, PropId self) override
    {
        for (auto b : _bools)
            model.watch(b, Event::fixed, self);
    }

    FilterResult filter(Model & model) override
    {
        int ones = 0, possible = 0;
        for (auto b : _bools) {
            if (model.min(b) == 1)
                ++ones;
            if (model.max(b) == 1)
                ++possible;
        }
        if (ones > _bounds.hi || possible < _bounds.lo)
            return FilterResult::failed;
        if (ones == _bounds.hi) {
            for (auto b : _bools)
                if (! model.fixed(b) && ! model.assign(b, 0))
                    return FilterResult::failed;
            return FilterResult::entailed;
        }
        if (possible == _bounds.lo) {
            for (auto b : _bools)
                if (! model.fixed(b) && ! model.assign(b, 1))
                    return FilterResult::failed;
            return FilterResult::entailed;
        }
        if (_bounds.lo <= ones && possible <= _bounds.hi)
            return FilterResult::entailed;
        return FilterResult::ok;
    }

    [[nodiscard]] bool idempotent() const override { return true; }
    [[nodiscard]] std::string_view name() const override { return "bool_sum_between"; }

private:
    std::vector<VarId> _bools;
    Interval _bounds;
};

inline SetVarId Model::add_set_var(std::span<const int> lb, std::span<const int> ub, std::optional<Interval> card)
{
    require_root("add_set_var");
    std::vector<int> lower(lb.begin(), lb.end()), upper(ub.begin(), ub.end());
    std::sort(lower.begin(), lower.end());
    lower.erase(std::unique(lower.begin(), lower.end()), lower.end());
    std::sort(upper.begin(), upper.end());
    upper.erase(std::unique(upper.begin(), upper.end()), upper.end());
    if (! std::includes(upper.begin(), upper.end(), lower.begin(), lower.end()))
        throw ConstructionError("set variable lower bound is not a subset of its upper bound");

    Interval natural{static_cast<int>(lower.size()), static_cast<int>(upper.size())};
    Interval c = natural;
    if (card)
        c = Interval{std::max(card->lo, natural.lo), std::min(card->hi, natural.hi)};
    if (c.empty())
        throw ConstructionError("set variable cardinality interval is empty");

    SetData d;
    d.universe = upper;
    d.card = c;
    for (int v : upper)
        d.members.push_back(std::binary_search(lower.begin(), lower.end(), v) ? add_fd_var({1}) : add_bool_var());
    auto members = d.members;
    _sets.push_back(std::move(d));
    if (c != natural) {
        EncodingScope scope(*this);
        post<BoolSumBetween>(std::move(members), c);
    }
    return SetVarId{static_cast<std::uint32_t>(_sets.size() - 1)};
}

} // namespace valprec

#endif // VALPREC_ENGINE_HPP
