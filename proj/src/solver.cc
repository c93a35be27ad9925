/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <gowers/solver.hh>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

using std::optional;
using std::vector;

namespace gowers
{
    auto max_workers() -> int
    {
        return std::max(1u, std::thread::hardware_concurrency());
    }

    auto parallel_first(std::size_t count, int workers, const std::function<bool(std::size_t)> & predicate) -> optional<std::size_t>
    {
        std::atomic<std::size_t> next{0};
        std::atomic<std::size_t> best{count};
        std::mutex error_mutex;
        std::size_t error_index = count;
        std::exception_ptr error;

        auto work = [&] {
            while (true) {
                auto i = next.fetch_add(1);
                if (i >= count || i > best.load())
                    return;
                try {
                    if (predicate(i)) {
                        auto seen = best.load();
                        while (i < seen && ! best.compare_exchange_weak(seen, i))
                            ;
                    }
                }
                catch (...) {
                    std::lock_guard guard{error_mutex};
                    if (i < error_index) {
                        error_index = i;
                        error = std::current_exception();
                    }
                    auto seen = best.load();
                    while (i < seen && ! best.compare_exchange_weak(seen, i))
                        ;
                }
            }
        };

        int threads = std::max(1, std::min<int>(workers, static_cast<int>(count)));
        if (threads == 1)
            work();
        else {
            vector<std::thread> pool;
            for (int t = 0; t < threads; ++t)
                pool.emplace_back(work);
            for (auto & t : pool)
                t.join();
        }
        if (error && error_index <= best.load())
            std::rethrow_exception(error);
        if (best.load() >= count)
            return std::nullopt;
        return best.load();
    }

    namespace
    {
        using Clock = std::chrono::steady_clock;

        struct Membership
        {
            int candidate;
            int cls;
        };

        struct Change
        {
            enum class Kind
            {
                class_colour,
                forbid,
                max_used
            };
            Kind kind;
            int a;
            int b;
        };

        struct Stopped
        {
            bool timed_out;
        };

        class Search
        {
        private:
            const ColourProblem & _problem;
            int _r;
            vector<vector<Membership>> _memberships;
            vector<int> _class_candidate;
            vector<const vector<int> *> _class_members;
            vector<vector<int>> _candidate_classes;

            vector<int> _colour;
            vector<int> _class_colour;
            vector<int> _broken;
            vector<int> _unassigned;
            vector<int> _forbidden;
            int _max_used = 0;
            vector<Change> _trail;

            std::uint64_t _node_cap;
            optional<Clock::time_point> _deadline;
            const std::atomic<bool> * _cancel = nullptr;

        public:
            std::uint64_t nodes = 0;
            vector<std::pair<int, int>> stack;

            Search(const ColourProblem & problem, std::uint64_t node_cap, optional<Clock::time_point> deadline) :
                _problem(problem),
                _r(problem.colours),
                _memberships(problem.vertices),
                _colour(problem.vertices, 0),
                _forbidden(static_cast<std::size_t>(problem.vertices) * (problem.colours + 1), 0),
                _node_cap(node_cap),
                _deadline(deadline)
            {
                for (int c = 0; c < static_cast<int>(problem.candidates.size()); ++c) {
                    _candidate_classes.emplace_back();
                    int size = 0;
                    for (const auto & members : problem.candidates[c]) {
                        int cls = static_cast<int>(_class_candidate.size());
                        _class_candidate.push_back(c);
                        _class_members.push_back(&members);
                        _candidate_classes.back().push_back(cls);
                        for (auto v : members)
                            _memberships[v].push_back(Membership{c, cls});
                        size += static_cast<int>(members.size());
                    }
                    _unassigned.push_back(size);
                }
                _class_colour.assign(_class_candidate.size(), 0);
                _broken.assign(problem.candidates.size(), 0);
            }

            auto set_cancel(const std::atomic<bool> * cancel) -> void { _cancel = cancel; }

            // A candidate whose classes are all singletons or empty is good under every colouring.
            auto trivially_holds() const -> bool
            {
                for (const auto & candidate : _problem.candidates) {
                    bool all_small = true;
                    for (const auto & members : candidate)
                        all_small = all_small && members.size() <= 1;
                    if (all_small)
                        return true;
                }
                return false;
            }

            auto forbidden(int v, int c) const -> bool { return _forbidden[static_cast<std::size_t>(v) * (_r + 1) + c] != 0; }

            auto forbid(int v, int c) -> void
            {
                ++_forbidden[static_cast<std::size_t>(v) * (_r + 1) + c];
                _trail.push_back(Change{Change::Kind::forbid, v, c});
            }

            auto assign(int v, int c) -> bool
            {
                _colour[v] = c;
                stack.emplace_back(v, c);
                if (c > _max_used) {
                    _trail.push_back(Change{Change::Kind::max_used, _max_used, 0});
                    _max_used = c;
                }
                for (const auto & m : _memberships[v]) {
                    --_unassigned[m.candidate];
                    int & kc = _class_colour[m.cls];
                    if (kc == 0) {
                        _trail.push_back(Change{Change::Kind::class_colour, m.cls, 0});
                        kc = c;
                    }
                    else if (kc > 0 && kc != c) {
                        _trail.push_back(Change{Change::Kind::class_colour, m.cls, kc});
                        kc = -1;
                        ++_broken[m.candidate];
                    }
                }
                bool ok = true;
                for (const auto & m : _memberships[v]) {
                    int cand = m.candidate;
                    if (_broken[cand] != 0)
                        continue;
                    if (_unassigned[cand] == 0) {
                        ok = false;
                        break;
                    }
                    if (_unassigned[cand] == 1) {
                        // The last vertex must break its own class.
                        for (int cls : _candidate_classes[cand])
                            for (int u : *_class_members[cls])
                                if (_colour[u] == 0) {
                                    if (_class_colour[cls] == 0)
                                        ok = false;
                                    else
                                        forbid(u, _class_colour[cls]);
                                }
                        if (! ok)
                            break;
                    }
                }
                return ok;
            }

            auto undo(std::size_t mark) -> void
            {
                auto [v, c] = stack.back();
                stack.pop_back();
                while (_trail.size() > mark) {
                    auto change = _trail.back();
                    _trail.pop_back();
                    switch (change.kind) {
                    case Change::Kind::class_colour:
                        if (_class_colour[change.a] == -1)
                            --_broken[_class_candidate[change.a]];
                        _class_colour[change.a] = change.b;
                        break;
                    case Change::Kind::forbid:
                        --_forbidden[static_cast<std::size_t>(change.a) * (_r + 1) + change.b];
                        break;
                    case Change::Kind::max_used:
                        _max_used = change.a;
                        break;
                    }
                }
                for (const auto & m : _memberships[v])
                    ++_unassigned[m.candidate];
                _colour[v] = 0;
            }

            auto tick() -> void
            {
                ++nodes;
                if (nodes > _node_cap)
                    throw Stopped{false};
                if ((nodes & 1023) == 0) {
                    if (_deadline && Clock::now() > *_deadline)
                        throw Stopped{true};
                    if (_cancel && _cancel->load())
                        throw Stopped{false};
                }
            }

            auto colour_limit() const -> int { return std::min(_r, _max_used + 1); }

            // Next vertex and its colour range, or -1 when all are coloured.
            auto choose() const -> std::pair<int, int>
            {
                int limit = colour_limit();
                if (_problem.sorted_colours) {
                    for (int v = 0; v < _problem.vertices; ++v)
                        if (_colour[v] == 0)
                            return {v, v == 0 ? 1 : _colour[v - 1]};
                    return {-1, 0};
                }
                int best = -1, best_count = _r + 1;
                for (int v = 0; v < _problem.vertices; ++v) {
                    if (_colour[v] != 0 || _memberships[v].empty())
                        continue;
                    int count = 0;
                    for (int c = 1; c <= limit; ++c)
                        count += ! forbidden(v, c);
                    if (count < best_count) {
                        best = v;
                        best_count = count;
                        if (count <= 1)
                            break;
                    }
                }
                return {best, 1};
            }

            // Depth-first search with an explicit stack; at frontier_depth the
            // current assignment is handed to on_frontier instead of being explored.
            auto dfs(int frontier_depth, const std::function<void()> & on_frontier) -> bool
            {
                struct Frame
                {
                    int v;
                    int next;
                    int limit;
                    std::size_t mark;
                    bool assigned;
                };
                vector<Frame> frames;
                bool enter = true;
                while (true) {
                    if (enter) {
                        enter = false;
                        tick();
                        auto [v, low] = choose();
                        if (static_cast<int>(frames.size()) == frontier_depth || (v < 0 && frontier_depth >= 0))
                            on_frontier();
                        else if (v < 0)
                            return true;
                        else
                            frames.push_back(Frame{v, low, colour_limit(), 0, false});
                    }
                    if (frames.empty())
                        return false;
                    auto & f = frames.back();
                    if (f.assigned) {
                        undo(f.mark);
                        f.assigned = false;
                    }
                    while (f.next <= f.limit && forbidden(f.v, f.next))
                        ++f.next;
                    if (f.next > f.limit) {
                        frames.pop_back();
                        continue;
                    }
                    int c = f.next++;
                    f.mark = _trail.size();
                    f.assigned = true;
                    enter = assign(f.v, c);
                }
            }

            auto replay(const vector<std::pair<int, int>> & prefix) -> bool
            {
                for (auto [v, c] : prefix)
                    if (! assign(v, c))
                        return false;
                return true;
            }

            // Vertices outside every candidate are left to colour 1.
            auto colouring() const -> vector<int>
            {
                auto result = _colour;
                for (auto & c : result)
                    if (c == 0)
                        c = 1;
                return result;
            }
        };

        constexpr std::size_t target_subproblems = 64;
        constexpr int max_cut_depth = 32;
    }

    auto is_counterexample(const ColourProblem & problem, const vector<int> & colouring) -> bool
    {
        if (static_cast<int>(colouring.size()) != problem.vertices)
            return false;
        for (auto c : colouring)
            if (c < 1 || c > problem.colours)
                return false;
        for (const auto & candidate : problem.candidates) {
            bool good = true;
            for (const auto & members : candidate)
                for (auto v : members)
                    good = good && colouring[v] == colouring[members.front()];
            if (good)
                return false;
        }
        return true;
    }

    auto find_counterexample(const ColourProblem & problem, const Budget & budget, int workers) -> SolverResult
    {
        if (problem.colours < 1)
            throw InvalidArgument{"a colour problem needs at least one colour"};
        auto cap = budget.nodes.value_or(std::numeric_limits<std::uint64_t>::max());
        optional<Clock::time_point> deadline;
        if (budget.seconds)
            deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*budget.seconds));

        SolverResult result;
        auto stopped = [&](const Stopped & s) {
            return BudgetExceeded{s.timed_out ? "search exceeded its time budget" : "search exceeded its node budget"};
        };

        {
            Search probe{problem, cap, deadline};
            if (probe.trivially_holds())
                return result;
        }

        // Cut the tree at the shallowest depth giving enough subproblems.
        vector<vector<std::pair<int, int>>> frontier;
        std::uint64_t prefix_nodes = 0;
        try {
            for (int depth = 0; depth <= std::min(problem.vertices, max_cut_depth); ++depth) {
                Search cutter{problem, cap, deadline};
                frontier.clear();
                cutter.dfs(depth, [&] { frontier.push_back(cutter.stack); });
                prefix_nodes = cutter.nodes;
                if (frontier.size() >= target_subproblems || frontier.empty())
                    break;
                bool complete = true;
                for (const auto & f : frontier)
                    complete = complete && static_cast<int>(f.size()) < depth;
                if (complete)
                    break;
            }
        }
        catch (const Stopped & s) {
            throw stopped(s);
        }

        result.subproblems = static_cast<int>(frontier.size());
        vector<std::uint64_t> nodes(frontier.size(), 0);
        vector<optional<vector<int>>> found(frontier.size());
        vector<char> exceeded(frontier.size(), 0);
        std::atomic<bool> timed_out{false};
        std::atomic<std::size_t> best{frontier.size()};
        vector<std::unique_ptr<std::atomic<bool>>> cancel;
        for (std::size_t i = 0; i < frontier.size(); ++i)
            cancel.push_back(std::make_unique<std::atomic<bool>>(false));

        parallel_first(frontier.size(), workers, [&](std::size_t i) {
            if (i > best.load())
                return false;
            Search search{problem, cap, deadline};
            search.set_cancel(cancel[i].get());
            try {
                bool ok = search.replay(frontier[i]) && search.dfs(-1, [] {});
                nodes[i] = search.nodes;
                if (ok) {
                    found[i] = search.colouring();
                    for (std::size_t j = i + 1; j < frontier.size(); ++j)
                        cancel[j]->store(true);
                    auto seen = best.load();
                    while (i < seen && ! best.compare_exchange_weak(seen, i))
                        ;
                }
            }
            catch (const Stopped & s) {
                nodes[i] = search.nodes;
                if (s.timed_out)
                    timed_out.store(true);
                exceeded[i] = ! cancel[i]->load() || s.timed_out;
            }
            return false;
        });

        if (timed_out.load())
            throw BudgetExceeded{"search exceeded its time budget"};
        std::uint64_t total = prefix_nodes;
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            if (exceeded[i])
                throw BudgetExceeded{"search exceeded its node budget"};
            total += nodes[i];
            if (total > cap)
                throw BudgetExceeded{"search exceeded its node budget"};
            if (found[i]) {
                result.counterexample = found[i];
                break;
            }
        }
        result.nodes = total;
        return result;
    }
}
