/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <gowers/fans.hh>

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>

using std::optional;
using std::string;
using std::string_view;
using std::vector;

namespace gowers
{
    using std::to_string;

    OrderedFan::OrderedFan(int height, int width) :
        _height(height),
        _width(width)
    {
        if (height < 0 || width < 1)
            throw InvalidArgument{"a fan needs height >= 0 and width >= 1"};
        if (height == 0 && width != 1)
            throw InvalidArgument{"a fan of height 0 is a single vertex and has width 1"};
    }

    auto OrderedFan::vertex(int branch, int level) const -> int
    {
        if (level == 0)
            return 0;
        if (branch < 1 || branch > _width || level < 0 || level > _height)
            throw InvalidArgument{"no vertex at branch " + to_string(branch) + " level " + to_string(level) + " in " + gowers::to_string(*this)};
        return 1 + (branch - 1) * _height + (level - 1);
    }

    auto OrderedFan::related(int s, int t) const noexcept -> bool
    {
        if (s == t)
            return true;
        if (t == 0)
            return false;
        if (level_of(t) == 1)
            return s == 0;
        return s == t - 1;
    }

    auto OrderedFan::ordered(int s, int t) const noexcept -> bool
    {
        return s == 0 || t == 0 || branch_of(s) <= branch_of(t);
    }

    auto to_string(const OrderedFan & f) -> string
    {
        return to_string(f.height()) + ":" + to_string(f.width());
    }

    namespace
    {
        auto read_int(string_view & text, string_view what) -> int
        {
            int value = 0;
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc{})
                throw ParseError{"expected a number in " + string(what)};
            text.remove_prefix(ptr - text.data());
            return value;
        }

        auto expect(string_view & text, string_view token, string_view what) -> void
        {
            if (! text.starts_with(token))
                throw ParseError{"expected '" + string(token) + "' in " + string(what)};
            text.remove_prefix(token.size());
        }

        auto read_fan(string_view & text, string_view what) -> OrderedFan
        {
            int h = read_int(text, what);
            expect(text, ":", what);
            int w = read_int(text, what);
            try {
                return OrderedFan{h, w};
            }
            catch (const InvalidArgument & e) {
                throw ParseError{e.what()};
            }
        }

        auto join(const vector<int> & xs) -> string
        {
            string result;
            for (auto x : xs)
                result += (result.empty() ? "" : ",") + to_string(x);
            return result;
        }
    }

    auto parse_fan(string_view text) -> OrderedFan
    {
        auto rest = text;
        auto result = read_fan(rest, text);
        if (! rest.empty())
            throw ParseError{"trailing text in fan '" + string(text) + "'"};
        return result;
    }

    auto chain(int height) -> OrderedFan
    {
        return OrderedFan{height, 1};
    }

    FanMap::FanMap(OrderedFan source, OrderedFan target, vector<int> image) :
        _source(source),
        _target(target),
        _image(std::move(image))
    {
        if (static_cast<int>(_image.size()) != _source.vertices())
            throw InvalidArgument{"fan map needs one image per vertex of " + to_string(_source)};
        for (auto v : _image)
            if (v < 0 || v >= _target.vertices())
                throw InvalidArgument{"fan map leaves " + to_string(_target)};
    }

    namespace
    {
        auto reaches_top(const OrderedFan & a, const vector<int> & steps) -> bool
        {
            return static_cast<int>(steps.size()) == a.height();
        }

        auto group_of(const vector<int> & boundaries, int branch) -> int
        {
            auto it = std::upper_bound(boundaries.begin(), boundaries.end(), branch);
            return static_cast<int>(it - boundaries.begin());
        }

        auto build(const OrderedFan & b, const OrderedFan & a, const EpiShape & s) -> FanMap
        {
            vector<int> image(b.vertices(), 0);
            for (int j = 1; j <= b.width(); ++j) {
                int group = group_of(s.boundaries, j);
                int level = 0;
                auto next = s.steps[j - 1].begin();
                for (int i = 1; i <= b.height(); ++i) {
                    if (next != s.steps[j - 1].end() && *next == i) {
                        ++level;
                        ++next;
                    }
                    image[b.vertex(j, i)] = a.vertex(group, level);
                }
            }
            return FanMap{b, a, std::move(image)};
        }

        auto valid_shape(const OrderedFan & b, const OrderedFan & a, const EpiShape & s) -> bool
        {
            int n = b.width(), m = a.width();
            if (static_cast<int>(s.boundaries.size()) != m + 1 || s.boundaries.front() != 1 || s.boundaries.back() != n + 1)
                return false;
            for (int x = 0; x < m; ++x)
                if (s.boundaries[x] >= s.boundaries[x + 1])
                    return false;
            if (static_cast<int>(s.steps.size()) != n)
                return false;
            for (const auto & st : s.steps) {
                if (static_cast<int>(st.size()) > a.height())
                    return false;
                for (std::size_t x = 0; x < st.size(); ++x)
                    if (st[x] < 1 || st[x] > b.height() || (x > 0 && st[x] <= st[x - 1]))
                        return false;
            }
            for (int g = 0; g < m; ++g) {
                if (g > 0 && s.steps[s.boundaries[g] - 1].empty())
                    return false;
                bool top = false;
                for (int j = s.boundaries[g]; j < s.boundaries[g + 1]; ++j)
                    top = top || reaches_top(a, s.steps[j - 1]);
                if (! top)
                    return false;
            }
            return true;
        }
    }

    auto shape(const FanMap & f) -> optional<EpiShape>
    {
        const auto & b = f.source();
        const auto & a = f.target();
        if (f(0) != 0)
            return std::nullopt;

        EpiShape result;
        vector<int> groups;
        for (int j = 1; j <= b.width(); ++j) {
            int previous = 0, target = 0;
            vector<int> steps;
            for (int i = 1; i <= b.height(); ++i) {
                int v = f(b.vertex(j, i));
                int level = a.level_of(v);
                if (level > 0) {
                    if (target == 0)
                        target = a.branch_of(v);
                    else if (a.branch_of(v) != target)
                        return std::nullopt;
                }
                if (level == previous + 1)
                    steps.push_back(i);
                else if (level != previous)
                    return std::nullopt;
                previous = level;
            }
            groups.push_back(target != 0 ? target : groups.empty() ? 1 : groups.back());
            result.steps.push_back(std::move(steps));
        }

        result.boundaries.push_back(1);
        for (int s = 2; s <= a.width(); ++s) {
            auto it = std::find_if(groups.begin(), groups.end(), [&](int g) { return g >= s; });
            if (it == groups.end() || *it != s)
                return std::nullopt;
            result.boundaries.push_back(static_cast<int>(it - groups.begin()) + 1);
        }
        result.boundaries.push_back(b.width() + 1);
        if (! std::is_sorted(groups.begin(), groups.end()) || ! valid_shape(b, a, result))
            return std::nullopt;
        return result;
    }

    auto from_shape(const OrderedFan & source, const OrderedFan & target, const EpiShape & s) -> FanMap
    {
        if (! valid_shape(source, target, s))
            throw InvalidArgument{"shape does not describe an epimorphism " + to_string(source) + " -> " + to_string(target)};
        return build(source, target, s);
    }

    auto is_epimorphism(const FanMap & f) -> bool
    {
        const auto & b = f.source();
        const auto & a = f.target();
        int nb = b.vertices(), na = a.vertices();

        vector<char> hit(na, 0), hit_s(na * na, 0), hit_r(na, 0);
        for (int s = 0; s < nb; ++s) {
            hit[f(s)] = 1;
            for (int t = 0; t < nb; ++t) {
                if (b.related(s, t)) {
                    if (! a.related(f(s), f(t)))
                        return false;
                    if (s != t && f(s) != f(t))
                        hit_r[f(t)] = 1;
                }
                if (b.ordered(s, t)) {
                    if (! a.ordered(f(s), f(t)))
                        return false;
                    hit_s[f(s) * na + f(t)] = 1;
                }
            }
        }
        for (int x = 0; x < na; ++x) {
            if (! hit[x] || (x != 0 && ! hit_r[x]))
                return false;
            for (int y = 0; y < na; ++y)
                if (a.ordered(x, y) && ! hit_s[x * na + y])
                    return false;
        }
        return true;
    }

    auto identity(const OrderedFan & a) -> FanMap
    {
        vector<int> image(a.vertices());
        for (int v = 0; v < a.vertices(); ++v)
            image[v] = v;
        return FanMap{a, a, std::move(image)};
    }

    auto compose(const FanMap & h, const FanMap & g) -> FanMap
    {
        if (g.target() != h.source())
            throw InvalidArgument{"cannot compose: " + to_string(g.target()) + " is not " + to_string(h.source())};
        vector<int> image(g.source().vertices());
        for (int v = 0; v < g.source().vertices(); ++v)
            image[v] = h(g(v));
        return FanMap{g.source(), h.target(), std::move(image)};
    }

    namespace
    {
        // Subsets of {1..n} of size at most k, lexicographic.
        auto step_lists(int n, int k) -> vector<vector<int>>
        {
            vector<vector<int>> result;
            vector<int> current;
            std::function<void(int)> walk = [&](int from) {
                result.push_back(current);
                if (static_cast<int>(current.size()) == k)
                    return;
                for (int x = from; x <= n; ++x) {
                    current.push_back(x);
                    walk(x + 1);
                    current.pop_back();
                }
            };
            walk(1);
            return result;
        }

        // 1 = k_1 < ... < k_{m+1} = n + 1, lexicographic.
        auto boundary_tuples(int n, int m) -> vector<vector<int>>
        {
            vector<vector<int>> result;
            vector<int> current{1};
            std::function<void(int)> walk = [&](int from) {
                if (static_cast<int>(current.size()) == m) {
                    current.push_back(n + 1);
                    result.push_back(current);
                    current.pop_back();
                    return;
                }
                for (int x = from; x <= n; ++x) {
                    current.push_back(x);
                    walk(x + 1);
                    current.pop_back();
                }
            };
            walk(2);
            return result;
        }
    }

    auto enumerate_epimorphisms(const OrderedFan & b, const OrderedFan & a) -> vector<FanMap>
    {
        vector<FanMap> result;
        if (b.height() < a.height() || b.width() < a.width())
            return result;

        auto lists = step_lists(b.height(), a.height());
        int n = b.width();
        for (auto & boundaries : boundary_tuples(n, a.width())) {
            EpiShape s{boundaries, vector<vector<int>>(n)};
            vector<std::size_t> odometer(n, 0);
            while (true) {
                for (int j = 0; j < n; ++j)
                    s.steps[j] = lists[odometer[j]];
                if (valid_shape(b, a, s))
                    result.push_back(build(b, a, s));
                int j = n - 1;
                while (j >= 0 && odometer[j] + 1 == lists.size())
                    odometer[j--] = 0;
                if (j < 0)
                    break;
                ++odometer[j];
            }
        }
        return result;
    }

    auto naive_epimorphisms(const OrderedFan & b, const OrderedFan & a) -> vector<FanMap>
    {
        vector<FanMap> result;
        int nb = b.vertices(), na = a.vertices();
        vector<int> image(nb, 0);
        std::function<void(int)> walk = [&](int v) {
            if (v == nb) {
                FanMap f{b, a, image};
                if (is_epimorphism(f))
                    result.push_back(std::move(f));
                return;
            }
            for (int x = 0; x < na; ++x) {
                image[v] = x;
                bool ok = true;
                for (int u = 0; u <= v && ok; ++u)
                    ok = (! b.related(u, v) || a.related(image[u], x)) && (! b.related(v, u) || a.related(x, image[u]))
                        && (! b.ordered(u, v) || a.ordered(image[u], x)) && (! b.ordered(v, u) || a.ordered(x, image[u]));
                if (ok)
                    walk(v + 1);
            }
        };
        walk(0);
        return result;
    }

    auto to_string(const FanMap & f) -> string
    {
        string result = to_string(f.source()) + ">" + to_string(f.target()) + "|";
        if (auto s = shape(f)) {
            result += "k=" + join(s->boundaries) + "|";
            for (const auto & st : s->steps)
                result += "[" + join(st) + "]";
        }
        else
            result += "v=" + join(f.image());
        return result;
    }

    auto parse_fan_map(string_view text) -> FanMap
    {
        auto rest = text;
        auto source = read_fan(rest, text);
        expect(rest, ">", text);
        auto target = read_fan(rest, text);
        expect(rest, "|", text);

        auto read_list = [&](auto stop) {
            vector<int> xs;
            while (! rest.empty() && ! stop(rest.front())) {
                if (! xs.empty())
                    expect(rest, ",", text);
                xs.push_back(read_int(rest, text));
            }
            return xs;
        };

        try {
            if (rest.starts_with("v=")) {
                rest.remove_prefix(2);
                auto image = read_list([](char) { return false; });
                return FanMap{source, target, std::move(image)};
            }
            expect(rest, "k=", text);
            EpiShape s;
            s.boundaries = read_list([](char c) { return c == '|'; });
            expect(rest, "|", text);
            while (! rest.empty()) {
                expect(rest, "[", text);
                s.steps.push_back(read_list([](char c) { return c == ']'; }));
                expect(rest, "]", text);
            }
            return from_shape(source, target, s);
        }
        catch (const InvalidArgument & e) {
            throw ParseError{string(e.what()) + " in '" + string(text) + "'"};
        }
    }

    auto joint_projection(const OrderedFan & a, const OrderedFan & b) -> JointProjection
    {
        OrderedFan c{std::max(a.height(), b.height()), std::max(a.width(), b.width())};
        auto project = [&](const OrderedFan & x) {
            EpiShape s;
            for (int g = 1; g <= x.width(); ++g)
                s.boundaries.push_back(g);
            s.boundaries.push_back(c.width() + 1);
            vector<int> steps;
            for (int i = 1; i <= x.height(); ++i)
                steps.push_back(i);
            s.steps.assign(c.width(), steps);
            return from_shape(c, x, s);
        };
        return JointProjection{c, project(a), project(b)};
    }

    namespace
    {
        struct Side
        {
            int branch;
            const vector<int> * steps;
            int height;

            [[nodiscard]] auto level() const -> int { return static_cast<int>(steps->size()); }
            [[nodiscard]] auto start(int i) const -> int { return i == 0 ? 0 : (*steps)[i - 1]; }
            [[nodiscard]] auto end(int i) const -> int { return i < level() ? (*steps)[i] - 1 : height; }
        };

        // Positions along one branch of D, as positions along the paired branches.
        struct MergedBranch
        {
            int b, c;
            vector<int> on_b, on_c;
        };

        auto merge_pair(const Side & x, const Side & y) -> MergedBranch
        {
            MergedBranch d{x.branch, y.branch, {}, {}};
            int top = std::min(x.level(), y.level());
            for (int i = 0; i <= top; ++i) {
                int size = std::max(x.end(i) - x.start(i), y.end(i) - y.start(i)) + 1;
                for (int t = 0; t < size; ++t) {
                    d.on_b.push_back(std::min(x.start(i) + t, x.end(i)));
                    d.on_c.push_back(std::min(y.start(i) + t, y.end(i)));
                }
            }
            return d;
        }

        // Pairs two lists whose last members reach the top, covering each member fully.
        auto merge_run(const vector<Side> & xs, const vector<Side> & ys) -> vector<MergedBranch>
        {
            vector<MergedBranch> result;
            std::size_t i = 0, j = 0;
            while (true) {
                result.push_back(merge_pair(xs[i], ys[j]));
                bool last_x = i + 1 == xs.size(), last_y = j + 1 == ys.size();
                if (last_x && last_y)
                    return result;
                if (last_x)
                    ++j;
                else if (last_y)
                    ++i;
                else {
                    int lx = xs[i].level(), ly = ys[j].level();
                    if (lx <= ly)
                        ++i;
                    if (ly <= lx)
                        ++j;
                }
            }
        }

        auto merge_group(const vector<Side> & xs, const vector<Side> & ys, int top) -> vector<MergedBranch>
        {
            auto first_top = [&](const vector<Side> & zs) {
                return std::find_if(zs.begin(), zs.end(), [&](const Side & z) { return z.level() == top; }) - zs.begin();
            };
            auto tx = first_top(xs), ty = first_top(ys);

            auto result = merge_run(vector<Side>(xs.begin(), xs.begin() + tx + 1), vector<Side>(ys.begin(), ys.begin() + ty + 1));
            auto later = merge_run(vector<Side>(xs.rbegin(), xs.rend() - tx), vector<Side>(ys.rbegin(), ys.rend() - ty));
            std::reverse(later.begin(), later.end());
            // The two runs meet at the same pair of top branches.
            result.insert(result.end(), later.begin() + 1, later.end());
            return result;
        }
    }

    auto amalgamate(const FanMap & phi1, const FanMap & phi2) -> Amalgam
    {
        if (phi1.target() != phi2.target())
            throw InvalidArgument{"amalgamate needs maps onto the same fan"};
        if (! is_epimorphism(phi1) || ! is_epimorphism(phi2))
            throw InvalidArgument{"amalgamate needs epimorphisms"};

        const auto & a = phi1.target();
        const auto & b = phi1.source();
        const auto & c = phi2.source();
        if (a.height() == 0) {
            auto j = joint_projection(b, c);
            return Amalgam{j.c, j.to_a, j.to_b};
        }

        auto s1 = *shape(phi1), s2 = *shape(phi2);
        vector<MergedBranch> branches;
        for (int g = 1; g <= a.width(); ++g) {
            vector<Side> xs, ys;
            for (int j = s1.boundaries[g - 1]; j < s1.boundaries[g]; ++j)
                xs.push_back(Side{j, &s1.steps[j - 1], b.height()});
            for (int j = s2.boundaries[g - 1]; j < s2.boundaries[g]; ++j)
                ys.push_back(Side{j, &s2.steps[j - 1], c.height()});
            auto merged = merge_group(xs, ys, a.height());
            branches.insert(branches.end(), merged.begin(), merged.end());
        }

        int height = 0;
        for (const auto & m : branches)
            height = std::max(height, static_cast<int>(m.on_b.size()) - 1);
        OrderedFan d{height, static_cast<int>(branches.size())};

        vector<int> to_b(d.vertices(), 0), to_c(d.vertices(), 0);
        for (int q = 1; q <= d.width(); ++q) {
            const auto & m = branches[q - 1];
            int last = static_cast<int>(m.on_b.size()) - 1;
            for (int p = 1; p <= height; ++p) {
                int at = std::min(p, last);
                to_b[d.vertex(q, p)] = b.vertex(m.b, m.on_b[at]);
                to_c[d.vertex(q, p)] = c.vertex(m.c, m.on_c[at]);
            }
        }

        Amalgam result{d, FanMap{d, b, std::move(to_b)}, FanMap{d, c, std::move(to_c)}};
        if (! is_epimorphism(result.to_b) || ! is_epimorphism(result.to_c) || compose(phi1, result.to_b) != compose(phi2, result.to_c))
            throw Error{"internal: amalgamation of " + to_string(phi1) + " and " + to_string(phi2) + " does not verify"};
        return result;
    }

    auto encode_epimorphism(const FanMap & f) -> EncodedEpi
    {
        auto s = shape(f);
        if (! s)
            throw InvalidArgument{"encode needs an epimorphism, got " + to_string(f)};
        const auto & u = f.source();
        const auto & a = f.target();
        if (a.height() == 0)
            throw InvalidArgument{"encode needs a target of positive height"};

        vector<FinElement> entries;
        vector<vector<vector<int>>> families;
        for (int i = 1; i <= a.width(); ++i) {
            vector<Value> values(u.width(), 0);
            vector<vector<int>> family(u.width());
            for (int j = s->boundaries[i - 1]; j < s->boundaries[i]; ++j) {
                values[j - 1] = static_cast<Value>(s->steps[j - 1].size());
                family[j - 1] = s->steps[j - 1];
            }
            entries.emplace_back(a.height(), std::move(values));
            families.push_back(std::move(family));
        }
        return EncodedEpi{BlockSequence{std::move(entries)}, std::move(families)};
    }

    auto to_string(const EncodedEpi & e) -> string
    {
        string result = to_string(e.fstar) + " F=";
        for (std::size_t i = 0; i < e.families.size(); ++i) {
            result += i == 0 ? "(" : ";(";
            for (const auto & set : e.families[i])
                result += "[" + join(set) + "]";
            result += ")";
        }
        return result;
    }

    auto ramsey_pair_instance(const OrderedFan & s, const OrderedFan & t, const OrderedFan & u, int r) -> RamseyPairInstance
    {
        if (t.height() < s.height() || t.width() < s.width())
            throw InvalidArgument{"Ramsey pair needs " + to_string(t) + " at least as high and wide as " + to_string(s)};
        if (r < 1)
            throw InvalidArgument{"Ramsey pair needs r >= 1"};

        RamseyPairInstance result;
        result.colourable = enumerate_epimorphisms(u, s);
        result.candidates = enumerate_epimorphisms(u, t);
        std::map<FanMap, int> index;
        for (std::size_t x = 0; x < result.colourable.size(); ++x)
            index.emplace(result.colourable[x], static_cast<int>(x));

        auto hs = enumerate_epimorphisms(t, s);
        result.problem.vertices = static_cast<int>(result.colourable.size());
        result.problem.colours = r;
        for (const auto & g : result.candidates) {
            vector<int> members;
            for (const auto & h : hs)
                members.push_back(index.at(compose(h, g)));
            std::sort(members.begin(), members.end());
            members.erase(std::unique(members.begin(), members.end()), members.end());
            result.problem.candidates.push_back({std::move(members)});
        }
        return result;
    }

    auto check_ramsey_pair(const OrderedFan & s, const OrderedFan & t, const OrderedFan & u, int r, const Budget & budget, int workers)
        -> RamseyPairResult
    {
        auto instance = ramsey_pair_instance(s, t, u, r);
        RamseyPairResult result;
        result.u = u;
        result.colourable = std::move(instance.colourable);
        if (instance.candidates.empty()) {
            result.counterexample = vector<int>(result.colourable.size(), 1);
            return result;
        }
        auto solved = find_counterexample(instance.problem, budget, workers);
        result.nodes = solved.nodes;
        result.counterexample = std::move(solved.counterexample);
        result.holds = ! result.counterexample;
        return result;
    }

    auto min_ramsey_witness(const OrderedFan & s, const OrderedFan & t, int r, int max_vertices, const Budget & budget, int workers) -> RamseyWitness
    {
        RamseyWitness result;
        for (int v = t.vertices(); v <= max_vertices; ++v) {
            vector<OrderedFan> candidates;
            if (v == 1)
                candidates.emplace_back(0, 1);
            else
                for (int w = t.width(); w < v; ++w)
                    if ((v - 1) % w == 0 && (v - 1) / w >= t.height() && (v - 1) / w >= 1)
                        candidates.emplace_back((v - 1) / w, w);

            for (const auto & u : candidates) {
                auto check = check_ramsey_pair(s, t, u, r, budget, workers);
                if (check.holds) {
                    result.witness = std::move(check);
                    return result;
                }
                result.rejected.push_back(std::move(check));
            }
        }
        throw BudgetExceeded{"no Ramsey witness for " + to_string(s) + ", " + to_string(t) + " with " + to_string(max_vertices) + " vertices or fewer"};
    }
}
