/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <gowers/search.hh>
#include <gowers/types.hh>

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

using std::map;
using std::optional;
using std::string;
using std::vector;

namespace gowers
{
    using std::to_string;

    namespace
    {
        using Subset = vector<int>;
        using SubsetTuple = vector<Subset>;
        using SubsetSequence = vector<SubsetTuple>;

        // k-subsets of the given ground list, lexicographic.
        auto combinations(const vector<int> & ground, int k) -> vector<Subset>
        {
            vector<Subset> result;
            int n = static_cast<int>(ground.size());
            if (k < 0 || k > n)
                return result;
            vector<int> idx(k);
            for (int i = 0; i < k; ++i)
                idx[i] = i;
            while (true) {
                Subset s;
                for (auto i : idx)
                    s.push_back(ground[i]);
                result.push_back(std::move(s));
                int i = k - 1;
                while (i >= 0 && idx[i] == n - k + i)
                    --i;
                if (i < 0)
                    return result;
                ++idx[i];
                for (int j = i + 1; j < k; ++j)
                    idx[j] = idx[j - 1] + 1;
            }
        }

        auto range(int n) -> vector<int>
        {
            vector<int> result(n);
            for (int i = 0; i < n; ++i)
                result[i] = i + 1;
            return result;
        }

        // Subsets of size at most k, by size then lexicographically.
        auto small_subsets(const vector<int> & ground, int k) -> vector<Subset>
        {
            vector<Subset> result;
            for (int j = 0; j <= k; ++j)
                for (auto & s : combinations(ground, j))
                    result.push_back(std::move(s));
            return result;
        }

        auto support_bounds(const SubsetTuple & t) -> std::pair<int, int>
        {
            int lo = -1, hi = -1;
            for (int i = 0; i < static_cast<int>(t.size()); ++i)
                if (! t[i].empty()) {
                    if (lo < 0)
                        lo = i;
                    hi = i;
                }
            return {lo, hi};
        }

        // d = 1: every tuple, the all-empty one included. d > 1: block sequences of
        // tuples with nonempty supports.
        auto subset_sequences(const vector<vector<Subset>> & choices, int d) -> vector<SubsetSequence>
        {
            vector<SubsetTuple> tuples;
            int m = static_cast<int>(choices.size());
            SubsetTuple current(m);
            std::function<void(int)> build = [&](int i) {
                if (i == m) {
                    tuples.push_back(current);
                    return;
                }
                for (const auto & s : choices[i]) {
                    current[i] = s;
                    build(i + 1);
                }
            };
            build(0);

            vector<SubsetSequence> result;
            if (d == 1) {
                for (auto & t : tuples)
                    result.push_back(SubsetSequence{std::move(t)});
                return result;
            }
            vector<SubsetTuple> nonempty;
            for (auto & t : tuples)
                if (support_bounds(t).first >= 0)
                    nonempty.push_back(std::move(t));
            SubsetSequence prefix;
            std::function<void(int)> extend = [&](int after) {
                if (static_cast<int>(prefix.size()) == d) {
                    result.push_back(prefix);
                    return;
                }
                for (const auto & t : nonempty) {
                    auto [lo, hi] = support_bounds(t);
                    if (lo <= after)
                        continue;
                    prefix.push_back(t);
                    extend(hi);
                    prefix.pop_back();
                }
            };
            extend(-1);
            return result;
        }

        auto sequence_key(const SubsetSequence & s) -> string
        {
            string result;
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (i != 0)
                    result += ';';
                result += subset_tuple_key(s[i]);
            }
            return result;
        }

        auto signature(const SubsetSequence & s) -> vector<int>
        {
            vector<int> result;
            for (const auto & t : s)
                for (const auto & a : t)
                    result.push_back(static_cast<int>(a.size()));
            return result;
        }

        // Groups sequences by signature, in order of first appearance.
        auto group_by_signature(const vector<SubsetSequence> & seqs) -> vector<vector<std::size_t>>
        {
            map<vector<int>, std::size_t> index;
            vector<vector<std::size_t>> groups;
            for (std::size_t i = 0; i < seqs.size(); ++i) {
                auto [it, inserted] = index.emplace(signature(seqs[i]), groups.size());
                if (inserted)
                    groups.emplace_back();
                groups[it->second].push_back(i);
            }
            return groups;
        }

        auto candidate_products(const vector<int> & ls, int n) -> vector<SubsetTuple>
        {
            vector<SubsetTuple> result;
            SubsetTuple current(ls.size());
            auto ground = range(n);
            std::function<void(std::size_t)> build = [&](std::size_t i) {
                if (i == ls.size()) {
                    result.push_back(current);
                    return;
                }
                for (auto & s : combinations(ground, ls[i])) {
                    current[i] = s;
                    build(i + 1);
                }
            };
            build(0);
            return result;
        }

        auto choices_within(const SubsetTuple & bs, const vector<int> & ks) -> vector<vector<Subset>>
        {
            vector<vector<Subset>> result;
            for (std::size_t i = 0; i < ks.size(); ++i)
                result.push_back(small_subsets(bs[i], ks[i]));
            return result;
        }

        auto check_size_insensitive_params(const vector<int> & ks, const vector<int> & ls, int d) -> void
        {
            if (ks.empty() || ks.size() != ls.size())
                throw InvalidArgument{"size-insensitivity needs matching nonempty k and l lists"};
            for (std::size_t i = 0; i < ks.size(); ++i)
                if (ks[i] < 0 || ks[i] > ls[i])
                    throw InvalidArgument{"size-insensitivity needs 0 <= k_i <= l_i"};
            if (d < 1 || d > static_cast<int>(ks.size()))
                throw InvalidArgument{"size-insensitivity needs 1 <= d <= m"};
        }

        // FIN_1 element that is the union of the chosen entries of b.
        auto union_of(const BlockSequence & b, unsigned mask) -> FinElement
        {
            vector<Value> values(b.width(), 0);
            for (int s = 0; s < b.length(); ++s)
                if (mask & (1u << s))
                    for (int x = 0; x < b.width(); ++x)
                        values[x] = std::max<Value>(values[x], static_cast<Value>(b[s][x]));
            return FinElement{1, std::move(values)};
        }

        auto mt_unions(const BlockSequence & b) -> vector<FinElement>
        {
            vector<FinElement> result;
            for (unsigned mask = 1; mask < (1u << b.length()); ++mask)
                result.push_back(union_of(b, mask));
            std::sort(result.begin(), result.end());
            return result;
        }

        // sum_j v(j) chi(a_j) for every entry of a coefficient tuple.
        auto spread(const BlockSequence & coefficients, const BlockSequence & a) -> BlockSequence
        {
            vector<FinElement> entries;
            for (const auto & v : coefficients) {
                vector<Value> values(a.width(), 0);
                for (int j = 0; j < v.width(); ++j)
                    if (v[j] != 0)
                        for (int x = 0; x < a.width(); ++x)
                            if (a[j][x] != 0)
                                values[x] = static_cast<Value>(v[j]);
                entries.emplace_back(v.level(), std::move(values));
            }
            return BlockSequence{std::move(entries)};
        }

        struct TypeGroups
        {
            vector<BlockSequence> coefficients;
            vector<vector<std::size_t>> groups;
        };

        auto type_groups(int k, int m, int d) -> TypeGroups
        {
            TypeGroups result;
            result.coefficients = enumerate_block_sequences(k, m, d);
            map<vector<TypeSeq>, std::size_t> index;
            for (std::size_t i = 0; i < result.coefficients.size(); ++i) {
                auto [it, inserted] = index.emplace(types_only(type_of(result.coefficients[i])), result.groups.size());
                if (inserted)
                    result.groups.emplace_back();
                result.groups[it->second].push_back(i);
            }
            return result;
        }

        class KeyIndex
        {
        private:
            std::unordered_map<string, int> _ids;

        public:
            auto add(const string & key, Instance & instance) -> void
            {
                _ids.emplace(key, static_cast<int>(instance.vertex_keys.size()));
                instance.vertex_keys.push_back(key);
            }

            auto operator[](const string & key) const -> int
            {
                auto it = _ids.find(key);
                if (it == _ids.end())
                    throw Error{"internal: object '" + key + "' is not a vertex"};
                return it->second;
            }
        };

        auto finish(Instance & instance, int r) -> void
        {
            instance.problem.vertices = static_cast<int>(instance.vertex_keys.size());
            instance.problem.colours = r;
        }

        auto check_colours(int r) -> void
        {
            if (r < 1)
                throw InvalidArgument{"need at least one colour"};
        }

        auto min_search(int lower_bound, const std::function<Instance(int)> & make, const SearchOptions & options) -> MinResult
        {
            using Clock = std::chrono::steady_clock;
            optional<Clock::time_point> deadline;
            if (options.budget.seconds)
                deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*options.budget.seconds));

            optional<Counterexample> last;
            for (int n = std::max(1, lower_bound - 1); n <= options.max_n; ++n) {
                auto step = options;
                if (deadline)
                    step.budget.seconds = std::max(0.0, std::chrono::duration<double>(*deadline - Clock::now()).count());
                auto verdict = solve_instance(make(n), n, step);
                if (verdict.holds) {
                    MinResult result;
                    result.value = n;
                    if (last && last->n == n - 1)
                        result.counterexample = std::move(last);
                    result.exhaustive = verdict.log;
                    return result;
                }
                last = std::move(verdict.counterexample);
            }
            throw BudgetExceeded{"no answer up to n = " + to_string(options.max_n)};
        }
    }

    auto subset_key(const vector<int> & s) -> string
    {
        string result = "{";
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i != 0)
                result += ',';
            result += to_string(s[i]);
        }
        return result + "}";
    }

    auto subset_tuple_key(const vector<vector<int>> & t) -> string
    {
        string result = "(";
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i != 0)
                result += ',';
            result += subset_key(t[i]);
        }
        return result + ")";
    }

    auto gowers_instance(int k, int l, int m, int d, int n, int r) -> Instance
    {
        if (k < 1 || k > l || d < 1 || d > m || n < 1)
            throw InvalidArgument{"gowers search needs 1 <= k <= l, 1 <= d <= m, n >= 1"};
        check_colours(r);
        Instance instance;
        KeyIndex ids;
        for (const auto & v : enumerate_block_sequences(k, n, d))
            ids.add(to_string(v), instance);
        std::set<vector<int>> seen;
        for (const auto & b : enumerate_block_sequences(l, n, m)) {
            vector<int> members;
            for (const auto & t : block_tuples(combined_span_elements(b, k), d))
                members.push_back(ids[to_string(t)]);
            std::sort(members.begin(), members.end());
            members.erase(std::unique(members.begin(), members.end()), members.end());
            if (! seen.insert(members).second)
                continue;
            instance.problem.candidates.push_back({std::move(members)});
            instance.candidate_keys.push_back(to_string(b));
        }
        finish(instance, r);
        return instance;
    }

    auto mt_instance(int d, int m, int n, int r) -> Instance
    {
        if (d < 1 || d > m || n < 1 || m > 30)
            throw InvalidArgument{"Milliken-Taylor search needs 1 <= d <= m and n >= 1"};
        check_colours(r);
        Instance instance;
        KeyIndex ids;
        for (const auto & v : enumerate_block_sequences(1, n, d))
            ids.add(to_string(v), instance);
        for (const auto & b : enumerate_block_sequences(1, n, m)) {
            vector<int> members;
            for (const auto & t : block_tuples(mt_unions(b), d))
                members.push_back(ids[to_string(t)]);
            std::sort(members.begin(), members.end());
            instance.problem.candidates.push_back({std::move(members)});
            instance.candidate_keys.push_back(to_string(b));
        }
        finish(instance, r);
        return instance;
    }

    auto ramsey_instance(int k, int l, int n, int r) -> Instance
    {
        if (k < 1 || k > l || n < 1)
            throw InvalidArgument{"Ramsey search needs 1 <= k <= l and n >= 1"};
        check_colours(r);
        Instance instance;
        KeyIndex ids;
        auto ground = range(n);
        for (const auto & s : combinations(ground, k))
            ids.add(subset_key(s), instance);
        for (const auto & x : combinations(ground, l)) {
            vector<int> members;
            for (const auto & s : combinations(x, k))
                members.push_back(ids[subset_key(s)]);
            instance.problem.candidates.push_back({std::move(members)});
            instance.candidate_keys.push_back(subset_key(x));
        }
        instance.problem.sorted_colours = k == 1;
        finish(instance, r);
        return instance;
    }

    auto type_hom_instance(int k, int m, int d, int n, int r) -> Instance
    {
        if (k < 1 || d < 1 || d > m || n < 1)
            throw InvalidArgument{"type-homogeneity search needs k >= 1 and 1 <= d <= m"};
        check_colours(r);
        Instance instance;
        KeyIndex ids;
        for (const auto & v : enumerate_block_sequences(k, n, d))
            ids.add(to_string(v), instance);
        auto groups = type_groups(k, m, d);
        for (const auto & a : enumerate_block_sequences(1, n, m)) {
            vector<vector<int>> classes;
            for (const auto & g : groups.groups) {
                vector<int> members;
                for (auto i : g)
                    members.push_back(ids[to_string(spread(groups.coefficients[i], a))]);
                classes.push_back(std::move(members));
            }
            instance.problem.candidates.push_back(std::move(classes));
            instance.candidate_keys.push_back(to_string(a));
        }
        finish(instance, r);
        return instance;
    }

    auto size_insensitive_instance(const vector<int> & ks, const vector<int> & ls, int d, int n, int r) -> Instance
    {
        check_size_insensitive_params(ks, ls, d);
        check_colours(r);
        Instance instance;
        KeyIndex ids;
        auto ground = range(n);
        vector<vector<Subset>> all;
        for (auto k : ks)
            all.push_back(small_subsets(ground, k));
        for (const auto & s : subset_sequences(all, d))
            ids.add(sequence_key(s), instance);
        for (const auto & bs : candidate_products(ls, n)) {
            auto seqs = subset_sequences(choices_within(bs, ks), d);
            vector<vector<int>> classes;
            for (const auto & g : group_by_signature(seqs)) {
                vector<int> members;
                for (auto i : g)
                    members.push_back(ids[sequence_key(seqs[i])]);
                classes.push_back(std::move(members));
            }
            instance.problem.candidates.push_back(std::move(classes));
            instance.candidate_keys.push_back(subset_tuple_key(bs));
        }
        finish(instance, r);
        return instance;
    }

    auto candidate_vertices(const Instance & instance, std::size_t candidate) -> vector<int>
    {
        vector<int> result;
        for (const auto & cls : instance.problem.candidates.at(candidate))
            result.insert(result.end(), cls.begin(), cls.end());
        return result;
    }

    auto solve_instance(const Instance & instance, int n, const SearchOptions & options) -> Verdict
    {
        auto solved = find_counterexample(instance.problem, options.budget, options.workers);
        Verdict verdict;
        verdict.holds = ! solved.counterexample;
        verdict.log = ExhaustiveLog{n, solved.nodes, instance.problem.vertices,
            static_cast<int>(instance.problem.candidates.size()), solved.subproblems};
        if (solved.counterexample)
            verdict.counterexample = Counterexample{n, instance.vertex_keys, *solved.counterexample};
        return verdict;
    }

    auto min_gowers(int k, int l, int m, int d, int r, const SearchOptions & options) -> MinResult
    {
        return min_search(m, [&](int n) { return gowers_instance(k, l, m, d, n, r); }, options);
    }

    auto min_milliken_taylor(int d, int m, int r, const SearchOptions & options) -> MinResult
    {
        return min_search(m, [&](int n) { return mt_instance(d, m, n, r); }, options);
    }

    auto verify_mt(int d, int m, int r, int n, const SearchOptions & options) -> Verdict
    {
        return solve_instance(mt_instance(d, m, n, r), n, options);
    }

    auto min_classical_ramsey(int k, int l, int r, const SearchOptions & options) -> MinResult
    {
        return min_search(l, [&](int n) { return ramsey_instance(k, l, n, r); }, options);
    }

    auto min_type_homogeneous(int k, int m, int d, int r, const SearchOptions & options) -> MinResult
    {
        return min_search(m, [&](int n) { return type_hom_instance(k, m, d, n, r); }, options);
    }

    auto min_size_insensitive(const vector<int> & ks, const vector<int> & ls, int d, int r, const SearchOptions & options) -> MinResult
    {
        check_size_insensitive_params(ks, ls, d);
        int lower = std::max(1, *std::max_element(ls.begin(), ls.end()));
        return min_search(lower, [&](int n) { return size_insensitive_instance(ks, ls, d, n, r); }, options);
    }

    auto find_gowers_witness(const Colouring & c, int k, int l, int m, int d, int n, int workers) -> optional<BlockSequence>
    {
        if (k < 1 || k > l || d < 1 || d > m)
            throw InvalidArgument{"gowers witness needs 1 <= k <= l and 1 <= d <= m"};
        auto candidates = enumerate_block_sequences(l, n, m);
        auto colour = c.objects();
        auto first = parallel_first(candidates.size(), workers, [&](std::size_t i) {
            return span_monochromatic(colour, candidates[i], k, d).has_value();
        });
        if (! first)
            return std::nullopt;
        return candidates[*first];
    }

    auto find_mt_witness(const Colouring & c, int d, int m, int n, int workers) -> optional<BlockSequence>
    {
        if (d < 1 || d > m)
            throw InvalidArgument{"Milliken-Taylor witness needs 1 <= d <= m"};
        auto candidates = enumerate_block_sequences(1, n, m);
        auto colour = c.objects();
        auto first = parallel_first(candidates.size(), workers, [&](std::size_t i) {
            return monochromatic_colour(colour, block_tuples(mt_unions(candidates[i]), d)).has_value();
        });
        if (! first)
            return std::nullopt;
        return candidates[*first];
    }

    auto find_type_homogeneous(const Colouring & c, int k, int m, int d, int n, int workers) -> optional<BlockSequence>
    {
        if (k < 1 || d < 1 || d > m)
            throw InvalidArgument{"type-homogeneity needs k >= 1 and 1 <= d <= m"};
        auto groups = type_groups(k, m, d);
        auto candidates = enumerate_block_sequences(1, n, m);
        auto first = parallel_first(candidates.size(), workers, [&](std::size_t i) {
            for (const auto & g : groups.groups) {
                int colour = 0;
                for (auto j : g) {
                    int here = c(spread(groups.coefficients[j], candidates[i]));
                    if (colour != 0 && here != colour)
                        return false;
                    colour = here;
                }
            }
            return true;
        });
        if (! first)
            return std::nullopt;
        return candidates[*first];
    }

    auto find_size_insensitive(const Colouring & c, const vector<int> & ks, const vector<int> & ls, int d, int n, int workers)
        -> optional<vector<vector<int>>>
    {
        check_size_insensitive_params(ks, ls, d);
        auto candidates = candidate_products(ls, n);
        auto first = parallel_first(candidates.size(), workers, [&](std::size_t i) {
            auto seqs = subset_sequences(choices_within(candidates[i], ks), d);
            for (const auto & g : group_by_signature(seqs)) {
                int colour = 0;
                for (auto j : g) {
                    int here = c(sequence_key(seqs[j]));
                    if (colour != 0 && here != colour)
                        return false;
                    colour = here;
                }
            }
            return true;
        });
        if (! first)
            return std::nullopt;
        return candidates[*first];
    }

    auto probe_neighbour_span(const Colouring & c, const vector<int> & ls, int m, int n, int workers) -> optional<BlockSequence>
    {
        auto selector = SpanSelector::neighbour(ls);
        int k = selector.level();
        if (k < 1 || m < 1)
            throw InvalidArgument{"neighbour probe needs k, m >= 1"};
        auto candidates = enumerate_block_sequences(k, n, m);
        auto colour = c.objects();
        auto first = parallel_first(candidates.size(), workers, [&](std::size_t i) {
            return span_monochromatic(colour, candidates[i], selector).has_value();
        });
        if (! first)
            return std::nullopt;
        return candidates[*first];
    }
}
