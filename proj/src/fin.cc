/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <gowers/fin.hh>

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <string>
#include <utility>

using std::map;
using std::optional;
using std::string;
using std::string_view;
using std::vector;

namespace gowers
{
    using std::to_string;

    namespace
    {
        auto parse_int(string_view text) -> int
        {
            int result = 0;
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), result);
            if (ec != std::errc{} || ptr != text.data() + text.size())
                throw ParseError{"expected an integer, got '" + string{text} + "'"};
            return result;
        }

        auto split(string_view text, char separator) -> vector<string_view>
        {
            vector<string_view> result;
            std::size_t start = 0;
            while (true) {
                auto pos = text.find(separator, start);
                if (pos == string_view::npos) {
                    result.push_back(text.substr(start));
                    return result;
                }
                result.push_back(text.substr(start, pos - start));
                start = pos + 1;
            }
        }

        // Pushing T_1 inward past T_j turns it into T_{down(j)}; up() is the right inverse.
        auto down(Value j) -> Value { return j <= 1 ? j : static_cast<Value>(j - 1); }
        auto up(Value j) -> Value { return j == 0 ? 0 : static_cast<Value>(j + 1); }

        auto apply_ops(vector<Value> & values, const vector<Value> & coords) -> void
        {
            for (auto c = coords.rbegin(); c != coords.rend(); ++c)
                if (*c != 0)
                    for (auto & v : values)
                        if (v >= *c)
                            --v;
        }
    }

    auto FinElement::refresh() -> void
    {
        _support_min = -1;
        _support_max = -1;
        _support_size = 0;
        _max_value = 0;
        for (int x = 0; x < width(); ++x) {
            if (_values[x] != 0) {
                if (_support_min < 0)
                    _support_min = x;
                _support_max = x;
                ++_support_size;
                _max_value = std::max<int>(_max_value, _values[x]);
            }
        }
    }

    FinElement::FinElement(int level, vector<Value> values) :
        _level(level),
        _values(std::move(values))
    {
        if (level < 0 || level > 255)
            throw InvalidArgument{"level out of range: " + to_string(level)};
        for (auto v : _values)
            if (v > level)
                throw InvalidArgument{"value " + to_string(v) + " out of range 0.." + to_string(level)};
        refresh();
    }

    auto FinElement::zero(int level, int width) -> FinElement
    {
        return FinElement{level, vector<Value>(width, 0)};
    }

    auto FinElement::support() const -> vector<int>
    {
        vector<int> result;
        for (int x = 0; x < width(); ++x)
            if (_values[x] != 0)
                result.push_back(x);
        return result;
    }

    auto FinElement::relevel(int level) const -> FinElement
    {
        if (level < _max_value)
            throw InvalidArgument{"cannot view " + gowers::to_string(*this) + " at level " + to_string(level)};
        auto result = *this;
        result._level = level;
        return result;
    }

    auto FinElement::rewidth(int width) const -> FinElement
    {
        if (width < _support_max + 1 || width < 1)
            throw InvalidArgument{"cannot narrow " + gowers::to_string(*this) + " to width " + to_string(width)};
        auto values = _values;
        values.resize(width, 0);
        return FinElement{_level, std::move(values)};
    }

    auto FinElement::hash() const noexcept -> std::size_t
    {
        std::size_t h = 1469598103934665603ull ^ static_cast<std::size_t>(_level);
        for (auto v : _values) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return h ^ (_values.size() << 48);
    }

    auto operator<=>(const FinElement & a, const FinElement & b) noexcept -> std::strong_ordering
    {
        if (auto c = a.width() <=> b.width(); c != 0)
            return c;
        if (auto c = std::lexicographical_compare_three_way(a._values.begin(), a._values.end(), b._values.begin(), b._values.end()); c != 0)
            return c;
        return a._level <=> b._level;
    }

    auto make_element(int k, int n, std::span<const int> values) -> FinElement
    {
        if (k < 1)
            throw InvalidArgument{"level must be at least 1"};
        if (n < 1)
            throw InvalidArgument{"width must be at least 1"};
        if (static_cast<int>(values.size()) != n)
            throw InvalidArgument{"expected " + to_string(n) + " values, got " + to_string(values.size())};
        vector<Value> packed;
        packed.reserve(n);
        for (auto v : values) {
            if (v < 0 || v > k)
                throw InvalidArgument{"value " + to_string(v) + " out of range 0.." + to_string(k)};
            packed.push_back(static_cast<Value>(v));
        }
        return FinElement{k, std::move(packed)};
    }

    auto to_string(const FinElement & e) -> string
    {
        string result = to_string(e.level()) + ":" + to_string(e.width()) + ":[";
        for (int x = 0; x < e.width(); ++x) {
            if (x != 0)
                result += ',';
            result += to_string(e[x]);
        }
        return result + "]";
    }

    auto parse_element(string_view text) -> FinElement
    {
        auto first = text.find(':');
        auto second = first == string_view::npos ? first : text.find(':', first + 1);
        if (second == string_view::npos || text.size() < second + 3 || text[second + 1] != '[' || text.back() != ']')
            throw ParseError{"malformed element '" + string{text} + "'"};
        int k = parse_int(text.substr(0, first));
        int n = parse_int(text.substr(first + 1, second - first - 1));
        auto body = text.substr(second + 2, text.size() - second - 3);
        vector<int> values;
        if (! body.empty())
            for (auto part : split(body, ','))
                values.push_back(parse_int(part));
        return make_element(k, n, values);
    }

    auto block_ordered(const FinElement & a, const FinElement & b) noexcept -> bool
    {
        return a.is_zero() || b.is_zero() || a.support_max() < b.support_min();
    }

    auto tetris(int i, const FinElement & p) -> FinElement
    {
        if (i < 0 || i > p.level())
            throw InvalidArgument{"tetris index " + to_string(i) + " out of range for level " + to_string(p.level())};
        if (i == 0)
            return p;
        auto values = p.values();
        for (auto & v : values)
            if (v >= i)
                --v;
        return FinElement{p.level() - 1, std::move(values)};
    }

    auto partial_add(const FinElement & p, const FinElement & q) -> FinElement
    {
        if (p.level() != q.level() || p.width() != q.width())
            throw InvalidArgument{"partial_add needs equal level and width: " + to_string(p) + " + " + to_string(q)};
        if (! block_ordered(p, q))
            throw InvalidArgument{"supports interleave: " + to_string(p) + " + " + to_string(q)};
        auto values = p.values();
        for (int x = 0; x < q.width(); ++x)
            values[x] = static_cast<Value>(values[x] + q[x]);
        return FinElement{p.level(), std::move(values)};
    }

    auto enumerate_elements(int k, int n, bool attain) -> vector<FinElement>
    {
        if (k < 1 || n < 1)
            throw InvalidArgument{"enumerate_elements needs k, n >= 1"};
        vector<FinElement> result;
        vector<Value> digits(n, 0);
        while (true) {
            FinElement e{k, digits};
            if (! attain || e.attains())
                result.push_back(std::move(e));
            int x = n - 1;
            while (x >= 0 && digits[x] == k)
                digits[x--] = 0;
            if (x < 0)
                break;
            ++digits[x];
        }
        return result;
    }

    BlockSequence::BlockSequence(vector<FinElement> entries) :
        _entries(std::move(entries))
    {
        if (_entries.empty())
            throw InvalidArgument{"block sequence must be nonempty"};
        for (std::size_t s = 0; s < _entries.size(); ++s) {
            const auto & e = _entries[s];
            if (e.level() != _entries.front().level() || e.width() != _entries.front().width())
                throw InvalidArgument{"block sequence entries differ in level or width"};
            if (! e.attains())
                throw InvalidArgument{"block sequence entry " + to_string(e) + " does not attain its level"};
            if (s > 0 && ! (_entries[s - 1].support_max() < e.support_min()))
                throw InvalidArgument{"block sequence entries not block-ordered at position " + to_string(s + 1)};
        }
    }

    auto operator<=>(const BlockSequence & a, const BlockSequence & b) noexcept -> std::strong_ordering
    {
        return std::lexicographical_compare_three_way(a._entries.begin(), a._entries.end(), b._entries.begin(), b._entries.end());
    }

    auto to_string(const BlockSequence & b) -> string
    {
        string result;
        for (int s = 0; s < b.length(); ++s) {
            if (s != 0)
                result += ';';
            result += to_string(b[s]);
        }
        return result;
    }

    auto parse_block_sequence(string_view text) -> BlockSequence
    {
        vector<FinElement> entries;
        for (auto part : split(text, ';'))
            entries.push_back(parse_element(part));
        return BlockSequence{std::move(entries)};
    }

    namespace
    {
        // Attaining elements grouped by support minimum; within a bucket, canonical order.
        auto bucket_by_support_min(int k, int n) -> vector<vector<FinElement>>
        {
            vector<vector<FinElement>> buckets(n);
            for (auto & e : enumerate_elements(k, n, true))
                buckets[e.support_min()].push_back(std::move(e));
            return buckets;
        }

        auto extend_block_sequences(
            const vector<vector<FinElement>> & buckets, int after, int remaining,
            vector<FinElement> & prefix, vector<BlockSequence> & out) -> void
        {
            if (remaining == 0) {
                out.emplace_back(prefix);
                return;
            }
            // A later support minimum means more leading zeros, so canonically smaller.
            int n = static_cast<int>(buckets.size());
            for (int start = n - 1; start > after; --start)
                for (const auto & e : buckets[start]) {
                    if (n - 1 - e.support_max() < remaining - 1)
                        continue;
                    prefix.push_back(e);
                    extend_block_sequences(buckets, e.support_max(), remaining - 1, prefix, out);
                    prefix.pop_back();
                }
        }
    }

    auto enumerate_block_sequences(int k, int n, int d) -> vector<BlockSequence>
    {
        if (d < 1)
            throw InvalidArgument{"block sequence length must be at least 1"};
        vector<BlockSequence> result;
        if (d > n)
            return result;
        auto buckets = bucket_by_support_min(k, n);
        vector<FinElement> prefix;
        extend_block_sequences(buckets, -1, d, prefix, result);
        return result;
    }

    auto tetris(int i, const BlockSequence & b) -> BlockSequence
    {
        vector<FinElement> entries;
        for (const auto & e : b)
            entries.push_back(tetris(i, e));
        return BlockSequence{std::move(entries)};
    }

    OpVector::OpVector(Kind kind, int lower, int upper, vector<Value> coords) :
        _kind(kind),
        _lower(lower),
        _upper(upper),
        _coords(std::move(coords))
    {
    }

    auto OpVector::full(vector<Value> coords) -> OpVector
    {
        for (std::size_t j = 0; j < coords.size(); ++j)
            if (coords[j] > j + 1)
                throw InvalidArgument{"P_k coordinate " + to_string(j + 1) + " must lie in 0.." + to_string(j + 1)};
        int k = static_cast<int>(coords.size());
        return OpVector{Kind::full, k, k, std::move(coords)};
    }

    auto OpVector::upper(int k, int l, vector<Value> coords) -> OpVector
    {
        if (l < k || k < 0)
            throw InvalidArgument{"upper vector needs 0 <= k <= l"};
        if (static_cast<int>(coords.size()) != l - k)
            throw InvalidArgument{"upper vector over P_{k+1}^l needs l - k coordinates"};
        for (std::size_t idx = 0; idx < coords.size(); ++idx) {
            int j = k + 1 + static_cast<int>(idx);
            if (coords[idx] < 1 || coords[idx] > j)
                throw InvalidArgument{"P_{k+1}^l coordinate " + to_string(j) + " must lie in 1.." + to_string(j)};
        }
        return OpVector{Kind::upper, k, l, std::move(coords)};
    }

    auto OpVector::zeros(int k) -> OpVector
    {
        return full(vector<Value>(k, 0));
    }

    auto OpVector::identity_upper(int k) -> OpVector
    {
        return upper(k, k, {});
    }

    auto OpVector::zero_count() const noexcept -> int
    {
        return static_cast<int>(std::count(_coords.begin(), _coords.end(), Value{0}));
    }

    auto OpVector::is_identity() const noexcept -> bool
    {
        return zero_count() == size();
    }

    auto OpVector::output_level() const noexcept -> int
    {
        return _kind == Kind::full ? zero_count() : _lower;
    }

    auto OpVector::normalized() const -> OpVector
    {
        if (_kind != Kind::full)
            throw InvalidArgument{"only full vectors are normalised"};
        vector<Value> coords(zero_count(), 0);
        for (auto c : _coords)
            if (c != 0)
                coords.push_back(c);
        return full(std::move(coords));
    }

    auto to_string(const OpVector & v) -> string
    {
        string result = v.kind() == OpVector::Kind::full ? "(" : "u(";
        for (int j = 0; j < v.size(); ++j) {
            if (j != 0)
                result += ',';
            result += to_string(v.coords()[j]);
        }
        return result + ")";
    }

    auto all_full_vectors(int k) -> vector<OpVector>
    {
        vector<OpVector> result;
        vector<Value> coords(k, 0);
        while (true) {
            result.push_back(OpVector::full(coords));
            int j = k - 1;
            while (j >= 0 && coords[j] == j + 1)
                coords[j--] = 0;
            if (j < 0)
                return result;
            ++coords[j];
        }
    }

    auto all_upper_vectors(int k, int l) -> vector<OpVector>
    {
        vector<OpVector> result;
        vector<Value> coords(l - k, 1);
        while (true) {
            result.push_back(OpVector::upper(k, l, coords));
            int idx = l - k - 1;
            while (idx >= 0 && coords[idx] == k + 1 + idx) {
                coords[idx] = 1;
                --idx;
            }
            if (idx < 0)
                return result;
            ++coords[idx];
        }
    }

    auto tetris_compose(const OpVector & vec, const FinElement & p) -> FinElement
    {
        if (p.level() != vec.input_level())
            throw InvalidArgument{"level mismatch: " + to_string(vec) + " expects level " + to_string(vec.input_level()) + ", got " + to_string(p)};
        auto values = p.values();
        apply_ops(values, vec.coords());
        return FinElement{vec.output_level(), std::move(values)};
    }

    auto vec_plus_one(const OpVector & vec) -> OpVector
    {
        if (vec.kind() != OpVector::Kind::full)
            throw InvalidArgument{"vec_plus_one needs a full vector"};
        vector<Value> coords{0};
        for (auto c : vec.coords())
            coords.push_back(up(c));
        return OpVector::full(std::move(coords));
    }

    SpanSelector::SpanSelector(int k, vector<OpVector> vectors) :
        _level(k),
        _vectors(std::move(vectors))
    {
        bool has_zero = false;
        for (const auto & v : _vectors) {
            if (v.kind() != OpVector::Kind::full || v.lower() != k)
                throw InvalidArgument{"selector vector " + to_string(v) + " is not in P_" + to_string(k)};
            has_zero = has_zero || v.is_identity();
        }
        if (! has_zero)
            throw InvalidArgument{"selector must contain the zero vector"};
    }

    auto SpanSelector::full_product(int k) -> SpanSelector
    {
        return SpanSelector{k, all_full_vectors(k)};
    }

    auto SpanSelector::gowers(int k) -> SpanSelector
    {
        vector<OpVector> vectors;
        for (auto & v : all_full_vectors(k))
            if (std::all_of(v.coords().begin(), v.coords().end(), [](Value c) { return c <= 1; }))
                vectors.push_back(std::move(v));
        return SpanSelector{k, std::move(vectors)};
    }

    auto SpanSelector::neighbour(const vector<int> & l) -> SpanSelector
    {
        int k = static_cast<int>(l.size());
        for (int j = 1; j <= k; ++j)
            if (l[j - 1] < 0 || l[j - 1] > j - 1)
                throw InvalidArgument{"neighbour index l_" + to_string(j) + " must lie in 0.." + to_string(j - 1)};
        vector<OpVector> vectors;
        for (auto & v : all_full_vectors(k)) {
            bool ok = true;
            for (int j = 1; j <= k && ok; ++j) {
                int c = v.coords()[j - 1];
                ok = c == 0 || c == l[j - 1] || c == l[j - 1] + 1;
            }
            if (ok)
                vectors.push_back(std::move(v));
        }
        return SpanSelector{k, std::move(vectors)};
    }

    TermRepr::TermRepr(BlockSequence base, int k, vector<optional<Term>> terms) :
        _base(std::move(base)),
        _level(k),
        _terms(std::move(terms))
    {
        int l = _base.level();
        if (k < 1 || k > l)
            throw InvalidArgument{"term representation needs 1 <= k <= base level"};
        if (static_cast<int>(_terms.size()) != _base.length())
            throw InvalidArgument{"one term slot per base entry required"};
        bool anchored = false;
        for (const auto & t : _terms) {
            if (! t)
                continue;
            if (t->top.kind() != OpVector::Kind::full || t->top.lower() != k)
                throw InvalidArgument{"top vector " + to_string(t->top) + " not in P_" + to_string(k)};
            if (t->upper.kind() != OpVector::Kind::upper || t->upper.lower() != k || t->upper.upper() != l)
                throw InvalidArgument{"upper vector " + to_string(t->upper) + " not in P_{k+1}^l"};
            anchored = anchored || t->top.is_identity();
        }
        if (! anchored)
            throw InvalidArgument{"some term must have an all-zero top vector"};
    }

    auto TermRepr::evaluate() const -> FinElement
    {
        vector<Value> sum(_base.width(), 0);
        for (int s = 0; s < _base.length(); ++s) {
            const auto & t = _terms[s];
            if (! t)
                continue;
            auto values = _base[s].values();
            apply_ops(values, t->upper.coords());
            apply_ops(values, t->top.coords());
            for (int x = 0; x < _base.width(); ++x)
                sum[x] = static_cast<Value>(sum[x] + values[x]);
        }
        return FinElement{_level, std::move(sum)};
    }

    auto to_string(const TermRepr & t) -> string
    {
        string result;
        for (int s = 0; s < t.base().length(); ++s) {
            const auto & term = t.terms()[s];
            if (! term)
                continue;
            if (! result.empty())
                result += " + ";
            result += "T" + to_string(term->top) + "T" + to_string(term->upper) + "(b" + to_string(s + 1) + ")";
        }
        return result;
    }

    namespace
    {
        struct Option
        {
            vector<Value> values;
            Term term;
            bool top;
        };

        // Distinct nonvanishing images of one entry, first representation kept.
        auto entry_options(const FinElement & b, const vector<OpVector> & tops, const vector<OpVector> & uppers) -> vector<Option>
        {
            vector<Option> result;
            std::set<vector<Value>> seen;
            for (const auto & i : uppers) {
                auto lifted = b.values();
                apply_ops(lifted, i.coords());
                for (const auto & t : tops) {
                    if (t.zero_count() == 0)
                        continue;
                    auto values = lifted;
                    apply_ops(values, t.coords());
                    if (seen.insert(values).second)
                        result.push_back(Option{std::move(values), Term{t, i}, t.is_identity()});
                }
            }
            return result;
        }

        template <typename Visit>
        auto for_each_sum(
            const vector<vector<Option>> & options, int s, bool anchored,
            vector<Value> & sum, vector<int> & choice, Visit & visit) -> void
        {
            if (s == static_cast<int>(options.size())) {
                if (anchored)
                    visit(sum, choice);
                return;
            }
            choice[s] = -1;
            for_each_sum(options, s + 1, anchored, sum, choice, visit);
            for (int o = 0; o < static_cast<int>(options[s].size()); ++o) {
                const auto & opt = options[s][o];
                for (std::size_t x = 0; x < sum.size(); ++x)
                    sum[x] = static_cast<Value>(sum[x] + opt.values[x]);
                choice[s] = o;
                for_each_sum(options, s + 1, anchored || opt.top, sum, choice, visit);
                for (std::size_t x = 0; x < sum.size(); ++x)
                    sum[x] = static_cast<Value>(sum[x] - opt.values[x]);
            }
            choice[s] = -1;
        }

        auto collect(const BlockSequence & b, int k, const vector<OpVector> & tops, const vector<OpVector> & uppers) -> SpanSet
        {
            vector<vector<Option>> options;
            for (const auto & e : b)
                options.push_back(entry_options(e, tops, uppers));

            map<vector<Value>, vector<int>> found;
            vector<Value> sum(b.width(), 0);
            vector<int> choice(b.length(), -1);
            auto visit = [&](const vector<Value> & values, const vector<int> & chosen) {
                found.emplace(values, chosen);
            };
            for_each_sum(options, 0, false, sum, choice, visit);

            SpanSet result;
            result.reserve(found.size());
            for (auto & [values, chosen] : found) {
                vector<optional<Term>> terms(b.length());
                for (int s = 0; s < b.length(); ++s)
                    if (chosen[s] >= 0)
                        terms[s] = options[s][chosen[s]].term;
                result.push_back(SpanEntry{FinElement{k, values}, TermRepr{b, k, std::move(terms)}});
            }
            return result;
        }
    }

    auto span(const BlockSequence & b, const SpanSelector & selector) -> SpanSet
    {
        if (selector.level() != b.level())
            throw InvalidArgument{"selector level " + to_string(selector.level()) + " does not match base level " + to_string(b.level())};
        return collect(b, b.level(), selector.vectors(), {OpVector::identity_upper(b.level())});
    }

    auto combined_span(const BlockSequence & b, int k) -> SpanSet
    {
        if (k < 1 || k > b.level())
            throw InvalidArgument{"combined span needs 1 <= k <= base level"};
        return collect(b, k, all_full_vectors(k), all_upper_vectors(k, b.level()));
    }

    auto combined_span_elements(const BlockSequence & b, int k) -> vector<FinElement>
    {
        if (k < 1 || k > b.level())
            throw InvalidArgument{"combined span needs 1 <= k <= base level"};
        auto tops = all_full_vectors(k);
        auto uppers = all_upper_vectors(k, b.level());
        vector<vector<Option>> options;
        for (const auto & e : b)
            options.push_back(entry_options(e, tops, uppers));

        std::set<vector<Value>> found;
        vector<Value> sum(b.width(), 0);
        vector<int> choice(b.length(), -1);
        auto visit = [&](const vector<Value> & values, const vector<int> &) { found.insert(values); };
        for_each_sum(options, 0, false, sum, choice, visit);

        vector<FinElement> result;
        result.reserve(found.size());
        for (const auto & values : found)
            result.emplace_back(k, values);
        return result;
    }

    namespace
    {
        template <typename Item, typename Element, typename Emit>
        auto extend_tuples(const vector<Item> & items, Element element_of, int after_max, int remaining, vector<int> & chosen, Emit & emit) -> void
        {
            if (remaining == 0) {
                emit(chosen);
                return;
            }
            for (int i = 0; i < static_cast<int>(items.size()); ++i) {
                const FinElement & e = element_of(items[i]);
                if (e.support_min() <= after_max)
                    continue;
                chosen.push_back(i);
                extend_tuples(items, element_of, e.support_max(), remaining - 1, chosen, emit);
                chosen.pop_back();
            }
        }
    }

    auto block_tuples(const vector<FinElement> & elements, int d) -> vector<BlockSequence>
    {
        vector<BlockSequence> result;
        vector<int> chosen;
        auto emit = [&](const vector<int> & picks) {
            vector<FinElement> entries;
            for (auto i : picks)
                entries.push_back(elements[i]);
            result.emplace_back(std::move(entries));
        };
        extend_tuples(elements, [](const FinElement & e) -> const FinElement & { return e; }, -1, d, chosen, emit);
        return result;
    }

    auto combined_span_d(const BlockSequence & b, int k, int d) -> vector<SpanTuple>
    {
        auto set = combined_span(b, k);
        vector<SpanTuple> result;
        vector<int> chosen;
        auto emit = [&](const vector<int> & picks) {
            vector<FinElement> entries;
            vector<TermRepr> provenance;
            for (auto i : picks) {
                entries.push_back(set[i].element);
                provenance.push_back(set[i].provenance);
            }
            result.push_back(SpanTuple{BlockSequence{std::move(entries)}, std::move(provenance)});
        };
        extend_tuples(set, [](const SpanEntry & e) -> const FinElement & { return e.element; }, -1, d, chosen, emit);
        return result;
    }

    auto monochromatic_colour(const ObjectColouring & colour, const vector<BlockSequence> & objects) -> optional<int>
    {
        optional<int> result;
        for (const auto & o : objects) {
            int c = colour(o);
            if (! result)
                result = c;
            else if (*result != c)
                return std::nullopt;
        }
        return result;
    }

    auto span_monochromatic(const ObjectColouring & colour, const BlockSequence & b, const SpanSelector & selector) -> optional<int>
    {
        vector<BlockSequence> objects;
        for (auto & entry : span(b, selector))
            objects.emplace_back(vector<FinElement>{std::move(entry.element)});
        return monochromatic_colour(colour, objects);
    }

    auto span_monochromatic(const ObjectColouring & colour, const BlockSequence & b, int k, int d) -> optional<int>
    {
        return monochromatic_colour(colour, block_tuples(combined_span_elements(b, k), d));
    }

    auto t1_image(const TermRepr & t) -> TermRepr
    {
        int k = t.level();
        int l = t.base().level();
        if (k < 2)
            throw InvalidArgument{"T_1 image of terms needs k >= 2"};
        auto base = tetris(1, t.base());
        vector<optional<Term>> terms(t.terms().size());
        for (std::size_t s = 0; s < terms.size(); ++s) {
            const auto & term = t.terms()[s];
            if (! term || term->top.zero_count() == 0)
                continue;
            auto normal = term->top.normalized();
            vector<Value> top;
            for (int j = 1; j < k; ++j)
                top.push_back(down(normal.coords()[j]));
            vector<Value> upper;
            for (auto c : term->upper.coords())
                upper.push_back(down(c));
            auto top_vec = OpVector::full(std::move(top));
            if (top_vec.zero_count() == 0)
                continue;
            terms[s] = Term{std::move(top_vec), OpVector::upper(k - 1, l - 1, std::move(upper))};
        }
        return TermRepr{std::move(base), k - 1, std::move(terms)};
    }

    auto t1_preimage(const TermRepr & t, const BlockSequence & original) -> TermRepr
    {
        if (tetris(1, original) != t.base())
            throw InvalidArgument{"term base is not T_1 of the given original"};
        int k = t.level() + 1;
        int l = original.level();
        vector<optional<Term>> terms(t.terms().size());
        for (std::size_t s = 0; s < terms.size(); ++s) {
            const auto & term = t.terms()[s];
            if (! term)
                continue;
            vector<Value> upper;
            for (auto c : term->upper.coords())
                upper.push_back(up(c));
            terms[s] = Term{vec_plus_one(term->top), OpVector::upper(k, l, std::move(upper))};
        }
        return TermRepr{original, k, std::move(terms)};
    }

    auto t1_shift_terms(const TermRepr & t, ShiftDirection direction, const BlockSequence * original) -> TermRepr
    {
        if (direction == ShiftDirection::image)
            return t1_image(t);
        if (! original)
            throw InvalidArgument{"preimage shift needs the original base"};
        return t1_preimage(t, *original);
    }
}
