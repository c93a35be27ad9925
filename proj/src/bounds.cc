/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <gowers/bounds.hh>
#include <gowers/types.hh>

#include <json.hpp>

#include <cctype>
#include <unordered_map>

using std::optional;
using std::string;
using std::string_view;
using std::vector;

namespace gowers
{
    using std::to_string;

    struct BoundExpr::Node
    {
        Kind kind;
        BigInt value;
        vector<BoundExpr> args;
    };

    namespace
    {
        struct Shape
        {
            const char * name;
            vector<const char *> labels;
        };

        auto shape(BoundExpr::Kind kind) -> Shape
        {
            using K = BoundExpr::Kind;
            switch (kind) {
            case K::constant: return {"", {}};
            case K::ramsey: return {"R", {"k", "l", "r"}};
            case K::milliken_taylor: return {"MT", {"d", "m", "r"}};
            case K::add: return {"add", {"", ""}};
            case K::mul: return {"mul", {"", ""}};
            case K::max: return {"max", {"", ""}};
            case K::pow: return {"pow", {"", ""}};
            case K::binom: return {"binom", {"", ""}};
            case K::types: return {"types", {"k", "m", "d"}};
            }
            throw Error{"internal: unknown bound kind"};
        }

        constexpr BoundExpr::Kind all_kinds[] = {BoundExpr::Kind::ramsey, BoundExpr::Kind::milliken_taylor, BoundExpr::Kind::add,
            BoundExpr::Kind::mul, BoundExpr::Kind::max, BoundExpr::Kind::pow, BoundExpr::Kind::binom, BoundExpr::Kind::types};

        // Past these, values stay symbolic.
        constexpr unsigned max_bits = 1u << 22;
        constexpr int max_type_length = 2000;
        constexpr int max_binom_k = 100000;
    }

    BoundExpr::BoundExpr(std::shared_ptr<const Node> node) :
        _node(std::move(node))
    {
    }

    BoundExpr::BoundExpr(BigInt value) :
        _node(std::make_shared<const Node>(Node{Kind::constant, std::move(value), {}}))
    {
    }

    BoundExpr::BoundExpr(int value) :
        BoundExpr(BigInt{value})
    {
    }

    auto BoundExpr::make(Kind kind, vector<BoundExpr> args) -> BoundExpr
    {
        return BoundExpr{std::make_shared<const Node>(Node{kind, 0, std::move(args)})};
    }

    auto BoundExpr::R(BoundExpr k, BoundExpr l, BoundExpr r) -> BoundExpr { return make(Kind::ramsey, {k, l, r}); }
    auto BoundExpr::MT(BoundExpr d, BoundExpr m, BoundExpr r) -> BoundExpr { return make(Kind::milliken_taylor, {d, m, r}); }
    auto BoundExpr::add(BoundExpr a, BoundExpr b) -> BoundExpr { return make(Kind::add, {a, b}); }
    auto BoundExpr::mul(BoundExpr a, BoundExpr b) -> BoundExpr { return make(Kind::mul, {a, b}); }
    auto BoundExpr::max(BoundExpr a, BoundExpr b) -> BoundExpr { return make(Kind::max, {a, b}); }
    auto BoundExpr::pow(BoundExpr base, BoundExpr exponent) -> BoundExpr { return make(Kind::pow, {base, exponent}); }
    auto BoundExpr::binom(BoundExpr n, BoundExpr k) -> BoundExpr { return make(Kind::binom, {n, k}); }
    auto BoundExpr::types(BoundExpr k, BoundExpr m, BoundExpr d) -> BoundExpr { return make(Kind::types, {k, m, d}); }

    auto BoundExpr::kind() const -> Kind { return _node->kind; }
    auto BoundExpr::value() const -> const BigInt & { return _node->value; }
    auto BoundExpr::args() const -> const vector<BoundExpr> & { return _node->args; }

    auto operator==(const BoundExpr & a, const BoundExpr & b) -> bool
    {
        if (a._node == b._node)
            return true;
        return a.kind() == b.kind() && a.value() == b.value() && a.args() == b.args();
    }

    namespace
    {
        auto print(const BoundExpr & e, string & out) -> void
        {
            if (e.kind() == BoundExpr::Kind::constant) {
                out += e.value().str();
                return;
            }
            auto s = shape(e.kind());
            out += s.name;
            out += '(';
            for (std::size_t i = 0; i < e.args().size(); ++i) {
                if (i != 0)
                    out += ',';
                if (*s.labels[i]) {
                    out += s.labels[i];
                    out += '=';
                }
                print(e.args()[i], out);
            }
            out += ')';
        }

        class Parser
        {
        private:
            string_view _text;
            std::size_t _pos = 0;

            [[noreturn]] auto fail(const string & what) const -> void
            {
                throw ParseError{"bound expression: " + what + " at offset " + to_string(_pos) + " in '" + string{_text} + "'"};
            }

            auto expect(char c) -> void
            {
                if (_pos >= _text.size() || _text[_pos] != c)
                    fail(string{"expected '"} + c + "'");
                ++_pos;
            }

        public:
            explicit Parser(string_view text) :
                _text(text)
            {
            }

            auto expr() -> BoundExpr
            {
                if (_pos < _text.size() && (std::isdigit(static_cast<unsigned char>(_text[_pos])) || _text[_pos] == '-')) {
                    auto start = _pos++;
                    while (_pos < _text.size() && std::isdigit(static_cast<unsigned char>(_text[_pos])))
                        ++_pos;
                    auto digits = string{_text.substr(start, _pos - start)};
                    if (digits == "-")
                        fail("bad number");
                    return BoundExpr{BigInt{digits}};
                }
                auto start = _pos;
                while (_pos < _text.size() && std::isalpha(static_cast<unsigned char>(_text[_pos])))
                    ++_pos;
                auto name = _text.substr(start, _pos - start);
                for (auto kind : all_kinds) {
                    auto s = shape(kind);
                    if (name != s.name)
                        continue;
                    expect('(');
                    vector<BoundExpr> args;
                    for (std::size_t i = 0; i < s.labels.size(); ++i) {
                        if (i != 0)
                            expect(',');
                        string_view label = s.labels[i];
                        if (! label.empty()) {
                            if (_text.substr(_pos, label.size()) != label)
                                fail("expected argument '" + string{label} + "'");
                            _pos += label.size();
                            expect('=');
                        }
                        args.push_back(expr());
                    }
                    expect(')');
                    switch (kind) {
                    case BoundExpr::Kind::ramsey: return BoundExpr::R(args[0], args[1], args[2]);
                    case BoundExpr::Kind::milliken_taylor: return BoundExpr::MT(args[0], args[1], args[2]);
                    case BoundExpr::Kind::add: return BoundExpr::add(args[0], args[1]);
                    case BoundExpr::Kind::mul: return BoundExpr::mul(args[0], args[1]);
                    case BoundExpr::Kind::max: return BoundExpr::max(args[0], args[1]);
                    case BoundExpr::Kind::pow: return BoundExpr::pow(args[0], args[1]);
                    case BoundExpr::Kind::binom: return BoundExpr::binom(args[0], args[1]);
                    case BoundExpr::Kind::types: return BoundExpr::types(args[0], args[1], args[2]);
                    case BoundExpr::Kind::constant: break;
                    }
                }
                fail("unknown name '" + string{name} + "'");
            }

            auto done() -> void
            {
                if (_pos != _text.size())
                    fail("trailing text");
            }
        };
    }

    auto to_string(const BoundExpr & e) -> string
    {
        string result;
        print(e, result);
        return result;
    }

    auto parse_bound(string_view text) -> BoundExpr
    {
        Parser parser{text};
        auto result = parser.expr();
        parser.done();
        return result;
    }

    auto ExactTable::key(string_view name, const vector<BigInt> & args) -> string
    {
        string result{name};
        result += '(';
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i != 0)
                result += ',';
            result += args[i].str();
        }
        return result + ")";
    }

    auto ExactTable::add(const string & key, BigInt value, string certificate) -> void
    {
        auto [it, inserted] = _entries.emplace(key, ExactEntry{value, certificate});
        if (! inserted && it->second.value != value)
            throw InvalidArgument{"conflicting exact values for " + key};
        if (! inserted)
            it->second.certificate = std::move(certificate);
    }

    auto ExactTable::find(const string & key) const -> const ExactEntry *
    {
        auto it = _entries.find(key);
        return it == _entries.end() ? nullptr : &it->second;
    }

    auto ExactTable::to_json() const -> string
    {
        nlohmann::json doc = nlohmann::json::object();
        for (const auto & [key, entry] : _entries)
            doc[key] = {{"value", entry.value.str()}, {"certificate", entry.certificate}};
        return doc.dump(2);
    }

    auto ExactTable::from_json(string_view text) -> ExactTable
    {
        ExactTable result;
        try {
            auto doc = nlohmann::json::parse(text);
            for (const auto & [key, entry] : doc.items())
                result.add(key, BigInt{entry.at("value").get<string>()}, entry.value("certificate", ""));
        }
        catch (const nlohmann::json::exception & e) {
            throw ParseError{string{"malformed exact-value table: "} + e.what()};
        }
        return result;
    }

    namespace
    {
        class Evaluator
        {
        private:
            const ExactTable & _table;
            std::unordered_map<const void *, Evaluation> _memo;

            auto compute(const BoundExpr & e, const vector<BigInt> & v) -> optional<BigInt>
            {
                using K = BoundExpr::Kind;
                switch (e.kind()) {
                case K::constant:
                    return e.value();
                case K::ramsey:
                case K::milliken_taylor: {
                    auto entry = _table.find(ExactTable::key(shape(e.kind()).name, v));
                    if (! entry)
                        return std::nullopt;
                    return entry->value;
                }
                case K::add:
                    return v[0] + v[1];
                case K::mul:
                    return v[0] * v[1];
                case K::max:
                    return v[0] < v[1] ? v[1] : v[0];
                case K::pow: {
                    if (v[1] < 0)
                        throw InvalidArgument{"negative exponent in bound expression"};
                    if (v[0] == 0 || v[0] == 1 || v[1] == 0)
                        return v[1] == 0 ? BigInt{1} : v[0];
                    auto base_bits = static_cast<unsigned>(msb(abs(v[0]))) + 1;
                    if (v[1] > max_bits || base_bits * v[1] > max_bits)
                        return std::nullopt;
                    return boost::multiprecision::pow(v[0], static_cast<unsigned>(v[1]));
                }
                case K::binom: {
                    if (v[1] < 0 || v[0] < 0 || v[1] > v[0])
                        return BigInt{0};
                    auto k = v[1];
                    if (v[0] - k < k)
                        k = v[0] - k;
                    if (k > max_binom_k)
                        return std::nullopt;
                    BigInt result = 1;
                    for (BigInt i = 1; i <= k; ++i)
                        result = result * (v[0] - k + i) / i;
                    return result;
                }
                case K::types: {
                    if (v[1] > max_type_length || v[0] > max_type_length || v[2] > max_type_length)
                        return std::nullopt;
                    return count_types(static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]));
                }
                }
                return std::nullopt;
            }

        public:
            explicit Evaluator(const ExactTable & table) :
                _table(table)
            {
            }

            auto operator()(const BoundExpr & e) -> Evaluation
            {
                if (auto it = _memo.find(e.identity()); it != _memo.end())
                    return it->second;
                vector<Evaluation> parts;
                vector<BigInt> values;
                bool all = true;
                for (const auto & a : e.args()) {
                    parts.push_back((*this)(a));
                    all = all && parts.back().value.has_value();
                    if (all)
                        values.push_back(*parts.back().value);
                }
                optional<BigInt> value;
                if (all)
                    value = compute(e, values);
                Evaluation result{value, value ? BoundExpr{*value} : e};
                if (! value && ! e.args().empty()) {
                    bool changed = false;
                    for (std::size_t i = 0; i < parts.size(); ++i)
                        changed = changed || ! (parts[i].residue.identity() == e.args()[i].identity());
                    if (changed) {
                        vector<BoundExpr> a;
                        for (auto & p : parts)
                            a.push_back(p.residue);
                        using K = BoundExpr::Kind;
                        switch (e.kind()) {
                        case K::ramsey: result.residue = BoundExpr::R(a[0], a[1], a[2]); break;
                        case K::milliken_taylor: result.residue = BoundExpr::MT(a[0], a[1], a[2]); break;
                        case K::add: result.residue = BoundExpr::add(a[0], a[1]); break;
                        case K::mul: result.residue = BoundExpr::mul(a[0], a[1]); break;
                        case K::max: result.residue = BoundExpr::max(a[0], a[1]); break;
                        case K::pow: result.residue = BoundExpr::pow(a[0], a[1]); break;
                        case K::binom: result.residue = BoundExpr::binom(a[0], a[1]); break;
                        case K::types: result.residue = BoundExpr::types(a[0], a[1], a[2]); break;
                        case K::constant: break;
                        }
                    }
                }
                _memo.emplace(e.identity(), result);
                return result;
            }
        };
    }

    auto evaluate(const BoundExpr & expr, const ExactTable & table) -> Evaluation
    {
        Evaluator evaluator{table};
        return evaluator(expr);
    }

    auto bound_T(int d, int k, const BoundExpr & m, int r) -> BoundExpr
    {
        if (k < 1 || d < 1 || r < 1)
            throw InvalidArgument{"bound_T needs k, d, r >= 1"};
        auto alpha = BoundExpr::pow(r, BoundExpr::types(k, m, d));
        return BoundExpr::MT(m, BoundExpr::add(BoundExpr::mul(2, m), -d), alpha);
    }

    auto bound_G(int d, int k, int l, int m, int r) -> BoundExpr
    {
        if (d < 1 || d > m || k < 1 || k > l || r < 1)
            throw InvalidArgument{"bound_G needs 1 <= d <= m, 1 <= k <= l, r >= 1"};
        if (k == 1)
            return BoundExpr::MT(d, m, r);
        auto inner = bound_G(d, k - 1, l - 1, m, r);
        return bound_T(d, k, BoundExpr::mul(inner, 2 * l - 1), r);
    }

    namespace
    {
        auto sum_subsets_up_to(const BoundExpr & n, int k) -> BoundExpr
        {
            BoundExpr total = 1;
            for (int j = 1; j <= k; ++j)
                total = BoundExpr::add(total, BoundExpr::binom(n, j));
            return total;
        }

        // S with the last k replaced by last_k.
        auto bound_S_step(const vector<int> & ks, int last_k, const vector<BoundExpr> & ls, const BoundExpr & r) -> BoundExpr
        {
            auto m = ks.size();
            if (m == 1) {
                if (last_k == 0)
                    return ls[0];
                auto previous = bound_S_step(ks, last_k - 1, ls, r);
                return BoundExpr::R(last_k, previous, r);
            }
            vector<int> head_k(ks.begin(), ks.end() - 1);
            vector<BoundExpr> head_l(ls.begin(), ls.end() - 1);
            if (last_k == 0)
                return BoundExpr::max(bound_S_step(head_k, head_k.back(), head_l, r), ls.back());
            auto n1 = bound_S_step(ks, last_k - 1, ls, r);
            auto n2 = bound_S_step(head_k, head_k.back(), vector<BoundExpr>(m - 1, n1), r);
            BoundExpr count = 1;
            for (auto k : head_k)
                count = BoundExpr::mul(count, sum_subsets_up_to(n2, k));
            auto alpha = BoundExpr::pow(r, count);
            return BoundExpr::max(n2, BoundExpr::R(last_k, n1, alpha));
        }
    }

    auto bound_S(const vector<int> & ks, const vector<BoundExpr> & ls, const BoundExpr & r) -> BoundExpr
    {
        if (ks.empty() || ks.size() != ls.size())
            throw InvalidArgument{"bound_S needs matching nonempty k and l lists"};
        for (auto k : ks)
            if (k < 0)
                throw InvalidArgument{"bound_S needs k_i >= 0"};
        return bound_S_step(ks, ks.back(), ls, r);
    }

    auto bound_S(const vector<int> & ks, const vector<int> & ls, int r) -> BoundExpr
    {
        if (ks.size() != ls.size())
            throw InvalidArgument{"bound_S needs matching k and l lists"};
        for (std::size_t i = 0; i < ks.size(); ++i)
            if (ks[i] > ls[i])
                throw InvalidArgument{"bound_S needs k_i <= l_i"};
        return bound_S(ks, vector<BoundExpr>(ls.begin(), ls.end()), r);
    }

    auto gamma_count(int m, int d) -> BigInt
    {
        if (d < 1 || m < 2 || d > m - 1)
            return 0;
        // Choose the d - 1 interior points among 2..m-1.
        BigInt result = 1;
        for (int i = 1; i <= d - 1; ++i)
            result = result * (m - 2 - (d - 1) + i) / i;
        return result;
    }

    auto bound_Sd(const vector<int> & ks, const vector<int> & ls, int d, int r) -> BoundExpr
    {
        int m = static_cast<int>(ks.size());
        if (d < 1 || d > m || r < 1)
            throw InvalidArgument{"bound_Sd needs 1 <= d <= m and r >= 1"};
        if (d == 1)
            return bound_S(ks, ls, r);
        return bound_S(ks, vector<BoundExpr>(ls.begin(), ls.end()), BoundExpr::pow(r, gamma_count(m, d)));
    }
}
