/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <gowers/types.hh>

#include <algorithm>

using std::string;
using std::vector;

namespace gowers
{
    using std::to_string;

    auto make_type(int k, vector<int> phi) -> TypeSeq
    {
        if (k < 1 || phi.empty())
            throw InvalidArgument{"a type needs k >= 1 and at least one value"};
        for (std::size_t i = 0; i < phi.size(); ++i) {
            if (phi[i] < 1 || phi[i] > k)
                throw InvalidArgument{"type value " + to_string(phi[i]) + " out of range 1.." + to_string(k)};
            if (i > 0 && phi[i] == phi[i - 1])
                throw InvalidArgument{"adjacent type values must differ"};
        }
        if (std::find(phi.begin(), phi.end(), k) == phi.end())
            throw InvalidArgument{"a type over k must take the value k"};
        return TypeSeq{k, std::move(phi)};
    }

    auto type_of(const FinElement & p) -> TypedElement
    {
        if (! p.attains())
            throw InvalidArgument{"type_of needs an element attaining its level: " + to_string(p)};
        vector<int> phi;
        vector<FinElement> blocks;
        vector<Value> current(p.width(), 0);
        for (int x = 0; x < p.width(); ++x) {
            if (p[x] == 0)
                continue;
            if (! phi.empty() && phi.back() != p[x]) {
                blocks.emplace_back(1, current);
                std::fill(current.begin(), current.end(), Value{0});
            }
            if (phi.empty() || phi.back() != p[x])
                phi.push_back(p[x]);
            current[x] = 1;
        }
        blocks.emplace_back(1, current);
        return TypedElement{TypeSeq{p.level(), std::move(phi)}, BlockSequence{std::move(blocks)}};
    }

    auto type_of(const BlockSequence & p) -> vector<TypedElement>
    {
        vector<TypedElement> result;
        for (const auto & e : p)
            result.push_back(type_of(e));
        return result;
    }

    auto types_only(const vector<TypedElement> & typed) -> vector<TypeSeq>
    {
        vector<TypeSeq> result;
        for (const auto & t : typed)
            result.push_back(t.type);
        return result;
    }

    auto map_type(const TypeSeq & phi, const BlockSequence & blocks) -> FinElement
    {
        if (phi.length() != blocks.length())
            throw InvalidArgument{"type length " + to_string(phi.length()) + " does not match " + to_string(blocks.length()) + " blocks"};
        if (blocks.level() != 1)
            throw InvalidArgument{"map_type needs blocks in FIN_1"};
        vector<Value> values(blocks.width(), 0);
        for (int i = 0; i < phi.length(); ++i)
            for (int x = 0; x < blocks.width(); ++x)
                if (blocks[i][x] != 0)
                    values[x] = static_cast<Value>(phi.phi[i]);
        return FinElement{phi.level, std::move(values)};
    }

    auto to_string(const TypeSeq & t) -> string
    {
        string result = to_string(t.level) + ":(";
        for (int i = 0; i < t.length(); ++i) {
            if (i != 0)
                result += ',';
            result += to_string(t.phi[i]);
        }
        return result + ")";
    }

    auto to_string(const vector<TypeSeq> & ts) -> string
    {
        string result;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (i != 0)
                result += ';';
            result += to_string(ts[i]);
        }
        return result;
    }

    auto count_types_of_length(int k, int len) -> BigInt
    {
        if (k < 1 || len < 1)
            return 0;
        // Sequences with adjacent values distinct, minus those avoiding k.
        BigInt all = k, avoid = k - 1;
        all *= boost::multiprecision::pow(BigInt{k - 1}, len - 1);
        avoid *= boost::multiprecision::pow(BigInt{k - 2 < 0 ? 0 : k - 2}, len - 1);
        return all - avoid;
    }

    namespace
    {
        auto truncated_product(const vector<BigInt> & a, const vector<BigInt> & b, int m) -> vector<BigInt>
        {
            vector<BigInt> result(m + 1, 0);
            for (int i = 0; i <= m; ++i) {
                if (a[i] == 0)
                    continue;
                for (int j = 0; i + j <= m; ++j)
                    if (b[j] != 0)
                        result[i + j] += a[i] * b[j];
            }
            return result;
        }
    }

    auto count_types(int k, int m, int d) -> BigInt
    {
        if (k < 1 || m < 1 || d < 1)
            throw InvalidArgument{"count_types needs k, m, d >= 1"};
        if (d > m)
            return 0;
        // Coefficient t of N(x)^d counts d-tuples of total length t.
        vector<BigInt> single(m + 1, 0);
        for (int len = 1; len <= m; ++len)
            single[len] = count_types_of_length(k, len);
        vector<BigInt> power(m + 1, 0);
        power[0] = 1;
        for (int e = d; e > 0; e >>= 1) {
            if (e & 1)
                power = truncated_product(power, single, m);
            if (e > 1)
                single = truncated_product(single, single, m);
        }
        BigInt total = 0;
        for (int t = 0; t <= m; ++t)
            total += power[t];
        return total;
    }
}
