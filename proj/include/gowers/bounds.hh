/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef GOWERS_GUARD_GOWERS_BOUNDS_HH
#define GOWERS_GUARD_GOWERS_BOUNDS_HH 1

#include <gowers/bigint.hh>
#include <gowers/errors.hh>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gowers
{
    /**
     * Upper bound expressions over exact integers. Leaves R(k,l,r) and
     * MT(d,m,r) are the Ramsey and Milliken-Taylor numbers, resolved only through
     * an ExactTable. Subexpressions are shared, so the recursive bounds stay small
     * in memory even when they print large.
     */
    class BoundExpr
    {
    public:
        enum class Kind
        {
            constant,
            ramsey,
            milliken_taylor,
            add,
            mul,
            max,
            pow,
            binom,
            types
        };

    private:
        struct Node;
        std::shared_ptr<const Node> _node;

        explicit BoundExpr(std::shared_ptr<const Node>);
        static auto make(Kind, std::vector<BoundExpr>) -> BoundExpr;

    public:
        BoundExpr(BigInt value);
        BoundExpr(int value);

        static auto R(BoundExpr k, BoundExpr l, BoundExpr r) -> BoundExpr;
        static auto MT(BoundExpr d, BoundExpr m, BoundExpr r) -> BoundExpr;
        static auto add(BoundExpr a, BoundExpr b) -> BoundExpr;
        static auto mul(BoundExpr a, BoundExpr b) -> BoundExpr;
        static auto max(BoundExpr a, BoundExpr b) -> BoundExpr;
        static auto pow(BoundExpr base, BoundExpr exponent) -> BoundExpr;
        static auto binom(BoundExpr n, BoundExpr k) -> BoundExpr;

        /// count_types(k, m, d).
        static auto types(BoundExpr k, BoundExpr m, BoundExpr d) -> BoundExpr;

        [[nodiscard]] auto kind() const -> Kind;
        [[nodiscard]] auto value() const -> const BigInt &;
        [[nodiscard]] auto args() const -> const std::vector<BoundExpr> &;
        [[nodiscard]] auto identity() const -> const void * { return _node.get(); }

        friend auto operator==(const BoundExpr &, const BoundExpr &) -> bool;
    };

    /// Prefix form with named arguments: `MT(d=1,m=add(2,3),r=2)`.
    auto to_string(const BoundExpr &) -> std::string;
    auto parse_bound(std::string_view) -> BoundExpr;

    struct ExactEntry
    {
        BigInt value;
        std::string certificate;
    };

    /// Verified exact values keyed by `R(2,3,2)` or `MT(1,2,2)`.
    class ExactTable
    {
    private:
        std::map<std::string, ExactEntry> _entries;

    public:
        static auto key(std::string_view name, const std::vector<BigInt> & args) -> std::string;

        auto add(const std::string & key, BigInt value, std::string certificate) -> void;
        [[nodiscard]] auto find(const std::string & key) const -> const ExactEntry *;
        [[nodiscard]] auto entries() const -> const std::map<std::string, ExactEntry> & { return _entries; }

        [[nodiscard]] auto to_json() const -> std::string;
        static auto from_json(std::string_view) -> ExactTable;
    };

    struct Evaluation
    {
        /// Present when every leaf resolved.
        std::optional<BigInt> value;

        /// The expression with every resolved subexpression folded to a constant.
        BoundExpr residue;
    };

    /// Exact evaluation. Powers past a few million bits and type counts at huge m
    /// are left symbolic instead of being materialised.
    auto evaluate(const BoundExpr & expr, const ExactTable & table) -> Evaluation;

    /// G_d(k,l,m,r), unrolled to MT leaves and type counts.
    auto bound_G(int d, int k, int l, int m, int r) -> BoundExpr;

    /// T_d(k,m,r) = MT_m(2m - d, r^{count_types(k,m,d)}).
    auto bound_T(int d, int k, const BoundExpr & m, int r) -> BoundExpr;

    /// S(m, k_1..k_m, l_1..l_m, r), by the double induction on m and the last k.
    auto bound_S(const std::vector<int> & ks, const std::vector<BoundExpr> & ls, const BoundExpr & r) -> BoundExpr;
    auto bound_S(const std::vector<int> & ks, const std::vector<int> & ls, int r) -> BoundExpr;

    /// S_d(k_1..k_m, l_1..l_m, m, r) = S(m, ..., r^{|Gamma|}).
    auto bound_Sd(const std::vector<int> & ks, const std::vector<int> & ls, int d, int r) -> BoundExpr;

    /// Number of 1 = g(1) < ... < g(d+1) = m.
    auto gamma_count(int m, int d) -> BigInt;
}

#endif
