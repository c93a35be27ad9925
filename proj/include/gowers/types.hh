/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef GOWERS_GUARD_GOWERS_TYPES_HH
#define GOWERS_GUARD_GOWERS_TYPES_HH 1

#include <gowers/bigint.hh>
#include <gowers/fin.hh>

#include <compare>
#include <string>
#include <vector>

namespace gowers
{
    /**
     * The run-length value pattern of an element over k: adjacent values differ,
     * all lie in 1..k, and k occurs.
     */
    struct TypeSeq
    {
        int level = 0;
        std::vector<int> phi;

        [[nodiscard]] auto length() const noexcept -> int { return static_cast<int>(phi.size()); }

        friend auto operator==(const TypeSeq &, const TypeSeq &) -> bool = default;
        friend auto operator<=>(const TypeSeq &, const TypeSeq &) = default;
    };

    /// Throws InvalidArgument unless the invariants hold.
    auto make_type(int k, std::vector<int> phi) -> TypeSeq;

    /// A type together with the FIN_1 blocks that realise it in a given element.
    struct TypedElement
    {
        TypeSeq type;
        BlockSequence blocks;
    };

    /// Maximal runs of constant value across the support; zeros are skipped, so
    /// [2,0,2] has type (2) on the single block {1,3}.
    auto type_of(const FinElement & p) -> TypedElement;

    /// Entrywise types of a block sequence.
    auto type_of(const BlockSequence & p) -> std::vector<TypedElement>;

    auto types_only(const std::vector<TypedElement> &) -> std::vector<TypeSeq>;

    /// sum_i phi(i) chi(b_i) at level phi.level.
    auto map_type(const TypeSeq & phi, const BlockSequence & blocks) -> FinElement;

    /// `k:(p1,...,pm)`; tuples of types are joined by ';'.
    auto to_string(const TypeSeq &) -> std::string;
    auto to_string(const std::vector<TypeSeq> &) -> std::string;

    /// Types of single elements of length exactly len over k.
    auto count_types_of_length(int k, int len) -> BigInt;

    /// d-tuples of types over k forming a block sequence of total length at most m.
    auto count_types(int k, int m, int d) -> BigInt;
}

#endif
