/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef GOWERS_GUARD_GOWERS_FIN_HH
#define GOWERS_GUARD_GOWERS_FIN_HH 1

#include <gowers/errors.hh>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gowers
{
    using Value = std::uint8_t;

    /**
     * A function {1..n} -> {0..k}, stored as its value sequence. Positions are
     * 0-based in the API; serialisations are 1-based only implicitly, by order.
     *
     * The level is bookkeeping: the same values may be viewed at any level at
     * least as large as the maximum value (see relevel). The zero function is
     * representable at every level.
     */
    class FinElement
    {
    private:
        int _level = 0;
        std::vector<Value> _values;
        int _support_min = -1;
        int _support_max = -1;
        int _support_size = 0;
        int _max_value = 0;

        auto refresh() -> void;

    public:
        FinElement() = default;

        /// Throws InvalidArgument if level < 0 or some value exceeds level.
        FinElement(int level, std::vector<Value> values);

        static auto zero(int level, int width) -> FinElement;

        [[nodiscard]] auto level() const noexcept -> int { return _level; }
        [[nodiscard]] auto width() const noexcept -> int { return static_cast<int>(_values.size()); }
        [[nodiscard]] auto values() const noexcept -> const std::vector<Value> & { return _values; }
        [[nodiscard]] auto value(int position) const -> int { return _values.at(position); }
        [[nodiscard]] auto operator[](int position) const noexcept -> int { return _values[position]; }

        /// True iff some value equals the level (membership in FIN_k rather than FIN_k(n)).
        [[nodiscard]] auto attains() const noexcept -> bool { return _level > 0 && _max_value == _level; }
        [[nodiscard]] auto is_zero() const noexcept -> bool { return _support_size == 0; }
        [[nodiscard]] auto max_value() const noexcept -> int { return _max_value; }

        /// -1 for the zero function.
        [[nodiscard]] auto support_min() const noexcept -> int { return _support_min; }
        [[nodiscard]] auto support_max() const noexcept -> int { return _support_max; }
        [[nodiscard]] auto support_size() const noexcept -> int { return _support_size; }
        [[nodiscard]] auto support() const -> std::vector<int>;

        /// Same values viewed at another level; the values must fit.
        [[nodiscard]] auto relevel(int level) const -> FinElement;

        /// Same function viewed in a wider (or narrower, if the support allows) ambient FIN_k(n).
        [[nodiscard]] auto rewidth(int width) const -> FinElement;

        [[nodiscard]] auto hash() const noexcept -> std::size_t;

        friend auto operator==(const FinElement & a, const FinElement & b) noexcept -> bool
        {
            return a._level == b._level && a._values == b._values;
        }

        /// Canonical order: width, then lexicographic on values, then level.
        friend auto operator<=>(const FinElement & a, const FinElement & b) noexcept -> std::strong_ordering;
    };

    /// Validating constructor used at API boundaries.
    auto make_element(int k, int n, std::span<const int> values) -> FinElement;

    /// `k:n:[v1,...,vn]`, decimal, no whitespace.
    auto to_string(const FinElement &) -> std::string;
    auto parse_element(std::string_view) -> FinElement;

    /// max(supp a) < min(supp b); vacuously true when either is zero.
    auto block_ordered(const FinElement & a, const FinElement & b) noexcept -> bool;

    /// T_i: values below i are kept, values at least i drop by one; T_0 is the identity.
    auto tetris(int i, const FinElement & p) -> FinElement;

    /// p + q for same level and width with supp p entirely before supp q.
    auto partial_add(const FinElement & p, const FinElement & q) -> FinElement;

    /// FIN_k(n) (attain = false, zero function included) or its attaining part, in
    /// lexicographic order of value sequences.
    auto enumerate_elements(int k, int n, bool attain) -> std::vector<FinElement>;

    /**
     * A nonempty finite list of attaining elements of a common level and width
     * whose supports are strictly separated, first to last.
     */
    class BlockSequence
    {
    private:
        std::vector<FinElement> _entries;

    public:
        BlockSequence() = default;

        /// Throws InvalidArgument when empty, mixed, non-attaining or not block-ordered.
        explicit BlockSequence(std::vector<FinElement> entries);

        [[nodiscard]] auto level() const noexcept -> int { return _entries.empty() ? 0 : _entries.front().level(); }
        [[nodiscard]] auto width() const noexcept -> int { return _entries.empty() ? 0 : _entries.front().width(); }
        [[nodiscard]] auto length() const noexcept -> int { return static_cast<int>(_entries.size()); }
        [[nodiscard]] auto entries() const noexcept -> const std::vector<FinElement> & { return _entries; }
        [[nodiscard]] auto operator[](int s) const noexcept -> const FinElement & { return _entries[s]; }
        [[nodiscard]] auto begin() const noexcept { return _entries.begin(); }
        [[nodiscard]] auto end() const noexcept { return _entries.end(); }

        friend auto operator==(const BlockSequence &, const BlockSequence &) -> bool = default;
        friend auto operator<=>(const BlockSequence & a, const BlockSequence & b) noexcept -> std::strong_ordering;
    };

    /// Entries joined by ';'. A length-one sequence serialises as its element.
    auto to_string(const BlockSequence &) -> std::string;
    auto parse_block_sequence(std::string_view) -> BlockSequence;

    /// FIN_k^{[d]}(n): every length-d block sequence of attaining elements, lexicographic
    /// in the canonical element order. Empty when d > n.
    auto enumerate_block_sequences(int k, int n, int d) -> std::vector<BlockSequence>;

    /// T_i applied entrywise. Every entry must survive (true whenever i >= 1 and the
    /// level is at least 2, or i = 0).
    auto tetris(int i, const BlockSequence & b) -> BlockSequence;

    /**
     * An index vector selecting a composition of tetris operations.
     *
     * Full vectors live in P_k = prod_{j=1}^k {0..j}. Upper vectors live in
     * P_{k+1}^l = prod_{j=k+1}^l {1..j}; when l = k the upper vector is empty and
     * denotes the identity.
     */
    class OpVector
    {
    public:
        enum class Kind
        {
            full,
            upper
        };

    private:
        Kind _kind = Kind::full;
        int _lower = 0;
        int _upper = 0;
        std::vector<Value> _coords;

        OpVector(Kind kind, int lower, int upper, std::vector<Value> coords);

    public:
        OpVector() = default;

        static auto full(std::vector<Value> coords) -> OpVector;
        static auto upper(int k, int l, std::vector<Value> coords) -> OpVector;
        static auto zeros(int k) -> OpVector;
        static auto identity_upper(int k) -> OpVector;

        [[nodiscard]] auto kind() const noexcept -> Kind { return _kind; }

        /// k for both kinds.
        [[nodiscard]] auto lower() const noexcept -> int { return _lower; }

        /// l for upper vectors, k for full ones.
        [[nodiscard]] auto upper() const noexcept -> int { return _upper; }

        [[nodiscard]] auto coords() const noexcept -> const std::vector<Value> & { return _coords; }
        [[nodiscard]] auto size() const noexcept -> int { return static_cast<int>(_coords.size()); }

        /// Index j of coords()[0]: 1 for full vectors, k + 1 for upper ones.
        [[nodiscard]] auto first_position() const noexcept -> int { return _kind == Kind::full ? 1 : _lower + 1; }

        [[nodiscard]] auto zero_count() const noexcept -> int;
        [[nodiscard]] auto is_identity() const noexcept -> bool;

        /// Level the composition expects of its argument.
        [[nodiscard]] auto input_level() const noexcept -> int { return _kind == Kind::full ? _lower : _upper; }

        /// Level of the result: the zero count for full vectors, k for upper ones.
        [[nodiscard]] auto output_level() const noexcept -> int;

        /// Zeros moved to the front, nonzero coordinates kept in order at the back.
        /// Full vectors only; the composed operation is unchanged.
        [[nodiscard]] auto normalized() const -> OpVector;

        friend auto operator==(const OpVector &, const OpVector &) -> bool = default;
        friend auto operator<=>(const OpVector &, const OpVector &) = default;
    };

    /// Full vectors as `(i1,...,ik)`; upper vectors as `u(i_{k+1},...,i_l)`.
    auto to_string(const OpVector &) -> std::string;

    /// All of P_k, lexicographic.
    auto all_full_vectors(int k) -> std::vector<OpVector>;

    /// All of P_{k+1}^l, lexicographic; the single empty vector when l = k.
    auto all_upper_vectors(int k, int l) -> std::vector<OpVector>;

    /// T_{i(1)} o ... o T_{i(k)}, innermost coordinate first.
    auto tetris_compose(const OpVector & vec, const FinElement & p) -> FinElement;

    /// The shift v -> v + 1 from P_{l-1} to P_l with T_v o T_1 = T_1 o T_{v+1}:
    /// a zero is prepended and nonzero coordinates are incremented.
    auto vec_plus_one(const OpVector & vec) -> OpVector;

    /// The subset I of P_k used to select span terms. Always contains the zero vector.
    class SpanSelector
    {
    private:
        int _level = 0;
        std::vector<OpVector> _vectors;

    public:
        SpanSelector(int k, std::vector<OpVector> vectors);

        /// P_k.
        static auto full_product(int k) -> SpanSelector;

        /// prod_{j=1}^k {0,1}, the selector of Gowers' original theorem.
        static auto gowers(int k) -> SpanSelector;

        /// prod_{j=1}^k {0, l_j, l_j + 1} with l_j in {0..j-1}.
        static auto neighbour(const std::vector<int> & l) -> SpanSelector;

        [[nodiscard]] auto level() const noexcept -> int { return _level; }
        [[nodiscard]] auto vectors() const noexcept -> const std::vector<OpVector> & { return _vectors; }
    };

    /// One summand T_top o T_upper(b_s).
    struct Term
    {
        OpVector top;
        OpVector upper;

        friend auto operator==(const Term &, const Term &) -> bool = default;
    };

    /**
     * A span element written as sum_s T_{t_s} o T_{i_s}(b_s) over a base block
     * sequence of level l, landing in level k. Omitted entries are empty optionals.
     */
    class TermRepr
    {
    private:
        BlockSequence _base;
        int _level = 0;
        std::vector<std::optional<Term>> _terms;

    public:
        TermRepr() = default;

        /// Throws InvalidArgument unless some present term has an all-zero top vector
        /// and all vector levels match the base.
        TermRepr(BlockSequence base, int k, std::vector<std::optional<Term>> terms);

        [[nodiscard]] auto base() const noexcept -> const BlockSequence & { return _base; }
        [[nodiscard]] auto level() const noexcept -> int { return _level; }
        [[nodiscard]] auto terms() const noexcept -> const std::vector<std::optional<Term>> & { return _terms; }

        /// The sum, as an element of level k and the base width.
        [[nodiscard]] auto evaluate() const -> FinElement;

        friend auto operator==(const TermRepr &, const TermRepr &) -> bool = default;
    };

    auto to_string(const TermRepr &) -> std::string;

    struct SpanEntry
    {
        FinElement element;
        TermRepr provenance;
    };

    /// Span elements in canonical order, each with the first term representation found.
    using SpanSet = std::vector<SpanEntry>;

    /// <B>_I over arbitrary subsequences of B.
    auto span(const BlockSequence & b, const SpanSelector & selector) -> SpanSet;

    /// <U_{i in P_{k+1}^l} T_i(B)>_{P_k} for B of level l >= k.
    auto combined_span(const BlockSequence & b, int k) -> SpanSet;

    /// Elements only, canonical order; cheaper than combined_span.
    auto combined_span_elements(const BlockSequence & b, int k) -> std::vector<FinElement>;

    struct SpanTuple
    {
        BlockSequence tuple;
        std::vector<TermRepr> provenance;
    };

    /// Length-d block sequences whose entries lie in combined_span(b, k).
    auto combined_span_d(const BlockSequence & b, int k, int d) -> std::vector<SpanTuple>;

    /// Length-d block sequences drawn from a canonical-ordered element list.
    auto block_tuples(const std::vector<FinElement> & elements, int d) -> std::vector<BlockSequence>;

    /// Colouring of d-tuples; a length-one sequence stands for a single element.
    using ObjectColouring = std::function<int(const BlockSequence &)>;

    /// The common colour of every object, or nullopt if two differ or there are none.
    auto monochromatic_colour(const ObjectColouring & colour, const std::vector<BlockSequence> & objects) -> std::optional<int>;

    auto span_monochromatic(const ObjectColouring & colour, const BlockSequence & b, const SpanSelector & selector) -> std::optional<int>;

    /// Combined span of b at level k, taken as d-tuples.
    auto span_monochromatic(const ObjectColouring & colour, const BlockSequence & b, int k, int d) -> std::optional<int>;

    /**
     * Pushes T_1 through every term: a representation over B at levels (k, l)
     * becomes one over T_1(B) at (k - 1, l - 1) whose value is T_1 of the original.
     * Requires k >= 2.
     */
    auto t1_image(const TermRepr & t) -> TermRepr;

    /**
     * Inverse direction: a representation over T_1(original) at (k - 1, l - 1)
     * becomes one over original at (k, l) with T_1(evaluate(result)) = evaluate(t).
     */
    auto t1_preimage(const TermRepr & t, const BlockSequence & original) -> TermRepr;

    enum class ShiftDirection
    {
        image,
        preimage
    };

    /// Dispatcher over t1_image / t1_preimage; `original` is required for preimages.
    auto t1_shift_terms(const TermRepr & t, ShiftDirection direction, const BlockSequence * original = nullptr) -> TermRepr;
}

template <>
struct std::hash<gowers::FinElement>
{
    auto operator()(const gowers::FinElement & e) const noexcept -> std::size_t { return e.hash(); }
};

#endif
