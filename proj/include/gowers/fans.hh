/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef GOWERS_GUARD_GOWERS_FANS_HH
#define GOWERS_GUARD_GOWERS_FANS_HH 1

#include <gowers/fin.hh>
#include <gowers/solver.hh>

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gowers
{
    /**
     * A finite fan whose branches all have the same height, with branches ordered
     * 1 < 2 < ... < w. Vertex 0 is the root; branch j (1-based) at level i >= 1 is
     * vertex 1 + (j - 1) * h + (i - 1).
     *
     * A fan of height 0 is the single root and is only accepted with width 1.
     */
    class OrderedFan
    {
    private:
        int _height = 0;
        int _width = 1;

    public:
        OrderedFan() = default;
        OrderedFan(int height, int width);

        [[nodiscard]] auto height() const noexcept -> int { return _height; }
        [[nodiscard]] auto width() const noexcept -> int { return _width; }
        [[nodiscard]] auto vertices() const noexcept -> int { return 1 + _height * _width; }

        /// Level 0 gives the root whatever the branch.
        [[nodiscard]] auto vertex(int branch, int level) const -> int;

        /// 0 for the root.
        [[nodiscard]] auto branch_of(int v) const noexcept -> int { return v == 0 ? 0 : 1 + (v - 1) / _height; }
        [[nodiscard]] auto level_of(int v) const noexcept -> int { return v == 0 ? 0 : 1 + (v - 1) % _height; }

        /// s = t, or t an immediate successor of s.
        [[nodiscard]] auto related(int s, int t) const noexcept -> bool;

        /// Some branch containing s comes no later than some branch containing t.
        [[nodiscard]] auto ordered(int s, int t) const noexcept -> bool;

        friend auto operator==(const OrderedFan &, const OrderedFan &) -> bool = default;
        friend auto operator<=>(const OrderedFan &, const OrderedFan &) = default;
    };

    /// `h:w`.
    auto to_string(const OrderedFan &) -> std::string;
    auto parse_fan(std::string_view) -> OrderedFan;

    /// The fan with one branch of the given height.
    auto chain(int height) -> OrderedFan;

    /// A vertex map between two ordered fans, not necessarily an epimorphism.
    class FanMap
    {
    private:
        OrderedFan _source;
        OrderedFan _target;
        std::vector<int> _image;

    public:
        FanMap() = default;

        /// Throws InvalidArgument when the image has the wrong size or leaves the target.
        FanMap(OrderedFan source, OrderedFan target, std::vector<int> image);

        [[nodiscard]] auto source() const noexcept -> const OrderedFan & { return _source; }
        [[nodiscard]] auto target() const noexcept -> const OrderedFan & { return _target; }
        [[nodiscard]] auto image() const noexcept -> const std::vector<int> & { return _image; }
        [[nodiscard]] auto operator()(int v) const -> int { return _image.at(v); }

        friend auto operator==(const FanMap &, const FanMap &) -> bool = default;
        friend auto operator<=>(const FanMap &, const FanMap &) = default;
    };

    /**
     * The structured form of an epimorphism: boundaries 1 = k_1 < ... < k_{m+1} =
     * n + 1 send source branches k_s .. k_{s+1} - 1 into target branch s, and each
     * source branch climbs one level at each of its step positions (source levels,
     * 1-based, ascending).
     *
     * A branch sent entirely to the root fits either neighbouring group; it is
     * placed in the earlier one, so every group after the first starts with a
     * branch that leaves the root.
     */
    struct EpiShape
    {
        std::vector<int> boundaries;
        std::vector<std::vector<int>> steps;

        friend auto operator==(const EpiShape &, const EpiShape &) -> bool = default;
    };

    /// The canonical shape, or nullopt when the map is not an epimorphism.
    auto shape(const FanMap &) -> std::optional<EpiShape>;

    /// Throws InvalidArgument when the shape does not describe an epimorphism.
    auto from_shape(const OrderedFan & source, const OrderedFan & target, const EpiShape &) -> FanMap;

    /// Straight from the definition: R and S are preserved, and every vertex, R pair
    /// and S pair of the target has a preimage.
    auto is_epimorphism(const FanMap &) -> bool;

    auto identity(const OrderedFan &) -> FanMap;

    /// h after g. Throws InvalidArgument unless g lands in the source of h.
    auto compose(const FanMap & h, const FanMap & g) -> FanMap;

    /// All epimorphisms B -> A: boundary tuples in lexicographic order, then
    /// per-branch step lists with the first branch most significant.
    auto enumerate_epimorphisms(const OrderedFan & b, const OrderedFan & a) -> std::vector<FanMap>;

    /// The same set by backtracking over raw vertex maps with is_epimorphism as the
    /// filter. Ordered by image vector.
    auto naive_epimorphisms(const OrderedFan & b, const OrderedFan & a) -> std::vector<FanMap>;

    /// `h:w>h:w|k=1,3|[1,2][][2]` for epimorphisms, `h:w>h:w|v=0,1,1` otherwise.
    auto to_string(const FanMap &) -> std::string;
    auto parse_fan_map(std::string_view) -> FanMap;

    struct Amalgam
    {
        OrderedFan d;
        FanMap to_b;
        FanMap to_c;
    };

    /**
     * Given epimorphisms B -> A and C -> A, a fan D with epimorphisms onto B and C
     * making the square commute. Per branch of A, source branches of B and C are
     * paired in order, split at the first branch of each that reaches the top; each
     * pair gives a branch of D with sum max(|I^1_i|, |I^2_i|) vertices. Short
     * branches are padded at the top.
     *
     * Throws InvalidArgument on non-epimorphisms or mismatched targets.
     */
    auto amalgamate(const FanMap & phi1, const FanMap & phi2) -> Amalgam;

    struct JointProjection
    {
        OrderedFan c;
        FanMap to_a;
        FanMap to_b;
    };

    /// The fan of the larger height and larger width, projected onto both.
    auto joint_projection(const OrderedFan & a, const OrderedFan & b) -> JointProjection;

    /**
     * For f: U -> S with S of height k and width d and U of width n: f* in
     * FIN_k^{[d]}(n) records the level each branch of U reaches inside each branch
     * of S, and families[i][j] the least preimages of levels 1..f*_i(j) along
     * branch j of U (levels of U, 1-based).
     */
    struct EncodedEpi
    {
        BlockSequence fstar;
        std::vector<std::vector<std::vector<int>>> families;

        friend auto operator==(const EncodedEpi &, const EncodedEpi &) -> bool = default;
    };

    /// Throws InvalidArgument on non-epimorphisms.
    auto encode_epimorphism(const FanMap & f) -> EncodedEpi;

    auto to_string(const EncodedEpi &) -> std::string;

    /// Colourings of (U choose S); one candidate per g in (U choose T), whose class is (T choose S) o g.
    struct RamseyPairInstance
    {
        ColourProblem problem;
        std::vector<FanMap> colourable;
        std::vector<FanMap> candidates;
    };

    auto ramsey_pair_instance(const OrderedFan & s, const OrderedFan & t, const OrderedFan & u, int r) -> RamseyPairInstance;

    struct RamseyPairResult
    {
        OrderedFan u;
        bool holds = false;

        /// Colours 1..r aligned with the colourable list, when the pair fails at u.
        std::optional<std::vector<int>> counterexample;
        std::vector<FanMap> colourable;
        std::uint64_t nodes = 0;
    };

    /// Throws InvalidArgument unless T is at least as high and wide as S, BudgetExceeded.
    auto check_ramsey_pair(const OrderedFan & s, const OrderedFan & t, const OrderedFan & u, int r, const Budget & budget = {}, int workers = 1)
        -> RamseyPairResult;

    struct RamseyWitness
    {
        RamseyPairResult witness;

        /// Every smaller candidate, in the order tried, with its counterexample.
        std::vector<RamseyPairResult> rejected;
    };

    /// Least U by vertex count, then width, for which (S, T) is Ramsey with r colours.
    /// Throws BudgetExceeded past max_vertices.
    auto min_ramsey_witness(const OrderedFan & s, const OrderedFan & t, int r, int max_vertices = 16, const Budget & budget = {}, int workers = 1)
        -> RamseyWitness;
}

#endif
