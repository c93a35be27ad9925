/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef GOWERS_GUARD_GOWERS_PYRAMIDS_HH
#define GOWERS_GUARD_GOWERS_PYRAMIDS_HH 1

#include <gowers/fin.hh>

#include <vector>

namespace gowers
{
    /**
     * Pyramids of height l laid over a FIN_1 block sequence A of length
     * count * (2l - 1): pyramid i puts values 1, 2, ..., l, ..., 2, 1 on the
     * blocks a_{q_i - l + 1}, ..., a_{q_i + l - 1} with q_i = (i - 1)(2l - 1) + l.
     */
    class PyramidSequence
    {
    private:
        int _height = 0;
        BlockSequence _ground;
        BlockSequence _pyramids;
        std::vector<int> _owner;

    public:
        PyramidSequence(int l, BlockSequence ground);

        [[nodiscard]] auto height() const noexcept -> int { return _height; }
        [[nodiscard]] auto count() const noexcept -> int { return _pyramids.length(); }
        [[nodiscard]] auto width() const noexcept -> int { return _pyramids.width(); }
        [[nodiscard]] auto ground() const noexcept -> const BlockSequence & { return _ground; }
        [[nodiscard]] auto pyramids() const noexcept -> const BlockSequence & { return _pyramids; }
        [[nodiscard]] auto operator[](int i) const noexcept -> const FinElement & { return _pyramids[i]; }

        /// Index of the pyramid whose support holds the position, or -1.
        [[nodiscard]] auto owner(int position) const noexcept -> int { return _owner[position]; }
    };

    /// Pyramids over unit blocks of width count * (2l - 1).
    auto make_pyramid_sequence(int l, int count) -> PyramidSequence;

    /// T_1 applied to every pyramid: height l - 1 over A with the outermost block of each group removed.
    auto tetris_one(const PyramidSequence & c) -> PyramidSequence;

    /// ht(p)(i) = max of p on the support of pyramid i; level p.level, width count.
    auto height_vector(const PyramidSequence & c, const FinElement & p) -> FinElement;

    /// Entrywise height vectors.
    auto height_vector(const PyramidSequence & c, const BlockSequence & p) -> BlockSequence;

    /// q^C = sum over supp(q) of T_1^{l - q(i)}(c_i), at level q.level.
    auto pyramid_lift(const FinElement & q, const PyramidSequence & c) -> FinElement;

    /// d_s = b_s^C; the result lies in the span of C over P_l.
    auto followup_transfer(const BlockSequence & b, const PyramidSequence & c) -> BlockSequence;
}

#endif
