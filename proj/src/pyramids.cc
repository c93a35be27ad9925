/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <gowers/pyramids.hh>

#include <algorithm>
#include <string>

using std::vector;

namespace gowers
{
    using std::to_string;

    PyramidSequence::PyramidSequence(int l, BlockSequence ground) :
        _height(l),
        _ground(std::move(ground))
    {
        if (l < 1)
            throw InvalidArgument{"pyramid height must be at least 1"};
        if (_ground.level() != 1)
            throw InvalidArgument{"pyramids are laid over FIN_1 blocks"};
        int span = 2 * l - 1;
        if (_ground.length() % span != 0)
            throw InvalidArgument{"ground length " + to_string(_ground.length()) + " is not a multiple of " + to_string(span)};

        _owner.assign(_ground.width(), -1);
        vector<FinElement> pyramids;
        for (int i = 0; i < _ground.length() / span; ++i) {
            vector<Value> values(_ground.width(), 0);
            for (int j = -(l - 1); j <= l - 1; ++j) {
                const auto & block = _ground[i * span + (l - 1) + j];
                for (int x = 0; x < block.width(); ++x)
                    if (block[x] != 0) {
                        values[x] = static_cast<Value>(l - std::abs(j));
                        _owner[x] = i;
                    }
            }
            pyramids.emplace_back(l, std::move(values));
        }
        _pyramids = BlockSequence{std::move(pyramids)};
    }

    auto make_pyramid_sequence(int l, int count) -> PyramidSequence
    {
        if (l < 1 || count < 1)
            throw InvalidArgument{"make_pyramid_sequence needs l, count >= 1"};
        int width = count * (2 * l - 1);
        vector<FinElement> units;
        for (int x = 0; x < width; ++x) {
            vector<Value> values(width, 0);
            values[x] = 1;
            units.emplace_back(1, std::move(values));
        }
        return PyramidSequence{l, BlockSequence{std::move(units)}};
    }

    auto tetris_one(const PyramidSequence & c) -> PyramidSequence
    {
        int l = c.height();
        if (l < 2)
            throw InvalidArgument{"T_1 of height-1 pyramids vanishes"};
        int span = 2 * l - 1;
        vector<FinElement> inner;
        for (int s = 0; s < c.ground().length(); ++s) {
            int offset = s % span;
            if (offset != 0 && offset != span - 1)
                inner.push_back(c.ground()[s]);
        }
        return PyramidSequence{l - 1, BlockSequence{std::move(inner)}};
    }

    auto height_vector(const PyramidSequence & c, const FinElement & p) -> FinElement
    {
        if (p.width() != c.width())
            throw InvalidArgument{"width " + to_string(p.width()) + " does not match pyramid width " + to_string(c.width())};
        vector<Value> heights(c.count(), 0);
        for (int x = 0; x < p.width(); ++x)
            if (p[x] != 0) {
                int i = c.owner(x);
                if (i < 0)
                    throw InvalidArgument{"support of " + to_string(p) + " leaves the pyramids"};
                heights[i] = std::max<Value>(heights[i], static_cast<Value>(p[x]));
            }
        return FinElement{p.level(), std::move(heights)};
    }

    auto height_vector(const PyramidSequence & c, const BlockSequence & p) -> BlockSequence
    {
        vector<FinElement> entries;
        for (const auto & e : p)
            entries.push_back(height_vector(c, e));
        return BlockSequence{std::move(entries)};
    }

    auto pyramid_lift(const FinElement & q, const PyramidSequence & c) -> FinElement
    {
        int k = q.level();
        if (k > c.height())
            throw InvalidArgument{"lift level " + to_string(k) + " exceeds pyramid height " + to_string(c.height())};
        if (q.width() != c.count())
            throw InvalidArgument{"lift width " + to_string(q.width()) + " does not match " + to_string(c.count()) + " pyramids"};
        vector<Value> values(c.width(), 0);
        for (int i = 0; i < q.width(); ++i) {
            if (q[i] == 0)
                continue;
            int drop = c.height() - q[i];
            for (int x = 0; x < c.width(); ++x) {
                int v = c[i][x];
                if (v != 0)
                    values[x] = static_cast<Value>(std::max(v - drop, 0));
            }
        }
        return FinElement{k, std::move(values)};
    }

    auto followup_transfer(const BlockSequence & b, const PyramidSequence & c) -> BlockSequence
    {
        vector<FinElement> entries;
        for (const auto & e : b)
            entries.push_back(pyramid_lift(e, c));
        return BlockSequence{std::move(entries)};
    }
}
