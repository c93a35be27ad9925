#include <gowers/pyramids.hh>
#include <gowers/types.hh>

#include <doctest.h>

#include <set>
#include <vector>

using namespace gowers;
using std::vector;

namespace
{
    auto el(int k, vector<int> values) -> FinElement
    {
        return make_element(k, static_cast<int>(values.size()), values);
    }

    auto seq(vector<FinElement> entries) -> BlockSequence
    {
        return BlockSequence{std::move(entries)};
    }

    // Brute force over all sequences in {1..k}^len.
    auto naive_type_count(int k, int len) -> long
    {
        long count = 0;
        vector<int> phi(len, 1);
        while (true) {
            bool ok = false;
            for (int i = 0; i < len; ++i)
                ok = ok || phi[i] == k;
            for (int i = 1; i < len && ok; ++i)
                ok = phi[i] != phi[i - 1];
            count += ok;
            int i = len - 1;
            while (i >= 0 && phi[i] == k)
                phi[i--] = 1;
            if (i < 0)
                return count;
            ++phi[i];
        }
    }
}

TEST_CASE("type_of")
{
    auto t = type_of(el(2, {1, 1, 2, 1}));
    CHECK(t.type == make_type(2, {1, 2, 1}));
    CHECK(t.blocks == seq({el(1, {1, 1, 0, 0}), el(1, {0, 0, 1, 0}), el(1, {0, 0, 0, 1})}));
    CHECK(type_of(el(2, {2})).type == make_type(2, {2}));
    CHECK(type_of(el(2, {2, 0, 2})).type == make_type(2, {2}));

    auto tuple = type_of(seq({el(1, {1, 0, 0}), el(1, {0, 0, 1})}));
    CHECK(types_only(tuple) == vector<TypeSeq>{make_type(1, {1}), make_type(1, {1})});
    CHECK(tuple[0].blocks == seq({el(1, {1, 0, 0})}));
    CHECK(tuple[1].blocks == seq({el(1, {0, 0, 1})}));

    CHECK_THROWS_AS(type_of(el(2, {1, 1})), InvalidArgument);
    CHECK_THROWS_AS(make_type(2, {2, 2}), InvalidArgument);
    CHECK_THROWS_AS(make_type(2, {1}), InvalidArgument);
    CHECK(to_string(make_type(2, {1, 2})) == "2:(1,2)");
}

TEST_CASE("map_type")
{
    CHECK(map_type(make_type(2, {2, 1}), seq({el(1, {1, 1, 0}), el(1, {0, 0, 1})})) == el(2, {2, 2, 1}));
    CHECK(map_type(make_type(2, {2}), seq({el(1, {1})})) == el(2, {2}));
    CHECK_THROWS_AS(map_type(make_type(2, {2, 1}), seq({el(1, {1})})), InvalidArgument);

    for (const auto & p : enumerate_elements(2, 4, true)) {
        auto t = type_of(p);
        CHECK(map_type(t.type, t.blocks) == p);
    }
}

TEST_CASE("count_types")
{
    CHECK(count_types(1, 2, 1) == 1);
    CHECK(count_types(2, 2, 1) == 3);
    CHECK(count_types(2, 2, 2) == 1);
    CHECK(count_types(3, 1, 2) == 0);

    for (int k = 1; k <= 4; ++k)
        for (int len = 1; len <= 6; ++len)
            CHECK(count_types_of_length(k, len) == naive_type_count(k, len));

    // Distinct types among all attaining d-tuples, when the width allows every length.
    for (int k = 1; k <= 3; ++k)
        for (int d = 1; d <= 2; ++d) {
            int m = 4;
            std::set<vector<TypeSeq>> seen;
            for (const auto & b : enumerate_block_sequences(k, m, d))
                seen.insert(types_only(type_of(b)));
            CHECK(count_types(k, m, d) == seen.size());
        }
}

TEST_CASE("pyramids")
{
    CHECK(make_pyramid_sequence(2, 1).pyramids() == seq({el(2, {1, 2, 1})}));
    CHECK(make_pyramid_sequence(2, 2).pyramids() == seq({el(2, {1, 2, 1, 0, 0, 0}), el(2, {0, 0, 0, 1, 2, 1})}));
    CHECK(make_pyramid_sequence(3, 1).pyramids() == seq({el(3, {1, 2, 3, 2, 1})}));

    auto c = make_pyramid_sequence(3, 2);
    auto inner = tetris_one(c);
    CHECK(inner.height() == 2);
    CHECK(inner.pyramids() == tetris(1, c.pyramids()));

    SUBCASE("endpoints of every image equal 1")
    {
        for (int l = 1; l <= 4; ++l) {
            auto p = make_pyramid_sequence(l, 1)[0];
            auto check = [&](const OpVector & v) {
                auto r = tetris_compose(v, p);
                if (! r.is_zero()) {
                    CHECK(r[r.support_min()] == 1);
                    CHECK(r[r.support_max()] == 1);
                }
            };
            for (const auto & v : all_full_vectors(l)) {
                check(v);
                // A full vector with j zeros yields a pyramid of height j.
                auto r = tetris_compose(v, p);
                CHECK(r.max_value() == v.zero_count());
            }
            for (int k = 1; k < l; ++k)
                for (const auto & v : all_upper_vectors(k, l)) {
                    check(v);
                    CHECK(tetris_compose(v, p).max_value() == k);
                }
        }
    }
}

TEST_CASE("height_vector")
{
    auto c = make_pyramid_sequence(2, 2);
    CHECK(height_vector(c, el(2, {1, 2, 1, 0, 1, 0})) == el(2, {2, 1}));
    CHECK(height_vector(c, c[0]) == el(2, {2, 0}));
    CHECK_THROWS_AS(height_vector(c, el(2, {2})), InvalidArgument);

    SUBCASE("equal heights after T_1 force equal types")
    {
        for (int count = 2; count <= 3; ++count) {
            auto pyr = make_pyramid_sequence(2, count);
            auto set = span(pyr.pyramids(), SpanSelector::full_product(2));
            for (const auto & p : set)
                for (const auto & q : set)
                    if (height_vector(pyr, tetris(1, p.element)) == height_vector(pyr, tetris(1, q.element)))
                        CHECK(type_of(p.element).type == type_of(q.element).type);
        }
    }

    SUBCASE("equal types do not force equal heights")
    {
        auto pyr = make_pyramid_sequence(2, 2);
        CHECK(type_of(pyr[0]).type == type_of(pyr[1]).type);
        CHECK(height_vector(pyr, tetris(1, pyr[0])) != height_vector(pyr, tetris(1, pyr[1])));
    }
}

TEST_CASE("pyramid_lift")
{
    auto c = make_pyramid_sequence(2, 2);
    CHECK(pyramid_lift(el(2, {2, 1}), c) == el(2, {1, 2, 1, 0, 1, 0}));
    CHECK(pyramid_lift(el(2, {2}), make_pyramid_sequence(2, 1)) == el(2, {1, 2, 1}));
    CHECK_THROWS_AS(pyramid_lift(el(3, {3, 0}), c), InvalidArgument);

    std::set<FinElement> images;
    for (const auto & q : enumerate_elements(2, 2, true)) {
        auto lifted = pyramid_lift(q, c);
        CHECK(height_vector(c, lifted) == q);
        images.insert(lifted);
    }
    CHECK(images.size() == enumerate_elements(2, 2, true).size());
}

TEST_CASE("followup_transfer")
{
    CHECK(followup_transfer(seq({el(2, {2})}), make_pyramid_sequence(2, 1)) == seq({el(2, {1, 2, 1})}));
    CHECK(followup_transfer(seq({el(2, {2, 0}), el(2, {0, 2})}), make_pyramid_sequence(2, 2)) ==
        seq({el(2, {1, 2, 1, 0, 0, 0}), el(2, {0, 0, 0, 1, 2, 1})}));

    auto c = make_pyramid_sequence(2, 3);
    auto span_c = span(c.pyramids(), SpanSelector::full_product(2));
    std::set<FinElement> in_span;
    for (const auto & e : span_c)
        in_span.insert(e.element);
    for (const auto & b : enumerate_block_sequences(2, 3, 2)) {
        auto d = followup_transfer(b, c);
        CHECK(height_vector(c, d) == b);
        for (const auto & e : d)
            CHECK(in_span.count(e) == 1);
        // Heights of span elements over D recover span elements over B.
        auto over_b = combined_span_elements(b, 1);
        std::set<FinElement> over_b_set(over_b.begin(), over_b.end());
        for (const auto & e : combined_span_elements(d, 1))
            CHECK(over_b_set.count(height_vector(c, e)) == 1);
    }
}
