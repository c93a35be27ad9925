#include <gowers/fin.hh>

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

using namespace gowers;
using std::set;
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

    auto elements_of(const SpanSet & s) -> set<FinElement>
    {
        set<FinElement> result;
        for (const auto & e : s)
            result.insert(e.element);
        return result;
    }

    // Brute force: every assignment of (omit | t in P_k, i in P_{k+1}^l) per entry,
    // no deduplication of options.
    auto naive_combined_span(const BlockSequence & b, int k) -> set<FinElement>
    {
        auto tops = all_full_vectors(k);
        auto uppers = all_upper_vectors(k, b.level());
        int per = static_cast<int>(tops.size() * uppers.size()) + 1;
        set<FinElement> result;
        vector<int> choice(b.length(), 0);
        while (true) {
            bool anchored = false;
            vector<int> sum(b.width(), 0);
            for (int s = 0; s < b.length(); ++s) {
                if (choice[s] == 0)
                    continue;
                const auto & t = tops[(choice[s] - 1) % tops.size()];
                const auto & i = uppers[(choice[s] - 1) / tops.size()];
                auto v = tetris_compose(t, tetris_compose(i, b[s]));
                for (int x = 0; x < b.width(); ++x)
                    sum[x] += v[x];
                anchored = anchored || t.is_identity();
            }
            if (anchored)
                result.insert(make_element(k, b.width(), sum));
            int s = 0;
            while (s < b.length() && choice[s] == per - 1)
                choice[s++] = 0;
            if (s == b.length())
                break;
            ++choice[s];
        }
        return result;
    }
}

TEST_CASE("make_element")
{
    auto e = el(2, {0, 2, 1});
    CHECK(e.support() == vector<int>{1, 2});
    CHECK(e.attains());
    CHECK(! el(2, {0, 1, 1}).attains());
    CHECK_THROWS_AS(el(2, {0, 3, 1}), InvalidArgument);
    CHECK_THROWS_AS(make_element(0, 1, vector<int>{0}), InvalidArgument);
    CHECK_THROWS_AS(make_element(1, 0, vector<int>{}), InvalidArgument);
}

TEST_CASE("serialisation round trip")
{
    auto e = el(3, {0, 3, 1, 2});
    CHECK(to_string(e) == "3:4:[0,3,1,2]");
    CHECK(parse_element(to_string(e)) == e);
    auto b = seq({el(1, {1, 0, 0}), el(1, {0, 0, 1})});
    CHECK(to_string(b) == "1:3:[1,0,0];1:3:[0,0,1]");
    CHECK(parse_block_sequence(to_string(b)) == b);
    CHECK_THROWS_AS(parse_element("2:3:[0,1"), ParseError);
    CHECK_THROWS_AS(parse_element("2:x:[0]"), ParseError);
}

TEST_CASE("tetris")
{
    auto p = el(2, {0, 2, 1});
    CHECK(tetris(1, p) == el(1, {0, 1, 0}));
    CHECK(tetris(2, p) == el(1, {0, 1, 1}));
    CHECK(tetris(0, p) == p);
    CHECK_THROWS_AS(tetris(3, p), InvalidArgument);
    CHECK_THROWS_AS(tetris(-1, p), InvalidArgument);
}

TEST_CASE("tetris_compose")
{
    CHECK(tetris_compose(OpVector::full({1, 0}), el(2, {2, 0, 1})) == el(1, {1, 0, 0}).relevel(1));
    CHECK(tetris_compose(OpVector::full({1, 1}), el(2, {2, 0, 0})).is_zero());
    auto p = el(2, {2, 1});
    CHECK(tetris_compose(OpVector::identity_upper(2), p) == p);
    CHECK_THROWS_AS(tetris_compose(OpVector::zeros(3), p), InvalidArgument);

    SUBCASE("vectors without zeros annihilate")
    {
        for (int k = 1; k <= 4; ++k)
            for (const auto & v : all_full_vectors(k))
                if (v.zero_count() == 0)
                    for (const auto & q : enumerate_elements(k, 3, true))
                        CHECK(tetris_compose(v, q).is_zero());
    }

    SUBCASE("z zeros land in level z and attain it")
    {
        for (int k = 1; k <= 4; ++k)
            for (const auto & v : all_full_vectors(k))
                for (const auto & q : enumerate_elements(k, 3, true)) {
                    auto r = tetris_compose(v, q);
                    CHECK(r.level() == v.zero_count());
                    if (v.zero_count() > 0)
                        CHECK(r.attains());
                }
    }

    SUBCASE("normalisation preserves the operation")
    {
        for (int k = 1; k <= 4; ++k)
            for (const auto & v : all_full_vectors(k))
                for (const auto & q : enumerate_elements(k, 3, false))
                    CHECK(tetris_compose(v, q) == tetris_compose(v.normalized(), q));
    }
}

TEST_CASE("partial_add")
{
    CHECK(partial_add(el(1, {1, 0, 0}), el(1, {0, 0, 1})) == el(1, {1, 0, 1}));
    CHECK_THROWS_AS(partial_add(el(1, {1, 0, 1}), el(1, {0, 1, 0})), InvalidArgument);
    CHECK(partial_add(el(2, {2, 0, 0}), el(2, {0, 2, 0})) == el(2, {2, 2, 0}));
    CHECK_THROWS_AS(partial_add(el(2, {2, 0}), el(1, {0, 1})), InvalidArgument);
}

TEST_CASE("enumerate_elements")
{
    auto e = enumerate_elements(1, 2, true);
    CHECK(set<FinElement>(e.begin(), e.end()) == set<FinElement>{el(1, {1, 0}), el(1, {0, 1}), el(1, {1, 1})});
    CHECK(enumerate_elements(2, 1, true) == vector<FinElement>{el(2, {2})});
    CHECK(enumerate_elements(2, 2, true).size() == 5);
    for (int k = 1; k <= 3; ++k)
        for (int n = 1; n <= 4; ++n) {
            auto all = enumerate_elements(k, n, false);
            std::size_t pk = 1, kk = 1;
            for (int x = 0; x < n; ++x) {
                pk *= k + 1;
                kk *= k;
            }
            CHECK(all.size() == pk);
            CHECK(std::is_sorted(all.begin(), all.end()));
            CHECK(enumerate_elements(k, n, true).size() == pk - kk);
        }
}

TEST_CASE("enumerate_block_sequences")
{
    CHECK(enumerate_block_sequences(1, 2, 2) == vector<BlockSequence>{seq({el(1, {1, 0}), el(1, {0, 1})})});
    CHECK(enumerate_block_sequences(1, 3, 2).size() == 5);
    CHECK(enumerate_block_sequences(2, 1, 2).empty());

    // Brute force: filter all d-tuples of attaining elements.
    for (int k = 1; k <= 2; ++k)
        for (int n = 1; n <= 4; ++n)
            for (int d = 1; d <= 3; ++d) {
                auto all = enumerate_elements(k, n, true);
                vector<BlockSequence> naive;
                vector<std::size_t> idx(d, 0);
                while (true) {
                    bool ok = true;
                    for (int s = 1; s < d && ok; ++s)
                        ok = all[idx[s - 1]].support_max() < all[idx[s]].support_min();
                    if (ok) {
                        vector<FinElement> entries;
                        for (auto i : idx)
                            entries.push_back(all[i]);
                        naive.emplace_back(entries);
                    }
                    int s = d - 1;
                    while (s >= 0 && idx[s] == all.size() - 1)
                        idx[s--] = 0;
                    if (s < 0)
                        break;
                    ++idx[s];
                }
                auto fast = enumerate_block_sequences(k, n, d);
                CHECK(fast == naive);
            }
}

TEST_CASE("op vectors")
{
    CHECK(all_full_vectors(1).size() == 2);
    CHECK(all_full_vectors(3).size() == 24);
    CHECK(all_upper_vectors(2, 2).size() == 1);
    CHECK(all_upper_vectors(1, 3).size() == 6);
    CHECK_THROWS_AS(OpVector::full({2}), InvalidArgument);
    CHECK_THROWS_AS(OpVector::upper(1, 2, {0}), InvalidArgument);
    CHECK(to_string(OpVector::full({0, 2})) == "(0,2)");
    CHECK(to_string(OpVector::upper(1, 3, {2, 3})) == "u(2,3)");
    CHECK(OpVector::full({1, 0, 2}).normalized() == OpVector::full({0, 1, 2}));
}

TEST_CASE("vec_plus_one")
{
    CHECK(vec_plus_one(OpVector::full({0})) == OpVector::full({0, 0}));
    CHECK(vec_plus_one(OpVector::full({1, 0})) == OpVector::full({0, 2, 0}));

    SUBCASE("T_v o T_1 = T_1 o T_{v+1}")
    {
        for (int l = 2; l <= 4; ++l)
            for (const auto & v : all_full_vectors(l - 1))
                for (const auto & p : enumerate_elements(l, 3, false))
                    CHECK(tetris_compose(v, tetris(1, p)) == tetris(1, tetris_compose(vec_plus_one(v), p)));
    }
}

TEST_CASE("commutation with T_1")
{
    for (int k = 2; k <= 4; ++k)
        for (const auto & p : enumerate_elements(k, 4, false))
            for (int j = 1; j < k; ++j)
                CHECK(tetris(j, tetris(1, p)) == tetris(1, tetris(j + 1, p)));
}

TEST_CASE("span")
{
    auto b1 = seq({el(1, {1, 0, 0}), el(1, {0, 0, 1})});
    CHECK(elements_of(span(b1, SpanSelector::full_product(1))) == set<FinElement>{el(1, {1, 0, 0}), el(1, {0, 0, 1}), el(1, {1, 0, 1})});

    auto b2 = seq({el(2, {2, 0}), el(2, {0, 2})});
    CHECK(elements_of(span(b2, SpanSelector::full_product(2))) ==
        set<FinElement>{el(2, {2, 0}), el(2, {0, 2}), el(2, {2, 2}), el(2, {2, 1}), el(2, {1, 2})});

    auto b3 = seq({el(2, {2})});
    CHECK(elements_of(span(b3, SpanSelector::full_product(2))) == set<FinElement>{el(2, {2})});

    CHECK_THROWS_AS(span(b3, SpanSelector::full_product(1)), InvalidArgument);
    CHECK_THROWS_AS((SpanSelector{1, {OpVector::full({1})}}), InvalidArgument);

    SUBCASE("provenance evaluates to the element, which attains k")
    {
        for (const auto & b : enumerate_block_sequences(3, 4, 2))
            for (const auto & e : span(b, SpanSelector::full_product(3))) {
                CHECK(e.provenance.evaluate() == e.element);
                CHECK(e.element.attains());
            }
    }

    SUBCASE("combined span with l = k matches span over P_k")
    {
        for (const auto & b : enumerate_block_sequences(2, 4, 2))
            CHECK(elements_of(span(b, SpanSelector::full_product(2))) == elements_of(combined_span(b, 2)));
    }

    SUBCASE("gowers selector is a subset")
    {
        auto g = SpanSelector::gowers(2);
        CHECK(g.vectors().size() == 4);
        for (const auto & b : enumerate_block_sequences(2, 3, 2)) {
            auto small = elements_of(span(b, g));
            auto big = elements_of(span(b, SpanSelector::full_product(2)));
            CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
        }
    }

    SUBCASE("neighbour selectors")
    {
        CHECK(SpanSelector::neighbour({0}).vectors().size() == 2);
        CHECK(SpanSelector::neighbour({0, 1}).vectors().size() == 6);
        CHECK_THROWS_AS(SpanSelector::neighbour({1}), InvalidArgument);
    }
}

TEST_CASE("combined span")
{
    auto b = seq({el(1, {1, 0}), el(1, {0, 1})});
    CHECK(combined_span_d(b, 1, 1).size() == 3);
    CHECK(elements_of(combined_span(seq({el(2, {2})}), 1)) == set<FinElement>{el(1, {1})});
    CHECK_THROWS_AS(combined_span(b, 2), InvalidArgument);

    SUBCASE("against brute force")
    {
        for (int l = 1; l <= 3; ++l)
            for (int k = 1; k <= l; ++k)
                for (const auto & base : enumerate_block_sequences(l, 3, 2)) {
                    auto fast = combined_span_elements(base, k);
                    CHECK(set<FinElement>(fast.begin(), fast.end()) == naive_combined_span(base, k));
                    CHECK(elements_of(combined_span(base, k)) == naive_combined_span(base, k));
                }
    }

    SUBCASE("pairs at l = k = 2")
    {
        auto b2 = seq({el(2, {2, 0}), el(2, {0, 2})});
        auto pairs = combined_span_d(b2, 2, 2);
        auto elements = naive_combined_span(b2, 2);
        set<BlockSequence> naive;
        for (const auto & x : elements)
            for (const auto & y : elements)
                if (x.support_max() < y.support_min())
                    naive.insert(seq({x, y}));
        set<BlockSequence> got;
        for (const auto & t : pairs) {
            got.insert(t.tuple);
            for (int s = 0; s < t.tuple.length(); ++s)
                CHECK(t.provenance[s].evaluate() == t.tuple[s]);
        }
        CHECK(got == naive);
        CHECK(got.count(seq({el(2, {2, 0}), el(2, {0, 2})})) == 1);
        CHECK(got.size() == 1);
    }
}

TEST_CASE("span_monochromatic")
{
    auto b = seq({el(1, {1, 0}), el(1, {0, 1})});
    ObjectColouring constant = [](const BlockSequence &) { return 3; };
    CHECK(span_monochromatic(constant, b, SpanSelector::full_product(1)) == 3);
    ObjectColouring parity = [](const BlockSequence & o) { return o[0].support_size() % 2 + 1; };
    CHECK(span_monochromatic(parity, b, SpanSelector::full_product(1)) == std::nullopt);
    CHECK(span_monochromatic(parity, seq({el(2, {0, 2, 0})}), SpanSelector::full_product(2)) == 2);
    CHECK(span_monochromatic(constant, b, 1, 2) == 3);
    CHECK(monochromatic_colour(constant, {}) == std::nullopt);
}

TEST_CASE("T_1 shifting of terms")
{
    auto b = seq({el(2, {2})});
    TermRepr t{b, 2, {Term{OpVector::zeros(2), OpVector::identity_upper(2)}}};
    auto image = t1_shift_terms(t, ShiftDirection::image);
    CHECK(image.base() == seq({el(1, {1})}));
    CHECK(image.terms()[0] == Term{OpVector::zeros(1), OpVector::identity_upper(1)});
    CHECK_THROWS_AS(t1_shift_terms(image, ShiftDirection::preimage), InvalidArgument);

    std::mt19937 rng(12345);
    SUBCASE("image commutes with evaluation on random terms at k = l = 2")
    {
        auto bases = enumerate_block_sequences(2, 4, 2);
        auto tops = all_full_vectors(2);
        for (int trial = 0; trial < 100; ++trial) {
            const auto & base = bases[rng() % bases.size()];
            vector<std::optional<Term>> terms(base.length());
            int anchor = rng() % base.length();
            for (int s = 0; s < base.length(); ++s) {
                if (s == anchor)
                    terms[s] = Term{OpVector::zeros(2), OpVector::identity_upper(2)};
                else if (rng() % 3 != 0)
                    terms[s] = Term{tops[rng() % tops.size()], OpVector::identity_upper(2)};
            }
            TermRepr repr{base, 2, terms};
            CHECK(t1_image(repr).evaluate() == tetris(1, repr.evaluate()));
        }
    }

    SUBCASE("general levels: image and preimage against evaluation")
    {
        for (int l = 2; l <= 4; ++l)
            for (int k = 2; k <= l; ++k)
                for (const auto & base : enumerate_block_sequences(l, 3, 2))
                    for (const auto & e : combined_span(base, k)) {
                        auto image = t1_image(e.provenance);
                        CHECK(image.evaluate() == tetris(1, e.element));
                        auto back = t1_preimage(image, base);
                        CHECK(tetris(1, back.evaluate()) == image.evaluate());
                        CHECK(t1_image(back).evaluate() == image.evaluate());
                    }
    }

    SUBCASE("span shift as set equality")
    {
        for (int k = 2; k <= 3; ++k)
            for (const auto & base : enumerate_block_sequences(k, 4, 2)) {
                set<FinElement> shifted;
                for (const auto & e : span(base, SpanSelector::full_product(k)))
                    shifted.insert(tetris(1, e.element));
                CHECK(shifted == elements_of(span(tetris(1, base), SpanSelector::full_product(k - 1))));
            }
    }
}
