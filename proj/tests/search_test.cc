/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <gowers/search.hh>

#include <doctest.h>

#include <functional>

using namespace gowers;

namespace
{
    // Plain backtracking over 2-colourings of the nonempty subsets of {1..n}, as
    // bitmasks, rejecting any monochromatic a, b, a | b with a entirely below b.
    auto mt12_holds_by_brute_force(int n) -> bool
    {
        int full = (1 << n) - 1;
        std::vector<int> colour(full + 1, -1);
        auto below = [](int a, int b) { return 31 - __builtin_clz(a) < __builtin_ctz(b); };
        std::function<bool(int)> avoid = [&](int s) -> bool {
            if (s > full)
                return true;
            for (int c = 0; c < 2; ++c) {
                colour[s] = c;
                bool bad = false;
                for (int a = 1; a < s && ! bad; ++a)
                    for (int b = 1; b < s && ! bad; ++b) {
                        bool triple = (a | b) == s && (a & b) == 0 && below(a, b);
                        bad = triple && colour[a] == c && colour[b] == c;
                    }
                if (! bad && avoid(s + 1))
                    return true;
            }
            colour[s] = -1;
            return false;
        };
        return ! avoid(1);
    }

    auto check_counterexample(const Instance & instance, const Counterexample & c) -> void
    {
        REQUIRE(c.keys == instance.vertex_keys);
        CHECK(is_counterexample(instance.problem, c.colours));
    }
}

TEST_CASE("classical Ramsey numbers")
{
    auto r232 = min_classical_ramsey(2, 3, 2);
    CHECK(r232.value == 6);
    REQUIRE(r232.counterexample);
    check_counterexample(ramsey_instance(2, 3, 5, 2), *r232.counterexample);

    for (int l = 1; l <= 4; ++l)
        for (int r = 1; r <= 3; ++r)
            CHECK(min_classical_ramsey(1, l, r).value == r * (l - 1) + 1);
}

TEST_CASE("Milliken-Taylor against brute force")
{
    CHECK(! mt12_holds_by_brute_force(4));
    CHECK(mt12_holds_by_brute_force(5));

    auto mt = min_milliken_taylor(1, 2, 2);
    CHECK(mt.value == 5);
    REQUIRE(mt.counterexample);
    CHECK(mt.counterexample->n == 4);
    check_counterexample(mt_instance(1, 2, 4, 2), *mt.counterexample);
    CHECK(mt.exhaustive.n == 5);
    CHECK(mt.exhaustive.nodes > 0);

    CHECK(! verify_mt(1, 2, 2, 4).holds);
    CHECK(verify_mt(1, 2, 2, 5).holds);
}

TEST_CASE("card parity has no witness at n = 3")
{
    auto parity = Colouring::builtin("card-parity", 2);
    CHECK(! find_mt_witness(parity, 1, 2, 3));
    auto w = find_mt_witness(parity, 1, 2, 4);
    REQUIRE(w);
    CHECK(to_string(*w) == "1:4:[1,1,0,0];1:4:[0,0,1,1]");
}

TEST_CASE("gowers and type searches at level 1 agree with Milliken-Taylor")
{
    CHECK(min_gowers(1, 1, 2, 1, 2).value == 5);
    CHECK(min_type_homogeneous(1, 2, 1, 2).value == 5);
}

TEST_CASE("size-insensitivity with one coordinate is pigeonhole")
{
    for (int l = 1; l <= 3; ++l)
        for (int r = 1; r <= 2; ++r)
            CHECK(min_size_insensitive({1}, {l}, 1, r).value == r * (l - 1) + 1);
}

TEST_CASE("size-insensitive instances")
{
    auto inst = size_insensitive_instance({1, 1}, {1, 1}, 2, 2, 2);
    // f_1 has support {1}, f_2 has support {2}.
    CHECK(inst.vertex_keys.size() == 4);
    CHECK(inst.vertex_keys.front() == "({1},{});({},{1})");
    auto c = Colouring::builtin("card-parity", 2);
    CHECK(c("({1},{});({},{1})") == 1);
    auto w = find_size_insensitive(c, {1, 1}, {1, 1}, 2, 2);
    REQUIRE(w);
    CHECK(subset_tuple_key(*w) == "({1},{1})");
}

TEST_CASE("results do not depend on the worker count")
{
    SearchOptions one, many;
    many.workers = 4;
    auto a = min_classical_ramsey(2, 3, 2, one);
    auto b = min_classical_ramsey(2, 3, 2, many);
    CHECK(a.value == b.value);
    CHECK(a.exhaustive.nodes == b.exhaustive.nodes);
    CHECK(a.counterexample->colours == b.counterexample->colours);

    auto c = min_milliken_taylor(1, 2, 2, one);
    auto d = min_milliken_taylor(1, 2, 2, many);
    CHECK(c.exhaustive.nodes == d.exhaustive.nodes);
    CHECK(c.counterexample->colours == d.counterexample->colours);
}

TEST_CASE("budgets")
{
    SearchOptions tight;
    tight.budget.nodes = 5;
    CHECK_THROWS_AS(min_classical_ramsey(2, 3, 2, tight), BudgetExceeded);
    SearchOptions low;
    low.max_n = 4;
    CHECK_THROWS_AS(min_classical_ramsey(2, 3, 2, low), BudgetExceeded);
}

TEST_CASE("witnesses")
{
    auto constant = Colouring::builtin("const:1", 2);
    auto w = find_gowers_witness(constant, 2, 2, 2, 1, 2);
    REQUIRE(w);
    CHECK(*w == enumerate_block_sequences(2, 2, 2).front());

    auto p = probe_neighbour_span(constant, {0, 1}, 1, 1);
    REQUIRE(p);

    auto parity = Colouring::builtin("supp-parity", 2);
    auto t = find_type_homogeneous(parity, 2, 2, 1, 4);
    REQUIRE(t);
}

TEST_CASE("instance shapes")
{
    auto g = gowers_instance(1, 1, 2, 2, 3, 2);
    for (std::size_t i = 0; i < g.problem.candidates.size(); ++i)
        CHECK(candidate_vertices(g, i).size() == 1);
    auto m = mt_instance(2, 2, 3, 2);
    CHECK(m.problem.candidates.size() == g.problem.candidates.size());
    CHECK_THROWS_AS(ramsey_instance(3, 2, 4, 2), InvalidArgument);
    CHECK_THROWS_AS(size_insensitive_instance({2}, {1}, 1, 3, 2), InvalidArgument);
}
