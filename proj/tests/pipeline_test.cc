/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <gowers/pipeline.hh>

#include <doctest.h>

#include <json.hpp>

#include <random>

using namespace gowers;

namespace
{
    auto random_table(int k, int width, int r, std::mt19937 & rng) -> Colouring
    {
        nlohmann::json doc;
        doc["colors"] = r;
        doc["width"] = width;
        std::uniform_int_distribution<int> pick{1, r};
        for (const auto & e : enumerate_elements(k, width, true))
            doc["table"][to_string(e)] = pick(rng);
        return Colouring::table(doc.dump());
    }
}

TEST_CASE("pipeline base cases")
{
    auto any = Colouring::builtin("supp-parity", 2);
    auto a = extract_witness(any, 1, 1, 1, 1, 2);
    CHECK(a.n == 1);
    CHECK(to_string(a.witness) == "1:1:[1]");
    CHECK(a.transcript.size() == 1);

    auto b = extract_witness(any, 1, 2, 1, 1, 2);
    CHECK(to_string(b.witness) == "2:1:[2]");

    auto parity = Colouring::builtin("card-parity", 2);
    auto c = extract_witness(parity, 1, 2, 2, 1, 2);
    CHECK(c.n == 4);
    CHECK(to_string(c.witness) == "2:4:[2,2,0,0];2:4:[0,0,2,2]");
}

TEST_CASE("pipeline at level 2 on random tables")
{
    std::mt19937 rng{2024};
    for (int trial = 0; trial < 20; ++trial) {
        auto c = random_table(2, 3, 2, rng);
        auto result = extract_witness(c, 2, 2, 1, 1, 2);
        CHECK(result.n == 3);
        CHECK(to_string(result.witness) == "2:3:[1,2,1]");
        CHECK(span_monochromatic(c.objects(), result.witness, 2, 1));
        REQUIRE(result.transcript.size() == 2);
        CHECK(result.transcript[0].pyramids == 1);
        CHECK(result.transcript[1].level == 1);
    }

    for (int trial = 0; trial < 5; ++trial) {
        auto c = random_table(2, 8, 2, rng);
        auto result = extract_witness(c, 2, 3, 1, 1, 2);
        CHECK(span_monochromatic(c.objects(), result.witness, 2, 1));
        CHECK(result.witness.level() == 3);
    }
}

TEST_CASE("pipeline with wider witnesses")
{
    auto c = Colouring::builtin("type-hash:2", 2);
    auto result = extract_witness(c, 2, 2, 2, 1, 2);
    CHECK(span_monochromatic(c.objects(), result.witness, 2, 1));
    CHECK(result.witness.length() == 2);

    auto again = extract_witness(c, 2, 2, 2, 1, 2);
    CHECK(again.witness == result.witness);
    CHECK(again.transcript.size() == result.transcript.size());
    for (std::size_t i = 0; i < again.transcript.size(); ++i)
        CHECK(again.transcript[i].ground == result.transcript[i].ground);
}

TEST_CASE("pipeline with proof bounds")
{
    PipelineOptions options;
    options.mode = PipelineMode::proof_bounds;
    auto parity = Colouring::builtin("card-parity", 2);
    CHECK_THROWS_AS(extract_witness(parity, 1, 2, 2, 1, 2, options), InvalidArgument);

    options.table.add("MT(1,2,2)", min_milliken_taylor(1, 2, 2).value, "search");
    auto a = extract_witness(parity, 1, 2, 2, 1, 2, options);
    CHECK(a.n == 5);
    CHECK(span_monochromatic(parity.objects(), a.witness, 1, 1));

    options.table.add("MT(1,1,1)", min_milliken_taylor(1, 1, 1).value, "search");
    options.table.add("MT(3,5,1)", min_milliken_taylor(3, 5, 1).value, "search");
    auto one = Colouring::builtin("const:1", 1);
    auto b = extract_witness(one, 2, 2, 1, 1, 1, options);
    CHECK(b.n == 5);
    CHECK(b.transcript.size() == 2);
    CHECK(b.transcript[0].pyramids == 1);
}
