/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <gowers/certificate.hh>

using std::optional;
using std::string;
using std::vector;

namespace gowers
{
    using std::to_string;

    namespace
    {
        auto base(const string & theorem, const string & claim, const Json & params) -> Json
        {
            return Json{{"theorem", theorem}, {"claim", claim}, {"params", params}, {"version", tool_version}};
        }

        auto colours_json(const vector<string> & keys, const vector<int> & colours) -> Json
        {
            Json table = Json::object();
            for (std::size_t i = 0; i < keys.size(); ++i)
                table[keys[i]] = colours[i];
            return table;
        }

        auto counterexample_json(const optional<Counterexample> & c) -> Json
        {
            if (! c)
                return nullptr;
            return Json{{"n", c->n}, {"colors", colours_json(c->keys, c->colours)}};
        }

        auto log_json(const ExhaustiveLog & log) -> Json
        {
            return Json{{"n", log.n}, {"nodes", log.nodes}, {"vertices", log.vertices}, {"candidates", log.candidates}, {"subproblems", log.subproblems}};
        }

        auto maybe(const optional<BlockSequence> & b) -> Json
        {
            if (! b)
                return nullptr;
            return to_string(*b);
        }

        auto map_colours(const RamseyPairResult & r) -> Json
        {
            vector<string> keys;
            for (const auto & f : r.colourable)
                keys.push_back(to_string(f));
            return colours_json(keys, *r.counterexample);
        }
    }

    auto minimum_certificate(const string & theorem, const Json & params, const MinResult & result) -> Json
    {
        auto c = base(theorem, "minimum", params);
        c["value"] = result.value;
        c["counterexample"] = counterexample_json(result.counterexample);
        c["exhaustive"] = log_json(result.exhaustive);
        return c;
    }

    auto verdict_certificate(const string & theorem, const Json & params, const Verdict & verdict) -> Json
    {
        auto c = base(theorem, "verdict", params);
        c["holds"] = verdict.holds;
        c["counterexample"] = counterexample_json(verdict.counterexample);
        c["exhaustive"] = log_json(verdict.log);
        return c;
    }

    auto witness_certificate(const string & theorem, const Json & params, const string & colouring, int r, const string & witness, optional<int> colour)
        -> Json
    {
        auto c = base(theorem, "witness", params);
        c["coloring"] = colouring;
        c["colors"] = r;
        c["witness"] = witness;
        c["color"] = colour ? Json(*colour) : Json(nullptr);
        return c;
    }

    auto pipeline_certificate(const Json & params, const string & colouring, int r, const PipelineResult & result) -> Json
    {
        auto c = witness_certificate("pipeline", params, colouring, r, to_string(result.witness), result.colour);
        c["claim"] = "pipeline";
        c["n"] = result.n;
        Json stages = Json::array();
        for (const auto & s : result.transcript)
            stages.push_back(Json{{"level", s.level}, {"top", s.top}, {"width", s.width}, {"pyramids", s.pyramids}, {"ground", to_string(s.ground)},
                {"pyramid_sequence", maybe(s.pyramid_sequence)}, {"induced", s.induced}, {"sub_witness", maybe(s.sub_witness)},
                {"transferred", maybe(s.transferred)}, {"witness", to_string(s.witness)}});
        c["stages"] = stages;
        return c;
    }

    auto ramsey_pair_certificate(const OrderedFan & s, const OrderedFan & t, int r, const RamseyPairResult & result) -> Json
    {
        auto c = base("ramsey-pair", "verdict", Json{{"S", to_string(s)}, {"T", to_string(t)}, {"U", to_string(result.u)}, {"r", r}});
        c["holds"] = result.holds;
        c["counterexample"] = result.counterexample ? Json{{"colors", map_colours(result)}} : Json(nullptr);
        c["exhaustive"] = Json{{"nodes", result.nodes}, {"vertices", result.colourable.size()}};
        return c;
    }

    auto ramsey_witness_certificate(const OrderedFan & s, const OrderedFan & t, int r, const RamseyWitness & result) -> Json
    {
        auto c = base("ramsey-pair", "minimum", Json{{"S", to_string(s)}, {"T", to_string(t)}, {"r", r}});
        c["value"] = to_string(result.witness.u);
        Json rejected = Json::array();
        for (const auto & x : result.rejected)
            rejected.push_back(Json{{"U", to_string(x.u)}, {"colors", map_colours(x)}});
        c["counterexample"] = rejected;
        c["exhaustive"] = Json{{"U", to_string(result.witness.u)}, {"nodes", result.witness.nodes}, {"vertices", result.witness.colourable.size()}};
        return c;
    }

    auto amalgam_certificate(const FanMap & phi1, const FanMap & phi2, const Amalgam & result) -> Json
    {
        auto c = base("amalgam", "amalgam", Json{{"phi1", to_string(phi1)}, {"phi2", to_string(phi2)}});
        c["d"] = to_string(result.d);
        c["psi1"] = to_string(result.to_b);
        c["psi2"] = to_string(result.to_c);
        return c;
    }

    auto cache_key(const Json & certificate) -> string
    {
        string claim = certificate.at("claim");
        string result = (claim == "minimum" ? string{"min"} : claim) + "-" + certificate.at("theorem").get<string>() + "(";
        bool first = true;
        for (const auto & [key, value] : certificate.at("params").items()) {
            result += (first ? "" : ",") + key + "=" + (value.is_string() ? value.get<string>() : value.dump());
            first = false;
        }
        return result + ")";
    }

    auto exact_table_from(const vector<Json> & certificates) -> ExactTable
    {
        ExactTable table;
        for (const auto & c : certificates) {
            if (c.at("claim") != "minimum")
                continue;
            const auto & p = c.at("params");
            auto arg = [&](const char * name) { return BigInt{p.at(name).get<int>()}; };
            if (c.at("theorem") == "ramsey")
                table.add(ExactTable::key("R", {arg("k"), arg("l"), arg("r")}), BigInt{c.at("value").get<int>()}, cache_key(c));
            else if (c.at("theorem") == "mt")
                table.add(ExactTable::key("MT", {arg("d"), arg("m"), arg("r")}), BigInt{c.at("value").get<int>()}, cache_key(c));
        }
        return table;
    }
}
