/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <gowers/bounds.hh>
#include <gowers/certificate.hh>
#include <gowers/colouring.hh>
#include <gowers/fans.hh>
#include <gowers/fin.hh>
#include <gowers/pipeline.hh>
#include <gowers/search.hh>
#include <gowers/types.hh>
#include <gowers/verify.hh>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace gowers;

using std::optional;
using std::string;
using std::vector;

namespace
{
    constexpr int found = 0, none = 1, budget = 2, usage = 3;

    struct Globals
    {
        string coloring;
        int colors = 2;
        optional<std::uint64_t> budget_nodes;
        optional<double> budget_seconds;
        int workers = 1;
        string cache;
        string out;
    };

    auto emit(const Globals & g, const string & text) -> void
    {
        if (g.out.empty())
            std::cout << text << '\n';
        else {
            std::ofstream file{g.out};
            if (! file)
                throw InvalidArgument{"cannot write " + g.out};
            file << text << '\n';
        }
    }

    auto emit(const Globals & g, const Json & j) -> void
    {
        emit(g, j.dump(2));
    }

    auto options(const Globals & g, int max_n = 64) -> SearchOptions
    {
        SearchOptions o;
        o.budget.nodes = g.budget_nodes;
        o.budget.seconds = g.budget_seconds;
        o.workers = g.workers;
        o.max_n = max_n;
        return o;
    }

    auto budget_of(const Globals & g) -> Budget
    {
        return Budget{g.budget_nodes, g.budget_seconds};
    }

    auto colouring(const Globals & g) -> Colouring
    {
        if (g.coloring.empty())
            throw InvalidArgument{"this command needs --coloring"};
        return Colouring::from_spec(g.coloring, g.colors);
    }

    auto read_json(const string & path) -> Json
    {
        std::ifstream file{path};
        if (! file)
            throw ParseError{"cannot read " + path};
        try {
            return Json::parse(file);
        }
        catch (const nlohmann::json::exception & e) {
            throw ParseError{path + ": " + e.what()};
        }
    }

    auto cache_path(const Globals & g, const string & key) -> std::filesystem::path
    {
        return std::filesystem::path{g.cache} / (key + ".json");
    }

    auto cached_certificates(const Globals & g) -> vector<Json>
    {
        vector<Json> result;
        if (g.cache.empty() || ! std::filesystem::is_directory(g.cache))
            return result;
        vector<std::filesystem::path> paths;
        for (const auto & entry : std::filesystem::directory_iterator{g.cache})
            if (entry.path().extension() == ".json")
                paths.push_back(entry.path());
        std::sort(paths.begin(), paths.end());
        for (const auto & p : paths)
            result.push_back(read_json(p.string()));
        return result;
    }

    // Verifies, then writes into the cache if one is configured.
    auto settle(const Globals & g, Json certificate) -> Json
    {
        auto report = verify_certificate(certificate);
        if (! report.pass)
            throw Error{"internal: fresh certificate fails verification: " + report.clause};
        certificate["status"] = "verified";
        if (! g.cache.empty()) {
            std::filesystem::create_directories(g.cache);
            std::ofstream file{cache_path(g, cache_key(certificate))};
            file << certificate.dump(2) << '\n';
        }
        return certificate;
    }

    auto from_cache(const Globals & g, const string & key) -> optional<Json>
    {
        if (g.cache.empty() || ! std::filesystem::exists(cache_path(g, key)))
            return std::nullopt;
        auto c = read_json(cache_path(g, key).string());
        if (! verify_certificate(c).pass)
            return std::nullopt;
        return c;
    }

    auto minimum(const Globals & g, const string & theorem, const Json & params, const std::function<MinResult()> & run) -> int
    {
        Json probe{{"theorem", theorem}, {"claim", "minimum"}, {"params", params}};
        if (auto hit = from_cache(g, cache_key(probe))) {
            emit(g, *hit);
            return found;
        }
        emit(g, settle(g, minimum_certificate(theorem, params, run())));
        return found;
    }

    auto witness(const Globals & g, const string & theorem, const Json & params, const optional<string> & w, optional<int> colour) -> int
    {
        if (! w) {
            emit(g, Json{{"theorem", theorem}, {"claim", "witness"}, {"params", params}, {"coloring", g.coloring}, {"witness", nullptr}});
            return none;
        }
        emit(g, settle(g, witness_certificate(theorem, params, g.coloring, g.colors, *w, colour)));
        return found;
    }

    auto csv(const vector<int> & xs) -> string
    {
        string result;
        for (auto x : xs)
            result += (result.empty() ? "" : ",") + std::to_string(x);
        return result;
    }
}

auto main(int argc, char * argv[]) -> int
{
    CLI::App app{"Gowers-type Ramsey theorems on FIN_k and ordered fans: search, witnesses, certificates"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--coloring", g.coloring, "builtin:<name>, table:<file> or exec:<cmd>");
    app.add_option("--colors", g.colors, "number of colours r")->check(CLI::PositiveNumber);
    app.add_option("--budget-nodes", g.budget_nodes, "search node allowance");
    app.add_option("--budget-seconds", g.budget_seconds, "wall-clock allowance");
    app.add_option("--workers", g.workers, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--cache", g.cache, "exact-value cache directory");
    app.add_option("--out", g.out, "write the result here instead of stdout");

    std::function<int()> action;

    int k = 1, l = 1, m = 1, d = 1, n = 1;
    optional<int> n_opt;
    vector<int> ks, ls;
    bool attain = false;

    auto * enumerate = app.add_subcommand("enumerate", "list FIN_k(n) or its block sequences of length d");
    enumerate->add_option("--k", k)->required();
    enumerate->add_option("--n", n)->required();
    optional<int> length;
    enumerate->add_option("--d", length, "block sequences of this length instead of elements");
    enumerate->add_flag("--attain", attain, "only elements attaining k");
    enumerate->callback([&] {
        action = [&] {
            std::ostringstream text;
            if (length)
                for (const auto & b : enumerate_block_sequences(k, n, *length))
                    text << to_string(b) << '\n';
            else
                for (const auto & e : enumerate_elements(k, n, attain))
                    text << to_string(e) << '\n';
            auto s = text.str();
            emit(g, s.empty() ? s : s.substr(0, s.size() - 1));
            return found;
        };
    });

    string block_text, selector_text;
    auto * span_cmd = app.add_subcommand("span", "span of a block sequence, with a term for each element");
    span_cmd->add_option("--b", block_text, "block sequence")->required();
    span_cmd->add_option("--k", k, "level of the combined span");
    span_cmd->add_option("--selector", selector_text, "full:<k>, gowers:<k> or neighbour:<l1,...>; default is the combined span");
    span_cmd->callback([&] {
        action = [&] {
            auto b = parse_block_sequence(block_text);
            SpanSet set;
            if (selector_text.empty())
                set = combined_span(b, k);
            else {
                auto colon = selector_text.find(':');
                auto name = selector_text.substr(0, colon);
                auto arg = colon == string::npos ? string{} : selector_text.substr(colon + 1);
                if (name == "full")
                    set = span(b, SpanSelector::full_product(std::stoi(arg)));
                else if (name == "gowers")
                    set = span(b, SpanSelector::gowers(std::stoi(arg)));
                else if (name == "neighbour") {
                    vector<int> xs;
                    std::stringstream in{arg};
                    for (string x; std::getline(in, x, ',');)
                        xs.push_back(std::stoi(x));
                    set = span(b, SpanSelector::neighbour(xs));
                }
                else
                    throw InvalidArgument{"unknown selector '" + selector_text + "'"};
            }
            Json out = Json::array();
            for (const auto & e : set)
                out.push_back(Json{{"element", to_string(e.element)}, {"term", to_string(e.provenance)}});
            emit(g, out);
            return found;
        };
    });

    string object_text;
    auto * type_cmd = app.add_subcommand("type", "type of an element or of a block sequence");
    type_cmd->add_option("object", object_text, "element or ';'-joined tuple")->required();
    type_cmd->callback([&] {
        action = [&] {
            Json out = Json::array();
            for (const auto & t : type_of(parse_block_sequence(object_text)))
                out.push_back(Json{{"type", to_string(t.type)}, {"blocks", to_string(t.blocks)}});
            emit(g, out);
            return found;
        };
    });

    auto * search = app.add_subcommand("search", "exact minimal numbers, verdicts and witnesses");
    search->require_subcommand(1);
    auto add_n = [&](CLI::App * c) { c->add_option("--n", n_opt, "fixed n: find a witness for --coloring, or decide the statement"); };

    auto * min_gowers_cmd = search->add_subcommand("min-gowers", "least n for FIN_k^[d] colourings and FIN_l^[m] witnesses");
    for (auto [name, var] : {std::pair{"--k", &k}, {"--l", &l}, {"--m", &m}, {"--d", &d}})
        min_gowers_cmd->add_option(name, *var)->required();
    add_n(min_gowers_cmd);
    min_gowers_cmd->callback([&] {
        action = [&] {
            if (n_opt) {
                auto c = colouring(g);
                auto w = find_gowers_witness(c, k, l, m, d, *n_opt, g.workers);
                Json p{{"k", k}, {"l", l}, {"m", m}, {"d", d}, {"n", *n_opt}};
                return witness(g, "gowers", p, w ? optional<string>{to_string(*w)} : std::nullopt,
                    w ? span_monochromatic(c.objects(), *w, k, d) : std::nullopt);
            }
            return minimum(g, "gowers", Json{{"k", k}, {"l", l}, {"m", m}, {"d", d}, {"r", g.colors}},
                [&] { return min_gowers(k, l, m, d, g.colors, options(g)); });
        };
    });

    auto * min_mt_cmd = search->add_subcommand("min-mt", "Milliken-Taylor numbers");
    min_mt_cmd->add_option("--d", d)->required();
    min_mt_cmd->add_option("--m", m)->required();
    add_n(min_mt_cmd);
    min_mt_cmd->callback([&] {
        action = [&] {
            if (n_opt && ! g.coloring.empty()) {
                auto c = colouring(g);
                auto w = find_mt_witness(c, d, m, *n_opt, g.workers);
                optional<int> colour;
                if (w)
                    colour = c(block_tuples(combined_span_elements(*w, 1), d).front());
                return witness(g, "mt", Json{{"d", d}, {"m", m}, {"n", *n_opt}}, w ? optional<string>{to_string(*w)} : std::nullopt, colour);
            }
            if (n_opt) {
                Json p{{"d", d}, {"m", m}, {"r", g.colors}, {"n", *n_opt}};
                auto c = settle(g, verdict_certificate("mt", p, verify_mt(d, m, g.colors, *n_opt, options(g))));
                emit(g, c);
                return c.at("holds").get<bool>() ? found : none;
            }
            return minimum(g, "mt", Json{{"d", d}, {"m", m}, {"r", g.colors}}, [&] { return min_milliken_taylor(d, m, g.colors, options(g)); });
        };
    });

    auto * min_ramsey_cmd = search->add_subcommand("min-ramsey", "classical Ramsey numbers R(k,l,r)");
    min_ramsey_cmd->add_option("--k", k)->required();
    min_ramsey_cmd->add_option("--l", l)->required();
    min_ramsey_cmd->callback([&] {
        action = [&] {
            return minimum(g, "ramsey", Json{{"k", k}, {"l", l}, {"r", g.colors}}, [&] { return min_classical_ramsey(k, l, g.colors, options(g)); });
        };
    });

    auto * type_hom_cmd = search->add_subcommand("type-hom", "least n for type-homogeneous sequences, or a witness");
    type_hom_cmd->add_option("--k", k)->required();
    type_hom_cmd->add_option("--m", m)->required();
    type_hom_cmd->add_option("--d", d)->required();
    add_n(type_hom_cmd);
    type_hom_cmd->callback([&] {
        action = [&] {
            if (n_opt) {
                auto w = find_type_homogeneous(colouring(g), k, m, d, *n_opt, g.workers);
                return witness(g, "type-hom", Json{{"k", k}, {"m", m}, {"d", d}, {"n", *n_opt}}, w ? optional<string>{to_string(*w)} : std::nullopt,
                    std::nullopt);
            }
            return minimum(g, "type-hom", Json{{"k", k}, {"m", m}, {"d", d}, {"r", g.colors}},
                [&] { return min_type_homogeneous(k, m, d, g.colors, options(g)); });
        };
    });

    auto * size_cmd = search->add_subcommand("size-insens", "least n for size-insensitive sets, or a witness");
    size_cmd->add_option("--ks", ks)->required()->delimiter(',');
    size_cmd->add_option("--ls", ls)->required()->delimiter(',');
    size_cmd->add_option("--d", d)->required();
    add_n(size_cmd);
    size_cmd->callback([&] {
        action = [&] {
            if (n_opt) {
                auto w = find_size_insensitive(colouring(g), ks, ls, d, *n_opt, g.workers);
                return witness(g, "size-insens", Json{{"ks", ks}, {"ls", ls}, {"d", d}, {"n", *n_opt}},
                    w ? optional<string>{Json(*w).dump()} : std::nullopt, std::nullopt);
            }
            return minimum(g, "size-insens", Json{{"ks", ks}, {"ls", ls}, {"d", d}, {"r", g.colors}},
                [&] { return min_size_insensitive(ks, ls, d, g.colors, options(g)); });
        };
    });

    auto * probe = app.add_subcommand("probe", "finite probes");
    probe->require_subcommand(1);
    auto * neighbour = probe->add_subcommand("neighbour", "monochromatic span over prod {0, l_j, l_j + 1}");
    neighbour->add_option("--ls", ls)->required()->delimiter(',');
    neighbour->add_option("--m", m)->required();
    neighbour->add_option("--n", n)->required();
    neighbour->callback([&] {
        action = [&] {
            auto c = colouring(g);
            auto w = probe_neighbour_span(c, ls, m, n, g.workers);
            return witness(g, "neighbour", Json{{"ls", ls}, {"m", m}, {"n", n}}, w ? optional<string>{to_string(*w)} : std::nullopt,
                w ? span_monochromatic(c.objects(), *w, SpanSelector::neighbour(ls)) : std::nullopt);
        };
    });

    auto * pipeline = app.add_subcommand("pipeline", "witness extraction by the induction on k");
    pipeline->require_subcommand(1);
    auto * extract = pipeline->add_subcommand("extract", "extract a witness and its transcript");
    string mode_text = "search";
    int max_n = 12;
    for (auto [name, var] : {std::pair{"--k", &k}, {"--l", &l}, {"--m", &m}, {"--d", &d}})
        extract->add_option(name, *var)->required();
    extract->add_option("--mode", mode_text, "search or proof-bounds")->check(CLI::IsMember({"search", "proof-bounds"}));
    extract->add_option("--max-n", max_n, "largest width tried in search mode");
    extract->callback([&] {
        action = [&] {
            PipelineOptions o;
            o.mode = mode_text == "search" ? PipelineMode::search : PipelineMode::proof_bounds;
            o.workers = g.workers;
            o.max_n = max_n;
            o.table = exact_table_from(cached_certificates(g));
            auto result = extract_witness(colouring(g), k, l, m, d, g.colors, o);
            Json p{{"k", k}, {"l", l}, {"m", m}, {"d", d}, {"r", g.colors}, {"mode", mode_text}};
            emit(g, settle(g, pipeline_certificate(p, g.coloring, g.colors, result)));
            return found;
        };
    });

    auto * fans = app.add_subcommand("fans", "ordered fans");
    fans->require_subcommand(1);
    string fan_a, fan_b, fan_c, map_a, map_b;
    bool naive = false;

    auto * epis = fans->add_subcommand("epis", "epimorphisms from one fan onto another");
    epis->add_option("--from", fan_b, "source h:w")->required();
    epis->add_option("--to", fan_a, "target h:w")->required();
    epis->add_flag("--naive", naive, "filter raw vertex maps instead");
    epis->callback([&] {
        action = [&] {
            auto b = parse_fan(fan_b), a = parse_fan(fan_a);
            auto maps = naive ? naive_epimorphisms(b, a) : enumerate_epimorphisms(b, a);
            Json out = Json::array();
            for (const auto & f : maps)
                out.push_back(to_string(f));
            emit(g, Json{{"from", fan_b}, {"to", fan_a}, {"count", maps.size()}, {"maps", out}});
            return maps.empty() ? none : found;
        };
    });

    auto * amalgam = fans->add_subcommand("amalgamate", "amalgamate two epimorphisms onto a common fan");
    amalgam->add_option("--phi1", map_a, "B -> A")->required();
    amalgam->add_option("--phi2", map_b, "C -> A")->required();
    amalgam->callback([&] {
        action = [&] {
            auto phi1 = parse_fan_map(map_a), phi2 = parse_fan_map(map_b);
            emit(g, settle(g, amalgam_certificate(phi1, phi2, amalgamate(phi1, phi2))));
            return found;
        };
    });

    auto * jpp = fans->add_subcommand("jpp", "a fan projecting onto two given fans");
    jpp->add_option("--a", fan_a)->required();
    jpp->add_option("--b", fan_b)->required();
    jpp->callback([&] {
        action = [&] {
            auto j = joint_projection(parse_fan(fan_a), parse_fan(fan_b));
            emit(g, Json{{"c", to_string(j.c)}, {"to_a", to_string(j.to_a)}, {"to_b", to_string(j.to_b)}});
            return found;
        };
    });

    auto * encode = fans->add_subcommand("encode", "f* and the least-preimage families of an epimorphism");
    encode->add_option("--map", map_a)->required();
    encode->callback([&] {
        action = [&] {
            auto e = encode_epimorphism(parse_fan_map(map_a));
            emit(g, Json{{"fstar", to_string(e.fstar)}, {"families", e.families}});
            return found;
        };
    });

    auto * pair = fans->add_subcommand("ramsey-pair", "decide whether U witnesses that (S, T) is a Ramsey pair");
    pair->add_option("--S", fan_a)->required();
    pair->add_option("--T", fan_b)->required();
    pair->add_option("--U", fan_c)->required();
    pair->callback([&] {
        action = [&] {
            auto s = parse_fan(fan_a), t = parse_fan(fan_b);
            auto result = check_ramsey_pair(s, t, parse_fan(fan_c), g.colors, budget_of(g), g.workers);
            emit(g, settle(g, ramsey_pair_certificate(s, t, g.colors, result)));
            return result.holds ? found : none;
        };
    });

    int max_vertices = 16;
    auto * min_witness = fans->add_subcommand("min-witness", "least U for which (S, T) is Ramsey");
    min_witness->add_option("--S", fan_a)->required();
    min_witness->add_option("--T", fan_b)->required();
    min_witness->add_option("--max-vertices", max_vertices);
    min_witness->callback([&] {
        action = [&] {
            auto s = parse_fan(fan_a), t = parse_fan(fan_b);
            emit(g, settle(g, ramsey_witness_certificate(s, t, g.colors, min_ramsey_witness(s, t, g.colors, max_vertices, budget_of(g), g.workers))));
            return found;
        };
    });

    string bound_kind, expr_text;
    auto * bounds = app.add_subcommand("bounds", "upper-bound expressions, evaluated against the cache");
    bounds->add_option("kind", bound_kind, "G, T, S, Sd or expr")->required()->check(CLI::IsMember({"G", "T", "S", "Sd", "expr"}));
    bounds->add_option("--k", k);
    bounds->add_option("--l", l);
    bounds->add_option("--m", m);
    bounds->add_option("--d", d);
    bounds->add_option("--ks", ks)->delimiter(',');
    bounds->add_option("--ls", ls)->delimiter(',');
    bounds->add_option("--expr", expr_text);
    bounds->callback([&] {
        action = [&] {
            BoundExpr expr = 0;
            if (bound_kind == "G")
                expr = bound_G(d, k, l, m, g.colors);
            else if (bound_kind == "T")
                expr = bound_T(d, k, BoundExpr{m}, g.colors);
            else if (bound_kind == "S")
                expr = bound_S(ks, ls, g.colors);
            else if (bound_kind == "Sd")
                expr = bound_Sd(ks, ls, d, g.colors);
            else
                expr = parse_bound(expr_text);
            auto result = evaluate(expr, exact_table_from(cached_certificates(g)));
            emit(g, Json{{"expr", to_string(expr)}, {"value", result.value ? Json(result.value->str()) : Json(nullptr)}, {"residue", to_string(result.residue)}});
            return result.value ? found : none;
        };
    });

    string certificate_path;
    auto * verify = app.add_subcommand("verify", "re-check a certificate without the search code");
    verify->add_option("file", certificate_path)->required();
    verify->callback([&] {
        action = [&] {
            auto report = verify_certificate(read_json(certificate_path));
            for (const auto & w : report.warnings)
                std::cerr << "warning: " << w << '\n';
            emit(g, report.pass ? string{"pass"} : "fail: " + report.clause);
            return report.pass ? found : none;
        };
    });

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? found : usage;
    }

    try {
        return action();
    }
    catch (const BudgetExceeded & e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return budget;
    }
    catch (const ParseError & e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
    catch (const OracleError & e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
    catch (const InvalidArgument & e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
    catch (const Error & e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
}
