/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <gowers/colouring.hh>
#include <gowers/fans.hh>
#include <gowers/fin.hh>
#include <gowers/pyramids.hh>
#include <gowers/types.hh>
#include <gowers/verify.hh>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

using std::map;
using std::optional;
using std::string;
using std::vector;

namespace gowers
{
    using std::to_string;

    namespace
    {
        // Thrown inside the checks; becomes a failed report.
        struct Violation
        {
            string clause;
        };

        auto require(bool condition, const string & clause) -> void
        {
            if (! condition)
                throw Violation{clause};
        }

        using Subset = vector<int>;
        using Tuple = vector<Subset>;

        auto subsets_of(const Subset & ground, int size) -> vector<Subset>
        {
            vector<Subset> result;
            Subset current;
            std::function<void(std::size_t)> walk = [&](std::size_t from) {
                if (static_cast<int>(current.size()) == size) {
                    result.push_back(current);
                    return;
                }
                for (auto x = from; x < ground.size(); ++x) {
                    current.push_back(ground[x]);
                    walk(x + 1);
                    current.pop_back();
                }
            };
            walk(0);
            return result;
        }

        auto set_key(const Subset & s) -> string
        {
            string result = "{";
            for (std::size_t i = 0; i < s.size(); ++i)
                result += (i ? "," : "") + to_string(s[i]);
            return result + "}";
        }

        auto tuple_key(const Tuple & t) -> string
        {
            string result = "(";
            for (std::size_t i = 0; i < t.size(); ++i)
                result += (i ? "," : "") + set_key(t[i]);
            return result + ")";
        }

        // Block sequences of subset tuples: d = 1 takes every tuple, d > 1 only those
        // with a nonempty support, supports strictly separated.
        auto tuple_sequences(const vector<vector<Subset>> & choices, int d) -> vector<vector<Tuple>>
        {
            vector<Tuple> tuples{Tuple{}};
            for (const auto & options : choices) {
                vector<Tuple> next;
                for (const auto & t : tuples)
                    for (const auto & s : options) {
                        auto u = t;
                        u.push_back(s);
                        next.push_back(std::move(u));
                    }
                tuples = std::move(next);
            }
            auto bounds = [](const Tuple & t) {
                int lo = -1, hi = -1;
                for (int i = 0; i < static_cast<int>(t.size()); ++i)
                    if (! t[i].empty()) {
                        lo = lo < 0 ? i : lo;
                        hi = i;
                    }
                return std::pair{lo, hi};
            };

            vector<vector<Tuple>> result;
            vector<Tuple> prefix;
            std::function<void(int)> extend = [&](int after) {
                if (static_cast<int>(prefix.size()) == d) {
                    result.push_back(prefix);
                    return;
                }
                for (const auto & t : tuples) {
                    auto [lo, hi] = bounds(t);
                    if (d > 1 && (lo < 0 || lo <= after))
                        continue;
                    prefix.push_back(t);
                    extend(hi);
                    prefix.pop_back();
                }
            };
            extend(-1);
            return result;
        }

        auto sequence_key(const vector<Tuple> & s) -> string
        {
            string result;
            for (std::size_t i = 0; i < s.size(); ++i)
                result += (i ? ";" : "") + tuple_key(s[i]);
            return result;
        }

        struct Candidate
        {
            string name;
            vector<vector<string>> classes;
        };

        struct Classes
        {
            vector<string> vertices;
            vector<Candidate> candidates;
        };

        auto ints(const Json & j) -> vector<int>
        {
            return j.get<vector<int>>();
        }

        auto block_constant(const BlockSequence & coefficients, const BlockSequence & a) -> BlockSequence
        {
            vector<FinElement> entries;
            for (const auto & v : coefficients) {
                vector<Value> values(a.width(), 0);
                for (int j = 0; j < v.width(); ++j)
                    for (int x = 0; x < a.width(); ++x)
                        if (a[j][x] != 0)
                            values[x] = static_cast<Value>(v[j]);
                entries.emplace_back(v.level(), std::move(values));
            }
            return BlockSequence{std::move(entries)};
        }

        auto keys(const vector<BlockSequence> & bs) -> vector<string>
        {
            vector<string> result;
            for (const auto & b : bs)
                result.push_back(to_string(b));
            return result;
        }

        // The colour problem of a theorem at size n, rebuilt from definitions.
        auto classes_for(const string & theorem, const Json & p, int n) -> Classes
        {
            Classes result;
            if (theorem == "ramsey") {
                int k = p.at("k"), l = p.at("l");
                Subset ground;
                for (int x = 1; x <= n; ++x)
                    ground.push_back(x);
                for (const auto & s : subsets_of(ground, k))
                    result.vertices.push_back(set_key(s));
                for (const auto & x : subsets_of(ground, l)) {
                    vector<string> members;
                    for (const auto & s : subsets_of(x, k))
                        members.push_back(set_key(s));
                    result.candidates.push_back(Candidate{set_key(x), {members}});
                }
            }
            else if (theorem == "mt") {
                int d = p.at("d"), m = p.at("m");
                result.vertices = keys(enumerate_block_sequences(1, n, d));
                for (const auto & b : enumerate_block_sequences(1, n, m)) {
                    vector<FinElement> unions;
                    for (const auto & e : span(b, SpanSelector::full_product(1)))
                        unions.push_back(e.element);
                    result.candidates.push_back(Candidate{to_string(b), {keys(block_tuples(unions, d))}});
                }
            }
            else if (theorem == "gowers") {
                int k = p.at("k"), l = p.at("l"), m = p.at("m"), d = p.at("d");
                result.vertices = keys(enumerate_block_sequences(k, n, d));
                for (const auto & b : enumerate_block_sequences(l, n, m)) {
                    vector<string> members;
                    for (const auto & t : combined_span_d(b, k, d))
                        members.push_back(to_string(t.tuple));
                    result.candidates.push_back(Candidate{to_string(b), {members}});
                }
            }
            else if (theorem == "type-hom") {
                int k = p.at("k"), m = p.at("m"), d = p.at("d");
                result.vertices = keys(enumerate_block_sequences(k, n, d));
                auto coefficients = enumerate_block_sequences(k, m, d);
                for (const auto & a : enumerate_block_sequences(1, n, m)) {
                    map<vector<TypeSeq>, vector<string>> by_type;
                    for (const auto & v : coefficients) {
                        auto q = block_constant(v, a);
                        by_type[types_only(type_of(q))].push_back(to_string(q));
                    }
                    Candidate c{to_string(a), {}};
                    for (auto & [type, members] : by_type)
                        c.classes.push_back(std::move(members));
                    result.candidates.push_back(std::move(c));
                }
            }
            else if (theorem == "size-insens") {
                auto ks = ints(p.at("ks")), ls = ints(p.at("ls"));
                int d = p.at("d");
                Subset ground;
                for (int x = 1; x <= n; ++x)
                    ground.push_back(x);
                auto upto = [](const Subset & g, int k) {
                    vector<Subset> all;
                    for (int j = 0; j <= k; ++j)
                        for (auto & s : subsets_of(g, j))
                            all.push_back(std::move(s));
                    return all;
                };
                vector<vector<Subset>> everything;
                for (auto k : ks)
                    everything.push_back(upto(ground, k));
                for (const auto & s : tuple_sequences(everything, d))
                    result.vertices.push_back(sequence_key(s));

                vector<vector<Subset>> big;
                for (auto l : ls)
                    big.push_back(subsets_of(ground, l));
                for (const auto & bs : tuple_sequences(big, 1)) {
                    const auto & b = bs.front();
                    vector<vector<Subset>> within;
                    for (std::size_t i = 0; i < ks.size(); ++i)
                        within.push_back(upto(b[i], ks[i]));
                    map<vector<int>, vector<string>> by_size;
                    for (const auto & s : tuple_sequences(within, d)) {
                        vector<int> sizes;
                        for (const auto & t : s)
                            for (const auto & x : t)
                                sizes.push_back(static_cast<int>(x.size()));
                        by_size[sizes].push_back(sequence_key(s));
                    }
                    Candidate c{tuple_key(b), {}};
                    for (auto & [sizes, members] : by_size)
                        c.classes.push_back(std::move(members));
                    result.candidates.push_back(std::move(c));
                }
            }
            else
                throw ParseError{"unknown theorem '" + theorem + "'"};
            return result;
        }

        auto check_colouring(const Classes & problem, const Json & colours, int r, const string & where) -> void
        {
            require(colours.is_object(), where + ": colours must be an object");
            map<string, int> table;
            for (const auto & [key, value] : colours.items()) {
                int c = value.get<int>();
                require(c >= 1 && c <= r, where + ": colour " + to_string(c) + " of '" + key + "' is outside 1.." + to_string(r));
                table.emplace(key, c);
            }
            require(table.size() == problem.vertices.size(), where + ": colours " + to_string(table.size()) + " objects, the problem has "
                    + to_string(problem.vertices.size()));
            for (const auto & v : problem.vertices)
                require(table.contains(v), where + ": no colour for '" + v + "'");

            for (const auto & candidate : problem.candidates) {
                bool broken = false;
                for (const auto & cls : candidate.classes) {
                    std::set<int> seen;
                    for (const auto & key : cls)
                        seen.insert(table.at(key));
                    broken = broken || seen.size() > 1;
                }
                require(broken, where + ": candidate " + candidate.name + " is monochromatic on every class");
            }
        }

        auto check_log(const Classes & problem, const Json & log, int n, const string & where) -> void
        {
            require(log.at("n").get<int>() == n, where + ": exhaustive pass is at n = " + to_string(log.at("n").get<int>()) + ", expected " + to_string(n));
            require(log.at("vertices").get<std::size_t>() == problem.vertices.size(), where + ": exhaustive pass counts "
                    + to_string(log.at("vertices").get<int>()) + " objects, recount gives " + to_string(problem.vertices.size()));
            require(! problem.candidates.empty(), where + ": no candidates at n = " + to_string(n) + ", so the statement fails there");
            require(log.at("candidates").get<std::size_t>() <= problem.candidates.size(), where + ": exhaustive pass has more candidates than exist");
        }

        auto verify_minimum(const Json & c) -> void
        {
            const string theorem = c.at("theorem");
            const auto & p = c.at("params");
            int r = p.at("r"), value = c.at("value");
            require(value >= 1, "value must be positive");
            if (value > 1) {
                require(! c.at("counterexample").is_null(), "no counterexample at n = " + to_string(value - 1));
                const auto & ce = c.at("counterexample");
                require(ce.at("n").get<int>() == value - 1, "counterexample is not at n = value - 1");
                check_colouring(classes_for(theorem, p, value - 1), ce.at("colors"), r, "counterexample at n = " + to_string(value - 1));
            }
            check_log(classes_for(theorem, p, value), c.at("exhaustive"), value, "exhaustive");
        }

        auto verify_verdict(const Json & c) -> void
        {
            const string theorem = c.at("theorem");
            const auto & p = c.at("params");
            int n = p.at("n");
            auto problem = classes_for(theorem, p, n);
            if (c.at("holds").get<bool>()) {
                require(c.at("counterexample").is_null(), "a verdict that holds cannot carry a counterexample");
                check_log(problem, c.at("exhaustive"), n, "exhaustive");
            }
            else
                check_colouring(problem, c.at("counterexample").at("colors"), p.at("r").get<int>(), "counterexample");
        }

        auto shape_of(const BlockSequence & b, int level, int length, int width, const string & what) -> void
        {
            require(b.level() == level && b.length() == length && b.width() == width,
                what + " must lie in FIN_" + to_string(level) + "^[" + to_string(length) + "](" + to_string(width) + ")");
        }

        auto colour_named(const optional<int> & colour, const Json & claimed, const string & what) -> void
        {
            require(colour.has_value(), what + " is not monochromatic");
            if (! claimed.is_null())
                require(*colour == claimed.get<int>(), what + " has colour " + to_string(*colour) + ", not the claimed " + to_string(claimed.get<int>()));
        }

        // Names the first object off the common colour.
        auto check_monochromatic(const ObjectColouring & colour, const vector<BlockSequence> & objects, const Json & claimed, const string & what) -> void
        {
            require(! objects.empty(), what + " is empty");
            int expected = claimed.is_null() ? colour(objects.front()) : claimed.get<int>();
            for (const auto & o : objects) {
                int got = colour(o);
                require(got == expected, what + ": " + to_string(o) + " has colour " + to_string(got) + ", expected " + to_string(expected));
            }
        }

        auto verify_witness(const Json & c, const Colouring & colouring) -> void
        {
            const string theorem = c.at("theorem");
            const auto & p = c.at("params");
            const string text = c.at("witness");
            auto objects = colouring.objects();
            int n = p.at("n");

            if (theorem == "gowers") {
                int k = p.at("k"), l = p.at("l"), m = p.at("m"), d = p.at("d");
                auto b = parse_block_sequence(text);
                shape_of(b, l, m, n, "witness");
                check_monochromatic(objects, block_tuples(combined_span_elements(b, k), d), c.at("color"), "combined span of " + text);
            }
            else if (theorem == "mt") {
                int m = p.at("m"), d = p.at("d");
                auto b = parse_block_sequence(text);
                shape_of(b, 1, m, n, "witness");
                vector<FinElement> unions;
                for (const auto & e : span(b, SpanSelector::full_product(1)))
                    unions.push_back(e.element);
                check_monochromatic(objects, block_tuples(unions, d), c.at("color"), "FIN_1^[" + to_string(d) + "] of " + text);
            }
            else if (theorem == "neighbour") {
                auto ls = ints(p.at("ls"));
                int m = p.at("m");
                auto b = parse_block_sequence(text);
                shape_of(b, static_cast<int>(ls.size()), m, n, "witness");
                colour_named(span_monochromatic(objects, b, SpanSelector::neighbour(ls)), c.at("color"), "neighbour span of " + text);
            }
            else if (theorem == "type-hom") {
                int k = p.at("k"), m = p.at("m"), d = p.at("d");
                auto a = parse_block_sequence(text);
                shape_of(a, 1, m, n, "witness");
                map<vector<TypeSeq>, int> seen;
                for (const auto & v : enumerate_block_sequences(k, m, d)) {
                    auto q = block_constant(v, a);
                    auto [it, inserted] = seen.emplace(types_only(type_of(q)), objects(q));
                    require(inserted || it->second == objects(q), "type " + to_string(it->first) + " takes two colours on " + text);
                }
            }
            else if (theorem == "size-insens") {
                auto ks = ints(p.at("ks")), ls = ints(p.at("ls"));
                int d = p.at("d");
                auto b = Json::parse(text).get<vector<Subset>>();
                require(b.size() == ls.size(), "witness needs one set per l_i");
                for (std::size_t i = 0; i < b.size(); ++i) {
                    require(static_cast<int>(b[i].size()) == ls[i] && std::is_sorted(b[i].begin(), b[i].end()), "witness set " + to_string(i + 1) + " has the wrong size");
                    for (auto x : b[i])
                        require(x >= 1 && x <= n, "witness leaves {1.." + to_string(n) + "}");
                }
                vector<vector<Subset>> within;
                for (std::size_t i = 0; i < ks.size(); ++i) {
                    vector<Subset> all;
                    for (int j = 0; j <= ks[i]; ++j)
                        for (auto & s : subsets_of(b[i], j))
                            all.push_back(std::move(s));
                    within.push_back(std::move(all));
                }
                map<vector<int>, int> seen;
                for (const auto & s : tuple_sequences(within, d)) {
                    vector<int> sizes;
                    for (const auto & t : s)
                        for (const auto & x : t)
                            sizes.push_back(static_cast<int>(x.size()));
                    int colour = colouring(sequence_key(s));
                    auto [it, inserted] = seen.emplace(sizes, colour);
                    require(inserted || it->second == colour, sequence_key(s) + " breaks size-insensitivity");
                }
            }
            else
                throw ParseError{"unknown witness theorem '" + theorem + "'"};
        }

        auto verify_pipeline(const Json & c, const Colouring & colouring) -> void
        {
            const auto & p = c.at("params");
            int k = p.at("k"), l = p.at("l"), m = p.at("m"), d = p.at("d");
            int n = c.at("n");
            auto w = parse_block_sequence(c.at("witness").get<string>());
            shape_of(w, l, m, n, "witness");
            check_monochromatic(colouring.objects(), block_tuples(combined_span_elements(w, k), d), c.at("color"), "combined span of the witness");

            const auto & stages = c.at("stages");
            require(stages.size() == static_cast<std::size_t>(k), "transcript needs one stage per level");
            require(parse_block_sequence(stages.front().at("witness").get<string>()) == w, "first stage does not end in the witness");
            for (std::size_t i = 0; i < stages.size(); ++i) {
                const auto & s = stages[i];
                string where = "stage " + to_string(i + 1);
                int top = s.at("top");
                auto ground = parse_block_sequence(s.at("ground").get<string>());
                auto witness = parse_block_sequence(s.at("witness").get<string>());
                if (s.at("pyramid_sequence").is_null()) {
                    require(i + 1 == stages.size(), where + ": only the last stage may be the base");
                    vector<FinElement> scaled;
                    for (const auto & e : ground) {
                        vector<Value> values;
                        for (auto x : e.values())
                            values.push_back(static_cast<Value>(x * top));
                        scaled.emplace_back(top, std::move(values));
                    }
                    require(BlockSequence{std::move(scaled)} == witness, where + ": base witness is not the ground scaled by " + to_string(top));
                    continue;
                }
                require(i + 1 < stages.size(), where + ": the last stage must be the base");
                PyramidSequence pyramids{top, ground};
                require(to_string(pyramids.pyramids()) == s.at("pyramid_sequence").get<string>(), where + ": pyramids do not match the ground");
                auto sub = parse_block_sequence(s.at("sub_witness").get<string>());
                require(sub == parse_block_sequence(stages[i + 1].at("witness").get<string>()), where + ": sub-witness is not the next stage's witness");
                auto transferred = followup_transfer(sub, tetris_one(pyramids));
                require(to_string(transferred) == s.at("transferred").get<string>(), where + ": transfer does not match");
                require(tetris(1, witness) == transferred, where + ": T_1 of the witness is not the transferred sequence");
            }
        }

        auto map_colours(const Json & colours, int r) -> map<string, int>
        {
            map<string, int> table;
            for (const auto & [key, value] : colours.items()) {
                int c = value.get<int>();
                require(c >= 1 && c <= r, "colour of '" + key + "' is outside 1.." + to_string(r));
                table.emplace(key, c);
            }
            return table;
        }

        auto check_pair_counterexample(const OrderedFan & s, const OrderedFan & t, const OrderedFan & u, const map<string, int> & table, const string & where)
            -> void
        {
            auto colourable = enumerate_epimorphisms(u, s);
            require(table.size() == colourable.size(), where + ": colours " + to_string(table.size()) + " maps, there are " + to_string(colourable.size()));
            for (const auto & f : colourable)
                require(table.contains(to_string(f)), where + ": no colour for " + to_string(f));
            auto hs = enumerate_epimorphisms(t, s);
            for (const auto & g : enumerate_epimorphisms(u, t)) {
                std::set<int> seen;
                for (const auto & h : hs)
                    seen.insert(table.at(to_string(compose(h, g))));
                require(seen.size() > 1, where + ": (T choose S) o " + to_string(g) + " is monochromatic");
            }
        }

        auto verify_ramsey_pair(const Json & c) -> void
        {
            const auto & p = c.at("params");
            auto s = parse_fan(p.at("S").get<string>()), t = parse_fan(p.at("T").get<string>());
            int r = p.at("r");
            require(t.height() >= s.height() && t.width() >= s.width(), "T must be at least as high and wide as S");

            auto recount = [&](const OrderedFan & u) {
                const auto & log = c.at("exhaustive");
                require(log.at("vertices").get<std::size_t>() == enumerate_epimorphisms(u, s).size(), "exhaustive pass miscounts (U choose S)");
                require(! enumerate_epimorphisms(u, t).empty(), "(U choose T) is empty, so the pair fails at U");
            };

            if (c.at("claim") == "verdict") {
                auto u = parse_fan(p.at("U").get<string>());
                if (c.at("holds").get<bool>()) {
                    require(c.at("counterexample").is_null(), "a verdict that holds cannot carry a counterexample");
                    recount(u);
                }
                else
                    check_pair_counterexample(s, t, u, map_colours(c.at("counterexample").at("colors"), r), "counterexample");
                return;
            }

            auto witness = parse_fan(c.at("value").get<string>());
            vector<OrderedFan> earlier;
            for (int v = t.vertices(); v <= witness.vertices(); ++v) {
                if (v == 1)
                    earlier.emplace_back(0, 1);
                else
                    for (int w = t.width(); w < v; ++w)
                        if ((v - 1) % w == 0 && (v - 1) / w >= std::max(1, t.height()))
                            earlier.emplace_back((v - 1) / w, w);
            }
            auto at = std::find(earlier.begin(), earlier.end(), witness);
            require(at != earlier.end(), "witness is not an admissible fan");
            earlier.erase(at, earlier.end());

            const auto & rejected = c.at("counterexample");
            require(rejected.size() == earlier.size(), "expected a counterexample for each of the " + to_string(earlier.size()) + " smaller fans");
            for (std::size_t i = 0; i < earlier.size(); ++i) {
                require(parse_fan(rejected[i].at("U").get<string>()) == earlier[i], "counterexample " + to_string(i + 1) + " is for the wrong fan");
                check_pair_counterexample(s, t, earlier[i], map_colours(rejected[i].at("colors"), r), "counterexample at " + to_string(earlier[i]));
            }
            recount(witness);
        }

        auto verify_amalgam(const Json & c) -> void
        {
            const auto & p = c.at("params");
            auto phi1 = parse_fan_map(p.at("phi1").get<string>()), phi2 = parse_fan_map(p.at("phi2").get<string>());
            auto d = parse_fan(c.at("d").get<string>());
            auto psi1 = parse_fan_map(c.at("psi1").get<string>()), psi2 = parse_fan_map(c.at("psi2").get<string>());
            require(is_epimorphism(phi1) && is_epimorphism(phi2), "inputs are not epimorphisms");
            require(psi1.source() == d && psi2.source() == d, "outputs do not start at D");
            require(psi1.target() == phi1.source() && psi2.target() == phi2.source(), "outputs do not land in B and C");
            require(is_epimorphism(psi1), "psi1 is not an epimorphism");
            require(is_epimorphism(psi2), "psi2 is not an epimorphism");
            require(compose(phi1, psi1) == compose(phi2, psi2), "the square does not commute");
        }
    }

    auto verify_certificate(const Json & c) -> VerifyReport
    {
        VerifyReport report;
        try {
            if (c.at("version") != tool_version)
                report.warnings.push_back("certificate version " + c.at("version").get<string>() + " differs from " + tool_version);

            const string claim = c.at("claim");
            const string theorem = c.at("theorem");
            if (theorem == "ramsey-pair")
                verify_ramsey_pair(c);
            else if (theorem == "amalgam")
                verify_amalgam(c);
            else if (claim == "minimum")
                verify_minimum(c);
            else if (claim == "verdict")
                verify_verdict(c);
            else if (claim == "witness" || claim == "pipeline") {
                auto colouring = Colouring::from_spec(c.at("coloring").get<string>(), c.at("colors").get<int>());
                if (claim == "pipeline")
                    verify_pipeline(c, colouring);
                else
                    verify_witness(c, colouring);
            }
            else
                throw ParseError{"unknown claim '" + claim + "'"};
            report.pass = true;
        }
        catch (const Violation & v) {
            report.pass = false;
            report.clause = v.clause;
        }
        catch (const nlohmann::json::exception & e) {
            throw ParseError{string{"malformed certificate: "} + e.what()};
        }
        catch (const InvalidArgument & e) {
            report.pass = false;
            report.clause = e.what();
        }
        return report;
    }
}
