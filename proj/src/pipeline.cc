/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <gowers/pipeline.hh>
#include <gowers/pyramids.hh>
#include <gowers/types.hh>

#include <map>

using std::optional;
using std::string;
using std::vector;

namespace gowers
{
    using std::to_string;

    auto to_string(PipelineMode mode) -> string
    {
        return mode == PipelineMode::search ? "search" : "proof-bounds";
    }

    auto pyramid_span_homogeneous(const Colouring & c, const BlockSequence & pyramids, int k, int d) -> bool
    {
        std::map<vector<TypeSeq>, int> seen;
        for (const auto & t : block_tuples(combined_span_elements(pyramids, k), d)) {
            int colour = c(t);
            auto [it, inserted] = seen.emplace(types_only(type_of(t)), colour);
            if (! inserted && it->second != colour)
                return false;
        }
        return true;
    }

    namespace
    {
        struct Context
        {
            const PipelineOptions & options;
            int m;
            int d;
            int r;
        };

        auto bound_value(const Context & ctx, int k, int l) -> int
        {
            auto expr = bound_G(ctx.d, k, l, ctx.m, ctx.r);
            auto result = evaluate(expr, ctx.options.table);
            if (! result.value)
                throw InvalidArgument{"bound does not evaluate: " + to_string(result.residue)};
            if (*result.value > 64)
                throw InvalidArgument{"bound " + result.value->str() + " is too large to enumerate"};
            return static_cast<int>(*result.value);
        }

        auto scale(const BlockSequence & a, int l) -> BlockSequence
        {
            vector<FinElement> entries;
            for (const auto & e : a) {
                vector<Value> values(e.width());
                for (int x = 0; x < e.width(); ++x)
                    values[x] = static_cast<Value>(e[x] * l);
                entries.emplace_back(l, std::move(values));
            }
            return BlockSequence{std::move(entries)};
        }

        // q + 1 on the support, one level up.
        auto raise(const FinElement & q) -> FinElement
        {
            vector<Value> values(q.width());
            for (int x = 0; x < q.width(); ++x)
                values[x] = q[x] == 0 ? 0 : static_cast<Value>(q[x] + 1);
            return FinElement{q.level() + 1, std::move(values)};
        }

        auto lift_tuple(const BlockSequence & q, const PyramidSequence & c) -> BlockSequence
        {
            vector<FinElement> entries;
            for (const auto & e : q)
                entries.push_back(pyramid_lift(raise(e), c));
            return BlockSequence{std::move(entries)};
        }

        // Returns the stages innermost last, or nothing when this width does not suffice.
        auto stage(const Context & ctx, const Colouring & c, int k, int l, int width) -> optional<vector<PipelineStage>>
        {
            if (k == 1) {
                auto a = find_mt_witness(c, ctx.d, ctx.m, width, ctx.options.workers);
                if (! a)
                    return std::nullopt;
                PipelineStage s;
                s.level = 1;
                s.top = l;
                s.width = width;
                s.ground = *a;
                s.witness = scale(*a, l);
                return vector<PipelineStage>{s};
            }

            bool bounds = ctx.options.mode == PipelineMode::proof_bounds;
            int low = bounds ? bound_value(ctx, k - 1, l - 1) : ctx.m;
            int high = bounds ? low : width / (2 * l - 1);
            for (int pyramids = low; pyramids <= high; ++pyramids) {
                int length = pyramids * (2 * l - 1);
                if (length > width)
                    break;

                vector<BlockSequence> grounds;
                if (bounds) {
                    auto a = find_type_homogeneous(c, k, length, ctx.d, width, ctx.options.workers);
                    if (! a)
                        throw Error{"no type-homogeneous sequence of length " + to_string(length) + " within the bound " + to_string(width)};
                    grounds.push_back(*a);
                }
                else
                    grounds = enumerate_block_sequences(1, width, length);

                for (const auto & a : grounds) {
                    PyramidSequence pyramid_seq{l, a};
                    if (! bounds && ! pyramid_span_homogeneous(c, pyramid_seq.pyramids(), k, ctx.d))
                        continue;

                    auto induced = Colouring::function(
                        ctx.r, [c, pyramid_seq](const string & key) { return c(lift_tuple(parse_block_sequence(key), pyramid_seq)); },
                        "induced at level " + to_string(k - 1));
                    auto inner = stage(ctx, induced, k - 1, l - 1, pyramids);
                    if (! inner)
                        continue;

                    const auto & sub = inner->front().witness;
                    auto transferred = followup_transfer(sub, tetris_one(pyramid_seq));
                    vector<FinElement> lifted;
                    for (const auto & b : sub)
                        lifted.push_back(pyramid_lift(raise(b), pyramid_seq));
                    BlockSequence witness{std::move(lifted)};
                    if (tetris(1, witness) != transferred)
                        throw Error{"internal: lifted witness does not map onto the transferred one"};

                    PipelineStage s;
                    s.level = k;
                    s.top = l;
                    s.width = width;
                    s.pyramids = pyramids;
                    s.ground = a;
                    s.pyramid_sequence = pyramid_seq.pyramids();
                    s.induced = "c'(q) = c((q + 1)^C) on FIN_" + to_string(k - 1) + "^[" + to_string(ctx.d) + "](" + to_string(pyramids) + ")";
                    s.sub_witness = sub;
                    s.transferred = transferred;
                    s.witness = witness;
                    inner->insert(inner->begin(), s);
                    return inner;
                }
            }
            return std::nullopt;
        }
    }

    auto extract_witness(const Colouring & oracle, int k, int l, int m, int d, int r, const PipelineOptions & options) -> PipelineResult
    {
        if (k < 1 || k > l || d < 1 || d > m || r < 1)
            throw InvalidArgument{"pipeline needs 1 <= k <= l, 1 <= d <= m, r >= 1"};
        if (oracle.colours() != r)
            throw InvalidArgument{"oracle has " + to_string(oracle.colours()) + " colours, expected " + to_string(r)};
        Context ctx{options, m, d, r};

        auto finish = [&](int width, vector<PipelineStage> stages) {
            PipelineResult result;
            result.n = width;
            result.witness = stages.front().witness;
            auto colour = span_monochromatic(oracle.objects(), result.witness, k, d);
            if (! colour)
                throw Error{"internal: extracted witness is not monochromatic"};
            result.colour = *colour;
            result.transcript = std::move(stages);
            return result;
        };

        if (options.mode == PipelineMode::proof_bounds) {
            int width = bound_value(ctx, k, l);
            auto stages = stage(ctx, oracle, k, l, width);
            if (! stages)
                throw Error{"no witness within the evaluated bound " + to_string(width)};
            return finish(width, std::move(*stages));
        }

        for (int width = m; width <= options.max_n; ++width)
            if (auto stages = stage(ctx, oracle, k, l, width))
                return finish(width, std::move(*stages));
        throw BudgetExceeded{"no witness up to n = " + to_string(options.max_n)};
    }
}
