/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef GOWERS_GUARD_GOWERS_PIPELINE_HH
#define GOWERS_GUARD_GOWERS_PIPELINE_HH 1

#include <gowers/bounds.hh>
#include <gowers/colouring.hh>
#include <gowers/fin.hh>
#include <gowers/search.hh>

#include <optional>
#include <string>
#include <vector>

namespace gowers
{
    enum class PipelineMode
    {
        /// Widths come from the evaluated upper bounds; grounds must be fully type-homogeneous.
        proof_bounds,

        /// Widths are the least that work for the colouring at hand; grounds need only
        /// be type-homogeneous on the combined span of their pyramids.
        search
    };

    auto to_string(PipelineMode) -> std::string;

    struct PipelineOptions
    {
        PipelineMode mode = PipelineMode::search;
        ExactTable table;
        int workers = 1;

        /// Largest width tried in search mode.
        int max_n = 12;
    };

    /// One level of the induction, outermost first.
    struct PipelineStage
    {
        int level = 0;
        int top = 0;
        int width = 0;

        /// Number of pyramids; zero at the base.
        int pyramids = 0;

        /// The Milliken-Taylor witness at the base, the type-homogeneous sequence above it.
        BlockSequence ground;
        std::optional<BlockSequence> pyramid_sequence;
        std::string induced;
        std::optional<BlockSequence> sub_witness;
        std::optional<BlockSequence> transferred;
        BlockSequence witness;
    };

    struct PipelineResult
    {
        int n = 0;
        BlockSequence witness;
        int colour = 0;
        std::vector<PipelineStage> transcript;
    };

    /**
     * Builds a block sequence of length m in FIN_l(n) whose combined span at level
     * k, as d-tuples, is monochromatic, by following the induction on k: a
     * Milliken-Taylor witness scaled by l at the base, and above it pyramids over a
     * type-homogeneous ground, an induced colouring one level down, the recursive
     * witness, its transfer onto the pyramids, and the T_1 preimage.
     *
     * Throws BudgetExceeded when search mode passes max_n, InvalidArgument when a
     * bound does not evaluate.
     */
    auto extract_witness(const Colouring & oracle, int k, int l, int m, int d, int r, const PipelineOptions & options = {}) -> PipelineResult;

    /// Whether any two d-tuples of the same type in the combined span of the pyramids at level k share a colour.
    auto pyramid_span_homogeneous(const Colouring & c, const BlockSequence & pyramids, int k, int d) -> bool;
}

#endif
