/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef GOWERS_GUARD_GOWERS_SOLVER_HH
#define GOWERS_GUARD_GOWERS_SOLVER_HH 1

#include <gowers/errors.hh>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace gowers
{
    /**
     * Finite Ramsey statements in one shape: vertices get one of r colours, and
     * each candidate is a list of disjoint vertex classes. A candidate is good for
     * a colouring when every one of its classes is monochromatic (classes may
     * differ in colour). The statement holds when every colouring has a good
     * candidate; a counterexample is a colouring with none.
     */
    struct ColourProblem
    {
        int vertices = 0;
        int colours = 1;
        std::vector<std::vector<std::vector<int>>> candidates;

        /// Colours may be assumed nondecreasing in vertex index. Only sound when
        /// every permutation of the vertices is a symmetry of the problem.
        bool sorted_colours = false;
    };

    struct Budget
    {
        std::optional<std::uint64_t> nodes;
        std::optional<double> seconds;
    };

    struct SolverResult
    {
        /// Colours 1..r per vertex, when a counterexample exists.
        std::optional<std::vector<int>> counterexample;
        std::uint64_t nodes = 0;
        int subproblems = 0;
    };

    /**
     * Backtracking over partial colourings with forced-colour propagation. The
     * search is cut into a fixed list of subproblems that workers take in any
     * order; the reported counterexample and node count are those of the lowest
     * index that has one, so results do not depend on the worker count.
     *
     * Throws BudgetExceeded.
     */
    auto find_counterexample(const ColourProblem & problem, const Budget & budget = {}, int workers = 1) -> SolverResult;

    /// Whether the colouring leaves every candidate with a non-monochromatic class.
    auto is_counterexample(const ColourProblem & problem, const std::vector<int> & colouring) -> bool;

    /// Least index in 0..count-1 satisfying the predicate, evaluated in parallel.
    auto parallel_first(std::size_t count, int workers, const std::function<bool(std::size_t)> & predicate) -> std::optional<std::size_t>;

    /// std::thread::hardware_concurrency, at least 1.
    auto max_workers() -> int;
}

#endif
