/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef GOWERS_GUARD_GOWERS_SEARCH_HH
#define GOWERS_GUARD_GOWERS_SEARCH_HH 1

#include <gowers/colouring.hh>
#include <gowers/fin.hh>
#include <gowers/solver.hh>

#include <optional>
#include <string>
#include <vector>

namespace gowers
{
    struct SearchOptions
    {
        Budget budget;
        int workers = 1;

        /// Give up (BudgetExceeded) once n passes this without an answer.
        int max_n = 64;
    };

    /// A colour problem whose vertices and candidates carry canonical keys.
    struct Instance
    {
        ColourProblem problem;
        std::vector<std::string> vertex_keys;
        std::vector<std::string> candidate_keys;
    };

    /// Colourings of FIN_k^{[d]}(n); candidates B in FIN_l^{[m]}(n), one class: the combined span as d-tuples.
    auto gowers_instance(int k, int l, int m, int d, int n, int r) -> Instance;

    /// Colourings of FIN_1^{[d]}(n); candidates B in FIN_1^{[m]}(n), one class: FIN_1^{[d]}(B).
    auto mt_instance(int d, int m, int n, int r) -> Instance;

    /// Colourings of k-subsets of {1..n}; candidates l-subsets X, one class: X^{[k]}.
    auto ramsey_instance(int k, int l, int n, int r) -> Instance;

    /// Colourings of FIN_k^{[d]}(n); candidates A in FIN_1^{[m]}(n), classes: FIN_k^{[d]}(A) by type.
    auto type_hom_instance(int k, int m, int d, int n, int r) -> Instance;

    /// Colourings of d-sequences of subset tuples (A_1, ..., A_m), |A_i| <= k_i; candidates
    /// (B_1, ..., B_m) with |B_i| = l_i; classes by support pattern and cardinalities.
    auto size_insensitive_instance(const std::vector<int> & ks, const std::vector<int> & ls, int d, int n, int r) -> Instance;

    /// A colouring table over vertex keys, as found by the solver.
    struct Counterexample
    {
        int n = 0;
        std::vector<std::string> keys;
        std::vector<int> colours;
    };

    struct ExhaustiveLog
    {
        int n = 0;
        std::uint64_t nodes = 0;
        int vertices = 0;
        int candidates = 0;
        int subproblems = 0;
    };

    /// Exact least n, with a counterexample at n - 1 (absent when n - 1 = 0) and
    /// the log of the exhaustive pass at n.
    struct MinResult
    {
        int value = 0;
        std::optional<Counterexample> counterexample;
        ExhaustiveLog exhaustive;
    };

    struct Verdict
    {
        bool holds = false;
        std::optional<Counterexample> counterexample;
        ExhaustiveLog log;
    };

    auto solve_instance(const Instance & instance, int n, const SearchOptions & options) -> Verdict;

    auto min_gowers(int k, int l, int m, int d, int r, const SearchOptions & options = {}) -> MinResult;
    auto min_milliken_taylor(int d, int m, int r, const SearchOptions & options = {}) -> MinResult;
    auto verify_mt(int d, int m, int r, int n, const SearchOptions & options = {}) -> Verdict;
    auto min_classical_ramsey(int k, int l, int r, const SearchOptions & options = {}) -> MinResult;
    auto min_type_homogeneous(int k, int m, int d, int r, const SearchOptions & options = {}) -> MinResult;
    auto min_size_insensitive(const std::vector<int> & ks, const std::vector<int> & ls, int d, int r, const SearchOptions & options = {}) -> MinResult;

    /// Least B in FIN_l^{[m]}(n) whose combined span at level k, as d-tuples, is monochromatic.
    auto find_gowers_witness(const Colouring & c, int k, int l, int m, int d, int n, int workers = 1) -> std::optional<BlockSequence>;

    /// Least B in FIN_1^{[m]}(n) with FIN_1^{[d]}(B) monochromatic.
    auto find_mt_witness(const Colouring & c, int d, int m, int n, int workers = 1) -> std::optional<BlockSequence>;

    /// Least A in FIN_1^{[m]}(n) on which the colouring of FIN_k^{[d]}(A) factors through types.
    auto find_type_homogeneous(const Colouring & c, int k, int m, int d, int n, int workers = 1) -> std::optional<BlockSequence>;

    /// Least (B_1, ..., B_m) on which the colouring is size-insensitive; subsets are 1-based.
    auto find_size_insensitive(const Colouring & c, const std::vector<int> & ks, const std::vector<int> & ls, int d, int n, int workers = 1)
        -> std::optional<std::vector<std::vector<int>>>;

    /// Least B in FIN_k^{[m]}(n) with span over prod {0, l_j, l_j + 1} monochromatic.
    auto probe_neighbour_span(const Colouring & c, const std::vector<int> & ls, int m, int n, int workers = 1) -> std::optional<BlockSequence>;

    /// The members of a candidate in an instance, flattened.
    auto candidate_vertices(const Instance & instance, std::size_t candidate) -> std::vector<int>;

    /// `{1,3}` and `({1},{})`, 1-based.
    auto subset_key(const std::vector<int> & s) -> std::string;
    auto subset_tuple_key(const std::vector<std::vector<int>> & t) -> std::string;
}

#endif
