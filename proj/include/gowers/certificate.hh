/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef GOWERS_GUARD_GOWERS_CERTIFICATE_HH
#define GOWERS_GUARD_GOWERS_CERTIFICATE_HH 1

#include <gowers/bounds.hh>
#include <gowers/fans.hh>
#include <gowers/pipeline.hh>
#include <gowers/search.hh>
#include <gowers/verify.hh>

#include <string>
#include <vector>

namespace gowers
{
    /**
     * Certificates are JSON objects with sorted keys and no timestamps, so equal
     * results always serialise to equal bytes. Every certificate carries
     * `theorem`, `claim`, `params` and `version`; the rest depends on the claim:
     *
     *  - minimum: `value`, `counterexample` {n, colors: {key: colour}} or null,
     *    `exhaustive` {n, nodes, vertices, candidates, subproblems}
     *  - verdict: `holds`, and a counterexample or an exhaustive log
     *  - witness: `coloring`, `colors`, `witness`, `color` (null when the claim is
     *    a colour per class rather than one colour)
     *  - pipeline: a witness plus `stages`, outermost first
     *  - amalgam: the two input maps and the three outputs
     */
    auto minimum_certificate(const std::string & theorem, const Json & params, const MinResult &) -> Json;
    auto verdict_certificate(const std::string & theorem, const Json & params, const Verdict &) -> Json;
    auto witness_certificate(const std::string & theorem, const Json & params, const std::string & colouring, int r, const std::string & witness,
        std::optional<int> colour) -> Json;
    auto pipeline_certificate(const Json & params, const std::string & colouring, int r, const PipelineResult &) -> Json;

    auto ramsey_pair_certificate(const OrderedFan & s, const OrderedFan & t, int r, const RamseyPairResult &) -> Json;
    auto ramsey_witness_certificate(const OrderedFan & s, const OrderedFan & t, int r, const RamseyWitness &) -> Json;
    auto amalgam_certificate(const FanMap & phi1, const FanMap & phi2, const Amalgam &) -> Json;

    /// `min-ramsey(k=2,l=3,r=2)`: the claim and theorem with the parameters in key order.
    auto cache_key(const Json & certificate) -> std::string;

    /// R and MT entries for every minimum certificate of those theorems.
    auto exact_table_from(const std::vector<Json> & certificates) -> ExactTable;
}

#endif
