/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef GOWERS_GUARD_GOWERS_VERIFY_HH
#define GOWERS_GUARD_GOWERS_VERIFY_HH 1

#include <json.hpp>

#include <string>
#include <vector>

namespace gowers
{
    using Json = nlohmann::json;

    inline constexpr const char * tool_version = "1.0.0";

    struct VerifyReport
    {
        bool pass = false;

        /// The first violated clause when pass is false.
        std::string clause;
        std::vector<std::string> warnings;
    };

    /**
     * Re-derives the claim from the payload with fin, types, pyramids and fans
     * primitives only. Counterexample colourings are re-checked against every
     * candidate; exhaustive passes cannot be replayed without a search, so their
     * logs are only recounted.
     *
     * Throws ParseError on malformed certificates and OracleError when the
     * colouring source is missing.
     */
    auto verify_certificate(const Json & certificate) -> VerifyReport;
}

#endif
