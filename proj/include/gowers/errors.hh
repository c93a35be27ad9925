/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef GOWERS_GUARD_GOWERS_ERRORS_HH
#define GOWERS_GUARD_GOWERS_ERRORS_HH 1

#include <stdexcept>
#include <string>

namespace gowers
{
    /// Base for every error raised by the library. Carries a human-readable message.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Bad parameters or malformed values handed to a constructor or operation.
    class InvalidArgument : public Error
    {
    public:
        using Error::Error;
    };

    /// A colouring source failed to answer, answered out of range, or is missing.
    class OracleError : public Error
    {
    public:
        using Error::Error;
    };

    /// A search ran past its node or wall-clock allowance.
    class BudgetExceeded : public Error
    {
    public:
        using Error::Error;
    };

    /// Malformed input text: serialisations, certificates, tables.
    class ParseError : public Error
    {
    public:
        using Error::Error;
    };
}

#endif
