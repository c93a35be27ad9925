/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef GOWERS_GUARD_GOWERS_BIGINT_HH
#define GOWERS_GUARD_GOWERS_BIGINT_HH 1

#include <boost/multiprecision/cpp_int.hpp>

namespace gowers
{
    using BigInt = boost::multiprecision::cpp_int;
}

#endif
