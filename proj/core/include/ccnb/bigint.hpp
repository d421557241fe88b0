#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace ccnb {

// Exact integer type for counts and bounds. n!/2 overflows 64 bits near
// n = 21, so everything combinatorial runs on arbitrary precision.
using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_factorial(int n) {
    BigInt f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

inline BigInt big_pow2(int e) {
    return BigInt(1) << e;
}

} // namespace ccnb
