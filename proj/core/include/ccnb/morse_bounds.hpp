#pragma once

#include "ccnb/index_polynomial.hpp"

namespace ccnb {

// The four per-index lower-bound families for central configuration counts
// with n bodies, all as exact integers. Rows span indices 0 .. n-2.

/// Expanded product (1+2t)(1+3t)...(1+(n-1)t); the constant 1 for n = 2.
IndexPolynomial bouquet_poly(int n);

/// Bouquet row plus n!/2 - (n-1)! added at indices n-2 and n-3.
/// Total is (3n-4)(n-1)!/2.
IndexPolynomial first_palmore_poly(int n);

/// Q(t): the polynomial part of (1+2t)...(1+(n-1)t)/(1-t), i.e. the
/// cumulative sums of the bouquet coefficients up to degree n-3.
IndexPolynomial mccord_q_poly(int n);

/// Equivariant estimate: 2*Q(t) plus n!/2 at index n-2.
IndexPolynomial mccord_poly(int n);

/// N_n(t) with N_2 = 1 and N_n = (n-1)!(1+t)^{n-2} + (n-2) t N_{n-1}(t).
/// Satisfies: coeff 0 = (n-1)!, coeff 1 = n(n-2)(n-2)!, coeff n-2 = n!/2,
/// total = (n-2)!(2^{n-1}(n-2)+1).
IndexPolynomial ignored_palmore_poly(int n);

/// pass iff morse(t) - poincare(t) = (1+t) S(t) with S >= 0; returns S on pass.
DivisionCheck morse_inequality_check(const IndexPolynomial& morse,
                                     const IndexPolynomial& poincare);

/// Equivariant form: halves the non-collinear counts (all must be even,
/// reflection pairs) into R(t) and checks R - Q = (1+t) S with S >= 0.
/// Throws parity_error on an odd coefficient.
DivisionCheck equivariant_morse_check(const IndexPolynomial& noncollinear_counts, int n);

struct BoundTable {
    int n = 0;
    IndexPolynomial bouquet;
    IndexPolynomial first_palmore;
    IndexPolynomial mccord;
    IndexPolynomial ignored_palmore;
    BigInt bouquet_total;
    BigInt first_palmore_total;
    BigInt mccord_total;
    BigInt ignored_palmore_total;
};

BoundTable bound_table(int n);

} // namespace ccnb
