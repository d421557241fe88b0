#include "ccnb/morse_bounds.hpp"

#include "ccnb/errors.hpp"

namespace ccnb {

IndexPolynomial bouquet_poly(int n) {
    if (n < 2) throw domain_error("bouquet_poly: n must be >= 2");
    IndexPolynomial p({BigInt(1)});
    for (int k = 2; k <= n - 1; ++k) p = mul_linear(p, BigInt(k));
    return p;
}

IndexPolynomial first_palmore_poly(int n) {
    if (n < 3) throw domain_error("first_palmore_poly: n must be >= 3");
    const BigInt extra = big_factorial(n) / 2 - big_factorial(n - 1);
    std::vector<BigInt> c = bouquet_poly(n).coeffs();
    c.resize(static_cast<std::size_t>(n - 1), BigInt(0));
    c[static_cast<std::size_t>(n - 2)] += extra;
    c[static_cast<std::size_t>(n - 3)] += extra;
    return IndexPolynomial(std::move(c));
}

IndexPolynomial mccord_q_poly(int n) {
    if (n < 3) throw domain_error("mccord_q_poly: n must be >= 3");
    const IndexPolynomial p = bouquet_poly(n);
    // Series of P(t)/(1-t) truncated below index n-2, where the cumulative
    // sums saturate at P(1) = n!/2.
    std::vector<BigInt> q(static_cast<std::size_t>(n - 2), BigInt(0));
    BigInt cum = 0;
    for (int j = 0; j <= n - 3; ++j) {
        cum += p.at(j);
        q[static_cast<std::size_t>(j)] = cum;
    }
    return IndexPolynomial(std::move(q));
}

IndexPolynomial mccord_poly(int n) {
    if (n < 3) throw domain_error("mccord_poly: n must be >= 3");
    const IndexPolynomial q = mccord_q_poly(n);
    std::vector<BigInt> c(static_cast<std::size_t>(n - 1), BigInt(0));
    for (int j = 0; j <= n - 3; ++j) c[static_cast<std::size_t>(j)] = 2 * q.at(j);
    c[static_cast<std::size_t>(n - 2)] = big_factorial(n) / 2;
    return IndexPolynomial(std::move(c));
}

IndexPolynomial ignored_palmore_poly(int n) {
    if (n < 2) throw domain_error("ignored_palmore_poly: n must be >= 2");
    IndexPolynomial acc({BigInt(1)}); // N_2
    for (int m = 3; m <= n; ++m) {
        // (m-1)! (1+t)^{m-2}
        IndexPolynomial lead({big_factorial(m - 1)});
        for (int j = 0; j < m - 2; ++j) lead = mul_linear(lead, BigInt(1));
        // (m-2) t N_{m-1}
        const auto& prev = acc.coeffs();
        std::vector<BigInt> shifted(prev.size() + 1, BigInt(0));
        for (std::size_t i = 0; i < prev.size(); ++i) shifted[i + 1] = BigInt(m - 2) * prev[i];
        acc = add(lead, IndexPolynomial(std::move(shifted)));
    }
    return acc;
}

DivisionCheck morse_inequality_check(const IndexPolynomial& morse,
                                     const IndexPolynomial& poincare) {
    const std::size_t len = std::max(morse.coeffs().size(), poincare.coeffs().size());
    std::vector<BigInt> diff(len, BigInt(0));
    for (std::size_t k = 0; k < len; ++k) {
        diff[k] = morse.at(static_cast<int>(k)) - poincare.at(static_cast<int>(k));
    }
    return divide_by_one_plus_t(diff);
}

DivisionCheck equivariant_morse_check(const IndexPolynomial& noncollinear_counts, int n) {
    if (n < 3) throw domain_error("equivariant_morse_check: n must be >= 3");
    std::vector<BigInt> r;
    r.reserve(noncollinear_counts.coeffs().size());
    for (const auto& c : noncollinear_counts.coeffs()) {
        if (c % 2 != 0) {
            throw parity_error("equivariant_morse_check: odd non-collinear count " + c.str() +
                               " (a mirror partner is missing)");
        }
        r.push_back(c / 2);
    }
    const IndexPolynomial q = mccord_q_poly(n);
    const std::size_t len = std::max(r.size(), q.coeffs().size());
    std::vector<BigInt> diff(len, BigInt(0));
    for (std::size_t k = 0; k < len; ++k) {
        const BigInt rk = k < r.size() ? r[k] : BigInt(0);
        diff[k] = rk - q.at(static_cast<int>(k));
    }
    return divide_by_one_plus_t(diff);
}

BoundTable bound_table(int n) {
    if (n < 3) throw domain_error("bound_table: n must be >= 3");
    BoundTable t;
    t.n = n;
    t.bouquet = bouquet_poly(n);
    t.first_palmore = first_palmore_poly(n);
    t.mccord = mccord_poly(n);
    t.ignored_palmore = ignored_palmore_poly(n);
    t.bouquet_total = t.bouquet.total();
    t.first_palmore_total = t.first_palmore.total();
    t.mccord_total = t.mccord.total();
    t.ignored_palmore_total = t.ignored_palmore.total();
    return t;
}

} // namespace ccnb
