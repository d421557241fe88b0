#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccnb/bigint.hpp"
#include "ccnb/errors.hpp"

namespace ccnb {

/// Integer generating polynomial in t: coeffs[k] counts critical points
/// (or a lower bound) of Morse index k. Coefficients are non-negative;
/// the zero polynomial is stored as the single coefficient {0}.
class IndexPolynomial {
public:
    IndexPolynomial() : coeffs_{BigInt(0)} {}
    explicit IndexPolynomial(std::vector<BigInt> coeffs);

    static IndexPolynomial zero() { return IndexPolynomial(); }

    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0; }

    // Coefficient at index k, zero beyond the stored degree.
    BigInt at(int k) const;

    // Sum of all coefficients, i.e. the polynomial evaluated at t = 1.
    BigInt total() const;

    bool operator==(const IndexPolynomial& other) const { return coeffs_ == other.coeffs_; }

    std::string str() const; // e.g. "[2, 3]"

private:
    std::vector<BigInt> coeffs_;
};

IndexPolynomial add(const IndexPolynomial& a, const IndexPolynomial& b);

// Multiply by the linear factor (1 + k t).
IndexPolynomial mul_linear(const IndexPolynomial& p, const BigInt& k);

// Outcome of an exact division check p(t) = (1+t) S(t) with S >= 0.
struct DivisionCheck {
    bool pass = false;
    std::optional<IndexPolynomial> s; // present iff pass
};

// Checks whether diff (given as signed coefficients, low order first) equals
// (1+t) S(t) with all S coefficients non-negative. Exact synthetic division.
DivisionCheck divide_by_one_plus_t(const std::vector<BigInt>& diff);

} // namespace ccnb
