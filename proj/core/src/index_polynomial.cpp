#include "ccnb/index_polynomial.hpp"

#include <sstream>

#include "ccnb/errors.hpp"

namespace ccnb {

namespace {

void trim_trailing_zeros(std::vector<BigInt>& c) {
    while (c.size() > 1 && c.back() == 0) c.pop_back();
    if (c.empty()) c.push_back(BigInt(0));
}

} // namespace

IndexPolynomial::IndexPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_) {
        if (c < 0) throw domain_error("IndexPolynomial: negative coefficient");
    }
    trim_trailing_zeros(coeffs_);
}

BigInt IndexPolynomial::at(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return BigInt(0);
    return coeffs_[static_cast<std::size_t>(k)];
}

BigInt IndexPolynomial::total() const {
    BigInt s = 0;
    for (const auto& c : coeffs_) s += c;
    return s;
}

std::string IndexPolynomial::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) os << ", ";
        os << coeffs_[i];
    }
    os << ']';
    return os.str();
}

IndexPolynomial add(const IndexPolynomial& a, const IndexPolynomial& b) {
    std::vector<BigInt> c(std::max(a.coeffs().size(), b.coeffs().size()), BigInt(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = a.at(static_cast<int>(i)) + b.at(static_cast<int>(i));
    }
    return IndexPolynomial(std::move(c));
}

IndexPolynomial mul_linear(const IndexPolynomial& p, const BigInt& k) {
    const auto& a = p.coeffs();
    std::vector<BigInt> c(a.size() + 1, BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        c[i] += a[i];
        c[i + 1] += k * a[i];
    }
    return IndexPolynomial(std::move(c));
}

DivisionCheck divide_by_one_plus_t(const std::vector<BigInt>& diff) {
    // diff(t) = (1+t) s(t) + r with deg s = deg diff - 1; synthetic division
    // at t = -1: s_0 = d_0, s_k = d_k - s_{k-1}, remainder = d_top - s_top.
    std::vector<BigInt> d = diff;
    while (d.size() > 1 && d.back() == 0) d.pop_back();
    if (d.size() == 1 && d[0] == 0) {
        return DivisionCheck{true, IndexPolynomial::zero()};
    }
    std::vector<BigInt> s(d.size() - 1, BigInt(0));
    BigInt carry = 0;
    for (std::size_t k = 0; k + 1 < d.size(); ++k) {
        carry = d[k] - carry;
        if (carry < 0) return DivisionCheck{false, std::nullopt};
        s[k] = carry;
    }
    if (d.back() != carry) return DivisionCheck{false, std::nullopt};
    return DivisionCheck{true, IndexPolynomial(std::move(s))};
}

} // namespace ccnb
