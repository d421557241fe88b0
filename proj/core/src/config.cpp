#include "ccnb/config.hpp"

#include <algorithm>
#include <limits>

namespace ccnb {

MassVector::MassVector(std::vector<double> masses) : m_(std::move(masses)) {
    if (m_.empty()) throw domain_error("MassVector: empty");
    for (double v : m_) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw domain_error("MassVector: masses must be strictly positive and finite");
        }
        total_ += v;
    }
}

Configuration::Configuration(MassVector masses_, std::vector<Vec2> x_)
    : masses(std::move(masses_)), x(std::move(x_)) {
    if (masses.size() != static_cast<int>(x.size())) {
        throw domain_error("Configuration: mass count != position count");
    }
}

namespace {

// Coincidence guard: two bodies closer than 1e-13 of the configuration
// diameter (or exactly on top of each other) have no usable potential.
void check_separation(const Configuration& c) {
    double dmin = std::numeric_limits<double>::infinity();
    double dmax = 0.0;
    const int n = c.size();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d = (c.x[static_cast<std::size_t>(i)] - c.x[static_cast<std::size_t>(j)]).norm();
            dmin = std::min(dmin, d);
            dmax = std::max(dmax, d);
        }
    }
    if (n >= 2 && !(dmin > 1e-13 * dmax && dmin > 0.0)) {
        throw degenerate_configuration_error("coincident bodies");
    }
}

} // namespace

PotentialMoment compute_U_I(const Configuration& c) {
    check_separation(c);
    PotentialMoment out;
    const int n = c.size();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double r2 = (c.x[static_cast<std::size_t>(i)] - c.x[static_cast<std::size_t>(j)]).norm2();
            const double mm = c.masses[i] * c.masses[j];
            out.U += mm / std::sqrt(r2);
            out.I += mm * r2;
        }
    }
    out.I /= c.masses.total();
    return out;
}

Vec2 center_of_mass(const Configuration& c) {
    Vec2 ctr;
    for (int i = 0; i < c.size(); ++i) ctr += c.masses[i] * c.x[static_cast<std::size_t>(i)];
    return ctr * (1.0 / c.masses.total());
}

double min_pair_distance(const Configuration& c) {
    double dmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < c.size(); ++i) {
        for (int j = i + 1; j < c.size(); ++j) {
            dmin = std::min(dmin, (c.x[static_cast<std::size_t>(i)] - c.x[static_cast<std::size_t>(j)]).norm());
        }
    }
    return dmin;
}

Configuration normalize(const Configuration& c) {
    const Vec2 ctr = center_of_mass(c);
    Configuration out = c;
    for (auto& p : out.x) p -= ctr;
    const double I = compute_U_I(out).I;
    if (!(I > 0.0) || !std::isfinite(I)) {
        throw degenerate_configuration_error("normalize: moment of inertia is not positive");
    }
    const double s = 1.0 / std::sqrt(I);
    for (auto& p : out.x) p *= s;
    return out;
}

Configuration reflect(const Configuration& c) {
    Configuration out = c;
    for (auto& p : out.x) p.y = -p.y;
    return out;
}

Configuration relabel(const Configuration& c, const std::vector<int>& perm) {
    const int n = c.size();
    if (static_cast<int>(perm.size()) != n) throw domain_error("relabel: wrong permutation size");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int p : perm) {
        if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)]) {
            throw domain_error("relabel: not a permutation");
        }
        seen[static_cast<std::size_t>(p)] = true;
    }
    for (int i = 0; i < n; ++i) {
        if (c.masses[perm[static_cast<std::size_t>(i)]] != c.masses[i]) {
            throw incompatible_relabel_error("relabel: permutation changes the mass vector");
        }
    }
    std::vector<Vec2> nx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) nx[static_cast<std::size_t>(i)] = c.x[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    return Configuration(c.masses, std::move(nx));
}

std::vector<std::vector<int>> mass_preserving_permutations(const MassVector& masses) {
    const int n = masses.size();
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::vector<std::vector<int>> out;
    do {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) ok = masses[perm[static_cast<std::size_t>(i)]] == masses[i];
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

} // namespace ccnb
