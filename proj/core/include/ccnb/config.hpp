#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "ccnb/errors.hpp"

namespace ccnb {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }

    // Counterclockwise 90 degree rotation; generator of the rotation gauge.
    Vec2 perp() const { return {-y, x}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

/// The n strictly positive masses, with the total cached.
class MassVector {
public:
    explicit MassVector(std::vector<double> masses);

    int size() const { return static_cast<int>(m_.size()); }
    double operator[](int i) const { return m_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& values() const { return m_; }
    double total() const { return total_; }

    bool operator==(const MassVector& o) const { return m_ == o.m_; }

private:
    std::vector<double> m_;
    double total_ = 0.0;
};

/// Labeled planar positions together with their masses. Operations that
/// require the normalized gauge (center of mass at origin, I = 1) state so.
struct Configuration {
    MassVector masses;
    std::vector<Vec2> x;

    Configuration(MassVector masses_, std::vector<Vec2> x_);
    int size() const { return static_cast<int>(x.size()); }
};

struct PotentialMoment {
    double U = 0.0; // sum m_i m_j / r_ij
    double I = 0.0; // sum m_i m_j r_ij^2 / M
};

/// U and I from the pairwise formulas. Throws degenerate_configuration_error
/// when two bodies (nearly) coincide.
PotentialMoment compute_U_I(const Configuration& c);

/// Translate the center of mass to the origin and rescale so that I = 1.
Configuration normalize(const Configuration& c);

Vec2 center_of_mass(const Configuration& c);
double min_pair_distance(const Configuration& c);

/// Mirror image: negates the y coordinates.
Configuration reflect(const Configuration& c);

/// New body i is old body perm[i]. The permutation must preserve the mass
/// vector (m[perm[i]] == m[i]); otherwise incompatible_relabel_error.
Configuration relabel(const Configuration& c, const std::vector<int>& perm);

/// All permutations that fix the mass vector entrywise, identity first,
/// in lexicographic order.
std::vector<std::vector<int>> mass_preserving_permutations(const MassVector& masses);

} // namespace ccnb
