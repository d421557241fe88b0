#pragma once

#include <vector>

#include "ccnb/config.hpp"

namespace ccnb {

// A triple is treated as collinear when its signed area is below this, at
// I = 1 scale. Polished configurations are accurate to ~1e-12 so 1e-9
// separates cleanly.
inline constexpr double kCollinearTol = 1e-9;

// Two keys are the same configuration when the distance vectors agree to
// this in max-norm and the orientation signs match exactly. Distinct central
// configurations at desk scale differ by far more than 1e-4.
inline constexpr double kKeyTol = 1e-8;

/// Rotation/translation/scale-invariant identity of a normalized
/// configuration: label-ordered mutual distances plus an orientation sign.
/// Reflection flips the sign and keeps the distances, so mirror images of
/// non-collinear configurations compare distinct.
struct ConfigKey {
    std::vector<double> d; // r_01, r_02, ..., r_{n-2,n-1}, lexicographic pairs
    int orientation = 0;   // sign of first non-degenerate label-ordered triple, 0 iff collinear
};

ConfigKey config_key(const Configuration& c, double tol = kCollinearTol);

bool keys_equal(const ConfigKey& a, const ConfigKey& b, double tol = kKeyTol);

/// Mirror image of a key (same distances, opposite orientation).
ConfigKey mirror_key(const ConfigKey& k);

/// Strict total order for canonical record sorting: orientation first,
/// then lexicographic on the distance vector.
bool key_less(const ConfigKey& a, const ConfigKey& b);

} // namespace ccnb
