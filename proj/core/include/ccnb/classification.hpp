#pragma once

#include <optional>
#include <vector>

#include "ccnb/config.hpp"
#include "ccnb/config_key.hpp"

namespace ccnb {

/// Geometric classification of a normalized configuration.
///   collinear : all triples degenerate within tol.
///   convex    : for n = 4, no body inside the triangle of the other three;
///               for n >= 5, best effort (all bodies on the convex hull);
///               absent for collinear configurations and for n = 3.
///   cyclic_order : counterclockwise boundary order for convex n = 4, as a
///               cyclic sequence of 0-based labels starting at body 0.
///               Orientation is kept, so a mirror image reverses it.
struct Classification {
    bool collinear = false;
    std::optional<bool> convex;
    std::optional<std::vector<int>> cyclic_order;
};

Classification classify(const Configuration& c, double tol = kCollinearTol);

/// The six oriented cyclic orderings of four labels, canonicalized to start
/// at label 0; lexicographic order.
std::vector<std::vector<int>> oriented_cyclic_orderings4();

} // namespace ccnb
