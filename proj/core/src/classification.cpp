#include "ccnb/classification.hpp"

#include <algorithm>
#include <cmath>

namespace ccnb {

namespace {

double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
    return 0.5 * (b - a).cross(c - a);
}

// Inside or on the boundary of triangle (a,b,c), with tolerance on the
// orientation tests. Boundary counts as inside: a body on the border of the
// triangle of the other three is not in convex position.
bool inside_triangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c, double tol) {
    if (std::abs(signed_area(a, b, c)) < tol) return false;
    const double s1 = signed_area(a, b, p);
    const double s2 = signed_area(b, c, p);
    const double s3 = signed_area(c, a, p);
    const bool all_nonneg = s1 >= -tol && s2 >= -tol && s3 >= -tol;
    const bool all_nonpos = s1 <= tol && s2 <= tol && s3 <= tol;
    return all_nonneg || all_nonpos;
}

std::vector<int> ccw_boundary_order(const Configuration& c) {
    const int n = c.size();
    Vec2 centroid;
    for (const auto& p : c.x) centroid += p;
    centroid *= 1.0 / n;
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::vector<double> ang(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Vec2 v = c.x[static_cast<std::size_t>(i)] - centroid;
        ang[static_cast<std::size_t>(i)] = std::atan2(v.y, v.x);
    }
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return ang[static_cast<std::size_t>(a)] < ang[static_cast<std::size_t>(b)]; });
    // Canonical form: start the cycle at label 0, keep the ccw direction.
    const auto it = std::find(order.begin(), order.end(), 0);
    std::rotate(order.begin(), it, order.end());
    return order;
}

} // namespace

Classification classify(const Configuration& c, double tol) {
    Classification out;
    const int n = c.size();

    bool collinear = true;
    for (int i = 0; i < n && collinear; ++i) {
        for (int j = i + 1; j < n && collinear; ++j) {
            for (int l = j + 1; l < n; ++l) {
                if (std::abs(signed_area(c.x[static_cast<std::size_t>(i)], c.x[static_cast<std::size_t>(j)],
                                         c.x[static_cast<std::size_t>(l)])) >= tol) {
                    collinear = false;
                    break;
                }
            }
        }
    }
    out.collinear = collinear;
    if (collinear || n < 4) return out;

    // Convex position: no body inside (or on) the triangle of any three others.
    bool convex = true;
    for (int b = 0; b < n && convex; ++b) {
        for (int i = 0; i < n && convex; ++i) {
            if (i == b) continue;
            for (int j = i + 1; j < n && convex; ++j) {
                if (j == b) continue;
                for (int l = j + 1; l < n; ++l) {
                    if (l == b) continue;
                    if (inside_triangle(c.x[static_cast<std::size_t>(b)], c.x[static_cast<std::size_t>(i)],
                                        c.x[static_cast<std::size_t>(j)], c.x[static_cast<std::size_t>(l)], tol)) {
                        convex = false;
                        break;
                    }
                }
            }
        }
    }
    out.convex = convex;
    if (convex && n == 4) out.cyclic_order = ccw_boundary_order(c);
    return out;
}

std::vector<std::vector<int>> oriented_cyclic_orderings4() {
    std::vector<std::vector<int>> out;
    std::vector<int> rest = {1, 2, 3};
    do {
        out.push_back({0, rest[0], rest[1], rest[2]});
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

} // namespace ccnb
