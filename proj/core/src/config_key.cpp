#include "ccnb/config_key.hpp"

#include <cmath>

namespace ccnb {

ConfigKey config_key(const Configuration& c, double tol) {
    const int n = c.size();
    ConfigKey k;
    k.d.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            k.d.push_back((c.x[static_cast<std::size_t>(j)] - c.x[static_cast<std::size_t>(i)]).norm());
        }
    }
    k.orientation = 0;
    for (int i = 0; i < n && k.orientation == 0; ++i) {
        for (int j = i + 1; j < n && k.orientation == 0; ++j) {
            for (int l = j + 1; l < n; ++l) {
                const Vec2 u = c.x[static_cast<std::size_t>(j)] - c.x[static_cast<std::size_t>(i)];
                const Vec2 v = c.x[static_cast<std::size_t>(l)] - c.x[static_cast<std::size_t>(i)];
                const double area = 0.5 * u.cross(v);
                if (std::abs(area) >= tol) {
                    k.orientation = area > 0.0 ? 1 : -1;
                    break;
                }
            }
        }
    }
    return k;
}

bool keys_equal(const ConfigKey& a, const ConfigKey& b, double tol) {
    if (a.orientation != b.orientation || a.d.size() != b.d.size()) return false;
    for (std::size_t i = 0; i < a.d.size(); ++i) {
        if (std::abs(a.d[i] - b.d[i]) > tol) return false;
    }
    return true;
}

ConfigKey mirror_key(const ConfigKey& k) {
    ConfigKey m = k;
    m.orientation = -k.orientation;
    return m;
}

bool key_less(const ConfigKey& a, const ConfigKey& b) {
    if (a.orientation != b.orientation) return a.orientation < b.orientation;
    if (a.d.size() != b.d.size()) return a.d.size() < b.d.size();
    for (std::size_t i = 0; i < a.d.size(); ++i) {
        if (a.d[i] != b.d[i]) return a.d[i] < b.d[i];
    }
    return false;
}

} // namespace ccnb
