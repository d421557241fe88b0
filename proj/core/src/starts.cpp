#include <cmath>
#include <numbers>
#include <random>

#include "ccnb/solver.hpp"

namespace ccnb {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    // splitmix64 finalizer over the golden-ratio indexed stream
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

// Uniform in [0,1) from the top 53 bits; avoids the library-dependent
// std::uniform_real_distribution so streams are reproducible everywhere.
double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Vec2 draw_in_disk(std::mt19937_64& rng) {
    while (true) {
        const Vec2 p(2.0 * next_unit(rng) - 1.0, 2.0 * next_unit(rng) - 1.0);
        if (p.norm2() <= 1.0) return p;
    }
}

} // namespace

Configuration random_start(const MassVector& masses, std::uint64_t seed) {
    const int n = masses.size();
    std::mt19937_64 rng(seed);
    constexpr double kMinSep = 0.05;
    constexpr int kMaxAttempts = 10000;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::vector<Vec2> pts(static_cast<std::size_t>(n));
        for (auto& p : pts) p = draw_in_disk(rng);
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if ((pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(j)]).norm() < kMinSep) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return normalize(Configuration(masses, std::move(pts)));
    }
    throw error("random_start: separation rejection did not terminate");
}

std::vector<Configuration> structured_starts(const MassVector& masses, double transverse) {
    const int n = masses.size();
    std::vector<Configuration> out;
    const double two_pi = 2.0 * std::numbers::pi;

    { // regular n-gon
        std::vector<Vec2> x(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            x[static_cast<std::size_t>(i)] = Vec2(std::cos(two_pi * i / n), std::sin(two_pi * i / n));
        }
        out.push_back(normalize(Configuration(masses, std::move(x))));
    }
    if (n >= 4) { // (n-1)-gon plus center, every choice of central body
        for (int ctr = 0; ctr < n; ++ctr) {
            std::vector<Vec2> x(static_cast<std::size_t>(n));
            int slot = 0;
            for (int i = 0; i < n; ++i) {
                if (i == ctr) {
                    x[static_cast<std::size_t>(i)] = Vec2(0.0, 0.0);
                } else {
                    x[static_cast<std::size_t>(i)] =
                        Vec2(std::cos(two_pi * slot / (n - 1)), std::sin(two_pi * slot / (n - 1)));
                    ++slot;
                }
            }
            out.push_back(normalize(Configuration(masses, std::move(x))));
        }
    }
    // Moulton lines with an alternating transverse kick, to probe the
    // non-collinear basins that hug the collinear family.
    for (const auto& ordering : moulton_orderings(n)) {
        Configuration line = moulton_solve(masses, ordering);
        for (int i = 0; i < n; ++i) {
            line.x[static_cast<std::size_t>(i)].y += (i % 2 == 0 ? transverse : -transverse);
        }
        out.push_back(normalize(line));
    }
    return out;
}

} // namespace ccnb
