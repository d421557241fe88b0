#include <doctest.h>

#include <cmath>
#include <random>

#include "ccnb/config_key.hpp"
#include "ccnb/solver.hpp"

using namespace ccnb;

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Configuration random_config(std::mt19937_64& rng, std::vector<double> masses) {
    while (true) {
        std::vector<Vec2> pts;
        for (std::size_t i = 0; i < masses.size(); ++i) {
            pts.emplace_back(2 * unit(rng) - 1, 2 * unit(rng) - 1);
        }
        Configuration c(MassVector(masses), std::move(pts));
        if (min_pair_distance(c) > 0.2) return normalize(c);
    }
}

Configuration equilateral_normalized(std::vector<double> masses) {
    const double h = std::sqrt(3.0) / 2.0;
    Configuration c(MassVector(std::move(masses)), {Vec2(0, 0), Vec2(1, 0), Vec2(0.5, h)});
    return normalize(c);
}

// Independent oracle for the residual: the multiplier-eliminated first-order
// condition rebuilt from central finite differences of U only,
//   F_i = (1/m_i) dU/dx_i + (U/I)(x_i - ctr).
std::vector<Vec2> fd_residual(const Configuration& c, double h = 1e-6) {
    const PotentialMoment ui = compute_U_I(c);
    const Vec2 ctr = center_of_mass(c);
    std::vector<Vec2> out(c.x.size());
    for (std::size_t i = 0; i < c.x.size(); ++i) {
        Vec2 grad;
        for (int axis = 0; axis < 2; ++axis) {
            Configuration plus = c, minus = c;
            (axis == 0 ? plus.x[i].x : plus.x[i].y) += h;
            (axis == 0 ? minus.x[i].x : minus.x[i].y) -= h;
            const double d = (compute_U_I(plus).U - compute_U_I(minus).U) / (2 * h);
            (axis == 0 ? grad.x : grad.y) = d;
        }
        out[i] = (1.0 / c.masses[static_cast<int>(i)]) * grad + (ui.U / ui.I) * (c.x[i] - ctr);
    }
    return out;
}

} // namespace

TEST_CASE("cc_residual matches the finite-difference gradient oracle") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        const Configuration c = random_config(rng, {1.0, 2.0, 0.5});
        const Residual r = cc_residual(c);
        const std::vector<Vec2> fd = fd_residual(c);
        for (std::size_t i = 0; i < fd.size(); ++i) {
            CHECK(std::abs(r.F[i].x - fd[i].x) < 1e-6);
            CHECK(std::abs(r.F[i].y - fd[i].y) < 1e-6);
        }
        CHECK(r.lambda == doctest::Approx(compute_U_I(c).U / compute_U_I(c).I));
        CHECK(r.lambda > 0.0);
    }
}

TEST_CASE("the equilateral triangle is central for arbitrary masses") {
    // Lagrange: with all three distances equal, sum_j m_j (x_j - x_i)/s^3
    // telescopes to -(M/s^3) x_i at the center of mass, and U/I = M/s^3.
    CHECK(cc_residual(equilateral_normalized({1, 1, 1})).norm < 1e-13);
    CHECK(cc_residual(equilateral_normalized({3, 1, 7})).norm < 1e-13);
    CHECK(cc_residual(equilateral_normalized({0.2, 5.0, 1.7})).norm < 1e-13);
}

TEST_CASE("the square is central for equal masses") {
    Configuration sq(MassVector({1, 1, 1, 1}), {Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)});
    const Configuration c = normalize(sq);
    // Oracle first: the finite-difference residual itself must vanish.
    const std::vector<Vec2> fd = fd_residual(c);
    for (const auto& f : fd) {
        CHECK(std::abs(f.x) < 1e-9);
        CHECK(std::abs(f.y) < 1e-9);
    }
    CHECK(cc_residual(c).norm < 1e-13);
}

TEST_CASE("a generic configuration is far from central") {
    std::mt19937_64 rng(99);
    const Configuration c = random_config(rng, {1, 1, 1, 1});
    CHECK(cc_residual(c).norm > 1e-3);
}

TEST_CASE("residual is rotation equivariant") {
    std::mt19937_64 rng(11);
    const Configuration c = random_config(rng, {1.0, 0.7, 2.2, 1.1});
    const Residual r0 = cc_residual(c);
    for (int k = 0; k < 10; ++k) {
        const double a = 6.283185307179586 * unit(rng);
        const double ca = std::cos(a), sa = std::sin(a);
        Configuration cr = c;
        for (auto& p : cr.x) p = Vec2(ca * p.x - sa * p.y, sa * p.x + ca * p.y);
        const Residual r = cc_residual(cr);
        CHECK(std::abs(r.norm - r0.norm) < 1e-12 * std::max(1.0, r0.norm) + 1e-12);
        for (std::size_t i = 0; i < r.F.size(); ++i) {
            const Vec2 expect(ca * r0.F[i].x - sa * r0.F[i].y, sa * r0.F[i].x + ca * r0.F[i].y);
            CHECK(std::abs(r.F[i].x - expect.x) < 1e-12);
            CHECK(std::abs(r.F[i].y - expect.y) < 1e-12);
        }
    }
}

TEST_CASE("newton_polish refines a perturbed equilateral in few steps") {
    Configuration c = equilateral_normalized({1, 1, 1});
    std::mt19937_64 rng(3);
    for (auto& p : c.x) p += Vec2(1e-3 * (2 * unit(rng) - 1), 1e-3 * (2 * unit(rng) - 1));
    c = normalize(c);
    const SolveReport rep = newton_polish(c);
    REQUIRE(rep.converged);
    CHECK(rep.iterations <= 6);
    CHECK(rep.final_norm < 1e-12);
    CHECK(keys_equal(config_key(*rep.configuration), config_key(equilateral_normalized({1, 1, 1}))));
}

TEST_CASE("newton_polish accepts the exact square immediately") {
    Configuration sq(MassVector({1, 1, 1, 1}), {Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)});
    const SolveReport rep = newton_polish(normalize(sq));
    REQUIRE(rep.converged);
    CHECK(rep.final_norm < 1e-12);
    CHECK(rep.iterations <= 1);
}

TEST_CASE("polish is a fixed point on converged output") {
    std::mt19937_64 rng(17);
    const SolveReport first = newton_polish(random_start(MassVector({1.0, 1.3, 0.8}), 555));
    if (first.converged) {
        const SolveReport again = newton_polish(*first.configuration);
        REQUIRE(again.converged);
        CHECK(again.iterations <= 2);
        CHECK(keys_equal(config_key(*again.configuration), config_key(*first.configuration)));
    }
}

TEST_CASE("close encounters abort") {
    Configuration c(MassVector({1, 1, 1}), {Vec2(0, 0), Vec2(1e-9, 0), Vec2(1, 0.5)});
    SUBCASE("the separation precondition rejects the start") {
        const SolveReport rep = newton_polish(c); // defaults: min_sep = 0.05
        CHECK_FALSE(rep.converged);
        CHECK(rep.status == SolveStatus::start_too_close);
    }
    SUBCASE("with the precondition disabled the collision guard fires") {
        NewtonOptions opts;
        opts.min_sep = 0.0;
        const SolveReport rep = newton_polish(c, opts);
        CHECK_FALSE(rep.converged);
        CHECK(rep.status == SolveStatus::collision);
    }
}

TEST_CASE("U is stationary along gauge-orthogonal directions at a solution") {
    const Configuration c = equilateral_normalized({1.0, 2.0, 3.0});
    REQUIRE(cc_residual(c).norm < 1e-12);
    const int n = c.size();
    // Build gauge directions and mass-project them out of a random direction.
    std::vector<std::vector<Vec2>> gauge;
    gauge.push_back(std::vector<Vec2>(static_cast<std::size_t>(n), Vec2(1, 0)));
    gauge.push_back(std::vector<Vec2>(static_cast<std::size_t>(n), Vec2(0, 1)));
    std::vector<Vec2> rot(static_cast<std::size_t>(n)), dil(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        rot[static_cast<std::size_t>(i)] = c.x[static_cast<std::size_t>(i)].perp();
        dil[static_cast<std::size_t>(i)] = c.x[static_cast<std::size_t>(i)];
    }
    gauge.push_back(rot);
    gauge.push_back(dil);
    auto mdot = [&](const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
        double s = 0;
        for (int i = 0; i < n; ++i) s += c.masses[i] * a[static_cast<std::size_t>(i)].dot(b[static_cast<std::size_t>(i)]);
        return s;
    };
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Vec2> u(static_cast<std::size_t>(n));
        for (auto& v : u) v = Vec2(2 * unit(rng) - 1, 2 * unit(rng) - 1);
        for (const auto& g : gauge) {
            const double p = mdot(u, g) / mdot(g, g);
            for (int i = 0; i < n; ++i) u[static_cast<std::size_t>(i)] -= p * g[static_cast<std::size_t>(i)];
        }
        const double nn = std::sqrt(mdot(u, u));
        if (nn < 1e-3) continue;
        for (auto& v : u) v *= 1.0 / nn;
        const double h = 1e-5;
        auto u_at = [&](double t) {
            Configuration moved = c;
            for (int i = 0; i < n; ++i) moved.x[static_cast<std::size_t>(i)] += t * u[static_cast<std::size_t>(i)];
            return compute_U_I(normalize(moved)).U;
        };
        CHECK(std::abs(u_at(h) - u_at(-h)) / (2 * h) < 1e-8);
    }
}

TEST_CASE("moulton_solve: two bodies sit at the I=1 distance") {
    const MassVector m({2.0, 3.0});
    const Configuration c = moulton_solve(m, {0, 1});
    const double r = (c.x[1] - c.x[0]).norm();
    CHECK(r == doctest::Approx(std::sqrt(5.0 / 6.0)).epsilon(1e-13)); // sqrt(M/(m1 m2))
    CHECK(std::abs(compute_U_I(c).I - 1.0) < 1e-13);
}

TEST_CASE("moulton_solve: symmetric cases have equal gaps") {
    SUBCASE("equal masses") {
        const Configuration c = moulton_solve(MassVector({1, 1, 1}), {0, 1, 2});
        CHECK((c.x[1] - c.x[0]).norm() == doctest::Approx((c.x[2] - c.x[1]).norm()).epsilon(1e-12));
        CHECK(cc_residual(c).norm < 1e-12);
    }
    SUBCASE("mirror-symmetric end masses") {
        const Configuration c = moulton_solve(MassVector({1, 2, 1}), {0, 1, 2});
        CHECK((c.x[1] - c.x[0]).norm() == doctest::Approx((c.x[2] - c.x[1]).norm()).epsilon(1e-12));
    }
}

TEST_CASE("moulton orderings and solutions are distinct with tiny residuals") {
    std::mt19937_64 rng(31);
    for (int n = 3; n <= 5; ++n) {
        std::vector<double> masses;
        for (int i = 0; i < n; ++i) masses.push_back(0.5 + 1.5 * unit(rng));
        const auto orderings = moulton_orderings(n);
        CHECK(static_cast<long long>(orderings.size()) ==
              [](int k) { long long f = 1; for (int i = 2; i <= k; ++i) f *= i; return f / 2; }(n));
        std::vector<ConfigKey> keys;
        for (const auto& ord : orderings) {
            const Configuration c = moulton_solve(MassVector(masses), ord);
            CHECK(cc_residual(c).norm < 1e-11);
            const ConfigKey k = config_key(c);
            CHECK(k.orientation == 0);
            for (const auto& prev : keys) CHECK_FALSE(keys_equal(prev, k));
            keys.push_back(k);
        }
    }
}

TEST_CASE("random_start determinism and separation") {
    const MassVector m({1, 1, 1, 1, 1});
    const Configuration a = random_start(m, 1234);
    const Configuration b = random_start(m, 1234);
    for (std::size_t i = 0; i < a.x.size(); ++i) {
        CHECK(a.x[i].x == b.x[i].x);
        CHECK(a.x[i].y == b.x[i].y);
    }
    CHECK(std::abs(compute_U_I(a).I - 1.0) < 1e-12);

    // Raw draws keep min distance >= 0.05 inside the unit disk; normalization
    // divides by sqrt(I_raw) <= sqrt(4 sum(m_i m_j)/M) = 2 sqrt(2) for five
    // unit masses, so the normalized separation keeps a hard floor.
    const double floor = 0.05 / (2.0 * std::sqrt(2.0)) - 1e-12;
    int distinct = 0;
    Configuration prev = a;
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        const Configuration c = random_start(m, seed);
        CHECK(min_pair_distance(c) >= floor);
        if (seed < 100 && (seed == 0 || c.x[0].x != prev.x[0].x)) ++distinct;
        if (seed < 100) prev = c;
    }
    CHECK(distinct >= 99);
}

TEST_CASE("structured starts are valid normalized configurations") {
    for (const auto& masses : {std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3, 4}}) {
        const auto starts = structured_starts(MassVector(masses));
        CHECK(starts.size() >= 1);
        for (const auto& s : starts) {
            CHECK(std::abs(compute_U_I(s).I - 1.0) < 1e-12);
            CHECK(min_pair_distance(s) > 0.0);
        }
    }
}
