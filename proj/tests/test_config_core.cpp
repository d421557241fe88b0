#include <doctest.h>

#include <cmath>
#include <random>

#include "ccnb/classification.hpp"
#include "ccnb/config.hpp"
#include "ccnb/config_key.hpp"

using namespace ccnb;

namespace {

Configuration equilateral(std::vector<double> masses, double side, Vec2 offset = {}) {
    const double h = side * std::sqrt(3.0) / 2.0;
    std::vector<Vec2> x = {offset, offset + Vec2(side, 0.0), offset + Vec2(side / 2.0, h)};
    return Configuration(MassVector(std::move(masses)), std::move(x));
}

Configuration rotated(const Configuration& c, double angle) {
    const double ca = std::cos(angle), sa = std::sin(angle);
    Configuration out = c;
    for (auto& p : out.x) p = Vec2(ca * p.x - sa * p.y, sa * p.x + ca * p.y);
    return out;
}

double key_deviation(const ConfigKey& a, const ConfigKey& b) {
    double dev = 0.0;
    for (std::size_t i = 0; i < a.d.size(); ++i) dev = std::max(dev, std::abs(a.d[i] - b.d[i]));
    return dev;
}

} // namespace

TEST_CASE("compute_U_I basic pair and homogeneity") {
    Configuration pair(MassVector({1.0, 1.0}), {Vec2(0, 0), Vec2(1, 0)});
    const PotentialMoment ui = compute_U_I(pair);
    CHECK(ui.U == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ui.I == doctest::Approx(0.5).epsilon(1e-15));

    const Configuration tri = equilateral({1, 1, 1}, 1.0);
    const PotentialMoment t = compute_U_I(tri);
    CHECK(t.U == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(t.I == doctest::Approx(1.0).epsilon(1e-14));

    Configuration scaled = tri;
    for (auto& p : scaled.x) p *= 2.5;
    const PotentialMoment sc = compute_U_I(scaled);
    CHECK(sc.I == doctest::Approx(2.5 * 2.5 * t.I).epsilon(1e-14));
    CHECK(sc.U == doctest::Approx(t.U / 2.5).epsilon(1e-14));
}

TEST_CASE("normalize centers, rescales and is idempotent") {
    // Oracle: for unit masses, I of an equilateral triangle with side s is
    // s^2 (three pairs of m_i m_j s^2, divided by M = 3), so the normalized
    // side must be exactly 1.
    const Configuration c = normalize(equilateral({1, 1, 1}, 7.0, Vec2(3.0, -2.0)));
    const PotentialMoment ui = compute_U_I(c);
    CHECK(std::abs(ui.I - 1.0) < 1e-14);
    CHECK(center_of_mass(c).norm() < 1e-15);
    CHECK((c.x[1] - c.x[0]).norm() == doctest::Approx(1.0).epsilon(1e-13));

    const Configuration again = normalize(c);
    for (int i = 0; i < 3; ++i) {
        CHECK((again.x[static_cast<std::size_t>(i)] - c.x[static_cast<std::size_t>(i)]).norm() < 1e-13);
    }
}

TEST_CASE("general-mass normalization matches the closed-form side") {
    const std::vector<double> m = {3.0, 1.0, 7.0};
    double pairsum = 3.0 * 1.0 + 3.0 * 7.0 + 1.0 * 7.0;
    const double side = std::sqrt(11.0 / pairsum); // sqrt(M / sum m_i m_j)
    const Configuration c = normalize(equilateral(m, 2.0));
    CHECK((c.x[1] - c.x[0]).norm() == doctest::Approx(side).epsilon(1e-13));
}

TEST_CASE("coincident points are rejected") {
    Configuration c(MassVector({1, 1, 1}), {Vec2(0, 0), Vec2(0, 0), Vec2(1, 0)});
    CHECK_THROWS_AS(compute_U_I(c), degenerate_configuration_error);
    CHECK_THROWS_AS(normalize(c), degenerate_configuration_error);
}

TEST_CASE("config_key is rotation invariant and flips under reflection") {
    std::mt19937_64 rng(42);
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 3);
        std::vector<Vec2> pts;
        for (int i = 0; i < n; ++i) pts.emplace_back(4 * unit() - 2, 4 * unit() - 2);
        Configuration c(MassVector(std::vector<double>(static_cast<std::size_t>(n), 1.0)), pts);
        if (min_pair_distance(c) < 0.1) continue;
        c = normalize(c);
        const ConfigKey k = config_key(c);
        const ConfigKey kr = config_key(rotated(c, 6.28 * unit() + 0.01));
        CHECK(kr.orientation == k.orientation);
        CHECK(key_deviation(k, kr) < 1e-12);
        CHECK(keys_equal(k, kr));

        const ConfigKey km = config_key(reflect(c));
        CHECK(key_deviation(k, km) < 1e-12);
        if (k.orientation != 0) CHECK(km.orientation == -k.orientation);
    }
}

TEST_CASE("relabeling permutes the key for distinguishable bodies") {
    // Scalene triangle, equal masses: swapping two labels permutes the
    // distance vector, so the key must change.
    Configuration c = normalize(
        Configuration(MassVector({1, 1, 1}), {Vec2(0, 0), Vec2(1.3, 0), Vec2(0.2, 0.9)}));
    const Configuration swapped = relabel(c, {1, 0, 2});
    CHECK_FALSE(keys_equal(config_key(c), config_key(normalize(swapped))));
}

TEST_CASE("relabel enforces mass compatibility") {
    Configuration c(MassVector({1.0, 2.0, 3.0}), {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)});
    CHECK_THROWS_AS(relabel(c, {1, 0, 2}), incompatible_relabel_error);
    const Configuration id = relabel(c, {0, 1, 2});
    for (int i = 0; i < 3; ++i) {
        CHECK((id.x[static_cast<std::size_t>(i)] - c.x[static_cast<std::size_t>(i)]).norm() == 0.0);
    }
    Configuration eq(MassVector({1.0, 1.0, 1.0}), {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)});
    CHECK_NOTHROW(relabel(eq, {2, 0, 1}));
    CHECK_THROWS_AS(relabel(eq, {0, 0, 1}), domain_error);
}

TEST_CASE("reflect is an involution") {
    Configuration c(MassVector({1, 2, 1}), {Vec2(0.1, 0.7), Vec2(1, -0.3), Vec2(-0.5, 0.2)});
    const Configuration back = reflect(reflect(c));
    for (int i = 0; i < 3; ++i) {
        CHECK((back.x[static_cast<std::size_t>(i)] - c.x[static_cast<std::size_t>(i)]).norm() == 0.0);
    }
}

TEST_CASE("mass preserving permutation groups") {
    CHECK(mass_preserving_permutations(MassVector({1, 1, 1})).size() == 6);
    CHECK(mass_preserving_permutations(MassVector({1, 2, 3})).size() == 1);
    CHECK(mass_preserving_permutations(MassVector({1, 1, 2})).size() == 2);
    CHECK(mass_preserving_permutations(MassVector({1, 1, 1, 0.01})).size() == 6);
    // Identity comes first.
    CHECK(mass_preserving_permutations(MassVector({1, 1, 1}))[0] == std::vector<int>({0, 1, 2}));
}

TEST_CASE("classification of the paper's stock shapes") {
    SUBCASE("unit square labeled in boundary order") {
        Configuration sq(MassVector({1, 1, 1, 1}),
                         {Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)});
        const Classification cl = classify(normalize(sq));
        CHECK_FALSE(cl.collinear);
        REQUIRE(cl.convex.has_value());
        CHECK(*cl.convex);
        REQUIRE(cl.cyclic_order.has_value());
        CHECK(*cl.cyclic_order == std::vector<int>({0, 1, 2, 3}));
    }
    SUBCASE("reflection reverses the cyclic order") {
        Configuration sq(MassVector({1, 1, 1, 1}),
                         {Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)});
        const Classification cl = classify(normalize(reflect(sq)));
        REQUIRE(cl.cyclic_order.has_value());
        CHECK(*cl.cyclic_order == std::vector<int>({0, 3, 2, 1}));
    }
    SUBCASE("equilateral with a body at the centroid is non-convex") {
        const double h = std::sqrt(3.0) / 2.0;
        Configuration c(MassVector({1, 1, 1, 1}),
                        {Vec2(0, 0), Vec2(1, 0), Vec2(0.5, h), Vec2(0.5, h / 3.0)});
        const Classification cl = classify(normalize(c));
        CHECK_FALSE(cl.collinear);
        REQUIRE(cl.convex.has_value());
        CHECK_FALSE(*cl.convex);
        CHECK_FALSE(cl.cyclic_order.has_value());
    }
    SUBCASE("four points on a line") {
        Configuration c(MassVector({1, 1, 1, 1}),
                        {Vec2(0, 0), Vec2(1, 0), Vec2(2.2, 0), Vec2(3.7, 0)});
        const Classification cl = classify(normalize(c));
        CHECK(cl.collinear);
        CHECK_FALSE(cl.convex.has_value());
        CHECK(config_key(normalize(c)).orientation == 0);
    }
    SUBCASE("triangles carry no convex flag") {
        const Classification cl = classify(normalize(equilateral({1, 1, 1}, 1.0)));
        CHECK_FALSE(cl.collinear);
        CHECK_FALSE(cl.convex.has_value());
    }
}

TEST_CASE("oriented cyclic orderings of four labels") {
    const auto orders = oriented_cyclic_orderings4();
    CHECK(orders.size() == 6);
    for (const auto& o : orders) CHECK(o[0] == 0);
}
