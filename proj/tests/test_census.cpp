#include <doctest.h>

#include "ccnb/census.hpp"
#include "ccnb/serialize.hpp"

using namespace ccnb;

namespace {

CensusOptions fast_options(std::uint64_t seed = 7) {
    CensusOptions o;
    o.seed = seed;
    o.starts_budget = 200000;
    return o;
}

} // namespace

TEST_CASE("n=3 equal masses: exactly five central configurations, split 2+3") {
    const CensusResult r = run_census(MassVector({1, 1, 1}), fast_options());
    REQUIRE(r.saturated);
    CHECK(r.records.size() == 5);
    CHECK(r.morse_poly.at(0) == 2);
    CHECK(r.morse_poly.at(1) == 3);
    CHECK(r.collinear_count == 3);
    CHECK_FALSE(r.degenerate_found);
    CHECK(hard_checks_pass(r));
    CHECK(r.comparisons.binding);
    CHECK(r.comparisons.morse_vs_bouquet.pass);
    CHECK(r.comparisons.equivariant.pass);
    CHECK(r.comparisons.per_index_ge_mccord);
    CHECK(r.comparisons.total_ge_first_palmore);
    CHECK_FALSE(r.mcmillan_bartky.applicable);

    // The two non-collinear records are the two orientations of the
    // equilateral triangle.
    int plus = 0, minus = 0;
    for (const auto& rec : r.records) {
        if (rec.classification.collinear) continue;
        CHECK(rec.index_report.index == 0);
        (rec.key.orientation > 0 ? plus : minus)++;
    }
    CHECK(plus == 1);
    CHECK(minus == 1);
    for (const auto& rec : r.records) CHECK(rec.residual_norm < 1e-11);
}

TEST_CASE("n=3 arbitrary masses still give 2+3") {
    const CensusResult r = run_census(MassVector({2, 3, 7}), fast_options(11));
    REQUIRE(r.saturated);
    CHECK(r.records.size() == 5);
    CHECK(r.morse_poly.at(0) == 2);
    CHECK(r.morse_poly.at(1) == 3);
    CHECK(hard_checks_pass(r));
}

TEST_CASE("census result is byte-identical across worker counts") {
    CensusOptions o = fast_options(21);
    o.threads = 1;
    const std::string j1 = to_json(run_census(MassVector({1.0, 0.6, 1.4}), o));
    o.threads = 2;
    const std::string j2 = to_json(run_census(MassVector({1.0, 0.6, 1.4}), o));
    o.threads = 5;
    const std::string j5 = to_json(run_census(MassVector({1.0, 0.6, 1.4}), o));
    CHECK(j1 == j2);
    CHECK(j1 == j5);
}

TEST_CASE("equal-mass record sets are closed under relabeling") {
    const CensusResult r = run_census(MassVector({1, 1, 1}), fast_options(3));
    REQUIRE(r.saturated);
    for (const auto& rec : r.records) {
        for (const auto& perm : mass_preserving_permutations(r.masses)) {
            const ConfigKey k = config_key(normalize(relabel(rec.configuration, perm)));
            bool found = false;
            for (const auto& other : r.records) {
                if (keys_equal(other.key, k, r.options.key_tol)) {
                    found = true;
                    break;
                }
            }
            CHECK(found);
        }
    }
    CHECK(reflection_pairs_complete(r));
}

TEST_CASE("budget exhaustion returns a partial, unsaturated result") {
    CensusOptions o;
    o.seed = 1;
    o.starts_budget = 8;
    o.window_min = 100000; // unreachable
    const CensusResult r = run_census(MassVector({1, 1, 1}), o);
    CHECK_FALSE(r.saturated);
    CHECK(r.records.size() >= 3); // the Moulton seeds are always present
    CHECK_FALSE(r.comparisons.binding);
}

TEST_CASE("run_census validates its inputs") {
    CHECK_THROWS_AS(run_census(MassVector({1, 1})), domain_error);
    CHECK_THROWS_AS(run_census(MassVector({1, 1, 1, 1, 1, 1, 1})), domain_error);
    CHECK_THROWS_AS(MassVector({1, 1, -1}), domain_error);
}

TEST_CASE("an impossible Morse polynomial is flagged") {
    // [1, 0, 12] - [1, 5, 6] has a negative synthetic-division coefficient.
    CensusResult fake{MassVector({1, 1, 1, 1}), CensusOptions{}, {},
                      IndexPolynomial({BigInt(1), BigInt(0), BigInt(12)}),
                      0, true, 0, false, {}, {}};
    const ComparisonReport rep = compare_with_bounds(fake);
    CHECK_FALSE(rep.morse_vs_bouquet.pass);
}

TEST_CASE("noncollinear counts and parity detection") {
    const CensusResult r = run_census(MassVector({1, 1, 1}), fast_options(5));
    const IndexPolynomial nc = noncollinear_counts(r);
    CHECK(nc.at(0) == 2);
    CHECK(nc.at(1) == 0);
}
