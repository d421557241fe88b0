#include <doctest.h>

#include <json.hpp>

#include "ccnb/census.hpp"
#include "ccnb/serialize.hpp"
#include "ccnb/verify.hpp"

using namespace ccnb;

namespace {

CensusResult small_census() {
    CensusOptions o;
    o.seed = 7;
    o.starts_budget = 200000;
    return run_census(MassVector({1, 1, 1}), o);
}

} // namespace

TEST_CASE("configuration JSON round-trips every numeric field exactly") {
    Configuration c(MassVector({1.0 / 3.0, 2.0, 0.1}),
                    {Vec2(0.123456789012345678, -4e-17), Vec2(1e300, 0.0), Vec2(-0.0, 17.25)});
    const std::string text = to_json(c);
    const Configuration back = configuration_from_json(text);
    REQUIRE(back.size() == c.size());
    for (int i = 0; i < c.size(); ++i) {
        CHECK(back.x[static_cast<std::size_t>(i)].x == c.x[static_cast<std::size_t>(i)].x);
        CHECK(back.x[static_cast<std::size_t>(i)].y == c.x[static_cast<std::size_t>(i)].y);
        CHECK(back.masses[i] == c.masses[i]);
    }
    CHECK(to_json(back) == text);
}

TEST_CASE("configuration JSON schema violations throw") {
    CHECK_THROWS_AS(configuration_from_json("not json"), schema_error);
    CHECK_THROWS_AS(configuration_from_json(R"({"masses":[1,1]})"), schema_error);
    CHECK_THROWS_AS(configuration_from_json(R"({"masses":[1,1],"positions":[[0,0]]})"), schema_error);
    CHECK_THROWS_AS(configuration_from_json(R"({"masses":[1,"a"],"positions":[[0,0],[1,0]]})"),
                    schema_error);
}

TEST_CASE("bound table renderings carry the paper rows") {
    const BoundTable t = bound_table(4);
    const std::string text = to_text(t);
    CHECK(text.find("bouquet") != std::string::npos);
    CHECK(text.find("Ignored Palmore") != std::string::npos);

    const std::string csv = to_csv(t);
    CHECK(csv.find("bouquet,1,5,6,12") != std::string::npos);
    CHECK(csv.find("first_palmore,1,11,12,24") != std::string::npos);
    CHECK(csv.find("mccord,2,12,12,26") != std::string::npos);
    CHECK(csv.find("ignored_palmore,6,16,12,34") != std::string::npos);

    const auto j = nlohmann::json::parse(to_json(t));
    CHECK(j["schema"] == "ccnb.bounds.v1");
    CHECK(j["rows"]["ignored_palmore"]["total"] == "34");
    CHECK(j["rows"]["bouquet"]["coeffs"] == nlohmann::json::array({"1", "5", "6"}));
}

TEST_CASE("census serialization, verification and tampering") {
    const CensusResult r = small_census();
    REQUIRE(r.saturated);
    const std::string text = to_json(r);

    SUBCASE("serialization is deterministic") { CHECK(to_json(r) == text); }

    SUBCASE("round trip verifies clean") {
        const VerifyReport rep = verify_census_json(text);
        CHECK(rep.schema_ok);
        for (const auto& i : rep.issues) MESSAGE(i);
        CHECK(rep.ok);
        CHECK(rep.issues.empty());
    }

    SUBCASE("summary text shows the paper-style counts") {
        const std::string s = summary_text(r);
        CHECK(s.find("census: 2 3 | 5") != std::string::npos);
        CHECK(s.find("moulton 3/3") != std::string::npos);
    }

    SUBCASE("csv has one row per record") {
        const std::string csv = to_csv(r);
        std::size_t rows = 0;
        for (char ch : csv) rows += ch == '\n' ? 1 : 0;
        CHECK(rows == r.records.size() + 1);
    }

    SUBCASE("a perturbed position fails the residual recomputation") {
        nlohmann::json doc = nlohmann::json::parse(text);
        doc["records"][0]["positions"][0][0] = doc["records"][0]["positions"][0][0].get<double>() + 1e-3;
        const VerifyReport rep = verify_census_json(doc.dump());
        CHECK(rep.schema_ok);
        CHECK_FALSE(rep.ok);
    }

    SUBCASE("an altered index is caught by recomputation") {
        nlohmann::json doc = nlohmann::json::parse(text);
        doc["records"][0]["index"] = doc["records"][0]["index"].get<int>() + 1;
        const VerifyReport rep = verify_census_json(doc.dump());
        CHECK(rep.schema_ok);
        CHECK_FALSE(rep.ok);
    }

    SUBCASE("a missing field is a schema violation") {
        nlohmann::json doc = nlohmann::json::parse(text);
        doc.erase("morse_poly");
        const VerifyReport rep = verify_census_json(doc.dump());
        CHECK_FALSE(rep.schema_ok);
    }

    SUBCASE("a wrong schema tag is a schema violation") {
        nlohmann::json doc = nlohmann::json::parse(text);
        doc["schema"] = "something.else";
        CHECK_FALSE(verify_census_json(doc.dump()).schema_ok);
    }
}

TEST_CASE("format_double parses back exactly") {
    for (double v : {1.0 / 3.0, 1e-300, 2.5e17, 0.1, -0.0, 123456.789012345678}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}
