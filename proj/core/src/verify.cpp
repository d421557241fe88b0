#include "ccnb/verify.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "ccnb/census.hpp"
#include "ccnb/serialize.hpp"

namespace ccnb {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw schema_error(std::string("missing field: ") + key);
    }
    return j[key];
}

double num(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number()) throw schema_error(std::string("field is not a number: ") + key);
    return v.get<double>();
}

long long integer(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) throw schema_error(std::string("field is not an integer: ") + key);
    return v.get<long long>();
}

bool boolean(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_boolean()) throw schema_error(std::string("field is not a boolean: ") + key);
    return v.get<bool>();
}

std::vector<double> number_array(const json& v, const char* what) {
    if (!v.is_array()) throw schema_error(std::string("expected array: ") + what);
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw schema_error(std::string("non-numeric entry in ") + what);
        out.push_back(e.get<double>());
    }
    return out;
}

struct StoredRecord {
    Configuration configuration;
    std::vector<double> distances;
    int orientation = 0;
    double residual_norm = 0.0;
    double lambda = 0.0;
    int index = 0;
    std::vector<double> eigenvalues;
    bool degenerate = false;
    bool collinear = false;
    std::optional<bool> convex;
    std::optional<std::vector<int>> cyclic_order;
};

struct StoredCensus {
    int n = 0;
    MassVector masses{{1.0}};
    CensusOptions options;
    bool saturated = false;
    bool degenerate_found = false;
    int collinear_count = 0;
    std::vector<long long> morse_poly;
    std::vector<StoredRecord> records;
    json comparisons;
    json mcmillan;
};

StoredCensus parse(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw schema_error(std::string("not valid JSON: ") + e.what());
    }
    if (field(j, "schema").get<std::string>() != "ccnb.census.v1") {
        throw schema_error("schema is not ccnb.census.v1");
    }
    StoredCensus s;
    s.n = static_cast<int>(integer(j, "n"));
    if (s.n < 3) throw schema_error("n must be >= 3");
    const auto masses = number_array(field(j, "masses"), "masses");
    if (static_cast<int>(masses.size()) != s.n) throw schema_error("masses length != n");
    try {
        s.masses = MassVector(masses);
    } catch (const domain_error& e) {
        throw schema_error(e.what());
    }

    const json& o = field(j, "options");
    s.options.seed = static_cast<std::uint64_t>(integer(o, "seed"));
    s.options.newton.tol_residual = num(o, "tol_residual");
    s.options.spectral.tol_eig = num(o, "tol_eig");
    s.options.spectral.tol_degenerate = num(o, "tol_degenerate");
    s.options.spectral.residual_gate = num(o, "residual_gate");
    s.options.spectral.basis_seed = static_cast<std::uint64_t>(integer(o, "basis_seed"));
    s.options.key_tol = num(o, "key_tol");
    s.options.collinear_tol = num(o, "collinear_tol");

    s.saturated = boolean(j, "saturated");
    s.degenerate_found = boolean(j, "degenerate_found");
    s.collinear_count = static_cast<int>(integer(j, "collinear_count"));
    for (const auto& c : field(j, "morse_poly")) {
        if (!c.is_number_integer()) throw schema_error("morse_poly entries must be integers");
        s.morse_poly.push_back(c.get<long long>());
    }

    const json& recs = field(j, "records");
    if (!recs.is_array()) throw schema_error("records must be an array");
    for (const auto& e : recs) {
        const json& pos = field(e, "positions");
        if (!pos.is_array() || static_cast<int>(pos.size()) != s.n) {
            throw schema_error("record positions must be an n-row array");
        }
        std::vector<Vec2> x;
        for (const auto& p : pos) {
            const auto pr = number_array(p, "position row");
            if (pr.size() != 2) throw schema_error("position rows must be [x, y]");
            x.emplace_back(pr[0], pr[1]);
        }
        StoredRecord r{Configuration(s.masses, std::move(x)), {}, 0, 0.0, 0.0, 0, {}, false, false,
                       std::nullopt, std::nullopt};
        r.distances = number_array(field(e, "distances"), "distances");
        if (static_cast<int>(r.distances.size()) != s.n * (s.n - 1) / 2) {
            throw schema_error("distances length must be n(n-1)/2");
        }
        r.orientation = static_cast<int>(integer(e, "orientation"));
        if (r.orientation < -1 || r.orientation > 1) throw schema_error("orientation must be -1, 0 or 1");
        r.residual_norm = num(e, "residual_norm");
        r.lambda = num(e, "lambda");
        r.index = static_cast<int>(integer(e, "index"));
        r.eigenvalues = number_array(field(e, "eigenvalues"), "eigenvalues");
        r.degenerate = boolean(e, "degenerate");
        r.collinear = boolean(e, "collinear");
        const json& cx = field(e, "convex");
        if (cx.is_boolean()) r.convex = cx.get<bool>();
        else if (!cx.is_null()) throw schema_error("convex must be boolean or null");
        const json& co = field(e, "cyclic_order");
        if (co.is_array()) {
            std::vector<int> order;
            for (const auto& v : co) {
                if (!v.is_number_integer()) throw schema_error("cyclic_order entries must be integers");
                order.push_back(v.get<int>() - 1); // stored 1-based
            }
            r.cyclic_order = std::move(order);
        } else if (!co.is_null()) {
            throw schema_error("cyclic_order must be array or null");
        }
        s.records.push_back(std::move(r));
    }
    s.comparisons = field(j, "comparisons");
    s.mcmillan = field(j, "mcmillan_bartky");
    return s;
}

} // namespace

VerifyReport verify_census_json(const std::string& json_text) {
    VerifyReport rep;
    StoredCensus s{};
    try {
        s = parse(json_text);
    } catch (const schema_error& e) {
        rep.schema_ok = false;
        rep.ok = false;
        rep.issues.push_back(std::string("schema: ") + e.what());
        return rep;
    }

    auto issue = [&rep](const std::string& where, const std::string& what) {
        rep.ok = false;
        rep.issues.push_back(where + ": " + what);
    };

    // Rebuild a census result from positions alone, then diff.
    CensusResult recomputed{s.masses, s.options, {}, IndexPolynomial::zero(), 0, s.saturated, 0, false, {}, {}};
    int rec_id = 0;
    int max_index = s.n - 2;
    for (const auto& sr : s.records) {
        const std::string where = "record " + std::to_string(rec_id++);
        const PotentialMoment ui = compute_U_I(sr.configuration);
        const Vec2 com = center_of_mass(sr.configuration);
        if (std::abs(ui.I - 1.0) > 1e-9 || com.norm() > 1e-9) {
            issue(where, "positions are not in the normalized gauge (I=1, centered)");
            continue;
        }
        const Residual res = cc_residual(sr.configuration);
        if (std::abs(res.norm - sr.residual_norm) > 1e-10 + 0.05 * std::abs(sr.residual_norm)) {
            issue(where, "residual_norm stored " + format_double(sr.residual_norm) + " recomputed " +
                             format_double(res.norm));
        }
        if (std::abs(res.lambda - sr.lambda) > 1e-9 * std::max(1.0, std::abs(sr.lambda))) {
            issue(where, "lambda stored " + format_double(sr.lambda) + " recomputed " + format_double(res.lambda));
        }
        const ConfigKey key = config_key(sr.configuration, s.options.collinear_tol);
        double kd = 0.0;
        for (std::size_t i = 0; i < key.d.size() && i < sr.distances.size(); ++i) {
            kd = std::max(kd, std::abs(key.d[i] - sr.distances[i]));
        }
        if (kd > 1e-9) issue(where, "stored distances deviate by " + format_double(kd));
        if (key.orientation != sr.orientation) {
            issue(where, "orientation stored " + std::to_string(sr.orientation) + " recomputed " +
                             std::to_string(key.orientation));
        }
        const Classification cls = classify(sr.configuration, s.options.collinear_tol);
        if (cls.collinear != sr.collinear) issue(where, "collinear flag mismatch");
        if (cls.convex != sr.convex) issue(where, "convex flag mismatch");
        if (cls.cyclic_order != sr.cyclic_order) issue(where, "cyclic_order mismatch");

        IndexReport ir;
        if (res.norm <= s.options.spectral.residual_gate) {
            ir = morse_index(sr.configuration, s.options.spectral);
            if (ir.index != sr.index) {
                issue(where, "index stored " + std::to_string(sr.index) + " recomputed " +
                                 std::to_string(ir.index));
            }
            if (ir.degenerate != sr.degenerate) issue(where, "degenerate flag mismatch");
            if (ir.eigenvalues.size() != sr.eigenvalues.size()) {
                issue(where, "eigenvalue count mismatch");
            } else {
                double scale = 1.0;
                for (double e : ir.eigenvalues) scale = std::max(scale, std::abs(e));
                double dev = 0.0;
                for (std::size_t i = 0; i < ir.eigenvalues.size(); ++i) {
                    dev = std::max(dev, std::abs(ir.eigenvalues[i] - sr.eigenvalues[i]));
                }
                if (dev > 1e-7 * scale) issue(where, "eigenvalues deviate by " + format_double(dev));
            }
        } else {
            issue(where, "not a central configuration: residual " + format_double(res.norm) +
                             " exceeds the gate " + format_double(s.options.spectral.residual_gate));
            ir.index = sr.index; // keep aggregate diffs focused on the real defect
            ir.eigenvalues = sr.eigenvalues;
            ir.degenerate = sr.degenerate;
        }
        max_index = std::max(max_index, ir.index);
        recomputed.degenerate_found = recomputed.degenerate_found || ir.degenerate;
        if (cls.collinear) ++recomputed.collinear_count;
        recomputed.records.push_back(CensusRecord{sr.configuration, key, ir, cls, res.norm, res.lambda});
    }

    // Pairwise key duplicates in the file.
    for (std::size_t a = 0; a < recomputed.records.size(); ++a) {
        for (std::size_t b = a + 1; b < recomputed.records.size(); ++b) {
            if (keys_equal(recomputed.records[a].key, recomputed.records[b].key, s.options.key_tol)) {
                issue("records", "records " + std::to_string(a) + " and " + std::to_string(b) +
                                     " have the same key");
            }
        }
    }

    std::vector<BigInt> counts(static_cast<std::size_t>(max_index + 1), BigInt(0));
    for (const auto& r : recomputed.records) counts[static_cast<std::size_t>(r.index_report.index)] += 1;
    recomputed.morse_poly = IndexPolynomial(std::move(counts));

    IndexPolynomial stored_poly(std::vector<BigInt>(s.morse_poly.begin(), s.morse_poly.end()));
    if (!(recomputed.morse_poly == stored_poly)) {
        issue("morse_poly", "stored " + stored_poly.str() + " recomputed " + recomputed.morse_poly.str());
    }
    if (recomputed.collinear_count != s.collinear_count) {
        issue("collinear_count", "stored " + std::to_string(s.collinear_count) + " recomputed " +
                                     std::to_string(recomputed.collinear_count));
    }
    if (recomputed.degenerate_found != s.degenerate_found) issue("degenerate_found", "flag mismatch");
    if (!reflection_pairs_complete(recomputed)) {
        issue("records", "a non-collinear record lacks its mirror partner");
    }

    recomputed.comparisons = compare_with_bounds(recomputed);
    recomputed.mcmillan_bartky = mcmillan_bartky_check(recomputed);
    try {
        const json& c = s.comparisons;
        auto flag = [&](const char* key, bool got, const char* sub = nullptr) {
            const json& v = sub ? field(field(c, key), sub) : field(c, key);
            if (!v.is_boolean() || v.get<bool>() != got) {
                issue("comparisons", std::string(key) + (sub ? std::string(".") + sub : std::string()) +
                                         " does not match recomputation");
            }
        };
        flag("binding", recomputed.comparisons.binding);
        flag("parity_ok", recomputed.comparisons.parity_ok);
        flag("morse_vs_bouquet", recomputed.comparisons.morse_vs_bouquet.pass, "pass");
        flag("equivariant", recomputed.comparisons.equivariant.pass, "pass");
        flag("per_index_ge_mccord", recomputed.comparisons.per_index_ge_mccord, "pass");
        flag("total_ge_first_palmore", recomputed.comparisons.total_ge_first_palmore, "pass");
        flag("ignored_palmore", recomputed.comparisons.ignored_consistent, "consistent");

        const json& mb = s.mcmillan;
        if (boolean(mb, "applicable") != recomputed.mcmillan_bartky.applicable) {
            issue("mcmillan_bartky", "applicable flag mismatch");
        } else if (recomputed.mcmillan_bartky.applicable &&
                   boolean(mb, "all_satisfied") != recomputed.mcmillan_bartky.all_satisfied) {
            issue("mcmillan_bartky", "all_satisfied flag mismatch");
        }
    } catch (const schema_error& e) {
        rep.schema_ok = false;
        rep.ok = false;
        rep.issues.push_back(std::string("schema: ") + e.what());
    }
    return rep;
}

} // namespace ccnb
