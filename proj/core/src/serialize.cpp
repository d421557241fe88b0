#include "ccnb/serialize.hpp"

#include <cstdio>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace ccnb {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

json poly_counts_json(const IndexPolynomial& p, int pad_len) {
    json arr = json::array();
    const int len = std::max<int>(pad_len, static_cast<int>(p.coeffs().size()));
    for (int k = 0; k < len; ++k) arr.push_back(p.at(k).convert_to<long long>());
    return arr;
}

json poly_exact_json(const IndexPolynomial& p, int pad_len) {
    json arr = json::array();
    const int len = std::max<int>(pad_len, static_cast<int>(p.coeffs().size()));
    for (int k = 0; k < len; ++k) arr.push_back(p.at(k).str());
    return arr;
}

json margins_json(const std::vector<BigInt>& m) {
    json arr = json::array();
    for (const auto& v : m) arr.push_back(v.convert_to<long long>());
    return arr;
}

json positions_json(const Configuration& c) {
    json arr = json::array();
    for (const auto& p : c.x) arr.push_back(json::array({p.x, p.y}));
    return arr;
}

json labels_1based(const std::vector<int>& order) {
    json arr = json::array();
    for (int v : order) arr.push_back(v + 1);
    return arr;
}

json division_check_json(const DivisionCheck& d) {
    json out;
    out["pass"] = d.pass;
    if (d.pass && d.s) out["s"] = poly_counts_json(*d.s, 0);
    return out;
}

json options_json(const CensusOptions& o) {
    // The thread count is deliberately omitted: results are identical for
    // any worker count and the document must be too.
    json j;
    j["seed"] = o.seed;
    j["starts_budget"] = o.starts_budget;
    j["batch_size"] = o.batch_size;
    j["window_per_record"] = o.window_per_record;
    j["window_min"] = o.window_min;
    j["tol_residual"] = o.newton.tol_residual;
    j["max_iter"] = o.newton.max_iter;
    j["min_sep"] = o.newton.min_sep;
    j["collapse_tol"] = o.newton.collapse_tol;
    j["max_backtracks"] = o.newton.max_backtracks;
    j["tol_eig"] = o.spectral.tol_eig;
    j["tol_degenerate"] = o.spectral.tol_degenerate;
    j["residual_gate"] = o.spectral.residual_gate;
    j["basis_seed"] = o.spectral.basis_seed;
    j["key_tol"] = o.key_tol;
    j["collinear_tol"] = o.collinear_tol;
    j["structured_transverse"] = o.structured_transverse;
    return j;
}

std::string dump(const json& j, int indent) {
    return indent >= 0 ? j.dump(indent) : j.dump();
}

} // namespace

std::string to_json(const Configuration& c, int indent) {
    json j;
    j["masses"] = c.masses.values();
    j["positions"] = positions_json(c);
    return dump(j, indent);
}

Configuration configuration_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw schema_error(std::string("configuration JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("masses") || !j.contains("positions") ||
        !j["masses"].is_array() || !j["positions"].is_array() ||
        j["masses"].size() != j["positions"].size() || j["masses"].empty()) {
        throw schema_error("configuration JSON: expected {masses:[...], positions:[[x,y],...]}");
    }
    std::vector<double> masses;
    for (const auto& m : j["masses"]) {
        if (!m.is_number()) throw schema_error("configuration JSON: non-numeric mass");
        masses.push_back(m.get<double>());
    }
    std::vector<Vec2> pts;
    for (const auto& p : j["positions"]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
            throw schema_error("configuration JSON: positions must be [x,y] pairs");
        }
        pts.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    try {
        return Configuration(MassVector(std::move(masses)), std::move(pts));
    } catch (const domain_error& e) {
        throw schema_error(std::string("configuration JSON: ") + e.what());
    }
}

std::string to_json(const CensusResult& r, int indent) {
    const int n = r.n();
    json j;
    j["schema"] = "ccnb.census.v1";
    j["n"] = n;
    j["masses"] = r.masses.values();
    j["options"] = options_json(r.options);
    j["saturated"] = r.saturated;
    j["degenerate_found"] = r.degenerate_found;
    j["starts_used"] = r.starts_used;
    j["collinear_count"] = r.collinear_count;
    j["morse_poly"] = poly_counts_json(r.morse_poly, n - 1);

    json recs = json::array();
    long long id = 0;
    for (const auto& rec : r.records) {
        json e;
        e["id"] = id++;
        e["positions"] = positions_json(rec.configuration);
        e["distances"] = rec.key.d;
        e["orientation"] = rec.key.orientation;
        e["residual_norm"] = rec.residual_norm;
        e["lambda"] = rec.lambda;
        e["index"] = rec.index_report.index;
        e["eigenvalues"] = rec.index_report.eigenvalues;
        e["degenerate"] = rec.index_report.degenerate;
        e["gap"] = rec.index_report.gap;
        e["collinear"] = rec.classification.collinear;
        e["convex"] = rec.classification.convex ? json(*rec.classification.convex) : json(nullptr);
        e["cyclic_order"] =
            rec.classification.cyclic_order ? labels_1based(*rec.classification.cyclic_order) : json(nullptr);
        recs.push_back(std::move(e));
    }
    j["records"] = std::move(recs);

    json cmp;
    cmp["binding"] = r.comparisons.binding;
    cmp["morse_vs_bouquet"] = division_check_json(r.comparisons.morse_vs_bouquet);
    cmp["parity_ok"] = r.comparisons.parity_ok;
    cmp["equivariant"] = division_check_json(r.comparisons.equivariant);
    cmp["per_index_ge_mccord"] =
        json{{"pass", r.comparisons.per_index_ge_mccord}, {"margin", margins_json(r.comparisons.mccord_margin)}};
    cmp["total_ge_first_palmore"] = json{{"pass", r.comparisons.total_ge_first_palmore},
                                         {"margin", r.comparisons.first_palmore_margin.convert_to<long long>()}};
    cmp["ignored_palmore"] = json{{"consistent", r.comparisons.ignored_consistent},
                                  {"margin", margins_json(r.comparisons.ignored_margin)}};
    j["comparisons"] = std::move(cmp);

    json mb;
    mb["applicable"] = r.mcmillan_bartky.applicable;
    if (r.mcmillan_bartky.applicable) {
        mb["all_satisfied"] = r.mcmillan_bartky.all_satisfied;
        json entries = json::array();
        for (const auto& e : r.mcmillan_bartky.entries) {
            entries.push_back(json{{"order", labels_1based(e.order)}, {"satisfied", e.satisfied}});
        }
        mb["orderings"] = std::move(entries);
    }
    j["mcmillan_bartky"] = std::move(mb);

    const BoundTable bt = bound_table(n);
    json bounds;
    bounds["bouquet"] = poly_exact_json(bt.bouquet, n - 1);
    bounds["first_palmore"] = poly_exact_json(bt.first_palmore, n - 1);
    bounds["mccord"] = poly_exact_json(bt.mccord, n - 1);
    bounds["ignored_palmore"] = poly_exact_json(bt.ignored_palmore, n - 1);
    bounds["totals"] = json{{"bouquet", bt.bouquet_total.str()},
                            {"first_palmore", bt.first_palmore_total.str()},
                            {"mccord", bt.mccord_total.str()},
                            {"ignored_palmore", bt.ignored_palmore_total.str()}};
    j["bounds"] = std::move(bounds);
    return dump(j, indent);
}

std::string to_csv(const CensusResult& r) {
    std::ostringstream os;
    os << "id,index,degenerate,collinear,convex,cyclic_order,orientation,residual_norm,lambda,gap,"
          "eigenvalues,positions\n";
    long long id = 0;
    for (const auto& rec : r.records) {
        os << id++ << ',' << rec.index_report.index << ',' << (rec.index_report.degenerate ? 1 : 0) << ','
           << (rec.classification.collinear ? 1 : 0) << ',';
        if (rec.classification.convex) os << (*rec.classification.convex ? 1 : 0);
        os << ',';
        if (rec.classification.cyclic_order) {
            const auto& co = *rec.classification.cyclic_order;
            for (std::size_t i = 0; i < co.size(); ++i) os << (i ? ">" : "") << co[i] + 1;
        }
        os << ',' << rec.key.orientation << ',' << format_double(rec.residual_norm) << ','
           << format_double(rec.lambda) << ',' << format_double(rec.index_report.gap) << ',';
        for (std::size_t i = 0; i < rec.index_report.eigenvalues.size(); ++i) {
            os << (i ? ";" : "") << format_double(rec.index_report.eigenvalues[i]);
        }
        os << ',';
        for (std::size_t i = 0; i < rec.configuration.x.size(); ++i) {
            const Vec2& p = rec.configuration.x[i];
            os << (i ? ";" : "") << format_double(p.x) << ';' << format_double(p.y);
        }
        os << '\n';
    }
    return os.str();
}

namespace {

void table_row(std::ostringstream& os, const std::string& name, const IndexPolynomial& p, int n,
               const BigInt& total) {
    os << std::left << std::setw(16) << name << std::right;
    for (int k = 0; k <= n - 2; ++k) os << std::setw(10) << p.at(k).str();
    os << std::setw(11) << total.str() << '\n';
}

void table_header(std::ostringstream& os, int n, const std::string& corner) {
    os << std::left << std::setw(16) << corner << std::right;
    for (int k = 0; k <= n - 2; ++k) os << std::setw(10) << ("Index " + std::to_string(k));
    os << std::setw(11) << "Total" << '\n';
}

} // namespace

std::string to_text(const BoundTable& t) {
    std::ostringstream os;
    table_header(os, t.n, "n=" + std::to_string(t.n));
    table_row(os, "bouquet", t.bouquet, t.n, t.bouquet_total);
    table_row(os, "first Palmore", t.first_palmore, t.n, t.first_palmore_total);
    table_row(os, "McCord", t.mccord, t.n, t.mccord_total);
    table_row(os, "Ignored Palmore", t.ignored_palmore, t.n, t.ignored_palmore_total);
    return os.str();
}

std::string to_json(const BoundTable& t, int indent) {
    json j;
    j["schema"] = "ccnb.bounds.v1";
    j["n"] = t.n;
    j["rows"] = json{{"bouquet", json{{"coeffs", poly_exact_json(t.bouquet, t.n - 1)},
                                      {"total", t.bouquet_total.str()}}},
                     {"first_palmore", json{{"coeffs", poly_exact_json(t.first_palmore, t.n - 1)},
                                            {"total", t.first_palmore_total.str()}}},
                     {"mccord", json{{"coeffs", poly_exact_json(t.mccord, t.n - 1)},
                                     {"total", t.mccord_total.str()}}},
                     {"ignored_palmore", json{{"coeffs", poly_exact_json(t.ignored_palmore, t.n - 1)},
                                              {"total", t.ignored_palmore_total.str()}}}};
    return dump(j, indent);
}

std::string to_csv(const BoundTable& t) {
    std::ostringstream os;
    os << "family";
    for (int k = 0; k <= t.n - 2; ++k) os << ",index" << k;
    os << ",total\n";
    auto row = [&](const std::string& name, const IndexPolynomial& p, const BigInt& total) {
        os << name;
        for (int k = 0; k <= t.n - 2; ++k) os << ',' << p.at(k).str();
        os << ',' << total.str() << '\n';
    };
    row("bouquet", t.bouquet, t.bouquet_total);
    row("first_palmore", t.first_palmore, t.first_palmore_total);
    row("mccord", t.mccord, t.mccord_total);
    row("ignored_palmore", t.ignored_palmore, t.ignored_palmore_total);
    return os.str();
}

std::string summary_text(const CensusResult& r) {
    const int n = r.n();
    std::ostringstream os;
    os << "masses:";
    for (double m : r.masses.values()) os << ' ' << format_double(m);
    os << "   (n=" << n << ", seed " << r.options.seed << ")\n";
    os << "census:";
    for (int k = 0; k <= std::max(n - 2, r.morse_poly.degree()); ++k) os << ' ' << r.morse_poly.at(k).str();
    os << " | " << r.morse_poly.total().str() << "\n\n";

    const BoundTable bt = bound_table(n);
    table_header(os, n, "");
    table_row(os, "census", r.morse_poly, n, r.morse_poly.total());
    table_row(os, "bouquet", bt.bouquet, n, bt.bouquet_total);
    table_row(os, "first Palmore", bt.first_palmore, n, bt.first_palmore_total);
    table_row(os, "McCord", bt.mccord, n, bt.mccord_total);
    table_row(os, "Ignored Palmore", bt.ignored_palmore, n, bt.ignored_palmore_total);
    os << '\n';
    os << "saturated: " << (r.saturated ? "yes" : "NO") << "   starts used: " << r.starts_used
       << "   degenerate: " << (r.degenerate_found ? "YES" : "no") << '\n';

    const long long moulton_expected = big_factorial(n).convert_to<long long>() / 2;
    os << "checks: morse-inequality-vs-bouquet " << (r.comparisons.morse_vs_bouquet.pass ? "PASS" : "FAIL")
       << " | reflection-parity " << (r.comparisons.parity_ok ? "PASS" : "FAIL") << " | equivariant "
       << (r.comparisons.equivariant.pass ? "PASS" : "FAIL") << " | moulton " << r.collinear_count << "/"
       << moulton_expected << " | per-index>=McCord " << (r.comparisons.per_index_ge_mccord ? "PASS" : "FAIL")
       << " | total>=first-Palmore " << (r.comparisons.total_ge_first_palmore ? "PASS" : "FAIL")
       << " | ignored-Palmore " << (r.comparisons.ignored_consistent ? "consistent" : "NOT consistent")
       << " (reported, not asserted)\n";
    if (!r.comparisons.binding) {
        os << "note: comparisons are non-binding (census unsaturated or degenerate)\n";
    }
    if (r.mcmillan_bartky.applicable) {
        int sat = 0;
        for (const auto& e : r.mcmillan_bartky.entries) sat += e.satisfied ? 1 : 0;
        os << "mcmillan-bartky: " << sat << "/" << r.mcmillan_bartky.entries.size()
           << " cyclic orderings have a convex minimum\n";
    }
    return os.str();
}

} // namespace ccnb
