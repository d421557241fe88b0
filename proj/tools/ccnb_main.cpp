#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ccnb/census.hpp"
#include "ccnb/morse_bounds.hpp"
#include "ccnb/serialize.hpp"
#include "ccnb/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitChecksFailed = 1;
constexpr int kExitUnsaturated = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitSchema = 4;
constexpr int kExitMismatch = 5;
constexpr int kExitUsage = 64;

int usage_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return kExitUsage;
}

std::vector<double> parse_masses(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad mass value '" + tok + "'");
        }
        if (used != tok.size()) throw std::invalid_argument("bad mass value '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) return false;
    f << content;
    return static_cast<bool>(f);
}

int census_exit_code(const ccnb::CensusResult& r) {
    if (r.degenerate_found) return kExitDegenerate;
    if (!r.saturated) return kExitUnsaturated;
    if (!ccnb::hard_checks_pass(r)) return kExitChecksFailed;
    return kExitOk;
}

int run_one_census(const ccnb::MassVector& masses, const ccnb::CensusOptions& opts,
                   const std::string& out_base, const std::string& format,
                   const nlohmann::json& sweep_meta) {
    const ccnb::CensusResult result = ccnb::run_census(masses, opts);

    std::string json_text = ccnb::to_json(result, 2);
    if (!sweep_meta.is_null()) {
        nlohmann::json doc = nlohmann::json::parse(json_text);
        doc["epsilon_sweep"] = sweep_meta;
        json_text = doc.dump(2);
    }
    const std::string csv_text = ccnb::to_csv(result);
    if (!write_file(out_base + ".json", json_text)) {
        std::cerr << "error: cannot write " << out_base << ".json\n";
        return kExitUsage;
    }
    if (!write_file(out_base + ".csv", csv_text)) {
        std::cerr << "error: cannot write " << out_base << ".csv\n";
        return kExitUsage;
    }

    if (format == "json") std::cout << json_text << "\n";
    else if (format == "csv") std::cout << csv_text;
    else std::cout << ccnb::summary_text(result);
    return census_exit_code(result);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ccnb: census engine and exact lower bounds for planar central configurations"};
    app.require_subcommand(1);

    // bounds
    int bounds_n = 0;
    std::string bounds_format = "text";
    std::string bounds_out;
    CLI::App* bounds = app.add_subcommand("bounds", "print the four lower-bound rows for n bodies");
    bounds->add_option("--n", bounds_n, "body count, n >= 3")->required();
    bounds->add_option("--format", bounds_format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    bounds->add_option("--out", bounds_out, "also write the output to this file");

    // census
    std::string masses_csv;
    std::string census_format = "text";
    std::string census_out = "census";
    std::string epsilon_sweep;
    ccnb::CensusOptions opts;
    CLI::App* census = app.add_subcommand("census", "find all central configurations for given masses");
    census->add_option("--masses", masses_csv, "comma-separated positive masses, e.g. 1,1,1,0.01")
        ->required();
    census->add_option("--seed", opts.seed, "base seed of the deterministic start stream");
    census->add_option("--starts-budget", opts.starts_budget, "max random polish attempts");
    census->add_option("--threads", opts.threads, "worker threads (0 = hardware); never changes results");
    census->add_option("--batch-size", opts.batch_size, "merge granularity of the random stream");
    census->add_option("--window-per-record", opts.window_per_record, "saturation window per record");
    census->add_option("--window-min", opts.window_min, "minimum saturation window");
    census->add_option("--tol-residual", opts.newton.tol_residual, "residual max-norm for convergence");
    census->add_option("--max-iter", opts.newton.max_iter, "Newton iteration cap");
    census->add_option("--min-sep", opts.newton.min_sep, "minimum start separation");
    census->add_option("--max-backtracks", opts.newton.max_backtracks, "line-search halvings");
    census->add_option("--tol-eig", opts.spectral.tol_eig, "relative negative-eigenvalue threshold");
    census->add_option("--epsilon-sweep", epsilon_sweep,
                       "comma-separated values substituted for the smallest mass, e.g. 0.05,0.01,0.002");
    census->add_option("--format", census_format, "stdout format: text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    census->add_option("--out", census_out, "output base path (writes <base>.json and <base>.csv)");

    // verify
    std::string verify_input;
    CLI::App* verify = app.add_subcommand("verify", "recompute a census JSON file and diff it");
    verify->add_option("input", verify_input, "census JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (bounds->parsed()) {
            if (bounds_n < 3) return usage_error("bounds requires --n >= 3");
            const ccnb::BoundTable t = ccnb::bound_table(bounds_n);
            std::string text;
            if (bounds_format == "json") text = ccnb::to_json(t, 2) + "\n";
            else if (bounds_format == "csv") text = ccnb::to_csv(t);
            else text = ccnb::to_text(t);
            std::cout << text;
            if (!bounds_out.empty() && !write_file(bounds_out, text)) {
                return usage_error("cannot write " + bounds_out);
            }
            return kExitOk;
        }

        if (census->parsed()) {
            std::vector<double> masses;
            try {
                masses = parse_masses(masses_csv);
            } catch (const std::invalid_argument& e) {
                return usage_error(e.what());
            }
            if (masses.size() < 3 || masses.size() > 6) {
                return usage_error("census needs 3 to 6 masses, got " + std::to_string(masses.size()));
            }
            for (double m : masses) {
                if (!(m > 0.0)) return usage_error("masses must be strictly positive");
            }
            if (epsilon_sweep.empty()) {
                return run_one_census(ccnb::MassVector(masses), opts, census_out, census_format,
                                      nlohmann::json(nullptr));
            }
            std::vector<double> eps_values;
            try {
                eps_values = parse_masses(epsilon_sweep);
            } catch (const std::invalid_argument& e) {
                return usage_error(e.what());
            }
            if (eps_values.empty()) return usage_error("--epsilon-sweep needs at least one value");
            for (double e : eps_values) {
                if (!(e > 0.0)) return usage_error("epsilon values must be strictly positive");
            }
            const double smallest = *std::min_element(masses.begin(), masses.end());
            int worst = kExitOk;
            for (double eps : eps_values) {
                std::vector<double> swept = masses;
                for (double& m : swept) {
                    if (m == smallest) m = eps;
                }
                nlohmann::json meta;
                meta["values"] = eps_values;
                meta["epsilon"] = eps;
                meta["replaced_mass"] = smallest;
                std::ostringstream suffix;
                suffix << census_out << "_eps" << eps;
                std::cout << "== epsilon " << eps << " ==\n";
                const int code = run_one_census(ccnb::MassVector(swept), opts, suffix.str(),
                                                census_format, meta);
                std::cout << "\n";
                worst = std::max(worst, code);
            }
            return worst;
        }

        if (verify->parsed()) {
            std::ifstream f(verify_input, std::ios::binary);
            if (!f) {
                std::cerr << "error: cannot read " << verify_input << "\n";
                return kExitSchema;
            }
            std::ostringstream buf;
            buf << f.rdbuf();
            const ccnb::VerifyReport rep = ccnb::verify_census_json(buf.str());
            for (const auto& i : rep.issues) std::cout << i << "\n";
            if (!rep.schema_ok) return kExitSchema;
            if (!rep.ok) return kExitMismatch;
            std::cout << "verify: all recomputed values match\n";
            return kExitOk;
        }
    } catch (const ccnb::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
