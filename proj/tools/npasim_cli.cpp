// Command-line front end for the attenuator simulator. Talks to the
// simulation core exclusively through the C API in npasim/npasim.h.

#include "npasim/npasim.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitToleranceFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kMaxGridPoints = 10000;

struct CliError {
    std::string message;
};

[[noreturn]] void die(const std::string& message) { throw CliError{message}; }

// ------------------------------------------------------------------
// Value / range parsing

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v)) die("invalid " + what + ": '" + s + "'");
        return v;
    } catch (const CliError&) {
        throw;
    } catch (...) {
        die("invalid " + what + ": '" + s + "'");
    }
}

int parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size()) die("invalid " + what + ": '" + s + "'");
        return v;
    } catch (const CliError&) {
        throw;
    } catch (...) {
        die("invalid " + what + ": '" + s + "'");
    }
}

// "start:stop:step" (inclusive of endpoints within half a step) or a single
// value.
std::vector<double> parse_grid(const std::string& spec, const std::string& what,
                               bool allow_range) {
    const std::vector<std::string> parts = split(spec, ':');
    if (parts.size() == 1) return {parse_double(parts[0], what)};
    if (!allow_range) die(what + " must be a single value here, got range '" + spec + "'");
    if (parts.size() != 3) die("range for " + what + " must be start:stop:step, got '" + spec + "'");
    const double start = parse_double(parts[0], what);
    const double stop = parse_double(parts[1], what);
    const double step = parse_double(parts[2], what);
    if (step <= 0.0) die("range step for " + what + " must be > 0");
    if (stop < start) die("range for " + what + " must have stop >= start");
    std::vector<double> values;
    for (double v = start; v <= stop + step / 2.0; v += step) {
        values.push_back(v);
        if (static_cast<int>(values.size()) > kMaxGridPoints)
            die("range for " + what + " exceeds " + std::to_string(kMaxGridPoints) + " points");
    }
    return values;
}

std::vector<int> parse_int_grid(const std::string& spec, const std::string& what,
                                bool allow_range) {
    const std::vector<std::string> parts = split(spec, ':');
    if (parts.size() == 1) return {parse_int(parts[0], what)};
    if (!allow_range) die(what + " must be a single value here, got range '" + spec + "'");
    if (parts.size() != 3) die("range for " + what + " must be start:stop:step, got '" + spec + "'");
    const int start = parse_int(parts[0], what);
    const int stop = parse_int(parts[1], what);
    const int step = parse_int(parts[2], what);
    if (step <= 0) die("range step for " + what + " must be > 0");
    if (stop < start) die("range for " + what + " must have stop >= start");
    std::vector<int> values;
    for (int v = start; v <= stop; v += step) values.push_back(v);
    return values;
}

// "re" or "re,im"; ranges sweep the real part only.
std::vector<std::pair<double, double>> parse_alpha_grid(const std::string& spec,
                                                        bool allow_range) {
    const std::vector<std::string> parts = split(spec, ',');
    if (parts.size() == 2) {
        return {{parse_double(parts[0], "alpha"), parse_double(parts[1], "alpha")}};
    }
    if (parts.size() != 1) die("invalid --alpha: '" + spec + "' (expected re or re,im)");
    std::vector<std::pair<double, double>> values;
    for (const double re : parse_grid(parts[0], "alpha", allow_range))
        values.emplace_back(re, 0.0);
    return values;
}

// ------------------------------------------------------------------
// Run configuration

struct RunConfig {
    std::string scenario;  // coherent fock qubit cat op-equiv verify-all
    bool is_sweep = false;
    std::vector<std::pair<double, double>> alphas;
    std::vector<double> gains;
    std::vector<int> photon_numbers;
    int k = 0;
    int dim = 0;  // 0 = auto
    double guard = 0.4;
    std::string format = "table";
    std::string out_path;
};

void validate_gains(const std::vector<double>& gains) {
    for (const double g : gains)
        if (!(g >= 1.0)) die("g must be >= 1");
}

std::vector<double> gains_from_nu(const std::vector<double>& nus) {
    std::vector<double> gains;
    for (const double nu : nus) {
        if (!(nu > 0.0) || !(nu <= 1.0)) die("nu must lie in (0, 1]");
        gains.push_back(1.0 / nu);
    }
    return gains;
}

// ------------------------------------------------------------------
// Record emission

bool has(double v) { return !std::isnan(v); }

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

ordered_json record_inputs(const npasim_record& r) {
    ordered_json j = ordered_json::object();
    if (has(r.alpha_re)) j["alpha_re"] = r.alpha_re;
    if (has(r.alpha_im)) j["alpha_im"] = r.alpha_im;
    if (has(r.g)) j["g"] = r.g;
    if (has(r.nu)) j["nu"] = r.nu;
    if (r.n >= 0) j["n"] = r.n;
    j["k"] = r.k;
    j["dim_signal"] = r.dim_signal;
    j["dim_idler"] = r.dim_idler;
    if (has(r.guard_fraction)) j["guard_fraction"] = r.guard_fraction;
    return j;
}

ordered_json record_to_json(const npasim_record& r) {
    ordered_json numeric = ordered_json::object();
    if (has(r.numeric_probability)) numeric["probability"] = r.numeric_probability;
    if (has(r.fidelity)) numeric["fidelity"] = r.fidelity;
    if (has(r.amplitude_numeric_re)) numeric["amplitude_re"] = r.amplitude_numeric_re;
    if (has(r.amplitude_numeric_im)) numeric["amplitude_im"] = r.amplitude_numeric_im;
    if (has(r.amplitude_ratio_re)) numeric["amplitude_ratio_re"] = r.amplitude_ratio_re;
    if (has(r.amplitude_ratio_im)) numeric["amplitude_ratio_im"] = r.amplitude_ratio_im;
    if (has(r.heralded_purity)) numeric["heralded_purity"] = r.heralded_purity;
    if (has(r.unheralded_purity)) numeric["unheralded_purity"] = r.unheralded_purity;
    if (has(r.coherence_numeric)) numeric["coherence"] = r.coherence_numeric;
    if (has(r.column_diff_guarded)) numeric["column_diff_guarded"] = r.column_diff_guarded;
    if (has(r.column_diff_full)) numeric["column_diff_full"] = r.column_diff_full;
    if (has(r.unitarity_defect)) numeric["unitarity_defect"] = r.unitarity_defect;

    ordered_json analytic = ordered_json::object();
    if (has(r.analytic_probability)) analytic["probability"] = r.analytic_probability;
    if (has(r.amplitude_analytic)) analytic["amplitude"] = r.amplitude_analytic;
    if (has(r.coherence_analytic)) analytic["coherence"] = r.coherence_analytic;

    ordered_json residuals = ordered_json::object();
    if (has(r.max_residual)) residuals["max"] = r.max_residual;
    if (has(r.discarded_mass)) residuals["discarded_mass"] = r.discarded_mass;

    ordered_json j = ordered_json::object();
    j["inputs"] = record_inputs(r);
    j["numeric"] = numeric;
    j["analytic"] = analytic;
    j["residuals"] = residuals;
    j["pass"] = r.pass != 0;
    if (r.detail[0] != '\0') j["failures"] = std::string(r.detail);
    return j;
}

const char* const kCsvColumns =
    "scenario,alpha_re,alpha_im,g,nu,n,k,dim_signal,dim_idler,guard_fraction,"
    "numeric_probability,analytic_probability,fidelity,max_residual,discarded_mass,"
    "amplitude_numeric_re,amplitude_numeric_im,amplitude_analytic,"
    "amplitude_ratio_re,amplitude_ratio_im,heralded_purity,unheralded_purity,"
    "coherence_numeric,coherence_analytic,column_diff_guarded,column_diff_full,"
    "unitarity_defect,pass";

std::string record_to_csv_row(const npasim_record& r) {
    const auto cell = [](double v) { return has(v) ? num(v) : std::string(); };
    std::string row = r.scenario;
    for (const double v : {r.alpha_re, r.alpha_im, r.g, r.nu}) row += "," + cell(v);
    row += "," + (r.n >= 0 ? std::to_string(r.n) : std::string());
    row += "," + std::to_string(r.k);
    row += "," + std::to_string(r.dim_signal);
    row += "," + std::to_string(r.dim_idler);
    row += "," + cell(r.guard_fraction);
    for (const double v :
         {r.numeric_probability, r.analytic_probability, r.fidelity, r.max_residual,
          r.discarded_mass, r.amplitude_numeric_re, r.amplitude_numeric_im, r.amplitude_analytic,
          r.amplitude_ratio_re, r.amplitude_ratio_im, r.heralded_purity, r.unheralded_purity,
          r.coherence_numeric, r.coherence_analytic, r.column_diff_guarded, r.column_diff_full,
          r.unitarity_defect})
        row += "," + cell(v);
    row += "," + std::to_string(r.pass ? 1 : 0);
    return row;
}

std::string format_table(const std::vector<npasim_record>& records) {
    std::string out;
    char line[512];
    std::snprintf(line, sizeof line, "%-9s %-12s %-8s %-5s %-5s %-14s %-14s %-12s %-12s %s\n",
                  "scenario", "alpha", "g", "n", "dim", "P_numeric", "P_analytic", "fidelity",
                  "max_resid", "pass");
    out += line;
    for (const auto& r : records) {
        char alpha[32] = "-";
        if (has(r.alpha_re)) {
            if (has(r.alpha_im) && r.alpha_im != 0.0)
                std::snprintf(alpha, sizeof alpha, "%g%+gi", r.alpha_re, r.alpha_im);
            else
                std::snprintf(alpha, sizeof alpha, "%g", r.alpha_re);
        }
        const auto cell = [](double v, const char* f = "%.6g") {
            char buf[32];
            if (!has(v)) return std::string("-");
            std::snprintf(buf, sizeof buf, f, v);
            return std::string(buf);
        };
        std::snprintf(line, sizeof line, "%-9s %-12s %-8s %-5s %-5d %-14s %-14s %-12s %-12.3e %s\n",
                      r.scenario, alpha, cell(r.g).c_str(),
                      r.n >= 0 ? std::to_string(r.n).c_str() : "-", r.dim_signal,
                      cell(r.numeric_probability, "%.8g").c_str(),
                      cell(r.analytic_probability, "%.8g").c_str(),
                      cell(r.fidelity, "%.10g").c_str(), r.max_residual,
                      r.pass ? "pass" : "FAIL");
        out += line;
        if (r.detail[0] != '\0') {
            std::snprintf(line, sizeof line, "    failures: %s\n", r.detail);
            out += line;
        }
    }
    int passed = 0;
    for (const auto& r : records) passed += r.pass ? 1 : 0;
    std::snprintf(line, sizeof line, "%d/%zu records within tolerance\n", passed, records.size());
    out += line;
    return out;
}

std::string emit_records(const RunConfig& cfg, const std::vector<npasim_record>& records) {
    if (cfg.format == "json") {
        ordered_json j = ordered_json::object();
        j["scenario"] = cfg.scenario;
        ordered_json params = ordered_json::object();
        params["k"] = cfg.k;
        params["dim"] = cfg.dim;
        if (cfg.scenario == "op-equiv") params["guard_fraction"] = cfg.guard;
        j["params"] = params;
        ordered_json recs = ordered_json::array();
        for (const auto& r : records) recs.push_back(record_to_json(r));
        j["records"] = recs;
        return j.dump(2) + "\n";
    }
    if (cfg.format == "csv") {
        std::string out = std::string(kCsvColumns) + "\n";
        for (const auto& r : records) out += record_to_csv_row(r) + "\n";
        return out;
    }
    return format_table(records);
}

// ------------------------------------------------------------------
// Execution

void check_status(npasim_status status) {
    if (status == NPASIM_OK) return;
    std::cerr << "error: " << npasim_status_name(status) << ": " << npasim_last_error_message()
              << "\n";
    std::exit(kExitConfigError);
}

void warn_if_dim_below_recommendation(const RunConfig& cfg) {
    if (cfg.dim <= 0 || cfg.gains.empty()) return;
    int n_max = 1;
    if (cfg.scenario == "coherent" || cfg.scenario == "cat") {
        double worst = 0.0;
        for (const auto& [re, im] : cfg.alphas) worst = std::max(worst, std::hypot(re, im));
        n_max = npasim_coherent_dim(worst) - 1;
    } else if (cfg.scenario == "fock") {
        for (const int n : cfg.photon_numbers) n_max = std::max(n_max, n);
    } else if (cfg.scenario == "op-equiv") {
        return;
    }
    double worst_g = 1.0;
    for (const double g : cfg.gains) worst_g = std::max(worst_g, g);
    const int recommended = npasim_guarded_dim(n_max, worst_g);
    if (recommended > 0 && cfg.dim < recommended)
        std::cerr << "warning: --dim " << cfg.dim << " is below the guard-band recommendation "
                  << recommended << "; residuals may exceed tolerances\n";
}

std::vector<npasim_record> execute_records(const RunConfig& cfg) {
    std::vector<npasim_record> records;
    npasim_record rec;
    if (cfg.scenario == "coherent") {
        for (const auto& [re, im] : cfg.alphas)
            for (const double g : cfg.gains) {
                check_status(npasim_run_coherent(re, im, g, cfg.dim, cfg.k, &rec));
                records.push_back(rec);
            }
    } else if (cfg.scenario == "fock") {
        for (const int n : cfg.photon_numbers)
            for (const double g : cfg.gains) {
                check_status(npasim_run_fock(n, g, cfg.dim, cfg.k, &rec));
                records.push_back(rec);
            }
    } else if (cfg.scenario == "qubit") {
        for (const double g : cfg.gains) {
            check_status(npasim_run_qubit(g, cfg.dim, &rec));
            records.push_back(rec);
        }
    } else if (cfg.scenario == "cat") {
        for (const auto& [re, im] : cfg.alphas)
            for (const double g : cfg.gains) {
                check_status(npasim_run_cat(re, im, g, cfg.dim, &rec));
                records.push_back(rec);
            }
    } else if (cfg.scenario == "op-equiv") {
        for (const double g : cfg.gains) {
            check_status(npasim_run_op_equivalence(g, cfg.dim > 0 ? cfg.dim : 60, cfg.guard, &rec));
            records.push_back(rec);
        }
    }
    return records;
}

int run_verify_all(const RunConfig& cfg, std::ostream& out) {
    int count = 0;
    int all_pass = 0;
    std::vector<npasim_criterion> criteria(32);
    check_status(
        npasim_verify_all(criteria.data(), static_cast<int>(criteria.size()), &count, &all_pass));
    criteria.resize(std::min<std::size_t>(count, criteria.size()));

    if (cfg.format == "json") {
        ordered_json j = ordered_json::object();
        j["scenario"] = "verify-all";
        j["params"] = ordered_json::object();
        ordered_json recs = ordered_json::array();
        for (const auto& c : criteria) {
            ordered_json r = ordered_json::object();
            r["inputs"] = {{"criterion", c.index}, {"name", c.name}};
            r["numeric"] = ordered_json::object();
            r["analytic"] = ordered_json::object();
            r["residuals"] = ordered_json::object();
            r["pass"] = c.pass != 0;
            r["detail"] = std::string(c.detail);
            recs.push_back(r);
        }
        j["records"] = recs;
        j["all_pass"] = all_pass != 0;
        out << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << "criterion,name,pass,detail\n";
        for (const auto& c : criteria) {
            std::string detail = c.detail;
            for (char& ch : detail)
                if (ch == ',') ch = ';';
            out << c.index << "," << c.name << "," << (c.pass ? 1 : 0) << "," << detail << "\n";
        }
    } else {
        for (const auto& c : criteria)
            out << (c.pass ? "[PASS] " : "[FAIL] ") << c.index << ". " << c.name << "\n       "
                << c.detail << "\n";
        int passed = 0;
        for (const auto& c : criteria) passed += c.pass ? 1 : 0;
        out << passed << "/" << count << " criteria passed\n";
    }
    return all_pass ? kExitOk : kExitToleranceFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"npasim: heralded attenuation of optical states on truncated Fock spaces"};
    app.require_subcommand(1);

    std::string alpha_spec, g_spec, nu_spec, n_spec;
    RunConfig cfg;

    const auto add_common = [&](CLI::App* sub, bool wants_alpha, bool wants_n) {
        if (wants_alpha)
            sub->add_option("--alpha", alpha_spec, "complex amplitude, re[,im]");
        sub->add_option("--g", g_spec, "gain g >= 1" + std::string(sub->get_name() == "sweep"
                                                                       ? " (range start:stop:step)"
                                                                       : ""));
        sub->add_option("--nu", nu_spec, "attenuation nu in (0,1], alternative to --g");
        if (wants_n) sub->add_option("--n", n_spec, "photon number n >= 0");
        sub->add_option("--k", cfg.k, "idler herald photon number (default 0)");
        sub->add_option("--dim", cfg.dim, "Fock-space dimension override (default: auto)");
        sub->add_option("--guard", cfg.guard, "guard fraction for op-equiv (default 0.4)");
        sub->add_option("--format", cfg.format, "table|json|csv")
            ->check(CLI::IsMember({"table", "json", "csv"}));
        sub->add_option("--out", cfg.out_path, "write output to PATH instead of stdout");
    };

    CLI::App* coherent = app.add_subcommand("coherent", "attenuate a coherent state");
    add_common(coherent, true, false);
    CLI::App* fock = app.add_subcommand("fock", "attenuate a Fock state");
    add_common(fock, false, true);
    CLI::App* qubit = app.add_subcommand("qubit", "attenuate the single-rail qubit (|0>+|1>)/sqrt(2)");
    add_common(qubit, false, false);
    CLI::App* cat = app.add_subcommand("cat", "heralded vs unheralded attenuation of a cat state");
    add_common(cat, true, false);
    CLI::App* op_equiv =
        app.add_subcommand("op-equiv", "compare direct and factored squeezer constructions");
    add_common(op_equiv, false, false);
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a scenario over a parameter grid");
    std::string sweep_scenario;
    sweep_cmd->add_option("--scenario", sweep_scenario, "coherent|fock|qubit|cat|op-equiv")
        ->required()
        ->check(CLI::IsMember({"coherent", "fock", "qubit", "cat", "op-equiv"}));
    add_common(sweep_cmd, true, true);
    CLI::App* verify = app.add_subcommand("verify-all", "run the full verification suite");
    verify->add_option("--format", cfg.format, "table|json|csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    verify->add_option("--out", cfg.out_path, "write output to PATH instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        cfg.is_sweep = sub == sweep_cmd;
        cfg.scenario = cfg.is_sweep ? sweep_scenario : sub->get_name();

        if (cfg.scenario != "verify-all") {
            if (!g_spec.empty() && !nu_spec.empty()) die("--g and --nu are mutually exclusive");
            if (!nu_spec.empty())
                cfg.gains = gains_from_nu(parse_grid(nu_spec, "nu", cfg.is_sweep));
            else if (!g_spec.empty())
                cfg.gains = parse_grid(g_spec, "g", cfg.is_sweep);
            else
                die("--g (or --nu) is required");
            validate_gains(cfg.gains);

            const bool wants_alpha = cfg.scenario == "coherent" || cfg.scenario == "cat";
            const bool wants_n = cfg.scenario == "fock";
            if (wants_alpha) {
                if (alpha_spec.empty()) die("--alpha is required for this scenario");
                cfg.alphas = parse_alpha_grid(alpha_spec, cfg.is_sweep);
            } else if (!alpha_spec.empty()) {
                die("--alpha is not accepted by scenario '" + cfg.scenario + "'");
            }
            if (wants_n) {
                if (n_spec.empty()) die("--n is required for this scenario");
                cfg.photon_numbers = parse_int_grid(n_spec, "n", cfg.is_sweep);
                for (const int n : cfg.photon_numbers)
                    if (n < 0) die("n must be >= 0");
            } else if (!n_spec.empty()) {
                die("--n is not accepted by scenario '" + cfg.scenario + "'");
            }
            if (cfg.k < 0) die("k must be >= 0");
            if (cfg.dim != 0 && cfg.dim < 2) die("dim must be >= 2");
            if (!(cfg.guard > 0.0) || !(cfg.guard < 1.0)) die("guard must lie in (0, 1)");
            if (cfg.k > 0 && cfg.scenario != "coherent" && cfg.scenario != "fock")
                die("--k is only supported for coherent and fock scenarios");

            const std::size_t points = std::max<std::size_t>(cfg.alphas.size(), 1) *
                                       std::max<std::size_t>(cfg.gains.size(), 1) *
                                       std::max<std::size_t>(cfg.photon_numbers.size(), 1);
            if (points > kMaxGridPoints) die("parameter grid is too large");
            warn_if_dim_below_recommendation(cfg);
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return kExitConfigError;
    }

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!cfg.out_path.empty()) {
        file.open(cfg.out_path);
        if (!file) {
            std::cerr << "error: cannot open output file '" << cfg.out_path << "'\n";
            return kExitConfigError;
        }
        out = &file;
    }

    if (cfg.scenario == "verify-all") return run_verify_all(cfg, *out);

    const std::vector<npasim_record> records = execute_records(cfg);
    *out << emit_records(cfg, records);
    for (const auto& r : records)
        if (!r.pass) return kExitToleranceFailure;
    return kExitOk;
}
