// Copyright (C) 2026 The wiretap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "wiretap/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "wiretap/closedform.hpp"
#include "wiretap/errors.hpp"
#include "wiretap/experiments.hpp"
#include "wiretap/montecarlo.hpp"

namespace wiretap::cli {
namespace {

using experiments::format_double;
using experiments::Units;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Flags shared by several subcommands. Unset optionals fall back to defaults
// when the command runs.
struct Flags {
    std::optional<double> lambda1;
    std::optional<double> lambda2;
    std::optional<double> snr_db;
    double rho = 0.0;
    std::optional<double> rate;
    std::string units = "nats";
    double tol = 1e-12;
    int kmax = 5000;
    std::uint64_t mc_samples = 100000;
    std::optional<std::uint64_t> seed;
    int workers = 1;
    std::string out;
    std::string config;

    double snr_start = 0.0;
    double snr_stop = 30.0;
    double snr_step = 5.0;
    std::string rho_list = "0,0.3,0.6,0.9";

    std::optional<double> alpha_max;
    std::optional<double> beta_max;
    int points = 41;
};

Units units_of(const Flags& f) { return f.units == "bits" ? Units::bits : Units::nats; }

SeriesControl series_of(const Flags& f) {
    SeriesControl c;
    c.rel_tol = f.tol;
    c.k_max = f.kmax;
    c.validate();
    return c;
}

// --snr-db sets both means; --lambda1/--lambda2 override either one.
ChannelParams params_of(const Flags& f) {
    const double from_db = f.snr_db ? experiments::db_to_linear(*f.snr_db) : 1.0;
    return ChannelParams(f.lambda1.value_or(from_db), f.lambda2.value_or(from_db), f.rho);
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty()) continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw DomainError("not a number in list: '" + item + "'");
        }
        if (used != item.size()) throw DomainError("not a number in list: '" + item + "'");
        values.push_back(v);
    }
    return values;
}

// A generated seed is announced so the run can be repeated; pass nullptr when
// the caller prints it anyway.
std::uint64_t resolve_seed(const Flags& f, std::ostream* announce) {
    if (f.seed) return *f.seed;
    std::random_device rd;
    const std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    if (announce) *announce << "seed=" << seed << '\n';
    return seed;
}

experiments::SweepConfig sweep_config_of(const Flags& f) {
    experiments::SweepConfig cfg;
    cfg.snr_db_start = f.snr_start;
    cfg.snr_db_stop = f.snr_stop;
    cfg.snr_db_step = f.snr_step;
    cfg.rho_list = parse_list(f.rho_list);
    cfg.rate = f.rate;
    cfg.lambda2 = f.lambda2;
    cfg.units = units_of(f);
    cfg.mc_samples = f.mc_samples;
    cfg.workers = f.workers;
    cfg.series = series_of(f);
    cfg.validate();
    return cfg;
}

// Writes via a buffer so a failed run never leaves a half-written file.
template <class Write>
void emit(const std::string& path, std::ostream& out, Write write) {
    std::ostringstream buf;
    write(buf);
    if (path.empty() || path == "-") {
        out << buf.str();
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + path + "' for writing");
    file << buf.str();
    file.flush();
    if (!file) throw IoError("failed writing '" + path + "'");
}

int cmd_capacity(const Flags& f, std::ostream& out, std::ostream& err) {
    const auto p = params_of(f);
    const auto ctrl = series_of(f);
    try {
        const auto r = closedform::average_secrecy_capacity(p, ctrl);
        const auto units = units_of(f);
        out << format_double(experiments::to_units(r.value, units)) << ' '
            << experiments::units_name(units) << '\n';
        err << "terms_used=" << r.terms_used << " last_term_ratio=" << format_double(r.last_term_ratio)
            << " fk_method="
            << (r.diag.method_used == specfun::EvalMethod::recursion ? "recursion" : "quadrature_fallback")
            << " cancellation=" << format_double(r.diag.cancellation_estimate) << '\n';
    } catch (const ConvergenceFailure& e) {
        err << "error: " << e.what() << "; partial=" << format_double(e.partial())
            << " terms=" << e.terms() << '\n';
        return kNoConvergence;
    }
    return kOk;
}

int cmd_outage(const Flags& f, std::ostream& out, std::ostream& err) {
    const auto p = params_of(f);
    const auto ctrl = series_of(f);
    try {
        const auto r = closedform::outage_probability(p, f.rate.value_or(0.0), ctrl);
        out << format_double(r.value) << '\n';
        err << "terms_used=" << r.terms_used << " y=" << format_double(r.y)
            << " mu=" << format_double(r.mu) << '\n';
    } catch (const ConvergenceFailure& e) {
        err << "error: " << e.what() << "; partial=" << format_double(e.partial())
            << " terms=" << e.terms() << '\n';
        return kNoConvergence;
    }
    return kOk;
}

int cmd_sweep(const Flags& f, std::ostream& out, std::ostream&) {
    const auto cfg = sweep_config_of(f);
    const auto rows = experiments::run_sweep(cfg);
    emit(f.out, out, [&](std::ostream& os) { experiments::write_sweep_csv(os, cfg, rows); });
    return kOk;
}

int cmd_compare(const Flags& f, std::ostream& out, std::ostream& err) {
    auto cfg = sweep_config_of(f);
    if (cfg.mc_samples < 10000) throw DomainError("compare needs --mc-samples >= 10000");
    // Keep stdout pure CSV when the table goes there.
    const bool csv_to_stdout = f.out.empty() || f.out == "-";
    cfg.seed = resolve_seed(f, csv_to_stdout ? &err : &out);
    err << "seed=" << cfg.seed << " workers=" << cfg.workers << " mc_samples=" << cfg.mc_samples << '\n';
    const auto rows = experiments::run_compare(cfg);
    emit(f.out, out, [&](std::ostream& os) { experiments::write_compare_csv(os, cfg, rows); });
    return kOk;
}

int cmd_simulate(const Flags& f, std::ostream& out, std::ostream&) {
    const auto p = params_of(f);
    const auto seed = resolve_seed(f, nullptr);
    const auto cap = montecarlo::estimate_capacity(p, f.mc_samples, seed, f.workers);
    const auto units = units_of(f);
    out << "seed=" << seed << " workers=" << f.workers << " n=" << f.mc_samples << '\n';
    out << "capacity_mean=" << format_double(experiments::to_units(cap.mean, units))
        << " std_error=" << format_double(experiments::to_units(cap.std_error, units))
        << " units=" << experiments::units_name(units) << '\n';
    if (f.rate) {
        const auto pout = montecarlo::estimate_outage(p, *f.rate, f.mc_samples, seed, f.workers);
        out << "outage_mean=" << format_double(pout.mean) << " std_error=" << format_double(pout.std_error)
            << " rate=" << format_double(*f.rate) << '\n';
    }
    return kOk;
}

int cmd_pdf(const Flags& f, std::ostream& out, std::ostream&) {
    const auto p = params_of(f);
    const auto ctrl = series_of(f);
    if (f.points < 2) throw DomainError("--points must be >= 2");
    const double a_max = f.alpha_max.value_or(4.0 * p.lambda1());
    const double b_max = f.beta_max.value_or(4.0 * p.lambda2());
    if (!(a_max > 0.0 && b_max > 0.0)) throw DomainError("--alpha-max and --beta-max must be > 0");
    emit(f.out, out, [&](std::ostream& os) {
        os << "alpha,beta,pdf_bessel,pdf_series\r\n";
        for (int i = 0; i < f.points; ++i) {
            const double alpha = a_max * i / (f.points - 1);
            for (int j = 0; j < f.points; ++j) {
                const double beta = b_max * j / (f.points - 1);
                const SnrPair s{alpha, beta};
                os << format_double(alpha) << ',' << format_double(beta) << ','
                   << format_double(channel::joint_pdf_bessel(p, s)) << ','
                   << format_double(channel::joint_pdf_series(p, s, ctrl)) << "\r\n";
            }
        }
    });
    return kOk;
}

void add_channel_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--lambda1", f.lambda1, "Mean SNR of Bob's channel (linear)");
    cmd->add_option("--lambda2", f.lambda2, "Mean SNR of Eve's channel (linear)");
    cmd->add_option("--snr-db", f.snr_db, "Mean SNR in dB applied to both channels");
    cmd->add_option("--rho", f.rho, "Power correlation in [0, 0.99]");
}

void add_series_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--tol", f.tol, "Relative truncation tolerance");
    cmd->add_option("--kmax", f.kmax, "Hard cap on series terms");
}

void add_units_flag(CLI::App* cmd, Flags& f) {
    cmd->add_option("--units", f.units, "Output units")->check(CLI::IsMember({"nats", "bits"}));
}

void add_mc_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--mc-samples", f.mc_samples, "Monte-Carlo sample count");
    cmd->add_option("--seed", f.seed, "RNG seed (printed when generated)");
    cmd->add_option("--workers", f.workers, "Worker threads; part of the reproducibility key")
        ->check(CLI::PositiveNumber);
}

void add_grid_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--snr-db-start", f.snr_start, "First SNR (dB)");
    cmd->add_option("--snr-db-stop", f.snr_stop, "Last SNR (dB)");
    cmd->add_option("--snr-db-step", f.snr_step, "SNR step (dB)");
    cmd->add_option("--rho-list", f.rho_list, "Comma-separated correlations");
    cmd->add_option("--lambda2", f.lambda2, "Fix Eve's mean SNR (linear) instead of tracking Bob's");
}

// key=value lines become "--key value" arguments placed before the user's
// own flags, so explicit flags win (options take the last value given).
std::vector<std::string> config_arguments(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::vector<std::string> args;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string{};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw DomainError("config line " + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || key == "config") {
            throw DomainError("config line " + std::to_string(lineno) + ": bad key");
        }
        args.push_back("--" + key);
        args.push_back(value);
    }
    return args;
}

std::vector<std::string> with_config(const std::vector<std::string>& args) {
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (!path || args.empty()) return args;
    std::vector<std::string> merged{args.front()};
    const auto extra = config_arguments(*path);
    merged.insert(merged.end(), extra.begin(), extra.end());
    merged.insert(merged.end(), args.begin() + 1, args.end());
    return merged;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Flags f;
    CLI::App app{"Secrecy capacity and outage over correlated Rayleigh wiretap channels", "wiretap"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);

    auto* capacity = app.add_subcommand("capacity", "Average secrecy capacity (series)");
    add_channel_flags(capacity, f);
    add_series_flags(capacity, f);
    add_units_flag(capacity, f);

    auto* outage = app.add_subcommand("outage", "Secrecy outage probability (series)");
    add_channel_flags(outage, f);
    add_series_flags(outage, f);
    outage->add_option("--rate", f.rate, "Target secrecy rate R in nats");

    auto* sweep = app.add_subcommand("sweep", "Capacity (or outage with --rate) over an SNR x rho grid");
    add_grid_flags(sweep, f);
    add_series_flags(sweep, f);
    add_units_flag(sweep, f);
    sweep->add_option("--rate", f.rate, "Sweep outage at this rate (nats) instead of capacity");
    sweep->add_option("--workers", f.workers, "Worker threads")->check(CLI::PositiveNumber);
    sweep->add_option("--out", f.out, "CSV output path (stdout if omitted)");

    auto* compare = app.add_subcommand("compare", "Closed form vs quadrature vs Monte-Carlo");
    add_grid_flags(compare, f);
    add_series_flags(compare, f);
    add_mc_flags(compare, f);
    compare->add_option("--rate", f.rate, "Compare outage at this rate (nats) instead of capacity");
    compare->add_option("--out", f.out, "CSV output path (stdout if omitted)");

    auto* simulate = app.add_subcommand("simulate", "Raw Monte-Carlo estimates");
    add_channel_flags(simulate, f);
    add_mc_flags(simulate, f);
    add_units_flag(simulate, f);
    simulate->add_option("--rate", f.rate, "Also estimate outage at this rate (nats)");

    auto* pdf = app.add_subcommand("pdf", "Tabulate the joint SNR density");
    add_channel_flags(pdf, f);
    add_series_flags(pdf, f);
    pdf->add_option("--alpha-max", f.alpha_max, "Largest alpha (default 4*lambda1)");
    pdf->add_option("--beta-max", f.beta_max, "Largest beta (default 4*lambda2)");
    pdf->add_option("--points", f.points, "Grid points per axis");
    pdf->add_option("--out", f.out, "CSV output path (stdout if omitted)");

    for (auto* cmd : {capacity, outage, sweep, compare, simulate, pdf}) {
        cmd->add_option("--config", f.config, "key=value file; explicit flags take precedence");
    }

    try {
        auto argv = with_config(args);
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidInput;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoFailure;
    }

    try {
        if (*capacity) return cmd_capacity(f, out, err);
        if (*outage) return cmd_outage(f, out, err);
        if (*sweep) return cmd_sweep(f, out, err);
        if (*compare) return cmd_compare(f, out, err);
        if (*simulate) return cmd_simulate(f, out, err);
        if (*pdf) return cmd_pdf(f, out, err);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const ConvergenceFailure& e) {
        err << "error: " << e.what() << "; partial=" << format_double(e.partial()) << '\n';
        return kNoConvergence;
    } catch (const NumericalInconsistency& e) {
        err << "error: " << e.what() << '\n';
        return kNoConvergence;
    } catch (const QuadratureNonconvergence& e) {
        err << "error: " << e.what() << '\n';
        return kNoConvergence;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoFailure;
    }
    return kInvalidInput;
}

}  // namespace wiretap::cli
