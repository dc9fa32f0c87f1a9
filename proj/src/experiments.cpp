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

#include "wiretap/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>

#include "wiretap/closedform.hpp"
#include "wiretap/errors.hpp"

namespace wiretap::experiments {
namespace {

// RFC 4180 line terminator.
constexpr const char* kEol = "\r\n";

struct GridPoint {
    double snr_db;
    double rho;
};

std::vector<GridPoint> grid_points(const SweepConfig& cfg) {
    std::vector<GridPoint> pts;
    for (double snr : cfg.snr_grid()) {
        for (double rho : cfg.rho_list) pts.push_back({snr, rho});
    }
    return pts;
}

// Runs fill(i) for every row; exceptions from workers are rethrown in row order.
template <class Fill>
void for_each_row(std::size_t n, int workers, Execution exec, Fill fill) {
    std::vector<std::exception_ptr> errors(n);
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
            try {
                fill(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) fill(i);
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace

double to_units(double nats, Units units) noexcept {
    return units == Units::bits ? nats / std::numbers::ln2 : nats;
}

const char* units_name(Units units) noexcept { return units == Units::bits ? "bits" : "nats"; }

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

void SweepConfig::validate() const {
    if (!(snr_db_step > 0.0)) throw DomainError("SNR step must be > 0");
    if (!(snr_db_stop >= snr_db_start)) throw DomainError("SNR stop must be >= start");
    if (rho_list.empty()) throw DomainError("rho list must not be empty");
    for (double rho : rho_list) {
        if (!(rho >= 0.0 && rho <= kRhoMax)) throw DomainError("every rho must lie in [0, 0.99]");
    }
    if (rate && !(std::isfinite(*rate) && *rate >= 0.0)) throw DomainError("rate R must be >= 0");
    if (lambda2 && !(std::isfinite(*lambda2) && *lambda2 > 0.0)) {
        throw DomainError("lambda2 must be > 0");
    }
    if (workers < 1) throw DomainError("workers must be >= 1");
    series.validate();
    quadrature.validate();
}

std::vector<double> SweepConfig::snr_grid() const {
    std::vector<double> grid;
    const double limit = snr_db_stop + 1e-9 * snr_db_step;
    for (int i = 0;; ++i) {
        const double snr = snr_db_start + i * snr_db_step;
        if (snr > limit) break;
        grid.push_back(snr);
    }
    return grid;
}

std::uint64_t row_seed(std::uint64_t seed, std::size_t row) noexcept {
    return montecarlo::splitmix64(seed + static_cast<std::uint64_t>(row));
}

ChannelParams grid_params(const SweepConfig& cfg, double snr_db, double rho) {
    const double lambda1 = db_to_linear(snr_db);
    return ChannelParams(lambda1, cfg.lambda2.value_or(lambda1), rho);
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg, Execution exec) {
    cfg.validate();
    const auto pts = grid_points(cfg);
    std::vector<SweepRow> rows(pts.size());
    for_each_row(pts.size(), cfg.workers, exec, [&](std::size_t i) {
        const auto p = grid_params(cfg, pts[i].snr_db, pts[i].rho);
        SweepRow& row = rows[i];
        row.snr_db = pts[i].snr_db;
        row.rho = pts[i].rho;
        if (cfg.rate) {
            const auto r = closedform::outage_probability(p, *cfg.rate, cfg.series);
            row.closed = r.value;
            row.terms_used = r.terms_used;
        } else {
            const auto r = closedform::average_secrecy_capacity(p, cfg.series);
            row.closed = r.value;
            row.terms_used = r.terms_used;
        }
    });
    return rows;
}

std::vector<SweepRow> run_compare(const SweepConfig& cfg, Execution exec) {
    cfg.validate();
    if (cfg.mc_samples < 10000) throw DomainError("compare needs mc_samples >= 10000");
    const auto pts = grid_points(cfg);
    std::vector<SweepRow> rows(pts.size());
    for_each_row(pts.size(), cfg.workers, exec, [&](std::size_t i) {
        const auto p = grid_params(cfg, pts[i].snr_db, pts[i].rho);
        const auto seed = row_seed(cfg.seed, i);
        SweepRow& row = rows[i];
        row.snr_db = pts[i].snr_db;
        row.rho = pts[i].rho;
        if (cfg.rate) {
            const auto r = closedform::outage_probability(p, *cfg.rate, cfg.series);
            row.closed = r.value;
            row.terms_used = r.terms_used;
            row.quadrature = oracle::outage_by_quadrature(p, *cfg.rate, cfg.quadrature);
            row.mc = exec == Execution::parallel
                         ? montecarlo::estimate_outage(p, *cfg.rate, cfg.mc_samples, seed, cfg.workers)
                         : montecarlo::serial::estimate_outage(p, *cfg.rate, cfg.mc_samples, seed,
                                                               cfg.workers);
        } else {
            const auto r = closedform::average_secrecy_capacity(p, cfg.series);
            row.closed = r.value;
            row.terms_used = r.terms_used;
            row.quadrature = oracle::capacity_by_quadrature(p, cfg.quadrature);
            row.mc = exec == Execution::parallel
                         ? montecarlo::estimate_capacity(p, cfg.mc_samples, seed, cfg.workers)
                         : montecarlo::serial::estimate_capacity(p, cfg.mc_samples, seed, cfg.workers);
        }
    });
    return rows;
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_sweep_csv(std::ostream& os, const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
    if (cfg.rate) {
        os << "snr_db,rho,p_out,terms_used" << kEol;
        for (const auto& r : rows) {
            os << format_double(r.snr_db) << ',' << format_double(r.rho) << ','
               << format_double(r.closed) << ',' << r.terms_used << kEol;
        }
        return;
    }
    os << "snr_db,rho,cs_nats,cs_units_requested,terms_used" << kEol;
    for (const auto& r : rows) {
        os << format_double(r.snr_db) << ',' << format_double(r.rho) << ','
           << format_double(r.closed) << ',' << format_double(to_units(r.closed, cfg.units)) << ','
           << r.terms_used << kEol;
    }
}

void write_compare_csv(std::ostream& os, const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
    if (cfg.rate) {
        os << "snr_db,rho,pout_closed,pout_quadrature,pout_mc,mc_stderr,abs_diff_closed_quad,z_score_mc"
           << kEol;
    } else {
        os << "snr_db,rho,cs_closed,cs_quadrature,cs_mc,mc_stderr,abs_diff_closed_quad,z_score_mc" << kEol;
    }
    for (const auto& r : rows) {
        const double diff = r.mc.mean - r.closed;
        const double z = r.mc.std_error > 0.0 ? diff / r.mc.std_error
                         : diff == 0.0        ? 0.0
                                              : std::copysign(INFINITY, diff);
        os << format_double(r.snr_db) << ',' << format_double(r.rho) << ','
           << format_double(r.closed) << ',' << format_double(r.quadrature) << ','
           << format_double(r.mc.mean) << ',' << format_double(r.mc.std_error) << ','
           << format_double(std::fabs(r.closed - r.quadrature)) << ',' << format_double(z) << kEol;
    }
}

}  // namespace wiretap::experiments
