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

#pragma once

// Grid drivers behind the sweep and compare commands, plus their CSV schemas.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wiretap/channel.hpp"
#include "wiretap/montecarlo.hpp"
#include "wiretap/oracle.hpp"
#include "wiretap/series.hpp"

namespace wiretap::experiments {

enum class Units { nats, bits };

double to_units(double nats, Units units) noexcept;
const char* units_name(Units units) noexcept;

/// Linear SNR from dB: 10^(dB/10).
double db_to_linear(double db) noexcept;

enum class Execution { parallel, serial };

struct SweepConfig {
    double snr_db_start = 0.0;
    double snr_db_stop = 30.0;
    double snr_db_step = 5.0;
    std::vector<double> rho_list{0.0, 0.3, 0.6, 0.9};
    std::optional<double> rate;     ///< set: outage instead of capacity
    std::optional<double> lambda2;  ///< set: Eve's mean SNR fixed (linear) instead of tracking Bob's
    Units units = Units::nats;
    std::uint64_t seed = 0;
    std::uint64_t mc_samples = 100000;
    int workers = 1;
    SeriesControl series;
    oracle::QuadratureSpec quadrature;

    /// Throws DomainError on an empty/out-of-range rho list, step <= 0,
    /// stop < start, or a negative rate.
    void validate() const;

    /// start, start + step, ... up to stop (inclusive within 1e-9 step).
    std::vector<double> snr_grid() const;
};

struct SweepRow {
    double snr_db = 0.0;
    double rho = 0.0;
    double closed = 0.0;  ///< capacity (nats) or outage probability
    int terms_used = 0;
    double quadrature = 0.0;
    montecarlo::McEstimate mc;
};

/// Seed used for Monte-Carlo in grid row `row`: splitmix64(seed + row).
std::uint64_t row_seed(std::uint64_t seed, std::size_t row) noexcept;

/// Channel parameters of a grid point.
ChannelParams grid_params(const SweepConfig& cfg, double snr_db, double rho);

/// Closed-form values only, rows ordered snr-major then rho.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg, Execution exec = Execution::parallel);

/// Closed form, quadrature oracle and Monte-Carlo side by side. Grid points
/// fan out over cfg.workers threads; rows come back in grid order.
std::vector<SweepRow> run_compare(const SweepConfig& cfg, Execution exec = Execution::parallel);

/// Doubles as %.17g (round-trip exact).
std::string format_double(double x);

void write_sweep_csv(std::ostream& os, const SweepConfig& cfg, const std::vector<SweepRow>& rows);
void write_compare_csv(std::ostream& os, const SweepConfig& cfg, const std::vector<SweepRow>& rows);

}  // namespace wiretap::experiments
