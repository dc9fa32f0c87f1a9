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

#include "wiretap/series.hpp"

namespace wiretap {

/// Largest accepted power correlation. Beyond it the k-series needs
/// thousands of terms and parameters are rejected instead.
inline constexpr double kRhoMax = 0.99;

/// Mean SNRs of the main (lambda1) and eavesdropper (lambda2) channels, both
/// linear, and the power correlation rho between the instantaneous SNRs.
class ChannelParams {
public:
    /// Throws DomainError naming the violated invariant.
    ChannelParams(double lambda1, double lambda2, double rho);

    double lambda1() const noexcept { return lambda1_; }
    double lambda2() const noexcept { return lambda2_; }
    double rho() const noexcept { return rho_; }

private:
    double lambda1_;
    double lambda2_;
    double rho_;
};

/// One realization of the instantaneous SNRs: alpha at Bob, beta at Eve.
struct SnrPair {
    double alpha;
    double beta;
};

namespace channel {

/// Throws DomainError unless both SNRs are finite and non-negative.
void validate(const SnrPair& s);

/// c_k = rho^k / ((k!)^2 (1-rho)^(2k+1)) for 0 <= rho < 1.
double series_coefficient(int k, double rho);

/// Joint density of (alpha, beta) in Bessel form.
double joint_pdf_bessel(const ChannelParams& p, const SnrPair& s);

/// Joint density as sum_k c_k f_k(alpha, beta), truncated per ctrl.
/// Throws ConvergenceFailure if ctrl.k_max terms are not enough.
double joint_pdf_series(const ChannelParams& p, const SnrPair& s, const SeriesControl& ctrl = {});

/// max(0, ln(1+alpha) - ln(1+beta)) in nats.
double instantaneous_secrecy_capacity(const SnrPair& s) noexcept;

}  // namespace channel
}  // namespace wiretap
