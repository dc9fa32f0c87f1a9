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

// Series forms of the average secrecy capacity and the secrecy outage
// probability over the correlated Rayleigh wiretap channel.

#include <vector>

#include "wiretap/channel.hpp"
#include "wiretap/series.hpp"
#include "wiretap/specfun.hpp"

namespace wiretap::closedform {

struct CapacityResult {
    double value = 0.0;  ///< nats
    int terms_used = 0;
    double last_term_ratio = 0.0;
    specfun::EvalDiag diag;
};

struct OutageResult {
    double value = 0.0;
    int terms_used = 0;
    double y = 0.0;   ///< (e^R - 1) / lambda1
    double mu = 0.0;  ///< e^R lambda2 / lambda1
};

/// R_k^1, evaluated literally through F(lambda, n, mu). The raw value grows
/// like (k!)^2 and overflows past k ~ 80; the series itself never calls this.
double r1_term(const ChannelParams& p, int k);

/// R_k^2, the lambda-swapped counterpart of the second sum in R_k^1.
double r2_term(const ChannelParams& p, int k);

/// Normalized term generator for the capacity series.
///
/// With G(a, n) = E[ln(1 + a X)], X ~ Gamma(n+1, 1), every c_k R_k product
/// collapses to rho^k (1-rho) times a negative-binomial mixture of G values:
///
///   c_k R_k^1 = rho^k (1-rho) [ G(a0, k) - sum_m NB(m; k+1, p1) G(a1, k+m) ]
///   c_k R_k^2 = rho^k (1-rho)   sum_m NB(m; k+1, p2) G(a2, k+m)
///
/// where a0 = lambda1 (1-rho), a1 = lambda1 (1-rho) / (1 + lambda1/lambda2),
/// a2 = lambda2 (1-rho) / (1 + lambda2/lambda1), p1 = lambda1/(lambda1+lambda2)
/// and p2 = 1 - p1. All quantities stay O(1) however large k gets.
class CapacitySeries {
public:
    explicit CapacitySeries(const ChannelParams& p);

    /// c_k R_k^1
    double main_term(int k);
    /// c_k R_k^2
    double eavesdropper_term(int k);
    /// c_k (R_k^1 - R_k^2), formed in one compensated sum.
    double term(int k);

    /// Worst diagnostic over every F_k consumed so far.
    specfun::EvalDiag diag() const;

private:
    double weight(int k) const;
    void ensure(int k);
    double mixture_remainder(int k);
    double mixture_tail(int k);

    ChannelParams params_;
    double log_p1_;
    double log_p2_;
    specfun::LogMomentTable direct_;
    specfun::LogMomentTable main_mix_;
    specfun::LogMomentTable eve_mix_;
    bool main_tail_;
};

/// sum_k c_k (R_k^1 - R_k^2), truncated per ctrl. Throws ConvergenceFailure
/// carrying the partial sum if k_max terms are not enough,
/// NumericalInconsistency if the sum is negative beyond 1e-12.
CapacityResult average_secrecy_capacity(const ChannelParams& p, const SeriesControl& ctrl = {});

/// Term generator for the outage series. success_term(k) is the k-th term of
///   1 - P_out(R) = exp(-y/(1-rho)) sum_k c_k (1-rho)^(k+1) k! sum_m ... ,
/// which regroups as rho^k (1-rho) P(N + M <= k) with N ~ NB(k+1, mu/(1+mu))
/// and M ~ Poisson(y/(1-rho)).
class OutageSeries {
public:
    OutageSeries(const ChannelParams& p, double rate);

    double success_term(int k);
    double y() const noexcept { return y_; }
    double mu() const noexcept { return mu_; }

private:
    void extend_poisson_cdf(int j);

    double rho_;
    double y_;
    double mu_;
    double shifted_y_;
    double log_p_;
    double log_q_;
    std::vector<double> poisson_cdf_;
    CompensatedSum poisson_acc_;
};

/// Outage series: P_out(R) for R >= 0 nats. The raw value must land in
/// [-1e-12, 1 + 1e-12] (then clamped) or NumericalInconsistency is thrown.
OutageResult outage_probability(const ChannelParams& p, double rate, const SeriesControl& ctrl = {});

}  // namespace wiretap::closedform
