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

// Special functions needed by the correlated wiretap closed forms:
// E1, I0, integer-order incomplete gammas, factorial/binomial, and the
// F_k / F(lambda, k, mu) moment family.
//
// Everything here is a pure function of its arguments.

#include <vector>

#include "wiretap/summation.hpp"

namespace wiretap::specfun {

enum class EvalMethod { recursion, quadrature_fallback };

/// How a moment value was obtained. cancellation_estimate is
/// sum|term| / |sum term| of the alternating closed form (1 = no cancellation).
struct EvalDiag {
    EvalMethod method_used = EvalMethod::recursion;
    double cancellation_estimate = 1.0;

    /// Keeps the worse of the two: fallback beats recursion, larger ratio wins.
    void absorb(const EvalDiag& other) noexcept;
};

struct Evaluated {
    double value = 0.0;
    EvalDiag diag;
};

/// Closed-form F_k is abandoned for quadrature above this cancellation ratio.
inline constexpr double kCancellationLimit = 1e6;

/// E1(x) = int_1^inf exp(-x t)/t dt for x > 0. Underflows to 0 past x ~ 700.
double exp_integral_e1(double x);

/// exp(x) * E1(x), finite for every x > 0.
double exp_integral_e1_scaled(double x);

/// Modified Bessel function of the first kind, order zero.
double bessel_i0(double x);

/// exp(-x) * I0(x), finite for every x >= 0.
double bessel_i0_scaled(double x);

/// ln(n!). Exact-integer products up to 20, accumulated logarithms above.
double log_factorial(int n);
double factorial(int n);
double binomial(int n, int k);

/// gamma(order, x) for positive integer order, via the finite-sum identity
/// gamma(n+1, x) = n! (1 - e^-x sum_{m<=n} x^m/m!).
double lower_gamma_int(double order, double x);

/// Gamma(order, x) = n! e^-x sum_{m<=n} x^m/m! for positive integer order.
double upper_gamma_int(double order, double x);

/// F_k = int_0^inf x^k exp(-mu x) / (1 + lambda x) dx.
///
/// Evaluated from the alternating closed form in E1; when that form cancels
/// by more than kCancellationLimit the value comes from direct quadrature.
Evaluated f_k_base(double lambda, int k, double mu);

/// F(lambda, k, mu) = int_0^inf ln(1 + lambda x) exp(-mu x) x^k dx, by the
/// upward recursion F(k) = (lambda/mu) F_k + (k/mu) F(k-1). The diagnostic
/// is the worst over the F_1..F_k it consumed.
Evaluated f_log_moment(double lambda, int k, double mu);

/// E[1/(1 + a X)] for X ~ Gamma(n+1, 1), by adaptive quadrature. This is
/// F_n scaled by mu^(n+1)/n! with a = lambda/mu.
double ratio_moment_by_quadrature(double a, int n);

/// Normalized moments for a fixed a = lambda/mu and X ~ Gamma(n+1, 1):
///
///   ratio_moment(n) = E[1/(1 + a X)] = mu^(n+1)/n! * F_n
///   log_moment(n)   = E[ln(1 + a X)] = mu^(n+1)/n! * F(lambda, n, mu)
///
/// Both are O(1) for every n, so tables reach indices where the raw
/// F values overflow a double. Extending is incremental and amortized O(1)
/// per entry outside the quadrature-fallback band.
class LogMomentTable {
public:
    explicit LogMomentTable(double a);

    void extend_to(int n_max);

    int size() const noexcept { return static_cast<int>(log_.size()); }
    double a() const noexcept { return a_; }
    double log_moment(int n) const { return log_.at(static_cast<std::size_t>(n)); }
    double ratio_moment(int n) const { return ratio_.at(static_cast<std::size_t>(n)); }
    const EvalDiag& diag(int n) const { return diag_.at(static_cast<std::size_t>(n)); }

    /// Worst diagnostic over every entry built so far.
    const EvalDiag& worst() const noexcept { return worst_; }

private:
    void push_next();

    double a_;
    double z_;
    double log_z_;
    bool log_domain_;
    // Closed-form state: positive and negative parts of the finite sum,
    // and the magnitude of the E1 term (linear or log depending on log_domain_).
    double pos_sum_ = 0.0;
    double neg_sum_ = 0.0;
    double e1_term_ = 0.0;
    CompensatedSum log_acc_;
    std::vector<double> ratio_;
    std::vector<double> log_;
    std::vector<EvalDiag> diag_;
    EvalDiag worst_;
};

}  // namespace wiretap::specfun
