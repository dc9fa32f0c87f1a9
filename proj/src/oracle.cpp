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

#include "wiretap/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "wiretap/errors.hpp"
#include "wiretap/quadrature.hpp"

namespace wiretap::oracle {
namespace {

constexpr int kMaxIntervals = 2000;
constexpr double kInnerRelTol = 1e-12;

// Breakpoints at powers of two of the channel mean, where the density varies.
std::array<double, 8> scale_breaks(double lambda) {
    return {0.125 * lambda, 0.25 * lambda, 0.5 * lambda, lambda,
            2 * lambda,     4 * lambda,    8 * lambda,   16 * lambda};
}

// Around the conditional mean of one SNR given the other.
std::array<double, 4> ridge_breaks(double center) {
    return {0.5 * center, center, 1.5 * center, 2.0 * center};
}

quad::Result checked(const quad::Result& r, const char* what) {
    if (!r.converged) throw QuadratureNonconvergence(what, r.value, r.abs_error);
    return r;
}

// Outer integral over x in [0, outer_hi]; for each x the inner variable runs
// over inner_range(x) with integrand(x, t).
template <class Range, class Integrand, class Ridge>
double iterated(double outer_hi, double outer_scale, Range inner_range, Integrand integrand,
                Ridge ridge, const QuadratureSpec& q) {
    const double inner_abs = 1e-3 * q.abs_tol / outer_hi;
    auto outer = [&](double x) {
        const auto [lo, hi] = inner_range(x);
        if (!(hi > lo)) return 0.0;
        const auto breaks = ridge_breaks(ridge(x));
        const auto r = quad::integrate([&](double t) { return integrand(x, t); }, lo, hi,
                                       {inner_abs, kInnerRelTol, kMaxIntervals}, breaks);
        return checked(r, "inner quadrature did not converge").value;
    };
    const auto breaks = scale_breaks(outer_scale);
    const auto r = quad::integrate(outer, 0.0, outer_hi, {0.5 * q.abs_tol, 0.0, kMaxIntervals}, breaks);
    return checked(r, "outer quadrature did not converge").value;
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0)) throw DomainError("abs_tol must be > 0");
    if (!(tail_multiplier >= 20.0)) throw DomainError("tail_multiplier must be >= 20");
}

double tail_mass_bound(const QuadratureSpec& q) { return 2.0 * std::exp(-q.tail_multiplier); }

double capacity_tail_bound(const ChannelParams& p, const QuadratureSpec& q) {
    const double t = q.tail_multiplier;
    return std::exp(-t) * (2.0 * std::log1p(t * p.lambda1()) + 1.0 / t);
}

double capacity_by_quadrature(const ChannelParams& p, const QuadratureSpec& q) {
    q.validate();
    const double a_max = q.tail_multiplier * p.lambda1();
    const double b_max = q.tail_multiplier * p.lambda2();
    const double slope = p.rho() * p.lambda2() / p.lambda1();
    const double offset = (1.0 - p.rho()) * p.lambda2();
    return iterated(
        a_max, p.lambda1(),
        [&](double alpha) { return std::pair{0.0, std::min(alpha, b_max)}; },
        [&](double alpha, double beta) {
            const SnrPair s{alpha, beta};
            return channel::instantaneous_secrecy_capacity(s) * channel::joint_pdf_bessel(p, s);
        },
        [&](double alpha) { return slope * alpha + offset; }, q);
}

double outage_by_quadrature(const ChannelParams& p, double rate, const QuadratureSpec& q) {
    q.validate();
    if (!(std::isfinite(rate) && rate >= 0.0)) throw DomainError("rate R must be finite and >= 0");
    const double a_max = q.tail_multiplier * p.lambda1();
    const double b_max = q.tail_multiplier * p.lambda2();
    const double growth = std::exp(rate);
    const double shift = std::expm1(rate);
    const double slope = p.rho() * p.lambda1() / p.lambda2();
    const double offset = (1.0 - p.rho()) * p.lambda1();
    return iterated(
        b_max, p.lambda2(),
        [&](double beta) { return std::pair{0.0, std::min(shift + growth * beta, a_max)}; },
        [&](double beta, double alpha) { return channel::joint_pdf_bessel(p, {alpha, beta}); },
        [&](double beta) { return slope * beta + offset; }, q);
}

double success_by_quadrature(const ChannelParams& p, double rate, const QuadratureSpec& q) {
    q.validate();
    if (!(std::isfinite(rate) && rate >= 0.0)) throw DomainError("rate R must be finite and >= 0");
    const double a_max = q.tail_multiplier * p.lambda1();
    const double b_max = q.tail_multiplier * p.lambda2();
    const double growth = std::exp(rate);
    const double shift = std::expm1(rate);
    const double slope = p.rho() * p.lambda1() / p.lambda2();
    const double offset = (1.0 - p.rho()) * p.lambda1();
    return iterated(
        b_max, p.lambda2(),
        [&](double beta) { return std::pair{std::min(shift + growth * beta, a_max), a_max}; },
        [&](double beta, double alpha) { return channel::joint_pdf_bessel(p, {alpha, beta}); },
        [&](double beta) { return slope * beta + offset; }, q);
}

double probability_in_box(const ChannelParams& p, double alpha_lo, double alpha_hi, double beta_lo,
                          double beta_hi, const QuadratureSpec& q) {
    q.validate();
    if (!(alpha_lo >= 0.0 && alpha_hi >= alpha_lo && beta_lo >= 0.0 && beta_hi >= beta_lo)) {
        throw DomainError("box corners must be ordered and non-negative");
    }
    const double slope = p.rho() * p.lambda1() / p.lambda2();
    const double offset = (1.0 - p.rho()) * p.lambda1();
    // Shift the outer variable so iterated() can integrate from zero.
    return iterated(
        beta_hi - beta_lo, p.lambda2(),
        [&](double) { return std::pair{alpha_lo, alpha_hi}; },
        [&](double db, double alpha) { return channel::joint_pdf_bessel(p, {alpha, beta_lo + db}); },
        [&](double db) { return slope * (beta_lo + db) + offset; }, q);
}

}  // namespace wiretap::oracle
