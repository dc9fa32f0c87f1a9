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

#include "wiretap/specfun.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "wiretap/errors.hpp"
#include "wiretap/quadrature.hpp"

namespace wiretap::specfun {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kMaxFinite = std::numeric_limits<double>::max();

// Above this 1/a the closed-form partial sums would overflow a double, so the
// recurrence state is carried as logarithms.
constexpr double kLogDomainThreshold = 600.0;

// Series below, asymptotic expansion above.
constexpr double kBesselSplit = 30.0;

constexpr int kLogFactorialTableSize = 1 << 15;

void require(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}

double log_add(double x, double y) {
    if (x == kNegInf) return y;
    if (y == kNegInf) return x;
    const double hi = std::max(x, y);
    return hi + std::log1p(std::exp(-std::fabs(x - y)));
}

constexpr std::array<std::uint64_t, 21> make_exact_factorials() {
    std::array<std::uint64_t, 21> f{};
    f[0] = 1;
    for (std::size_t i = 1; i < f.size(); ++i) f[i] = f[i - 1] * i;
    return f;
}
constexpr auto kExactFactorials = make_exact_factorials();

const std::vector<double>& log_factorial_table() {
    static const std::vector<double> table = [] {
        std::vector<double> t(kLogFactorialTableSize);
        CompensatedSum acc;
        for (int i = 0; i < kLogFactorialTableSize; ++i) {
            if (i <= 20) {
                t[i] = std::log(static_cast<double>(kExactFactorials[i]));
                acc = CompensatedSum(t[i]);
            } else {
                acc.add(std::log(static_cast<double>(i)));
                t[i] = acc.value();
            }
        }
        return t;
    }();
    return table;
}

// sum_{m>=1} (-1)^(m+1) x^m / (m m!), so E1 = -gamma - ln x + series.
double e1_series_part(double x) {
    double sum = 0.0;
    double power = 1.0;
    for (int m = 1; m < 200; ++m) {
        power *= -x / m;
        const double term = -power / m;
        sum += term;
        if (std::fabs(term) < kEps * std::fabs(sum)) break;
    }
    return sum;
}

// exp(x) E1(x) by the modified Lentz continued fraction, x > 1.
double e1_scaled_continued_fraction(double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

double e1_small(double x) { return -std::numbers::egamma - std::log(x) + e1_series_part(x); }

double i0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < kEps * sum) break;
    }
    return sum;
}

// exp(-x) I0(x) ~ (2 pi x)^(-1/2) sum_k ((2k-1)!!)^2 / (k! (8x)^k)
double i0_scaled_asymptotic(double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd / (8.0 * k * x);
        sum += term;
        if (term < kEps * sum) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

int checked_integer_order(double order) {
    require(std::isfinite(order) && order >= 1.0 && std::floor(order) == order,
            "incomplete gamma order must be a positive integer");
    require(order < 1e6, "incomplete gamma order too large");
    return static_cast<int>(order) - 1;
}

// e^-x sum_{m=0}^{n} x^m/m!  (regularized upper gamma for integer order)
double upper_regularized(int n, double x) {
    if (x == 0.0) return 1.0;
    const double lx = std::log(x);
    CompensatedSum sum;
    for (int m = 0; m <= n; ++m) sum.add(std::exp(m * lx - log_factorial(m) - x));
    return std::min(sum.value(), 1.0);
}

// e^-x sum_{m>n} x^m/m!, used when x < n+1 so the tail converges geometrically.
double lower_regularized_tail(int n, double x) {
    if (x == 0.0) return 0.0;
    const double lx = std::log(x);
    CompensatedSum sum;
    for (int m = n + 1; m < n + 100000; ++m) {
        const double term = std::exp(m * lx - log_factorial(m) - x);
        sum.add(term);
        if (term < kEps * sum.value() || term == 0.0) break;
    }
    return sum.value();
}

void check_moment_args(double lambda, int k, double mu) {
    require(std::isfinite(lambda) && lambda > 0.0, "lambda must be positive and finite");
    require(std::isfinite(mu) && mu > 0.0, "mu must be positive and finite");
    require(k >= 0, "moment order k must be non-negative");
}

// n!/mu^(n+1), the factor between normalized and raw moments.
double moment_scale(int n, double mu) { return std::exp(log_factorial(n) - (n + 1) * std::log(mu)); }

}  // namespace

void EvalDiag::absorb(const EvalDiag& other) noexcept {
    if (other.method_used == EvalMethod::quadrature_fallback) method_used = other.method_used;
    cancellation_estimate = std::max(cancellation_estimate, other.cancellation_estimate);
}

double exp_integral_e1(double x) {
    require(x > 0.0, "E1 requires x > 0");
    if (std::isinf(x)) return 0.0;
    if (x <= 1.0) return e1_small(x);
    return e1_scaled_continued_fraction(x) * std::exp(-x);
}

double exp_integral_e1_scaled(double x) {
    require(x > 0.0, "E1 requires x > 0");
    if (x <= 1.0) return std::exp(x) * e1_small(x);
    return e1_scaled_continued_fraction(x);
}

double bessel_i0(double x) {
    require(x >= 0.0, "I0 requires x >= 0");
    if (x <= kBesselSplit) return i0_series(x);
    return i0_scaled_asymptotic(x) * std::exp(x);
}

double bessel_i0_scaled(double x) {
    require(x >= 0.0, "I0 requires x >= 0");
    if (x <= kBesselSplit) return i0_series(x) * std::exp(-x);
    return i0_scaled_asymptotic(x);
}

double log_factorial(int n) {
    require(n >= 0, "factorial of a negative integer");
    if (n < kLogFactorialTableSize) return log_factorial_table()[static_cast<std::size_t>(n)];
    return std::lgamma(n + 1.0);
}

double factorial(int n) {
    require(n >= 0, "factorial of a negative integer");
    if (n <= 20) return static_cast<double>(kExactFactorials[static_cast<std::size_t>(n)]);
    return std::exp(log_factorial(n));
}

double binomial(int n, int k) {
    require(n >= 0, "binomial with negative n");
    if (k < 0 || k > n) return 0.0;
    if (n <= 20) {
        const auto num = kExactFactorials[static_cast<std::size_t>(n)];
        const auto den = kExactFactorials[static_cast<std::size_t>(k)] *
                         kExactFactorials[static_cast<std::size_t>(n - k)];
        return static_cast<double>(num / den);
    }
    return std::round(std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k)));
}

double lower_gamma_int(double order, double x) {
    const int n = checked_integer_order(order);
    require(std::isfinite(x) && x >= 0.0, "incomplete gamma requires finite x >= 0");
    if (x == 0.0) return 0.0;
    const double p = x < n + 1.0 ? lower_regularized_tail(n, x) : 1.0 - upper_regularized(n, x);
    return factorial(n) * p;
}

double upper_gamma_int(double order, double x) {
    const int n = checked_integer_order(order);
    require(std::isfinite(x) && x >= 0.0, "incomplete gamma requires finite x >= 0");
    return factorial(n) * upper_regularized(n, x);
}

double ratio_moment_by_quadrature(double a, int n) {
    require(std::isfinite(a) && a > 0.0, "moment scale a must be positive and finite");
    require(n >= 0, "moment order must be non-negative");
    const double lf = log_factorial(n);
    auto integrand = [=](double x) {
        if (n == 0) return std::exp(-x) / (1.0 + a * x);
        if (x <= 0.0) return 0.0;
        return std::exp(n * std::log(x) - x - lf) / (1.0 + a * x);
    };
    const double upper = n * std::log(n + 2.0) + 40.0;
    const double sigma = std::sqrt(n + 1.0);
    const std::array<double, 10> breaks = {n - 6 * sigma, n - 3 * sigma, n - sigma, double(n),
                                           n + sigma,     n + 3 * sigma, n + 6 * sigma,
                                           0.1 / a,       1.0 / a,       10.0 / a};
    const auto r = quad::integrate(integrand, 0.0, upper, {1e-300, 1e-13, 4000}, breaks);
    if (!r.converged && r.abs_error > 1e-10 * std::fabs(r.value)) {
        throw QuadratureNonconvergence("F_k fallback quadrature did not converge", r.value,
                                       r.abs_error);
    }
    return r.value;
}

LogMomentTable::LogMomentTable(double a) : a_(a) {
    require(std::isfinite(a) && a > 0.0, "moment scale a = lambda/mu must be positive and finite");
    z_ = 1.0 / a;
    log_z_ = std::log(z_);
    log_domain_ = z_ > kLogDomainThreshold;

    const double g0 = exp_integral_e1_scaled(z_);
    const double h0 = z_ * g0;
    if (log_domain_) {
        pos_sum_ = kNegInf;
        neg_sum_ = kNegInf;
        e1_term_ = std::log(h0);
    } else {
        e1_term_ = h0;
    }
    log_acc_ = CompensatedSum(g0);
    ratio_.push_back(h0);
    log_.push_back(g0);
    diag_.push_back(EvalDiag{});
}

void LogMomentTable::extend_to(int n_max) {
    while (size() <= n_max) push_next();
}

void LogMomentTable::push_next() {
    const int n = size();
    const bool even = n % 2 == 0;

    // Closed form  H_n = E_n + S_n  with
    //   E_n = (-1)^n z^(n+1)/n! e^z E1(z),
    //   S_n = sum_{m=1}^{n} (-1)^(n-m) (m-1)!/n! z^(n+1-m).
    // Stepping n multiplies every existing term by -z/n and adds the m = n term z/n.
    double h = 0.0;
    double ratio = 0.0;
    if (log_domain_) {
        const double lf = log_z_ - std::log(static_cast<double>(n));
        const double next_pos = log_add(0.0, neg_sum_) + lf;
        const double next_neg = pos_sum_ + lf;
        pos_sum_ = next_pos;
        neg_sum_ = next_neg;
        e1_term_ += lf;
        const double lp = log_add(pos_sum_, even ? e1_term_ : kNegInf);
        const double ln = log_add(neg_sum_, even ? kNegInf : e1_term_);
        if (lp > ln) {
            h = std::exp(lp) * -std::expm1(ln - lp);
            const double log_ratio = log_add(lp, ln) - std::log(h);
            ratio = log_ratio > 700.0 ? kMaxFinite : std::exp(log_ratio);
        } else {
            ratio = kMaxFinite;
        }
    } else {
        const double f = z_ / n;
        const double next_pos = (1.0 + neg_sum_) * f;
        const double next_neg = pos_sum_ * f;
        pos_sum_ = next_pos;
        neg_sum_ = next_neg;
        e1_term_ *= f;
        const double pos = pos_sum_ + (even ? e1_term_ : 0.0);
        const double neg = neg_sum_ + (even ? 0.0 : e1_term_);
        h = pos - neg;
        ratio = h > 0.0 ? std::min((pos + neg) / h, kMaxFinite) : kMaxFinite;
    }

    EvalDiag diag{EvalMethod::recursion, ratio};
    if (!(ratio <= kCancellationLimit)) {
        h = ratio_moment_by_quadrature(a_, n);
        diag.method_used = EvalMethod::quadrature_fallback;
    }
    log_acc_.add(a_ * h);
    ratio_.push_back(h);
    log_.push_back(log_acc_.value());
    diag_.push_back(diag);
    worst_.absorb(diag);
}

Evaluated f_k_base(double lambda, int k, double mu) {
    check_moment_args(lambda, k, mu);
    LogMomentTable table(lambda / mu);
    table.extend_to(k);
    return {table.ratio_moment(k) * moment_scale(k, mu), table.diag(k)};
}

Evaluated f_log_moment(double lambda, int k, double mu) {
    check_moment_args(lambda, k, mu);
    LogMomentTable table(lambda / mu);
    table.extend_to(k);
    return {table.log_moment(k) * moment_scale(k, mu), table.worst()};
}

}  // namespace wiretap::specfun
