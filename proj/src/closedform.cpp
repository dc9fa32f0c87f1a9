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

#include "wiretap/closedform.hpp"

#include <algorithm>
#include <cmath>

#include "wiretap/errors.hpp"

namespace wiretap::closedform {
namespace {

using specfun::log_factorial;

constexpr double kSlack = 1e-12;

// k! sum_{m=0}^{k} ((la/lb)^m / m!) (1-rho)^(k+1-m) F(la, k+m, (1 + la/lb)/(1-rho))
double incomplete_sum(double la, double lb, double rho, int k) {
    const double r = la / lb;
    const double one_minus = 1.0 - rho;
    const double mu = (1.0 + r) / one_minus;
    CompensatedSum sum;
    for (int m = 0; m <= k; ++m) {
        const double coeff = std::pow(r, m) / specfun::factorial(m) * std::pow(one_minus, k + 1 - m);
        sum.add(coeff * specfun::f_log_moment(la, k + m, mu).value);
    }
    return specfun::factorial(k) * sum.value();
}

// Same terms as incomplete_sum but for m > k. Together they make up the direct
// term, so this is the difference without forming it.
double incomplete_tail(double la, double lb, double rho, int k) {
    const double r = la / lb;
    const double one_minus = 1.0 - rho;
    const double mu = (1.0 + r) / one_minus;
    CompensatedSum sum;
    for (int m = k + 1;; ++m) {
        const double coeff = std::pow(r, m) / specfun::factorial(m) * std::pow(one_minus, k + 1 - m);
        const double t = coeff * specfun::f_log_moment(la, k + m, mu).value;
        sum.add(t);
        if (t <= 1e-18 * sum.value() || m > k + 100000) break;
    }
    return specfun::factorial(k) * sum.value();
}

double log_nb_weight(int k, int m, double log_p, double log_q) {
    return log_factorial(k + m) - log_factorial(k) - log_factorial(m) + m * log_p + (k + 1) * log_q;
}

}  // namespace

double r1_term(const ChannelParams& p, int k) {
    if (k < 0) throw DomainError("series index k must be >= 0");
    if (p.lambda1() < p.lambda2()) {
        // Most of the direct term would cancel; sum the remainder instead.
        return incomplete_tail(p.lambda1(), p.lambda2(), p.rho(), k);
    }
    const double one_minus = 1.0 - p.rho();
    const double direct = specfun::factorial(k) * std::pow(one_minus, k + 1) *
                          specfun::f_log_moment(p.lambda1(), k, 1.0 / one_minus).value;
    return direct - incomplete_sum(p.lambda1(), p.lambda2(), p.rho(), k);
}

double r2_term(const ChannelParams& p, int k) {
    if (k < 0) throw DomainError("series index k must be >= 0");
    return incomplete_sum(p.lambda2(), p.lambda1(), p.rho(), k);
}

CapacitySeries::CapacitySeries(const ChannelParams& p)
    : params_(p),
      log_p1_(std::log(p.lambda1()) - std::log(p.lambda1() + p.lambda2())),
      log_p2_(std::log(p.lambda2()) - std::log(p.lambda1() + p.lambda2())),
      direct_(p.lambda1() * (1.0 - p.rho())),
      main_mix_(p.lambda1() * (1.0 - p.rho()) / (1.0 + p.lambda1() / p.lambda2())),
      eve_mix_(p.lambda2() * (1.0 - p.rho()) / (1.0 + p.lambda2() / p.lambda1())),
      main_tail_(p.lambda1() < p.lambda2()) {}

double CapacitySeries::weight(int k) const {
    if (k == 0) return 1.0 - params_.rho();
    return std::pow(params_.rho(), k) * (1.0 - params_.rho());
}

void CapacitySeries::ensure(int k) {
    if (k < 0) throw DomainError("series index k must be >= 0");
    direct_.extend_to(k);
    main_mix_.extend_to(2 * k);
    eve_mix_.extend_to(2 * k);
}

double CapacitySeries::main_term(int k) {
    const double w = weight(k);
    if (w == 0.0) return 0.0;
    ensure(k);
    return w * (main_tail_ ? mixture_tail(k) : mixture_remainder(k));
}

// Negative-binomial weights sum to one, so the direct moment minus the m <= k
// mixture terms equals the m > k terms. Which form is summed depends on where
// the weight mass sits: the subtraction cancels badly when p1 is small.
double CapacitySeries::mixture_remainder(int k) {
    CompensatedSum d(direct_.log_moment(k));
    for (int m = 0; m <= k; ++m) {
        d.add(-std::exp(log_nb_weight(k, m, log_p1_, log_p2_)) * main_mix_.log_moment(k + m));
    }
    return d.value();
}

double CapacitySeries::mixture_tail(int k) {
    const double mean = (k + 1.0) * std::exp(log_p1_ - log_p2_);
    CompensatedSum d;
    for (int m = k + 1;; ++m) {
        if (m + k >= main_mix_.size()) main_mix_.extend_to(m + k + 64);
        const double t = std::exp(log_nb_weight(k, m, log_p1_, log_p2_)) * main_mix_.log_moment(k + m);
        d.add(t);
        if ((m > mean && t <= 1e-18 * d.value()) || t == 0.0) break;
    }
    return d.value();
}

double CapacitySeries::eavesdropper_term(int k) {
    const double w = weight(k);
    if (w == 0.0) return 0.0;
    ensure(k);
    CompensatedSum d;
    for (int m = 0; m <= k; ++m) {
        d.add(std::exp(log_nb_weight(k, m, log_p2_, log_p1_)) * eve_mix_.log_moment(k + m));
    }
    return w * d.value();
}

double CapacitySeries::term(int k) {
    const double w = weight(k);
    if (w == 0.0) return 0.0;
    ensure(k);
    CompensatedSum d(main_tail_ ? mixture_tail(k) : mixture_remainder(k));
    for (int m = 0; m <= k; ++m) {
        d.add(-std::exp(log_nb_weight(k, m, log_p2_, log_p1_)) * eve_mix_.log_moment(k + m));
    }
    return w * d.value();
}

specfun::EvalDiag CapacitySeries::diag() const {
    specfun::EvalDiag worst = direct_.worst();
    worst.absorb(main_mix_.worst());
    worst.absorb(eve_mix_.worst());
    return worst;
}

CapacityResult average_secrecy_capacity(const ChannelParams& p, const SeriesControl& ctrl) {
    ctrl.validate();
    CapacitySeries series(p);
    TruncatedSeries sum(ctrl);
    for (int k = 0; !sum.exhausted(); ++k) {
        if (sum.add(series.term(k))) break;
    }
    if (!sum.converged()) {
        throw ConvergenceFailure("capacity series did not converge within k_max terms", sum.value(),
                                 sum.terms());
    }
    double value = sum.value();
    if (value < -kSlack) {
        throw NumericalInconsistency("capacity series summed to a negative value");
    }
    value = std::max(value, 0.0);
    return {value, sum.terms(), sum.last_term_ratio(), series.diag()};
}

OutageSeries::OutageSeries(const ChannelParams& p, double rate) : rho_(p.rho()) {
    if (!(std::isfinite(rate) && rate >= 0.0)) throw DomainError("rate R must be finite and >= 0");
    y_ = std::expm1(rate) / p.lambda1();
    mu_ = std::exp(rate) * p.lambda2() / p.lambda1();
    shifted_y_ = y_ / (1.0 - rho_);
    log_p_ = std::log(mu_) - std::log1p(mu_);
    log_q_ = -std::log1p(mu_);
}

void OutageSeries::extend_poisson_cdf(int j) {
    while (static_cast<int>(poisson_cdf_.size()) <= j) {
        const int i = static_cast<int>(poisson_cdf_.size());
        double pmf = 0.0;
        if (shifted_y_ == 0.0) {
            pmf = i == 0 ? 1.0 : 0.0;
        } else {
            pmf = std::exp(-shifted_y_ + i * std::log(shifted_y_) - log_factorial(i));
        }
        poisson_acc_.add(pmf);
        poisson_cdf_.push_back(std::min(poisson_acc_.value(), 1.0));
    }
}

double OutageSeries::success_term(int k) {
    if (k < 0) throw DomainError("series index k must be >= 0");
    const double w = k == 0 ? 1.0 - rho_ : std::pow(rho_, k) * (1.0 - rho_);
    if (w == 0.0) return 0.0;
    extend_poisson_cdf(k);
    CompensatedSum s;
    for (int n = 0; n <= k; ++n) {
        s.add(std::exp(log_nb_weight(k, n, log_p_, log_q_)) *
              poisson_cdf_[static_cast<std::size_t>(k - n)]);
    }
    return w * s.value();
}

OutageResult outage_probability(const ChannelParams& p, double rate, const SeriesControl& ctrl) {
    ctrl.validate();
    OutageSeries series(p, rate);
    TruncatedSeries sum(ctrl);
    for (int k = 0; !sum.exhausted(); ++k) {
        if (sum.add(series.success_term(k))) break;
    }
    if (!sum.converged()) {
        throw ConvergenceFailure("outage series did not converge within k_max terms",
                                 1.0 - sum.value(), sum.terms());
    }
    const double raw = 1.0 - sum.value();
    if (raw < -kSlack || raw > 1.0 + kSlack) {
        throw NumericalInconsistency("outage probability outside [0, 1]");
    }
    return {std::clamp(raw, 0.0, 1.0), sum.terms(), series.y(), series.mu()};
}

}  // namespace wiretap::closedform
