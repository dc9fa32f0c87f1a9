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

#include "wiretap/channel.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "wiretap/errors.hpp"
#include "wiretap/specfun.hpp"

namespace wiretap {

void SeriesControl::validate() const {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-3)) throw DomainError("rel_tol must lie in (0, 1e-3]");
    if (consecutive_passes < 1) throw DomainError("consecutive_passes must be >= 1");
    if (k_max < 10) throw DomainError("k_max must be >= 10");
}

TruncatedSeries::TruncatedSeries(const SeriesControl& ctrl) : ctrl_(ctrl) { ctrl_.validate(); }

bool TruncatedSeries::add(double term) {
    const double t = sum_ + term;
    if (std::fabs(sum_) >= std::fabs(term)) {
        comp_ += (sum_ - t) + term;
    } else {
        comp_ += (term - t) + sum_;
    }
    sum_ = t;
    ++terms_;

    const double mag = std::fabs(term);
    double tail = mag;
    if (mag > 0.0 && mag < prev_abs_) tail = mag / (1.0 - mag / prev_abs_);
    prev_abs_ = mag;

    const double partial = std::fabs(value());
    if (partial > 0.0) {
        last_ratio_ = tail / partial;
    } else {
        last_ratio_ = term == 0.0 ? 0.0 : 1.0;
    }
    passes_ = last_ratio_ < ctrl_.rel_tol ? passes_ + 1 : 0;
    return converged();
}

namespace {

std::string shown(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

}  // namespace

ChannelParams::ChannelParams(double lambda1, double lambda2, double rho)
    : lambda1_(lambda1), lambda2_(lambda2), rho_(rho) {
    if (!(std::isfinite(lambda1) && lambda1 > 0.0)) {
        throw DomainError("lambda1 must be > 0 (got " + shown(lambda1) + ")");
    }
    if (!(std::isfinite(lambda2) && lambda2 > 0.0)) {
        throw DomainError("lambda2 must be > 0 (got " + shown(lambda2) + ")");
    }
    if (!(rho >= 0.0 && rho <= kRhoMax)) {
        throw DomainError("rho must satisfy 0 <= rho <= 0.99 (got " + shown(rho) + ")");
    }
}

namespace channel {

void validate(const SnrPair& s) {
    if (!(std::isfinite(s.alpha) && s.alpha >= 0.0)) throw DomainError("alpha must be finite and >= 0");
    if (!(std::isfinite(s.beta) && s.beta >= 0.0)) throw DomainError("beta must be finite and >= 0");
}

double series_coefficient(int k, double rho) {
    if (k < 0) throw DomainError("series index k must be >= 0");
    if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("series coefficient needs 0 <= rho < 1");
    if (k == 0) return 1.0 / (1.0 - rho);
    if (rho == 0.0) return 0.0;
    if (k <= 20) {
        const double f = specfun::factorial(k);
        return std::pow(rho, k) / (f * f * std::pow(1.0 - rho, 2 * k + 1));
    }
    return std::exp(k * std::log(rho) - 2.0 * specfun::log_factorial(k) -
                    (2.0 * k + 1.0) * std::log1p(-rho));
}

double joint_pdf_bessel(const ChannelParams& p, const SnrPair& s) {
    validate(s);
    const double u = s.alpha / p.lambda1();
    const double v = s.beta / p.lambda2();
    const double one_minus = 1.0 - p.rho();
    const double arg = 2.0 / one_minus * std::sqrt(u * v * p.rho());
    // I0(arg) exp(-(u+v)/(1-rho)) written with the scaled Bessel so the
    // exponent arg - (u+v)/(1-rho) <= 0 never overflows.
    return specfun::bessel_i0_scaled(arg) * std::exp(arg - (u + v) / one_minus) /
           (one_minus * p.lambda1() * p.lambda2());
}

double joint_pdf_series(const ChannelParams& p, const SnrPair& s, const SeriesControl& ctrl) {
    validate(s);
    const double u = s.alpha / p.lambda1();
    const double v = s.beta / p.lambda2();
    const double one_minus = 1.0 - p.rho();
    const double base = std::exp(-(u + v) / one_minus) / (p.lambda1() * p.lambda2());
    const double log_uv = std::log(u * v);
    // Terms rise until k ~ arg/2 of the Bessel form; stopping is only allowed past the peak.
    const double peak = std::sqrt(u * v * p.rho()) / one_minus;

    TruncatedSeries series(ctrl);
    for (int k = 0; !series.exhausted(); ++k) {
        double term = 0.0;
        if (k == 0) {
            term = base / one_minus;
        } else if (p.rho() > 0.0 && u * v > 0.0) {
            const double log_ck = k * std::log(p.rho()) - 2.0 * specfun::log_factorial(k) -
                                  (2.0 * k + 1.0) * std::log(one_minus);
            term = std::exp(log_ck + k * log_uv - (u + v) / one_minus) /
                   (p.lambda1() * p.lambda2());
        }
        if (series.add(term) && k >= peak) return series.value();
    }
    throw ConvergenceFailure("joint PDF series did not converge within k_max terms",
                             series.value(), series.terms());
}

double instantaneous_secrecy_capacity(const SnrPair& s) noexcept {
    if (!(s.alpha > s.beta)) return 0.0;
    return std::log1p((s.alpha - s.beta) / (1.0 + s.beta));
}

}  // namespace channel
}  // namespace wiretap
