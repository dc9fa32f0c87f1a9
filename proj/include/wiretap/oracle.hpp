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

// Independent reference values for the capacity and outage probability:
// iterated adaptive Gauss-Kronrod quadrature of the defining double
// integrals, using only the Bessel form of the joint density.

#include "wiretap/channel.hpp"

namespace wiretap::oracle {

/// The integration box is [0, tail_multiplier*lambda1] x [0, tail_multiplier*lambda2].
struct QuadratureSpec {
    double abs_tol = 1e-9;
    double tail_multiplier = 40.0;

    /// Throws DomainError unless abs_tol > 0 and tail_multiplier >= 20.
    void validate() const;
};

/// Average secrecy capacity in nats: the integral of C_s(alpha, beta) f(alpha, beta)
/// over alpha > beta, inner integral over beta, outer over alpha.
double capacity_by_quadrature(const ChannelParams& p, const QuadratureSpec& q = {});

/// P_out(R): probability mass of the region alpha <= e^R (1 + beta) - 1.
double outage_by_quadrature(const ChannelParams& p, double rate, const QuadratureSpec& q = {});

/// Mass of the complementary region alpha > e^R (1 + beta) - 1 inside the box.
double success_by_quadrature(const ChannelParams& p, double rate, const QuadratureSpec& q = {});

/// Mass of [alpha_lo, alpha_hi] x [beta_lo, beta_hi] under the joint density.
double probability_in_box(const ChannelParams& p, double alpha_lo, double alpha_hi, double beta_lo,
                          double beta_hi, const QuadratureSpec& q = {});

/// Bound on the probability mass outside the box. Both marginals are
/// exponential for every rho, so the mass is at most 2 exp(-tail_multiplier).
double tail_mass_bound(const QuadratureSpec& q);

/// Bound on the capacity contribution from outside the box:
/// exp(-T) (2 ln(1 + T lambda1) + 1/T) with T = tail_multiplier.
double capacity_tail_bound(const ChannelParams& p, const QuadratureSpec& q);

}  // namespace wiretap::oracle
