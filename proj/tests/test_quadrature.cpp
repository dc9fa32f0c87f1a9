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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "wiretap/quadrature.hpp"

using namespace wiretap;

TEST_CASE("polynomials up to degree 31 are exact on one panel") {
    for (int d = 0; d <= 31; ++d) {
        auto f = [d](double x) { return std::pow(x, d); };
        const auto r = quad::integrate(f, 0.0, 1.0, {}, {});
        CHECK(r.converged);
        CHECK(r.value == doctest::Approx(1.0 / (d + 1)).epsilon(1e-14));
        if (d <= 19) CHECK(r.intervals == 1);  // Gauss part exact too: zero error estimate
    }
}

TEST_CASE("smooth transcendental integrals") {
    using std::numbers::pi;
    auto r = quad::integrate([](double x) { return std::sin(x); }, 0.0, pi, {}, {});
    CHECK(std::abs(r.value - 2.0) < 1e-14);

    r = quad::integrate([](double x) { return std::exp(-x); }, 0.0, 50.0, {}, {});
    CHECK(std::abs(r.value - (1.0 - std::exp(-50.0))) < 1e-14);
}

TEST_CASE("endpoint singularity is resolved by bisection") {
    // int_0^1 x^-1/2 = 2
    const quad::Options o{1e-10, 1e-10, 4000};
    const auto r = quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, o, {});
    CHECK(r.converged);
    CHECK(std::abs(r.value - 2.0) < 1e-8);
    CHECK(r.intervals > 1);
}

TEST_CASE("kink handled by breakpoints") {
    auto f = [](double x) { return std::abs(x - 0.3); };
    const double exact = 0.5 * (0.09 + 0.49);
    const std::vector<double> bp{0.3};
    const auto r = quad::integrate(f, 0.0, 1.0, {}, bp);
    CHECK(r.intervals == 2);
    CHECK(std::abs(r.value - exact) < 1e-15);
}

TEST_CASE("breakpoints outside the range are ignored") {
    const std::vector<double> bp{-1.0, 0.0, 2.0, 5.0};
    const auto r = quad::integrate([](double x) { return x; }, 0.0, 2.0, {}, bp);
    CHECK(r.intervals == 1);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("empty and reversed ranges contribute nothing") {
    auto f = [](double x) { return x * x; };
    for (const auto& r : {quad::integrate(f, 1.0, 1.0, {}, {}), quad::integrate(f, 1.0, 0.0, {}, {})}) {
        CHECK(r.converged);
        CHECK(r.value == 0.0);
    }
}

TEST_CASE("budget exhaustion is reported, not hidden") {
    const quad::Options o{1e-300, 0.0, 5};
    const auto r = quad::integrate([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, o, {});
    CHECK_FALSE(r.converged);
    CHECK(r.intervals <= 5);
    CHECK(r.abs_error > 0.0);
}
