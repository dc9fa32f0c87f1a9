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

// Globally adaptive 21-point Gauss-Kronrod quadrature on finite intervals.
// The interval with the largest error estimate is bisected until the summed
// error meets max(abs_tol, rel_tol*|I|) or the interval budget runs out.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "wiretap/summation.hpp"

namespace wiretap::quad {

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_intervals = 4000;
};

struct Result {
    double value = 0.0;
    double abs_error = 0.0;
    int intervals = 0;
    bool converged = false;
};

namespace detail {

// Kronrod abscissae; odd indices are the 10-point Gauss nodes.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208553058394, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double a;
    double b;
    double value;
    double error;
};

inline bool by_error(const Segment& lhs, const Segment& rhs) { return lhs.error < rhs.error; }

template <class F>
Segment gk21(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double resg = 0.0;
    double resk = kWgk[10] * fc;
    double resabs = std::fabs(resk);
    std::array<double, 10> f1{};
    std::array<double, 10> f2{};
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        const double pair = f1[j] + f2[j];
        resk += kWgk[j] * pair;
        resabs += kWgk[j] * (std::fabs(f1[j]) + std::fabs(f2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * pair;
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[10] * std::fabs(fc - mean);
    for (int j = 0; j < 10; ++j) {
        resasc += kWgk[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));
    }
    const double scale = std::fabs(half);
    resasc *= scale;
    resabs *= scale;

    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double tiny = std::numeric_limits<double>::min();
    if (resabs > tiny / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return {a, b, resk * half, err};
}

}  // namespace detail

/// Integrates f over [a, b]. Breakpoints inside (a, b) seed the initial
/// partition; points outside are ignored.
template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {},
                 std::span<const double> breakpoints = {}) {
    Result out;
    if (!(b > a)) {
        out.converged = true;
        return out;
    }

    std::vector<double> edges{a};
    for (double x : breakpoints) {
        if (x > a && x < b) edges.push_back(x);
    }
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<detail::Segment> heap;
    heap.reserve(static_cast<std::size_t>(opt.max_intervals) + edges.size());
    double total = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        heap.push_back(detail::gk21(f, edges[i], edges[i + 1]));
        total += heap.back().value;
        error += heap.back().error;
    }
    std::make_heap(heap.begin(), heap.end(), detail::by_error);

    auto done = [&] { return error <= std::max(opt.abs_tol, opt.rel_tol * std::fabs(total)); };
    while (!done() && static_cast<int>(heap.size()) < opt.max_intervals) {
        std::pop_heap(heap.begin(), heap.end(), detail::by_error);
        const detail::Segment worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), detail::by_error);
            break;  // interval at machine resolution
        }
        const auto left = detail::gk21(f, worst.a, mid);
        const auto right = detail::gk21(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), detail::by_error);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), detail::by_error);
    }

    // Re-sum from scratch so running-update drift does not leak into the result.
    std::sort(heap.begin(), heap.end(),
              [](const detail::Segment& l, const detail::Segment& r) { return l.a < r.a; });
    CompensatedSum value;
    CompensatedSum err;
    for (const auto& s : heap) {
        value.add(s.value);
        err.add(s.error);
    }
    out.value = value.value();
    out.abs_error = err.value();
    out.intervals = static_cast<int>(heap.size());
    out.converged = out.abs_error <= std::max(opt.abs_tol, opt.rel_tol * std::fabs(out.value));
    return out;
}

}  // namespace wiretap::quad
