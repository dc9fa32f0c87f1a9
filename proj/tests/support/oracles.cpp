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

#include "oracles.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <unistd.h>

#include "wiretap/montecarlo.hpp"
#include "wiretap/oracle.hpp"

namespace wiretap::testing {

using boost::math::quadrature::gauss_kronrod;

double boost_integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    double err = 0.0;
    return gauss_kronrod<double, 61>::integrate(f, a, b, 15, tol, &err);
}

double boost_integrate_half_line(const std::function<double(double)>& f, double split, double tol) {
    return boost_integrate(f, 0.0, split, tol) +
           boost_integrate(f, split, std::numeric_limits<double>::infinity(), tol);
}

double quadrature_f_k(double lambda, int k, double mu) {
    auto f = [=](double x) { return std::pow(x, k) * std::exp(-mu * x) / (1.0 + lambda * x); };
    return boost_integrate_half_line(f, std::max(1.0, k / mu));
}

double quadrature_f_log(double lambda, int k, double mu) {
    auto f = [=](double x) { return std::log1p(lambda * x) * std::exp(-mu * x) * std::pow(x, k); };
    return boost_integrate_half_line(f, std::max(1.0, k / mu));
}

double boost_capacity_2d(const ChannelParams& p) {
    const double l1 = p.lambda1();
    const double l2 = p.lambda2();
    const double rho = p.rho();
    auto density = [=](double a, double b) {
        const double u = a / l1;
        const double v = b / l2;
        const double arg = 2.0 / (1.0 - rho) * std::sqrt(u * v * rho);
        // libstdc++ I0; the exponent is split so it cannot overflow for arg < ~700.
        return std::cyl_bessel_i(0.0, arg) * std::exp(-(u + v) / (1.0 - rho)) /
               ((1.0 - rho) * l1 * l2);
    };
    auto inner = [&](double a) {
        if (a <= 0.0) return 0.0;
        auto g = [&](double b) { return std::log((1.0 + a) / (1.0 + b)) * density(a, b); };
        return boost_integrate(g, 0.0, std::min(a, 40.0 * l2), 1e-12);
    };
    // Split the outer range at multiples of the mean.
    double total = 0.0;
    double lo = 0.0;
    for (double edge : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 40.0}) {
        total += boost_integrate(inner, lo, edge * l1, 1e-12);
        lo = edge * l1;
    }
    return total;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

ChiSquare sampler_goodness_of_fit(const ChannelParams& p, std::uint64_t n, std::uint64_t seed,
                                  int bins, double significance) {
    const oracle::QuadratureSpec spec{1e-10, 40.0};
    auto edges_for = [&](double lambda) {
        std::vector<double> e(static_cast<std::size_t>(bins) + 1);
        for (int i = 0; i < bins; ++i) e[i] = -lambda * std::log1p(-static_cast<double>(i) / bins);
        e[bins] = spec.tail_multiplier * lambda;
        return e;
    };
    const auto ea = edges_for(p.lambda1());
    const auto eb = edges_for(p.lambda2());

    std::vector<double> counts(static_cast<std::size_t>(bins * bins), 0.0);
    auto bin_of = [&](const std::vector<double>& e, double x) {
        const auto it = std::upper_bound(e.begin() + 1, e.end() - 1, x);
        return static_cast<int>(it - (e.begin() + 1));
    };
    montecarlo::Engine rng = montecarlo::worker_engine(seed, 0);
    montecarlo::ChannelSampler draw(p);
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto s = draw(rng);
        counts[static_cast<std::size_t>(bin_of(ea, s.alpha) * bins + bin_of(eb, s.beta))] += 1.0;
    }

    ChiSquare out;
    double pooled_expected = 0.0;
    double pooled_observed = 0.0;
    int cells = 0;
    const double total = static_cast<double>(n);
    for (int i = 0; i < bins; ++i) {
        for (int j = 0; j < bins; ++j) {
            const double prob = oracle::probability_in_box(p, ea[i], ea[i + 1], eb[j], eb[j + 1], spec);
            const double expected = total * prob;
            const double observed = counts[static_cast<std::size_t>(i * bins + j)];
            if (expected < 5.0) {
                pooled_expected += expected;
                pooled_observed += observed;
                ++out.pooled_cells;
                continue;
            }
            out.statistic += (observed - expected) * (observed - expected) / expected;
            ++cells;
        }
    }
    if (pooled_expected > 0.0) {
        out.statistic += (pooled_observed - pooled_expected) * (pooled_observed - pooled_expected) /
                         pooled_expected;
        ++cells;
    }
    out.dof = cells - 1;
    boost::math::chi_squared dist(out.dof);
    out.critical = boost::math::quantile(boost::math::complement(dist, significance));
    out.pass = out.statistic <= out.critical;
    return out;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string temp_path(const std::string& stem) {
    static std::atomic<int> counter{0};
    const auto dir = std::filesystem::temp_directory_path();
    return (dir / ("wiretap_" + stem + "_" + std::to_string(::getpid()) + "_" +
                   std::to_string(counter++) + ".csv"))
        .string();
}

}  // namespace wiretap::testing
