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

#include "wiretap/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "wiretap/errors.hpp"

namespace wiretap::montecarlo {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// Welford running moments; merge() is Chan's pairwise update.
struct Moments {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x) noexcept {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const Moments& o) noexcept {
        if (o.count == 0) return;
        if (count == 0) {
            *this = o;
            return;
        }
        const double n_a = static_cast<double>(count);
        const double n_b = static_cast<double>(o.count);
        const double n = n_a + n_b;
        const double delta = o.mean - mean;
        mean += delta * n_b / n;
        m2 += o.m2 + delta * delta * n_a * n_b / n;
        count += o.count;
    }
};

struct Block {
    std::uint64_t begin;
    std::uint64_t end;
};

Block block(std::uint64_t n, int workers, int w) {
    const auto W = static_cast<std::uint64_t>(workers);
    const auto i = static_cast<std::uint64_t>(w);
    // n * W stays far below 2^64 for any realistic run; guard anyway.
    const auto lo = static_cast<std::uint64_t>(static_cast<unsigned __int128>(n) * i / W);
    const auto hi = static_cast<std::uint64_t>(static_cast<unsigned __int128>(n) * (i + 1) / W);
    return {lo, hi};
}

void check_run(std::uint64_t n, int workers) {
    if (n < kMinSamples) throw DomainError("Monte-Carlo needs at least 1000 samples");
    if (workers < 1) throw DomainError("workers must be >= 1");
    if (static_cast<std::uint64_t>(workers) > n) throw DomainError("more workers than samples");
}

void check_rate(double rate) {
    if (!(std::isfinite(rate) && rate >= 0.0)) throw DomainError("rate R must be finite and >= 0");
}

void check_grid(std::span<const double> grid) {
    if (grid.empty()) throw DomainError("rate grid must not be empty");
    if (!std::is_sorted(grid.begin(), grid.end())) throw DomainError("rate grid must be ascending");
}

double capacity_of(const FadingSample& s) {
    return channel::instantaneous_secrecy_capacity({s.alpha, s.beta});
}

McEstimate from_moments(const Moments& m, std::uint64_t seed, int workers) {
    const double n = static_cast<double>(m.count);
    const double var = m.count > 1 ? m.m2 / (n - 1.0) : 0.0;
    return {m.mean, std::sqrt(var / n), m.count, seed, workers};
}

McEstimate from_hits(std::uint64_t hits, std::uint64_t n, std::uint64_t seed, int workers) {
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n)), n, seed, workers};
}

// First grid index whose rate is >= c; that point and every later one count the sample.
std::size_t first_covering(std::span<const double> grid, double c) {
    return static_cast<std::size_t>(std::lower_bound(grid.begin(), grid.end(), c) - grid.begin());
}

std::vector<CdfPoint> to_cdf(std::span<const double> grid, const std::vector<std::uint64_t>& hist,
                             std::uint64_t n) {
    std::vector<CdfPoint> out;
    out.reserve(grid.size());
    std::uint64_t cumulative = 0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        cumulative += hist[j];
        out.push_back({grid[j], static_cast<double>(cumulative) / static_cast<double>(n)});
    }
    return out;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Engine worker_engine(std::uint64_t seed, int worker) {
    return Engine(splitmix64(seed + kGolden * (static_cast<std::uint64_t>(worker) + 1)));
}

ChannelSampler::ChannelSampler(const ChannelParams& p)
    : sqrt_lambda1_(std::sqrt(p.lambda1())),
      sqrt_lambda2_(std::sqrt(p.lambda2())),
      mix_same_(std::sqrt(p.rho())),
      mix_fresh_(std::sqrt(1.0 - p.rho())),
      component_(0.0, std::sqrt(0.5)) {}

FadingSample ChannelSampler::operator()(Engine& rng) {
    const double g1_re = component_(rng);
    const double g1_im = component_(rng);
    const double w_re = component_(rng);
    const double w_im = component_(rng);
    const std::complex<double> g1(g1_re, g1_im);
    const std::complex<double> g2 = mix_same_ * g1 + mix_fresh_ * std::complex<double>(w_re, w_im);
    const std::complex<double> h_sd = sqrt_lambda1_ * g1;
    const std::complex<double> h_se = sqrt_lambda2_ * g2;
    return {h_sd, h_se, std::norm(h_sd), std::norm(h_se)};
}

FadingSample sample_pair(const ChannelParams& p, Engine& rng) {
    ChannelSampler sampler(p);
    return sampler(rng);
}

McEstimate estimate_capacity(const ChannelParams& p, std::uint64_t n, std::uint64_t seed,
                             int workers) {
    check_run(n, workers);
    std::vector<Moments> partial(static_cast<std::size_t>(workers));
#pragma omp parallel for schedule(static, 1) num_threads(workers)
    for (int w = 0; w < workers; ++w) {
        const auto [lo, hi] = block(n, workers, w);
        Engine rng = worker_engine(seed, w);
        ChannelSampler draw(p);
        Moments m;
        for (std::uint64_t i = lo; i < hi; ++i) m.push(capacity_of(draw(rng)));
        partial[static_cast<std::size_t>(w)] = m;
    }
    Moments total;
    for (const auto& m : partial) total.merge(m);
    return from_moments(total, seed, workers);
}

McEstimate estimate_outage(const ChannelParams& p, double rate, std::uint64_t n, std::uint64_t seed,
                           int workers) {
    check_run(n, workers);
    check_rate(rate);
    std::vector<std::uint64_t> partial(static_cast<std::size_t>(workers), 0);
#pragma omp parallel for schedule(static, 1) num_threads(workers)
    for (int w = 0; w < workers; ++w) {
        const auto [lo, hi] = block(n, workers, w);
        Engine rng = worker_engine(seed, w);
        ChannelSampler draw(p);
        std::uint64_t hits = 0;
        for (std::uint64_t i = lo; i < hi; ++i) hits += capacity_of(draw(rng)) <= rate ? 1 : 0;
        partial[static_cast<std::size_t>(w)] = hits;
    }
    std::uint64_t hits = 0;
    for (auto h : partial) hits += h;
    return from_hits(hits, n, seed, workers);
}

std::vector<CdfPoint> empirical_cdf(const ChannelParams& p, std::uint64_t n, std::uint64_t seed,
                                    std::span<const double> grid, int workers) {
    check_run(n, workers);
    check_grid(grid);
    // One spare slot collects samples above the last grid point.
    std::vector<std::vector<std::uint64_t>> partial(static_cast<std::size_t>(workers),
                                                    std::vector<std::uint64_t>(grid.size() + 1, 0));
#pragma omp parallel for schedule(static, 1) num_threads(workers)
    for (int w = 0; w < workers; ++w) {
        const auto [lo, hi] = block(n, workers, w);
        Engine rng = worker_engine(seed, w);
        ChannelSampler draw(p);
        auto& hist = partial[static_cast<std::size_t>(w)];
        for (std::uint64_t i = lo; i < hi; ++i) ++hist[first_covering(grid, capacity_of(draw(rng)))];
    }
    std::vector<std::uint64_t> hist(grid.size() + 1, 0);
    for (const auto& h : partial) {
        for (std::size_t j = 0; j < hist.size(); ++j) hist[j] += h[j];
    }
    return to_cdf(grid, hist, n);
}

namespace serial {

McEstimate estimate_capacity(const ChannelParams& p, std::uint64_t n, std::uint64_t seed,
                             int workers) {
    check_run(n, workers);
    Moments total;
    for (int w = 0; w < workers; ++w) {
        const auto [lo, hi] = block(n, workers, w);
        Engine rng = worker_engine(seed, w);
        ChannelSampler draw(p);
        Moments m;
        for (std::uint64_t i = lo; i < hi; ++i) m.push(capacity_of(draw(rng)));
        total.merge(m);
    }
    return from_moments(total, seed, workers);
}

McEstimate estimate_outage(const ChannelParams& p, double rate, std::uint64_t n, std::uint64_t seed,
                           int workers) {
    check_run(n, workers);
    check_rate(rate);
    std::uint64_t hits = 0;
    for (int w = 0; w < workers; ++w) {
        const auto [lo, hi] = block(n, workers, w);
        Engine rng = worker_engine(seed, w);
        ChannelSampler draw(p);
        for (std::uint64_t i = lo; i < hi; ++i) hits += capacity_of(draw(rng)) <= rate ? 1 : 0;
    }
    return from_hits(hits, n, seed, workers);
}

std::vector<CdfPoint> empirical_cdf(const ChannelParams& p, std::uint64_t n, std::uint64_t seed,
                                    std::span<const double> grid, int workers) {
    check_run(n, workers);
    check_grid(grid);
    std::vector<std::uint64_t> hist(grid.size() + 1, 0);
    for (int w = 0; w < workers; ++w) {
        const auto [lo, hi] = block(n, workers, w);
        Engine rng = worker_engine(seed, w);
        ChannelSampler draw(p);
        for (std::uint64_t i = lo; i < hi; ++i) ++hist[first_covering(grid, capacity_of(draw(rng)))];
    }
    return to_cdf(grid, hist, n);
}

}  // namespace serial
}  // namespace wiretap::montecarlo
