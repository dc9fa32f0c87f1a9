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

// Seeded Monte-Carlo sampler of correlated channel realizations and the
// empirical capacity / outage estimators built on it.
//
// Stream splitting: the n samples are cut into `workers` contiguous blocks,
// block w = [w*n/W, (w+1)*n/W). Block w draws from its own
// std::mt19937_64 seeded with splitmix64(seed + 0x9E3779B97F4A7C15 * (w + 1)).
// Block partials are folded in block order, so (seed, n, workers) fixes every
// estimate bit-for-bit no matter how many threads execute the blocks.

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "wiretap/channel.hpp"

namespace wiretap::montecarlo {

using Engine = std::mt19937_64;

/// Smallest sample count the estimators accept.
inline constexpr std::uint64_t kMinSamples = 1000;

struct FadingSample {
    std::complex<double> h_sd;  ///< Alice -> Bob gain
    std::complex<double> h_se;  ///< Alice -> Eve gain
    double alpha;               ///< |h_sd|^2
    double beta;                ///< |h_se|^2
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
    int workers = 1;
};

struct CdfPoint {
    double rate;
    double probability;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Engine for block `worker` under the splitting rule above.
Engine worker_engine(std::uint64_t seed, int worker);

/// Draws g1, w ~ CN(0, 1) independently and sets g2 = sqrt(rho) g1 + sqrt(1-rho) w,
/// so |g1|^2 and |g2|^2 are unit exponentials with correlation rho.
/// h_sd = sqrt(lambda1) g1, h_se = sqrt(lambda2) g2.
class ChannelSampler {
public:
    explicit ChannelSampler(const ChannelParams& p);

    FadingSample operator()(Engine& rng);

private:
    double sqrt_lambda1_;
    double sqrt_lambda2_;
    double mix_same_;
    double mix_fresh_;
    std::normal_distribution<double> component_;
};

FadingSample sample_pair(const ChannelParams& p, Engine& rng);

/// Mean of C_s over n samples; std_error from the sample variance.
McEstimate estimate_capacity(const ChannelParams& p, std::uint64_t n, std::uint64_t seed,
                             int workers = 1);

/// Fraction of samples with C_s <= rate; binomial std_error.
McEstimate estimate_outage(const ChannelParams& p, double rate, std::uint64_t n, std::uint64_t seed,
                           int workers = 1);

/// P(C_s <= rate) at every rate of an ascending grid, from one shared sample set.
std::vector<CdfPoint> empirical_cdf(const ChannelParams& p, std::uint64_t n, std::uint64_t seed,
                                    std::span<const double> grid, int workers = 1);

// Single-threaded reference versions. Same partition, same engines, same fold
// order: results must match the OpenMP kernels bit-for-bit.
namespace serial {

McEstimate estimate_capacity(const ChannelParams& p, std::uint64_t n, std::uint64_t seed,
                             int workers = 1);
McEstimate estimate_outage(const ChannelParams& p, double rate, std::uint64_t n, std::uint64_t seed,
                           int workers = 1);
std::vector<CdfPoint> empirical_cdf(const ChannelParams& p, std::uint64_t n, std::uint64_t seed,
                                    std::span<const double> grid, int workers = 1);

}  // namespace serial
}  // namespace wiretap::montecarlo
