// Copyright 2026 The cowwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COWWIT_COW_SIM_H
#define COWWIT_COW_SIM_H

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cowwit/effective_operators.h"
#include "cowwit/statistics.h"

namespace cowwit {

struct SourceConfig {
    double mu = 0.05;  // mean photon number of a non-empty pulse
    double f = 0.1;    // decoy fraction
    std::uint64_t n_rounds = 1'000'000;
};

/// Exponential decay of interferometric visibility with channel loss.
struct VisibilityModel {
    double v0 = 0.98;
    double l_c = 30.0;  // dB; +inf disables the decay
};

struct ChannelConfig {
    double loss_db = 0.0;
    /// Fixed visibility. When unset, `model` gives V(loss_db).
    std::optional<double> visibility;
    VisibilityModel model;

    double effective_visibility() const;
};

struct ReceiverConfig {
    double t_b = 0.9;       // beamsplitter transmission to the data line
    double eta_det = 0.2;   // detector efficiency
    double p_dark = 1e-5;   // per detector per slot
};

struct LinkConfig {
    SourceConfig source;
    ChannelConfig channel;
    ReceiverConfig receiver;
};

/// Throws ConfigError naming the first out-of-range field.
void validate(const LinkConfig &cfg);

/// Distribution over the four click patterns of two independent detectors
/// (or slots) that fire with probabilities p_first and p_second.
struct PatternDistribution {
    double first_only = 0.0;
    double second_only = 0.0;
    double both = 0.0;
    double none = 1.0;

    static PatternDistribution independent(double p_first, double p_second);
    double sum() const { return first_only + second_only + both + none; }
};

struct ClickProbabilities {
    double transmittance = 1.0;
    double visibility = 1.0;
    double q_signal = 0.0;  // occupied data slot
    double q_dark = 0.0;    // empty data slot
    double q_m1 = 0.0;
    double q_m2 = 0.0;

    PatternDistribution alpha0;      // early, late
    PatternDistribution zero_alpha;  // early, late
    PatternDistribution alpha_alpha; // D_M1, D_M2
};

/// Threshold-detector model on attenuated Poissonian pulses.
///
/// η = 10^(-loss/10), μ_T = μ η t_B η_det, μ_M = μ η (1 - t_B) η_det.
/// Occupied slot: 1 - (1 - p_dark) e^(-μ_T). Empty slot: p_dark.
/// Decoy monitoring ports: 1 - (1 - p_dark) e^(-μ_M (1 ± V)).
ClickProbabilities click_probabilities(const LinkConfig &cfg);

/// Monte Carlo tally of `cfg.source.n_rounds` rounds.
///
/// Rounds are cut into fixed-size chunks, each with its own generator
/// seeded from (seed, chunk index), so the result is a pure function of
/// (cfg, seed) for any thread count.
RawCounts simulate(const LinkConfig &cfg, std::uint64_t seed, unsigned threads = 1);

inline constexpr std::uint64_t kSimulationChunk = 1u << 16;

struct LossPoint {
    double loss_db = 0.0;
    double visibility = 0.0;
    RawCounts counts;
    WitnessEvaluation evaluation;
    double expectation_sigma = 0.0;
};

/// simulate + renormalize + witness_expectation per loss value, in input
/// order. `base.channel.loss_db` is overridden per point; point i uses the
/// seed derive_seed(seed, i).
std::vector<LossPoint> loss_sweep(std::span<const double> losses, WitnessParams p,
                                  const LinkConfig &base, std::uint64_t seed,
                                  unsigned threads = 1);

/// SplitMix64 finalizer of seed + index.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace cowwit

#endif
