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

#include "cowwit/cow_sim.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "cowwit/error.h"
#include "cowwit/parallel.h"

namespace cowwit {

namespace {

void require_unit(double v, const char *field) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0)
        throw ConfigError(field, "must lie in [0, 1], got " + std::to_string(v));
}

// Uniform double in [0, 1) from the top 53 bits; independent of the
// standard library's distribution implementation.
double uniform01(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

int pattern_index(const PatternDistribution &d, double u) {
    if (u < d.first_only) return 0;
    if (u < d.first_only + d.second_only) return 1;
    if (u < d.first_only + d.second_only + d.both) return 2;
    return 3;
}

void tally(DataLineCounts &c, const PatternDistribution &d, double u) {
    switch (pattern_index(d, u)) {
        case 0: ++c.early_only; break;
        case 1: ++c.late_only; break;
        case 2: ++c.both; break;
        default: ++c.none; break;
    }
}

void tally(MonitorLineCounts &c, const PatternDistribution &d, double u) {
    switch (pattern_index(d, u)) {
        case 0: ++c.m1_only; break;
        case 1: ++c.m2_only; break;
        case 2: ++c.both; break;
        default: ++c.none; break;
    }
}

RawCounts simulate_chunk(const ClickProbabilities &probs, double decoy_fraction,
                         std::uint64_t rounds, std::uint64_t seed, std::uint64_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
    std::mt19937_64 rng(seq);

    const double alpha0_cut = decoy_fraction + 0.5 * (1.0 - decoy_fraction);
    RawCounts c;
    for (std::uint64_t r = 0; r < rounds; ++r) {
        const double state = uniform01(rng);
        const double pattern = uniform01(rng);
        if (state < decoy_fraction)
            tally(c.sent_alphaalpha, probs.alpha_alpha, pattern);
        else if (state < alpha0_cut)
            tally(c.sent_alpha0, probs.alpha0, pattern);
        else
            tally(c.sent_0alpha, probs.zero_alpha, pattern);
    }
    return c;
}

}  // namespace

double ChannelConfig::effective_visibility() const {
    if (visibility) return *visibility;
    if (std::isinf(model.l_c)) return model.v0;
    return model.v0 * std::exp(-loss_db / model.l_c);
}

void validate(const LinkConfig &cfg) {
    const auto &s = cfg.source;
    if (!std::isfinite(s.mu) || s.mu < 0.0)
        throw ConfigError("source.mu", "must be finite and >= 0, got " + std::to_string(s.mu));
    require_unit(s.f, "source.f");
    if (s.n_rounds == 0) throw ConfigError("source.n_rounds", "must be >= 1");

    const auto &ch = cfg.channel;
    if (!std::isfinite(ch.loss_db) || ch.loss_db < 0.0)
        throw ConfigError("channel.loss_db", "must be finite and >= 0, got " +
                                                 std::to_string(ch.loss_db));
    if (ch.visibility) {
        require_unit(*ch.visibility, "channel.visibility");
    } else {
        require_unit(ch.model.v0, "channel.v0");
        if (std::isnan(ch.model.l_c) || ch.model.l_c <= 0.0)
            throw ConfigError("channel.l_c", "must be > 0, got " + std::to_string(ch.model.l_c));
    }
    require_unit(ch.effective_visibility(), "channel.visibility");

    const auto &rx = cfg.receiver;
    require_unit(rx.t_b, "receiver.t_b");
    require_unit(rx.eta_det, "receiver.eta_det");
    if (!std::isfinite(rx.p_dark) || rx.p_dark < 0.0 || rx.p_dark >= 1.0)
        throw ConfigError("receiver.p_dark", "must lie in [0, 1), got " + std::to_string(rx.p_dark));
}

PatternDistribution PatternDistribution::independent(double p_first, double p_second) {
    PatternDistribution d;
    d.first_only = p_first * (1.0 - p_second);
    d.second_only = (1.0 - p_first) * p_second;
    d.both = p_first * p_second;
    d.none = (1.0 - p_first) * (1.0 - p_second);
    return d;
}

ClickProbabilities click_probabilities(const LinkConfig &cfg) {
    validate(cfg);
    const auto &rx = cfg.receiver;
    ClickProbabilities out;
    out.transmittance = std::pow(10.0, -cfg.channel.loss_db / 10.0);
    out.visibility = cfg.channel.effective_visibility();

    const double arriving = cfg.source.mu * out.transmittance * rx.eta_det;
    const double mu_data = arriving * rx.t_b;
    const double mu_monitor = arriving * (1.0 - rx.t_b);
    const double no_dark = 1.0 - rx.p_dark;

    out.q_signal = 1.0 - no_dark * std::exp(-mu_data);
    out.q_dark = rx.p_dark;
    out.q_m1 = 1.0 - no_dark * std::exp(-mu_monitor * (1.0 + out.visibility));
    out.q_m2 = 1.0 - no_dark * std::exp(-mu_monitor * (1.0 - out.visibility));

    out.alpha0 = PatternDistribution::independent(out.q_signal, out.q_dark);
    out.zero_alpha = PatternDistribution::independent(out.q_dark, out.q_signal);
    out.alpha_alpha = PatternDistribution::independent(out.q_m1, out.q_m2);
    return out;
}

RawCounts simulate(const LinkConfig &cfg, std::uint64_t seed, unsigned threads) {
    const auto probs = click_probabilities(cfg);
    const std::uint64_t rounds = cfg.source.n_rounds;
    const std::uint64_t chunks = (rounds + kSimulationChunk - 1) / kSimulationChunk;

    std::vector<RawCounts> partial(chunks);
    parallel_for(chunks, threads, [&](std::size_t k) {
        const std::uint64_t begin = k * kSimulationChunk;
        const std::uint64_t n = std::min(kSimulationChunk, rounds - begin);
        partial[k] = simulate_chunk(probs, cfg.source.f, n, seed, k);
    });

    RawCounts total;
    for (const auto &c : partial) total += c;
    return total;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<LossPoint> loss_sweep(std::span<const double> losses, WitnessParams p,
                                  const LinkConfig &base, std::uint64_t seed, unsigned threads) {
    if (losses.empty()) throw InvalidArgument("loss_sweep: empty loss list");
    std::vector<LossPoint> out;
    out.reserve(losses.size());
    for (std::size_t i = 0; i < losses.size(); ++i) {
        LinkConfig cfg = base;
        cfg.channel.loss_db = losses[i];
        LossPoint pt;
        pt.loss_db = losses[i];
        pt.visibility = cfg.channel.effective_visibility();
        pt.counts = simulate(cfg, derive_seed(seed, i), threads);
        pt.evaluation = witness_expectation(p, renormalize(pt.counts));
        pt.expectation_sigma = expectation_std_error(p, pt.counts);
        out.push_back(pt);
    }
    return out;
}

}  // namespace cowwit
