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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "cowwit/error.h"
#include "oracles.h"

using namespace cowwit;

namespace {

const double kHalfRoot3 = std::sqrt(3.0) / 2.0;

LinkConfig ideal_config() {
    LinkConfig cfg;
    cfg.source.mu = 0.05;
    cfg.channel.loss_db = 0;
    cfg.channel.visibility = 1.0;
    cfg.receiver.t_b = 0.9;
    cfg.receiver.eta_det = 1.0;
    cfg.receiver.p_dark = 0.0;
    return cfg;
}

// |empirical - expected| in binomial standard deviations.
double sigmas(std::uint64_t hits, std::uint64_t trials, double p) {
    const double n = static_cast<double>(trials);
    const double sd = std::sqrt(n * p * (1 - p));
    const double dev = std::abs(static_cast<double>(hits) - n * p);
    return sd == 0 ? (dev == 0 ? 0 : INFINITY) : dev / sd;
}

void expect_group_within(const DataLineCounts &c, const PatternDistribution &d, double k) {
    const auto n = c.total();
    EXPECT_LE(sigmas(c.early_only, n, d.first_only), k);
    EXPECT_LE(sigmas(c.late_only, n, d.second_only), k);
    EXPECT_LE(sigmas(c.both, n, d.both), k);
    EXPECT_LE(sigmas(c.none, n, d.none), k);
}

void expect_group_within(const MonitorLineCounts &c, const PatternDistribution &d, double k) {
    const auto n = c.total();
    EXPECT_LE(sigmas(c.m1_only, n, d.first_only), k);
    EXPECT_LE(sigmas(c.m2_only, n, d.second_only), k);
    EXPECT_LE(sigmas(c.both, n, d.both), k);
    EXPECT_LE(sigmas(c.none, n, d.none), k);
}

}  // namespace

TEST(click_probabilities, perfect_interference_silences_second_port) {
    const auto probs = click_probabilities(ideal_config());
    EXPECT_EQ(probs.q_m2, 0.0);
    EXPECT_GT(probs.q_m1, 0.0);
    EXPECT_EQ(probs.alpha_alpha.second_only, 0.0);
    EXPECT_EQ(probs.alpha0.second_only, 0.0);
    EXPECT_EQ(probs.zero_alpha.first_only, 0.0);
}

TEST(click_probabilities, dark_counts_only) {
    LinkConfig cfg;
    cfg.source.mu = 0.0;
    cfg.receiver.p_dark = 0.3;
    const auto probs = click_probabilities(cfg);
    for (const auto &d : {probs.alpha0, probs.zero_alpha, probs.alpha_alpha}) {
        EXPECT_NEAR(d.first_only, 0.3 * 0.7, 1e-15);
        EXPECT_NEAR(d.second_only, 0.7 * 0.3, 1e-15);
        EXPECT_NEAR(d.both, 0.09, 1e-15);
        EXPECT_NEAR(d.none, 0.49, 1e-15);
    }
}

TEST(click_probabilities, occupied_slot_value) {
    LinkConfig cfg;
    cfg.source.mu = 0.05;
    cfg.channel.loss_db = 0;
    cfg.receiver = {1.0, 1.0, 0.0};
    const auto probs = click_probabilities(cfg);
    EXPECT_NEAR(probs.q_signal, 0.048770575499285984, 1e-15);
}

TEST(click_probabilities, occupied_slot_value_by_monte_carlo) {
    LinkConfig cfg;
    cfg.source.mu = 0.05;
    cfg.source.f = 0.0;
    cfg.source.n_rounds = 10'000'000;
    cfg.receiver = {1.0, 1.0, 0.0};
    const auto raw = simulate(cfg, 2718, 4);
    const std::uint64_t hits = raw.sent_alpha0.early_only + raw.sent_0alpha.late_only;
    const std::uint64_t trials = raw.sent_alpha0.total() + raw.sent_0alpha.total();
    EXPECT_EQ(trials, cfg.source.n_rounds);
    EXPECT_LE(sigmas(hits, trials, 0.048770575499285984), 3.0);
}

TEST(click_probabilities, groups_sum_to_one) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> unit(0, 1);
    for (int n = 0; n < 1000; ++n) {
        LinkConfig cfg;
        cfg.source.mu = 5 * unit(rng);
        cfg.channel.loss_db = 40 * unit(rng);
        cfg.channel.model = {unit(rng), 1 + 50 * unit(rng)};
        cfg.receiver = {unit(rng), unit(rng), 0.999 * unit(rng)};
        const auto probs = click_probabilities(cfg);
        for (const auto &d : {probs.alpha0, probs.zero_alpha, probs.alpha_alpha}) {
            EXPECT_NEAR(d.sum(), 1.0, 1e-12);
            for (double p : {d.first_only, d.second_only, d.both, d.none}) {
                EXPECT_GE(p, 0.0);
                EXPECT_LE(p, 1.0);
            }
        }
        EXPECT_NEAR(probs.q_signal, oracle::threshold_click(cfg.source.mu * probs.transmittance *
                                                                cfg.receiver.t_b * cfg.receiver.eta_det,
                                                            cfg.receiver.p_dark),
                    1e-15);
    }
}

TEST(click_probabilities, zero_visibility_balances_ports) {
    LinkConfig cfg;
    cfg.channel.visibility = 0.0;
    const auto probs = click_probabilities(cfg);
    EXPECT_EQ(probs.q_m1, probs.q_m2);
}

TEST(click_probabilities, visibility_model) {
    LinkConfig cfg;
    cfg.channel.loss_db = 15;
    EXPECT_NEAR(click_probabilities(cfg).visibility, 0.98 * std::exp(-0.5), 1e-15);
    cfg.channel.model.l_c = std::numeric_limits<double>::infinity();
    EXPECT_EQ(click_probabilities(cfg).visibility, 0.98);
    cfg.channel.visibility = 0.5;
    EXPECT_EQ(click_probabilities(cfg).visibility, 0.5);
}

TEST(click_probabilities, rejects_bad_config) {
    auto expect_field = [](LinkConfig cfg, const std::string &field) {
        try {
            click_probabilities(cfg);
            ADD_FAILURE() << "expected ConfigError for " << field;
        } catch (const ConfigError &e) {
            EXPECT_EQ(e.field, field);
        }
    };
    LinkConfig cfg;
    cfg.source.mu = -1;
    expect_field(cfg, "source.mu");
    cfg = {};
    cfg.source.f = 1.5;
    expect_field(cfg, "source.f");
    cfg = {};
    cfg.source.n_rounds = 0;
    expect_field(cfg, "source.n_rounds");
    cfg = {};
    cfg.channel.loss_db = -3;
    expect_field(cfg, "channel.loss_db");
    cfg = {};
    cfg.channel.visibility = 1.2;
    expect_field(cfg, "channel.visibility");
    cfg = {};
    cfg.channel.model.l_c = 0;
    expect_field(cfg, "channel.l_c");
    cfg = {};
    cfg.receiver.t_b = -0.1;
    expect_field(cfg, "receiver.t_b");
    cfg = {};
    cfg.receiver.eta_det = 2;
    expect_field(cfg, "receiver.eta_det");
    cfg = {};
    cfg.receiver.p_dark = 1.0;
    expect_field(cfg, "receiver.p_dark");
}

TEST(simulate, deterministic_and_thread_independent) {
    LinkConfig cfg;
    cfg.source.n_rounds = 300'000;
    const auto a = simulate(cfg, 42, 1);
    const auto b = simulate(cfg, 42, 1);
    const auto c = simulate(cfg, 42, 4);
    const auto d = simulate(cfg, 43, 1);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
    EXPECT_NE(a, d);
}

TEST(simulate, tallies_every_round) {
    LinkConfig cfg;
    cfg.source.n_rounds = 123'457;  // not a multiple of the chunk size
    const auto raw = simulate(cfg, 1, 3);
    EXPECT_EQ(raw.sent_alpha0.total() + raw.sent_0alpha.total() + raw.sent_alphaalpha.total(),
              cfg.source.n_rounds);
}

TEST(simulate, matches_click_probabilities_within_five_sigma) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(0, 1);
    for (int n = 0; n < 5; ++n) {
        LinkConfig cfg;
        cfg.source.mu = 0.5 * unit(rng);
        cfg.source.f = 0.05 + 0.4 * unit(rng);
        cfg.source.n_rounds = 1'000'000;
        cfg.channel.loss_db = 10 * unit(rng);
        cfg.receiver = {unit(rng), 0.1 + 0.9 * unit(rng), 0.05 * unit(rng)};
        const auto probs = click_probabilities(cfg);
        const auto raw = simulate(cfg, 100 + n, 2);
        expect_group_within(raw.sent_alpha0, probs.alpha0, 5.0);
        expect_group_within(raw.sent_0alpha, probs.zero_alpha, 5.0);
        expect_group_within(raw.sent_alphaalpha, probs.alpha_alpha, 5.0);
        // State preparation frequencies.
        EXPECT_LE(sigmas(raw.sent_alphaalpha.total(), cfg.source.n_rounds, cfg.source.f), 5.0);
        EXPECT_LE(sigmas(raw.sent_alpha0.total(), cfg.source.n_rounds, (1 - cfg.source.f) / 2), 5.0);
    }
}

TEST(simulate, pure_dark_counts_give_uniform_table) {
    LinkConfig cfg;
    cfg.source.mu = 0.0;
    cfg.source.n_rounds = 1'000'000;
    cfg.receiver.p_dark = 0.5;
    const auto raw = simulate(cfg, 9, 2);
    const auto t = renormalize(raw);
    // Early and late are each 1/2 given one conclusive click.
    EXPECT_LE(sigmas(raw.sent_alpha0.early_only, raw.sent_alpha0.conclusive(), 0.5), 5.0);
    EXPECT_LE(sigmas(raw.sent_0alpha.early_only, raw.sent_0alpha.conclusive(), 0.5), 5.0);
    EXPECT_LE(sigmas(raw.sent_alphaalpha.m1_only, raw.sent_alphaalpha.conclusive(), 0.5), 5.0);
    const auto ev = witness_expectation({-kHalfRoot3, -kHalfRoot3}, t);
    EXPECT_NEAR(ev.expectation, 1.0, 5 * expectation_std_error({-kHalfRoot3, -kHalfRoot3}, raw));
}

TEST(simulate, ideal_link_is_perfectly_correlated) {
    auto cfg = ideal_config();
    cfg.source.n_rounds = 500'000;
    const auto t = renormalize(simulate(cfg, 5));
    EXPECT_EQ(zz_correlation(t), 1.0);
    EXPECT_EQ(x_visibility(t), 1.0);
    const auto ev = witness_expectation({-kHalfRoot3, -kHalfRoot3}, t);
    EXPECT_NEAR(ev.expectation, 1 - std::sqrt(3.0), 1e-15);
}

TEST(simulate, no_light_no_dark_is_insufficient) {
    LinkConfig cfg;
    cfg.source.mu = 0.0;
    cfg.receiver.p_dark = 0.0;
    cfg.source.n_rounds = 10'000;
    EXPECT_THROW(renormalize(simulate(cfg, 1)), InsufficientData);
}

TEST(loss_sweep, zero_loss_ideal) {
    auto cfg = ideal_config();
    cfg.channel.visibility.reset();
    cfg.channel.model = {1.0, std::numeric_limits<double>::infinity()};
    cfg.source.n_rounds = 200'000;
    const std::vector<double> losses{0.0};
    const auto pts = loss_sweep(losses, {-kHalfRoot3, -kHalfRoot3}, cfg, 3);
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_NEAR(pts[0].evaluation.expectation, 1 - std::sqrt(3.0), 1e-15);
}

TEST(loss_sweep, dark_dominated_is_one) {
    LinkConfig cfg;
    cfg.source.mu = 0;
    cfg.receiver.p_dark = 0.5;
    cfg.source.n_rounds = 200'000;
    const std::vector<double> losses{0, 10, 20};
    const WitnessParams p{-kHalfRoot3, -kHalfRoot3};
    for (const auto &pt : loss_sweep(losses, p, cfg, 3))
        EXPECT_NEAR(pt.evaluation.expectation, 1.0, 5 * pt.expectation_sigma) << pt.loss_db;
}

TEST(loss_sweep, preserves_input_order_and_rejects_empty) {
    LinkConfig cfg;
    cfg.source.mu = 0.5;
    cfg.source.n_rounds = 100'000;
    const std::vector<double> losses{10, 0, 5};
    const auto pts = loss_sweep(losses, {-kHalfRoot3, -kHalfRoot3}, cfg, 3);
    ASSERT_EQ(pts.size(), 3u);
    EXPECT_EQ(pts[0].loss_db, 10);
    EXPECT_EQ(pts[1].loss_db, 0);
    EXPECT_EQ(pts[2].loss_db, 5);
    EXPECT_THROW(loss_sweep(std::span<const double>{}, {0, 0}, cfg, 3), InvalidArgument);
}

TEST(loss_sweep, expectation_degrades_with_loss) {
    LinkConfig cfg;
    cfg.source.mu = 0.5;  // bright enough for small error bars
    cfg.source.n_rounds = 400'000;
    const std::vector<double> losses{0, 10, 20, 30};
    const auto pts = loss_sweep(losses, {-kHalfRoot3, -kHalfRoot3}, cfg, 11, 2);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double tol = 3 * std::hypot(pts[i].expectation_sigma, pts[i - 1].expectation_sigma);
        EXPECT_GE(pts[i].evaluation.expectation, pts[i - 1].evaluation.expectation - tol);
    }
}

TEST(derive_seed, distinct_streams) {
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
    EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}
