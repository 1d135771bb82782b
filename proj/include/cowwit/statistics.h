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

#ifndef COWWIT_STATISTICS_H
#define COWWIT_STATISTICS_H

#include <cstdint>
#include <vector>

#include "cowwit/effective_operators.h"
#include "cowwit/validity.h"

namespace cowwit {

/// Data-line (arrival time) tallies for one signal preparation.
struct DataLineCounts {
    std::uint64_t early_only = 0;
    std::uint64_t late_only = 0;
    std::uint64_t both = 0;
    std::uint64_t none = 0;

    std::uint64_t conclusive() const { return early_only + late_only; }
    std::uint64_t total() const { return early_only + late_only + both + none; }
    DataLineCounts &operator+=(const DataLineCounts &o);
    bool operator==(const DataLineCounts &) const = default;
};

/// Monitoring-line (interferometer) tallies for decoy rounds.
struct MonitorLineCounts {
    std::uint64_t m1_only = 0;
    std::uint64_t m2_only = 0;
    std::uint64_t both = 0;
    std::uint64_t none = 0;

    std::uint64_t conclusive() const { return m1_only + m2_only; }
    std::uint64_t total() const { return m1_only + m2_only + both + none; }
    MonitorLineCounts &operator+=(const MonitorLineCounts &o);
    bool operator==(const MonitorLineCounts &) const = default;
};

/// Event tallies before post-selection, keyed by what Alice sent.
///
/// |α0> (pulse early) is paired with |z+>, |0α> (pulse late) with |z->,
/// and the decoy |αα> with |x+>.
struct RawCounts {
    DataLineCounts sent_alpha0;
    DataLineCounts sent_0alpha;
    MonitorLineCounts sent_alphaalpha;

    RawCounts &operator+=(const RawCounts &o);
    bool operator==(const RawCounts &) const = default;
};

/// Conditional click probabilities after discarding double and empty
/// events. Each pair should sum to one.
struct RenormalizedTable {
    double g_alpha0_early = 0.5;
    double g_alpha0_late = 0.5;
    double g_0alpha_early = 0.5;
    double g_0alpha_late = 0.5;
    double g_aa_m1 = 0.5;
    double g_aa_m2 = 0.5;

    static RenormalizedTable uniform() { return {}; }
    static RenormalizedTable ideal() { return {1.0, 0.0, 0.0, 1.0, 1.0, 0.0}; }

    /// Largest |pair sum - 1| over the three groups.
    double normalization_defect() const;
    bool in_unit_range() const;

    /// Componentwise (1 - weight) * this + weight * other.
    RenormalizedTable mixed_with(const RenormalizedTable &other, double weight) const;

    bool operator==(const RenormalizedTable &) const = default;
};

inline constexpr double kNormalizationTolerance = 1e-12;

struct WitnessEvaluation {
    double zz_corr = 0.0;
    double x_vis = 0.0;
    double expectation = 1.0;
    bool valid_witness = false;
    bool entangled = false;
    WitnessParams params;
};

/// Keeps only single-click events in each group. Throws InsufficientData
/// naming the first group whose conclusive count is zero.
RenormalizedTable renormalize(const RawCounts &raw);

/// tr(ρ Z⊗Z) with a uniform Alice marginal over the two signal states.
double zz_correlation(const RenormalizedTable &t);

/// Decoy-conditioned monitoring visibility, used for tr(ρ |x+><x+| ⊗ X).
double x_visibility(const RenormalizedTable &t);

/// <W> = 1 + a zz + b vis. `entangled` needs <W> < 0 and a valid witness.
WitnessEvaluation witness_expectation(WitnessParams p, const RenormalizedTable &t);

/// Delta-method binomial standard error of <W> estimated from `raw`.
double expectation_std_error(WitnessParams p, const RawCounts &raw);

struct DetectionPoint {
    double a = 0.0;
    double b = 0.0;
    double expectation = 0.0;
};

/// Valid-witness grid points whose expectation on `t` is negative, in
/// region_scan order.
std::vector<DetectionPoint> find_detecting_region(const RenormalizedTable &t, Interval a_range,
                                                  Interval b_range, int steps,
                                                  unsigned threads = 1);

}  // namespace cowwit

#endif
