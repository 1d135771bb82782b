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

#ifndef COWWIT_VALIDITY_H
#define COWWIT_VALIDITY_H

#include <optional>
#include <string_view>
#include <vector>

#include "cowwit/effective_operators.h"

namespace cowwit {

enum class WitnessKind { NotAWitnessPsd, NotAWitnessNegativeOnSeparable, ValidWitness };

/// Which piece of the admissible region a valid witness falls in.
///
/// I: a² < b²/2 (separable minimum attained at x₁ = 1).
/// II: a² > b²/2 (interior stationary point).
/// Boundary: |b| == 1 in region I or 4a⁴ - 4a² + b² == 0 in region II;
/// the separable minimum is exactly zero there.
enum class WitnessBranch { I, II, Boundary };

struct WitnessClass {
    WitnessKind kind = WitnessKind::NotAWitnessPsd;
    std::optional<WitnessBranch> branch;  // set only for ValidWitness
    double lambda_min = 0.0;
    double separable_min = 0.0;
};

std::string_view to_string(WitnessKind kind);
std::string_view to_string(WitnessBranch branch);

/// Absolute tolerance used to decide that a point sits on a region boundary.
inline constexpr double kBoundaryTolerance = 1e-12;
/// Absolute tolerance for "λ_min" and "separable minimum" near zero.
inline constexpr double kZeroTolerance = 1e-9;

/// 4a⁴ - 4a² + b²; region II needs this ≤ 0.
double region_two_discriminant(WitnessParams p);

/// Minimum of <W> over product states, from the two-branch closed form.
double separable_min_closed_form(WitnessParams p);

/// Minimum of <W> over product states by direct search.
///
/// Scans 1 - |u(θ)| on `grid_n` equally spaced angles of Alice's Bloch
/// circle, with |u(θ)|² = a² sin²θ + (b/2)²(1 + cos θ)², then refines the
/// best cell by golden-section search to 1e-10. Bob's vector is taken
/// anti-parallel to u. Throws InvalidArgument when grid_n < 100.
double separable_min_bruteforce(WitnessParams p, int grid_n);

/// 1 - |b| < a², i.e. W has a negative eigenvalue.
bool is_non_psd(WitnessParams p);

/// Throws InvalidParameter on non-finite input.
WitnessClass classify(WitnessParams p);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct ScanPoint {
    double a = 0.0;
    double b = 0.0;
    WitnessClass cls;
};

/// Values lo + i (hi - lo)/(steps - 1), i = 0..steps-1; a degenerate
/// interval yields `steps` copies of lo.
std::vector<double> grid_axis(Interval range, int steps);

/// Classifies every point of a steps × steps grid, row-major with a as the
/// outer index. Output order does not depend on `threads`.
///
/// Throws InvalidArgument for steps < 2 or inverted/non-finite intervals.
std::vector<ScanPoint> region_scan(Interval a_range, Interval b_range, int steps,
                                   unsigned threads = 1);

}  // namespace cowwit

#endif
