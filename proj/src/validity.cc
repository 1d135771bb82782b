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

#include "cowwit/validity.h"

#include <cmath>
#include <numbers>
#include <string>

#include "cowwit/error.h"
#include "cowwit/parallel.h"

namespace cowwit {

namespace {

void require_finite(WitnessParams p) {
    if (!p.finite()) throw InvalidParameter("witness parameters must be finite");
}

// |u(θ)| for Alice's Bloch vector (cos θ, sin θ) in the x-z plane.
double correlation_length(WitnessParams p, double theta) {
    const double za = p.a * std::sin(theta);
    const double xb = 0.5 * p.b * (1.0 + std::cos(theta));
    return std::sqrt(za * za + xb * xb);
}

// Maximizes f on [lo, hi]; assumes f is unimodal there.
template <typename F>
double golden_section_max(F &&f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    return std::max(f1, f2);
}

}  // namespace

std::string_view to_string(WitnessKind kind) {
    switch (kind) {
        case WitnessKind::NotAWitnessPsd:
            return "NotAWitness_PSD";
        case WitnessKind::NotAWitnessNegativeOnSeparable:
            return "NotAWitness_NegativeOnSeparable";
        case WitnessKind::ValidWitness:
            return "ValidWitness";
    }
    return "?";
}

std::string_view to_string(WitnessBranch branch) {
    switch (branch) {
        case WitnessBranch::I:
            return "I";
        case WitnessBranch::II:
            return "II";
        case WitnessBranch::Boundary:
            return "Boundary";
    }
    return "?";
}

double region_two_discriminant(WitnessParams p) {
    const double a2 = p.a * p.a;
    return 4.0 * a2 * a2 - 4.0 * a2 + p.b * p.b;
}

double separable_min_closed_form(WitnessParams p) {
    const double a2 = p.a * p.a;
    const double b2 = p.b * p.b;
    if (a2 == 0.0 && b2 == 0.0) return 1.0;
    // On the seam b²/2 == a² both branches give 1 - |b|.
    if (0.5 * b2 - a2 >= -kBoundaryTolerance) return 1.0 - std::abs(p.b);
    return 1.0 - a2 / std::sqrt(a2 - 0.25 * b2);
}

double separable_min_bruteforce(WitnessParams p, int grid_n) {
    if (grid_n < 100)
        throw InvalidArgument("separable_min_bruteforce: grid_n must be >= 100, got " +
                              std::to_string(grid_n));
    require_finite(p);

    const double step = 2.0 * std::numbers::pi / grid_n;
    int best_k = 0;
    double best = -1.0;
    for (int k = 0; k < grid_n; ++k) {
        const double len = correlation_length(p, k * step);
        if (len > best) {
            best = len;
            best_k = k;
        }
    }
    const double refined = golden_section_max(
        [&](double t) { return correlation_length(p, t); }, (best_k - 1) * step,
        (best_k + 1) * step, 1e-10);
    best = std::max(best, refined);
    // u = 0 gives <W> = 1, which every other candidate already bounds.
    return std::min(1.0, 1.0 - best);
}

bool is_non_psd(WitnessParams p) { return 1.0 - std::abs(p.b) < p.a * p.a; }

WitnessClass classify(WitnessParams p) {
    require_finite(p);
    WitnessClass out;
    out.lambda_min = min_eigenvalue_closed_form(p);
    out.separable_min = separable_min_closed_form(p);
    if (!is_non_psd(p)) {
        out.kind = WitnessKind::NotAWitnessPsd;
        return out;
    }

    const double seam = 0.5 * p.b * p.b - p.a * p.a;
    bool valid = false;
    WitnessBranch branch = WitnessBranch::I;
    if (seam >= -kBoundaryTolerance) {
        // Region I, including the seam where both closed-form branches meet.
        const double excess = std::abs(p.b) - 1.0;
        valid = excess <= kBoundaryTolerance;
        branch = std::abs(excess) <= kBoundaryTolerance ? WitnessBranch::Boundary
                                                        : WitnessBranch::I;
    } else {
        const double disc = region_two_discriminant(p);
        valid = disc <= kBoundaryTolerance;
        branch = std::abs(disc) <= kBoundaryTolerance ? WitnessBranch::Boundary
                                                      : WitnessBranch::II;
    }

    if (valid) {
        out.kind = WitnessKind::ValidWitness;
        out.branch = branch;
    } else {
        out.kind = WitnessKind::NotAWitnessNegativeOnSeparable;
    }
    return out;
}

std::vector<double> grid_axis(Interval range, int steps) {
    if (steps < 2) throw InvalidArgument("grid needs steps >= 2, got " + std::to_string(steps));
    if (!std::isfinite(range.lo) || !std::isfinite(range.hi))
        throw InvalidArgument("grid interval must be finite");
    if (range.hi < range.lo)
        throw InvalidArgument("grid interval is inverted: [" + std::to_string(range.lo) + ", " +
                              std::to_string(range.hi) + "]");
    std::vector<double> axis(static_cast<std::size_t>(steps));
    const double width = range.hi - range.lo;
    for (int i = 0; i < steps; ++i)
        axis[static_cast<std::size_t>(i)] =
            i == steps - 1 ? range.hi : range.lo + width * i / (steps - 1);
    return axis;
}

std::vector<ScanPoint> region_scan(Interval a_range, Interval b_range, int steps,
                                   unsigned threads) {
    const auto as = grid_axis(a_range, steps);
    const auto bs = grid_axis(b_range, steps);
    std::vector<ScanPoint> out(as.size() * bs.size());
    parallel_for(as.size(), threads, [&](std::size_t i) {
        for (std::size_t j = 0; j < bs.size(); ++j) {
            auto &pt = out[i * bs.size() + j];
            pt.a = as[i];
            pt.b = bs[j];
            pt.cls = classify({as[i], bs[j]});
        }
    });
    return out;
}

}  // namespace cowwit
