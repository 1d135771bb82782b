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

#include "cowwit/statistics.h"

#include <algorithm>
#include <cmath>

#include "cowwit/error.h"

namespace cowwit {

namespace {

double fraction(std::uint64_t part, std::uint64_t whole) {
    return static_cast<double>(part) / static_cast<double>(whole);
}

double binomial_variance(std::uint64_t hits, std::uint64_t trials) {
    if (trials == 0) return 0.0;
    const double p = fraction(hits, trials);
    return p * (1.0 - p) / static_cast<double>(trials);
}

}  // namespace

DataLineCounts &DataLineCounts::operator+=(const DataLineCounts &o) {
    early_only += o.early_only;
    late_only += o.late_only;
    both += o.both;
    none += o.none;
    return *this;
}

MonitorLineCounts &MonitorLineCounts::operator+=(const MonitorLineCounts &o) {
    m1_only += o.m1_only;
    m2_only += o.m2_only;
    both += o.both;
    none += o.none;
    return *this;
}

RawCounts &RawCounts::operator+=(const RawCounts &o) {
    sent_alpha0 += o.sent_alpha0;
    sent_0alpha += o.sent_0alpha;
    sent_alphaalpha += o.sent_alphaalpha;
    return *this;
}

double RenormalizedTable::normalization_defect() const {
    return std::max({std::abs(g_alpha0_early + g_alpha0_late - 1.0),
                     std::abs(g_0alpha_early + g_0alpha_late - 1.0),
                     std::abs(g_aa_m1 + g_aa_m2 - 1.0)});
}

bool RenormalizedTable::in_unit_range() const {
    for (double g : {g_alpha0_early, g_alpha0_late, g_0alpha_early, g_0alpha_late, g_aa_m1, g_aa_m2})
        if (!(g >= 0.0 && g <= 1.0)) return false;
    return true;
}

RenormalizedTable RenormalizedTable::mixed_with(const RenormalizedTable &other,
                                                double weight) const {
    auto mix = [&](double x, double y) { return (1.0 - weight) * x + weight * y; };
    return {mix(g_alpha0_early, other.g_alpha0_early), mix(g_alpha0_late, other.g_alpha0_late),
            mix(g_0alpha_early, other.g_0alpha_early), mix(g_0alpha_late, other.g_0alpha_late),
            mix(g_aa_m1, other.g_aa_m1),                mix(g_aa_m2, other.g_aa_m2)};
}

RenormalizedTable renormalize(const RawCounts &raw) {
    const auto &a0 = raw.sent_alpha0;
    const auto &oa = raw.sent_0alpha;
    const auto &aa = raw.sent_alphaalpha;
    if (a0.conclusive() == 0) throw InsufficientData("alpha0");
    if (oa.conclusive() == 0) throw InsufficientData("0alpha");
    if (aa.conclusive() == 0) throw InsufficientData("alphaalpha");

    RenormalizedTable t;
    t.g_alpha0_early = fraction(a0.early_only, a0.conclusive());
    t.g_alpha0_late = fraction(a0.late_only, a0.conclusive());
    t.g_0alpha_early = fraction(oa.early_only, oa.conclusive());
    t.g_0alpha_late = fraction(oa.late_only, oa.conclusive());
    t.g_aa_m1 = fraction(aa.m1_only, aa.conclusive());
    t.g_aa_m2 = fraction(aa.m2_only, aa.conclusive());
    return t;
}

double zz_correlation(const RenormalizedTable &t) {
    return 0.5 * ((t.g_alpha0_early - t.g_alpha0_late) + (t.g_0alpha_late - t.g_0alpha_early));
}

double x_visibility(const RenormalizedTable &t) { return t.g_aa_m1 - t.g_aa_m2; }

WitnessEvaluation witness_expectation(WitnessParams p, const RenormalizedTable &t) {
    WitnessEvaluation ev;
    ev.params = p;
    ev.zz_corr = zz_correlation(t);
    ev.x_vis = x_visibility(t);
    ev.expectation = 1.0 + p.a * ev.zz_corr + p.b * ev.x_vis;
    ev.valid_witness = p.finite() && classify(p).kind == WitnessKind::ValidWitness;
    ev.entangled = ev.valid_witness && ev.expectation < 0.0;
    return ev;
}

double expectation_std_error(WitnessParams p, const RawCounts &raw) {
    // zz = g1 + g2 - 1 with g1 = early|α0, g2 = late|0α; vis = 2 g3 - 1.
    const double var_zz =
        binomial_variance(raw.sent_alpha0.early_only, raw.sent_alpha0.conclusive()) +
        binomial_variance(raw.sent_0alpha.late_only, raw.sent_0alpha.conclusive());
    const double var_vis =
        4.0 * binomial_variance(raw.sent_alphaalpha.m1_only, raw.sent_alphaalpha.conclusive());
    return std::sqrt(p.a * p.a * var_zz + p.b * p.b * var_vis);
}

std::vector<DetectionPoint> find_detecting_region(const RenormalizedTable &t, Interval a_range,
                                                  Interval b_range, int steps,
                                                  unsigned threads) {
    const auto scan = region_scan(a_range, b_range, steps, threads);
    const double zz = zz_correlation(t);
    const double vis = x_visibility(t);
    std::vector<DetectionPoint> out;
    for (const auto &pt : scan) {
        if (pt.cls.kind != WitnessKind::ValidWitness) continue;
        const double e = 1.0 + pt.a * zz + pt.b * vis;
        if (e < 0.0) out.push_back({pt.a, pt.b, e});
    }
    return out;
}

}  // namespace cowwit
