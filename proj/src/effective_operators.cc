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

#include "cowwit/effective_operators.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "cowwit/error.h"

namespace cowwit {

namespace {

constexpr std::size_t N = EffectiveOperator::kDim;
constexpr double kJacobiThreshold = 1e-12;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const EffectiveOperator::Matrix &m) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            if (i != j) s += m[i][j] * m[i][j];
    return std::sqrt(s);
}

double frobenius_norm(const EffectiveOperator::Matrix &m) {
    double s = 0.0;
    for (const auto &row : m)
        for (double v : row) s += v * v;
    return std::sqrt(s);
}

}  // namespace

bool WitnessParams::finite() const { return std::isfinite(a) && std::isfinite(b); }

bool BlochVector::in_ball() const {
    return std::isfinite(norm_squared()) && norm_squared() <= 1.0 + kNormSlack;
}

EffectiveOperator EffectiveOperator::zero() { return EffectiveOperator{}; }

EffectiveOperator EffectiveOperator::identity() {
    EffectiveOperator m;
    for (std::size_t i = 0; i < N; ++i) m.entries_[i][i] = 1.0;
    return m;
}

double EffectiveOperator::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += entries_[i][i];
    return t;
}

EffectiveOperator EffectiveOperator::transposed() const {
    EffectiveOperator t;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) t.entries_[i][j] = entries_[j][i];
    return t;
}

double EffectiveOperator::asymmetry() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j)
            worst = std::max(worst, std::abs(entries_[i][j] - entries_[j][i]));
    return worst;
}

EffectiveOperator &EffectiveOperator::operator+=(const EffectiveOperator &rhs) {
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) entries_[i][j] += rhs.entries_[i][j];
    return *this;
}

EffectiveOperator &EffectiveOperator::operator*=(double s) {
    for (auto &row : entries_)
        for (double &v : row) v *= s;
    return *this;
}

EffectiveOperator pauli_zz() {
    EffectiveOperator m;
    for (auto alice : {TimeBin::ZPlus, TimeBin::ZMinus}) {
        for (auto bob : {TimeBin::ZPlus, TimeBin::ZMinus}) {
            auto k = EffectiveOperator::index(alice, bob);
            m(k, k) = alice == bob ? 1.0 : -1.0;
        }
    }
    return m;
}

EffectiveOperator xplus_proj_x() {
    // |x+><x+| is the uniform 1/2 block on Alice's side; X flips Bob's bin.
    EffectiveOperator m;
    for (auto ar : {TimeBin::ZPlus, TimeBin::ZMinus})
        for (auto br : {TimeBin::ZPlus, TimeBin::ZMinus})
            for (auto ac : {TimeBin::ZPlus, TimeBin::ZMinus})
                for (auto bc : {TimeBin::ZPlus, TimeBin::ZMinus})
                    m(EffectiveOperator::index(ar, br), EffectiveOperator::index(ac, bc)) =
                        br != bc ? 0.5 : 0.0;
    return m;
}

EffectiveOperator build_witness(WitnessParams p) {
    if (!p.finite())
        throw InvalidParameter("witness parameters must be finite (a=" + std::to_string(p.a) +
                               ", b=" + std::to_string(p.b) + ")");
    return EffectiveOperator::identity() + p.a * pauli_zz() + p.b * xplus_proj_x();
}

std::array<double, 4> eigenvalues_sym4(const EffectiveOperator &m) {
    const double scale = frobenius_norm(m.entries());
    if (!std::isfinite(scale)) throw ContractViolation("eigenvalues_sym4: non-finite entries");
    if (m.asymmetry() > 1e-12 * std::max(1.0, scale))
        throw ContractViolation("eigenvalues_sym4: matrix is not symmetric");

    auto a = m.entries();
    // Symmetrize exactly so rotations only ever see the upper triangle's values.
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j) a[j][i] = a[i][j];

    const double tol = std::max(kJacobiThreshold, 1e-15 * scale);
    for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) >= tol; ++sweep) {
        for (std::size_t p = 0; p < N - 1; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const double apq = a[p][q];
                if (apq == 0.0) continue;
                // Rotation angle that zeroes a[p][q]; t is the smaller root of
                // t² + 2θt - 1 = 0 for numerical stability.
                const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < N; ++k) {
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    const double apk = a[p][k];
                    const double aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = a[q][p] = 0.0;
            }
        }
    }

    std::array<double, 4> eig{a[0][0], a[1][1], a[2][2], a[3][3]};
    std::sort(eig.begin(), eig.end());
    return eig;
}

double min_eigenvalue_closed_form(WitnessParams p) {
    return 0.5 * (2.0 - std::abs(p.b) - std::sqrt(4.0 * p.a * p.a + p.b * p.b));
}

double product_state_expectation(WitnessParams p, const BlochVector &r1, const BlochVector &r2) {
    if (!r1.in_ball() || !r2.in_ball())
        throw InvalidState("Bloch vector outside the unit ball");
    return 1.0 + p.a * r1.z * r2.z + 0.5 * p.b * (1.0 + r1.x) * r2.x;
}

}  // namespace cowwit
