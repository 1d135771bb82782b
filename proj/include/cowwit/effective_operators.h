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

#ifndef COWWIT_EFFECTIVE_OPERATORS_H
#define COWWIT_EFFECTIVE_OPERATORS_H

#include <array>
#include <cstddef>

namespace cowwit {

/// Coefficients (a, b) of W = I⊗I + a Z⊗Z + b |x+><x+|⊗X.
struct WitnessParams {
    double a = 0.0;
    double b = 0.0;

    bool finite() const;
    bool operator==(const WitnessParams &) const = default;
};

/// Single-photon time-bin basis state: z+ is the photon in the first slot,
/// z- in the second.
enum class TimeBin : std::size_t { ZPlus = 0, ZMinus = 1 };

/// Real symmetric operator on the effective two-qubit subspace.
///
/// Basis order is fixed as (|z+z+>, |z+z->, |z-z+>, |z-z->): the Alice
/// (first) factor is the slow index.
class EffectiveOperator {
  public:
    static constexpr std::size_t kDim = 4;
    using Matrix = std::array<std::array<double, kDim>, kDim>;

    EffectiveOperator() = default;
    explicit EffectiveOperator(const Matrix &entries) : entries_(entries) {}

    static EffectiveOperator zero();
    static EffectiveOperator identity();

    static constexpr std::size_t index(TimeBin alice, TimeBin bob) {
        return 2 * static_cast<std::size_t>(alice) + static_cast<std::size_t>(bob);
    }

    double operator()(std::size_t row, std::size_t col) const { return entries_[row][col]; }
    double &operator()(std::size_t row, std::size_t col) { return entries_[row][col]; }
    double at(TimeBin alice_row, TimeBin bob_row, TimeBin alice_col, TimeBin bob_col) const {
        return entries_[index(alice_row, bob_row)][index(alice_col, bob_col)];
    }

    const Matrix &entries() const { return entries_; }

    double trace() const;
    EffectiveOperator transposed() const;
    /// Largest |m_ij - m_ji|.
    double asymmetry() const;

    EffectiveOperator &operator+=(const EffectiveOperator &rhs);
    EffectiveOperator &operator*=(double s);
    friend EffectiveOperator operator+(EffectiveOperator lhs, const EffectiveOperator &rhs) {
        return lhs += rhs;
    }
    friend EffectiveOperator operator*(double s, EffectiveOperator m) { return m *= s; }

    bool operator==(const EffectiveOperator &) const = default;

  private:
    Matrix entries_{};
};

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    static constexpr double kNormSlack = 1e-12;

    double norm_squared() const { return x * x + y * y + z * z; }
    bool in_ball() const;
};

/// Z⊗Z = diag(1, -1, -1, 1).
EffectiveOperator pauli_zz();

/// |x+><x+| ⊗ X.
EffectiveOperator xplus_proj_x();

/// Throws InvalidParameter on non-finite parameters.
EffectiveOperator build_witness(WitnessParams p);

/// Eigenvalues in ascending order, by cyclic Jacobi rotations.
///
/// Iterates until the off-diagonal Frobenius norm drops below 1e-12
/// (absolute, or relative to the matrix norm for large entries) or 100
/// sweeps have run. Throws ContractViolation when `m` is not symmetric.
std::array<double, 4> eigenvalues_sym4(const EffectiveOperator &m);

/// λ_min(W) = (2 - |b| - sqrt(4a² + b²)) / 2.
double min_eigenvalue_closed_form(WitnessParams p);

/// <ψ⊗φ|W|ψ⊗φ> for pure product states with Bloch vectors r1, r2.
///
/// Only the x and z components enter; y is accepted and ignored.
/// Throws InvalidState when either vector lies outside the Bloch ball.
double product_state_expectation(WitnessParams p, const BlochVector &r1, const BlochVector &r2);

}  // namespace cowwit

#endif
