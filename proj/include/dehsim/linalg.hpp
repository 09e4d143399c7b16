// Copyright 2026 The dehsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense complex linear algebra shared by every other module.
//
// Bipartite index convention: subsystem A is the slow (major) index, so the
// joint basis index of |i_A>|i_B> is i_A * dim_B + i_B.

#include <complex>

#include <Eigen/Dense>

namespace dehsim {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tolerance {
inline constexpr double hermitian = 1e-12;
inline constexpr double trace = 1e-10;
inline constexpr double positivity = 1e-10;
inline constexpr double normalization = 1e-12;
/// Relative Hermiticity defect above which eig_hermitian refuses its input.
inline constexpr double eig_hermitian_input = 1e-8;
}  // namespace tolerance

double max_abs(const ComplexMatrix& m);
/// max |M - M^dagger| entrywise.
double hermiticity_defect(const ComplexMatrix& m);
/// (M + M^dagger) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// Normalized pure state.
class StateVector {
public:
    /// Scales `amplitudes` to unit norm. Throws DegenerateState on a zero vector.
    static StateVector normalized(ComplexVector amplitudes);
    /// Accepts `amplitudes` only if already normalized within 1e-12.
    static StateVector from_amplitudes(ComplexVector amplitudes);
    static StateVector basis(Index dim, Index k);

    Index dim() const { return amplitudes_.size(); }
    const ComplexVector& amplitudes() const { return amplitudes_; }
    Complex operator[](Index i) const { return amplitudes_(i); }
    ComplexMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

private:
    explicit StateVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {}

    ComplexVector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite operator.
class DensityMatrix {
public:
    /// Validates Hermiticity (1e-12), unit trace (1e-10) and positivity
    /// (smallest eigenvalue >= -1e-10); throws Validation otherwise.
    static DensityMatrix from_matrix(const ComplexMatrix& m);
    /// Symmetrizes and wraps without the eigenvalue check. For results of
    /// trace-preserving, positivity-preserving arithmetic on valid inputs.
    static DensityMatrix assume_valid(const ComplexMatrix& m);
    static DensityMatrix pure(const StateVector& psi);
    static DensityMatrix basis(Index dim, Index k);
    static DensityMatrix maximally_mixed(Index dim);

    Index dim() const { return matrix_.rows(); }
    const ComplexMatrix& matrix() const { return matrix_; }
    Complex operator()(Index i, Index j) const { return matrix_(i, j); }

    double trace() const { return matrix_.trace().real(); }
    /// Tr rho^2
    double purity() const;
    /// Ascending eigenvalues.
    RealVector eigenvalues() const;

private:
    explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {}

    ComplexMatrix matrix_;
};

/// Eigendecomposition H = V diag(values) V^dagger, values ascending.
struct EigenSystem {
    RealVector values;
    ComplexMatrix vectors;

    Index dim() const { return values.size(); }
    /// exp(-i H t), hbar = 1.
    ComplexMatrix propagator(double t) const;
    ComplexMatrix reconstruct() const;
};

/// Kronecker product, A-major.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// (rho_A)_{ij} = sum_k rho_{(i,k),(j,k)}. Accepts unnormalized operators.
ComplexMatrix partial_trace_b(const ComplexMatrix& rho_ab, Index dim_a, Index dim_b);
DensityMatrix partial_trace_b(const DensityMatrix& rho_ab, Index dim_a, Index dim_b);
ComplexMatrix partial_trace_a(const ComplexMatrix& rho_ab, Index dim_a, Index dim_b);
DensityMatrix partial_trace_a(const DensityMatrix& rho_ab, Index dim_a, Index dim_b);

/// Symmetrizes before decomposing; rejects inputs whose Hermiticity defect
/// exceeds 1e-8 * max|H|.
EigenSystem eig_hermitian(const ComplexMatrix& h);

/// U rho U^dagger with U = V diag(exp(-i lambda t)) V^dagger.
DensityMatrix evolve(const DensityMatrix& rho, const EigenSystem& eig, double t);

}  // namespace dehsim
