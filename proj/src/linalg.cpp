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

#include "dehsim/linalg.hpp"

#include <cmath>
#include <sstream>

#include "dehsim/error.hpp"

namespace dehsim {

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return max_abs(m - m.adjoint());
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
    return 0.5 * (m + m.adjoint());
}

StateVector StateVector::normalized(ComplexVector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        fail(ErrorKind::DegenerateState, "state vector has zero or non-finite norm");
    }
    amplitudes /= norm;
    return StateVector(std::move(amplitudes));
}

StateVector StateVector::from_amplitudes(ComplexVector amplitudes) {
    if (!amplitudes.allFinite()) {
        fail(ErrorKind::Validation, "state vector has non-finite amplitudes");
    }
    const double defect = std::abs(amplitudes.squaredNorm() - 1.0);
    if (defect > tolerance::normalization) {
        std::ostringstream os;
        os << "state vector not normalized: |<psi|psi> - 1| = " << defect;
        fail(ErrorKind::Validation, os.str());
    }
    return StateVector(std::move(amplitudes));
}

StateVector StateVector::basis(Index dim, Index k) {
    if (k < 0 || k >= dim) {
        fail(ErrorKind::InvalidArgument, "basis index out of range");
    }
    ComplexVector v = ComplexVector::Zero(dim);
    v(k) = 1.0;
    return StateVector(std::move(v));
}

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        fail(ErrorKind::Validation, "density matrix must be square and non-empty");
    }
    if (!m.allFinite()) {
        fail(ErrorKind::Validation, "density matrix has non-finite entries");
    }
    std::ostringstream os;
    const double herm = hermiticity_defect(m);
    if (herm > tolerance::hermitian) {
        os << "density matrix not Hermitian: max|M - M^+| = " << herm;
        fail(ErrorKind::Validation, os.str());
    }
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > tolerance::trace) {
        os << "density matrix trace " << tr << " differs from 1";
        fail(ErrorKind::Validation, os.str());
    }
    DensityMatrix rho(hermitian_part(m));
    const double lowest = rho.eigenvalues()(0);
    if (lowest < -tolerance::positivity) {
        os << "density matrix not positive: smallest eigenvalue " << lowest;
        fail(ErrorKind::Validation, os.str());
    }
    return rho;
}

DensityMatrix DensityMatrix::assume_valid(const ComplexMatrix& m) {
    return DensityMatrix(hermitian_part(m));
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    return DensityMatrix(psi.projector());
}

DensityMatrix DensityMatrix::basis(Index dim, Index k) {
    return pure(StateVector::basis(dim, k));
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
    if (dim <= 0) {
        fail(ErrorKind::InvalidArgument, "dimension must be positive");
    }
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::purity() const {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    return matrix_.squaredNorm();
}

RealVector DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

ComplexMatrix EigenSystem::propagator(double t) const {
    ComplexVector phases(values.size());
    for (Index k = 0; k < values.size(); ++k) {
        phases(k) = std::polar(1.0, -values(k) * t);
    }
    return vectors * phases.asDiagonal() * vectors.adjoint();
}

ComplexMatrix EigenSystem::reconstruct() const {
    return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix::assume_valid(tensor(a.matrix(), b.matrix()));
}

namespace {

void check_bipartite(const ComplexMatrix& rho_ab, Index dim_a, Index dim_b) {
    if (dim_a <= 0 || dim_b <= 0 || rho_ab.rows() != dim_a * dim_b ||
        rho_ab.cols() != dim_a * dim_b) {
        std::ostringstream os;
        os << "partial trace: operator of size " << rho_ab.rows() << "x" << rho_ab.cols()
           << " does not factor as " << dim_a << " x " << dim_b;
        fail(ErrorKind::DimensionMismatch, os.str());
    }
}

}  // namespace

ComplexMatrix partial_trace_b(const ComplexMatrix& rho_ab, Index dim_a, Index dim_b) {
    check_bipartite(rho_ab, dim_a, dim_b);
    ComplexMatrix out(dim_a, dim_a);
    for (Index i = 0; i < dim_a; ++i) {
        for (Index j = 0; j < dim_a; ++j) {
            out(i, j) = rho_ab.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
        }
    }
    return out;
}

DensityMatrix partial_trace_b(const DensityMatrix& rho_ab, Index dim_a, Index dim_b) {
    return DensityMatrix::assume_valid(partial_trace_b(rho_ab.matrix(), dim_a, dim_b));
}

ComplexMatrix partial_trace_a(const ComplexMatrix& rho_ab, Index dim_a, Index dim_b) {
    check_bipartite(rho_ab, dim_a, dim_b);
    ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
    for (Index i = 0; i < dim_a; ++i) {
        out += rho_ab.block(i * dim_b, i * dim_b, dim_b, dim_b);
    }
    return out;
}

DensityMatrix partial_trace_a(const DensityMatrix& rho_ab, Index dim_a, Index dim_b) {
    return DensityMatrix::assume_valid(partial_trace_a(rho_ab.matrix(), dim_a, dim_b));
}

EigenSystem eig_hermitian(const ComplexMatrix& h) {
    if (h.rows() != h.cols() || h.rows() == 0) {
        fail(ErrorKind::DimensionMismatch, "eig_hermitian: matrix must be square and non-empty");
    }
    if (!h.allFinite()) {
        fail(ErrorKind::InvalidArgument, "eig_hermitian: non-finite entries");
    }
    const double scale = max_abs(h);
    const double defect = hermiticity_defect(h);
    if (defect > tolerance::eig_hermitian_input * scale) {
        std::ostringstream os;
        os << "eig_hermitian: max|H - H^+| = " << defect << " exceeds 1e-8 * max|H| = "
           << tolerance::eig_hermitian_input * scale;
        fail(ErrorKind::NonHermitian, os.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(h));
    if (solver.info() != Eigen::Success) {
        fail(ErrorKind::Convergence, "eig_hermitian: eigensolver did not converge");
    }
    return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

DensityMatrix evolve(const DensityMatrix& rho, const EigenSystem& eig, double t) {
    if (rho.dim() != eig.dim()) {
        fail(ErrorKind::DimensionMismatch, "evolve: state and Hamiltonian dimensions differ");
    }
    const ComplexMatrix u = eig.propagator(t);
    return DensityMatrix::assume_valid(u * rho.matrix() * u.adjoint());
}

}  // namespace dehsim
