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

#include "dehsim/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dehsim/error.hpp"

namespace dehsim {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b, const char* what) {
    if (a.dim() != b.dim()) {
        std::ostringstream os;
        os << what << ": dimensions " << a.dim() << " and " << b.dim() << " differ";
        fail(ErrorKind::DimensionMismatch, os.str());
    }
}

RealVector difference_spectrum(const DensityMatrix& rho, const DensityMatrix& sigma) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        hermitian_part(rho.matrix() - sigma.matrix()), Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

}  // namespace

BoundReport BoundReport::compare(double lhs, double rhs) {
    BoundReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = (std::isinf(lhs) && std::isinf(rhs)) ? 0.0 : rhs - lhs;
    r.holds = lhs <= rhs + kBoundSlack;
    return r;
}

double fidelity_to_pure(const DensityMatrix& rho, const StateVector& psi) {
    if (rho.dim() != psi.dim()) {
        fail(ErrorKind::DimensionMismatch, "fidelity_to_pure: state dimensions differ");
    }
    const auto& v = psi.amplitudes();
    return (v.adjoint() * rho.matrix() * v)(0, 0).real();
}

double entropy_of_spectrum(const RealVector& eigenvalues) {
    double s = 0.0;
    for (Index k = 0; k < eigenvalues.size(); ++k) {
        const double lambda = std::clamp(eigenvalues(k), 0.0, 1.0);
        if (lambda > 0.0) {
            s -= lambda * std::log(lambda);
        }
    }
    return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    return entropy_of_spectrum(rho.eigenvalues());
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho, sigma, "relative_entropy");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> sigma_eig(sigma.matrix());
    const RealVector& mu = sigma_eig.eigenvalues();
    const ComplexMatrix& basis = sigma_eig.eigenvectors();

    double cross = 0.0;  // Tr rho ln sigma
    for (Index k = 0; k < mu.size(); ++k) {
        const auto v = basis.col(k);
        const double weight = (v.adjoint() * rho.matrix() * v)(0, 0).real();
        if (mu(k) <= kKernelThreshold) {
            if (weight > kSupportThreshold) {
                return kInfinity;
            }
            continue;
        }
        cross += weight * std::log(mu(k));
    }
    const double s = -entropy_of_spectrum(rho.eigenvalues()) - cross;
    return std::max(s, 0.0);
}

double relative_entropy_bits(const DensityMatrix& rho, const DensityMatrix& sigma) {
    return relative_entropy(rho, sigma) / std::numbers::ln2;
}

double trace_norm_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho, sigma, "trace_norm_distance");
    return difference_spectrum(rho, sigma).cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    return 0.5 * trace_norm_distance(rho, sigma);
}

double hs_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho, sigma, "hs_distance");
    return hs_distance(rho.matrix(), sigma.matrix());
}

double hs_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        fail(ErrorKind::DimensionMismatch, "hs_distance: operator shapes differ");
    }
    // For Hermitian differences Tr (A - B)^2 is the Frobenius norm squared.
    return (a - b).norm();
}

DensityMatrix smooth(const DensityMatrix& rho, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        fail(ErrorKind::InvalidArgument, "smoothing parameter must lie in [0, 1]");
    }
    const double d = static_cast<double>(rho.dim());
    ComplexMatrix m = (1.0 - eta) * rho.matrix();
    m.diagonal().array() += eta / d;
    return DensityMatrix::assume_valid(m);
}

BoundReport pinsker_check(const DensityMatrix& rho, const DensityMatrix& sigma) {
    const double t = trace_norm_distance(rho, sigma);
    return BoundReport::compare(0.5 * t * t, relative_entropy(rho, sigma));
}

double audenaert_bound(double t_norm, Index dim, double lambda_min) {
    constexpr double kTraceNormRounding = 1e-12;
    if (!(t_norm >= 0.0 && t_norm <= 2.0 + kTraceNormRounding)) {
        std::ostringstream os;
        os << "audenaert_bound: trace norm " << t_norm << " outside [0, 2]";
        fail(ErrorKind::InvalidArgument, os.str());
    }
    if (dim < 1) {
        fail(ErrorKind::InvalidArgument, "audenaert_bound: dimension must be positive");
    }
    if (!(lambda_min > 0.0 && lambda_min <= 1.0)) {
        std::ostringstream os;
        os << "audenaert_bound: lambda_min " << lambda_min << " outside (0, 1]";
        fail(ErrorKind::InvalidArgument, os.str());
    }
    const double t = std::min(t_norm, 2.0);
    if (t == 0.0) {
        return 0.0;
    }
    const double entropy_term = std::min(-t * std::log2(t), 1.0 / std::numbers::e);
    return t * std::log2(static_cast<double>(dim)) + entropy_term - 0.5 * t * std::log2(lambda_min);
}

DehChainReport approximate_deh_chain(const DensityMatrix& rho_a1, const DensityMatrix& rho_a2,
                                     const StateVector& target, double mu, double eps) {
    require_same_dim(rho_a1, rho_a2, "approximate_deh_chain");
    if (target.dim() != rho_a2.dim()) {
        fail(ErrorKind::DimensionMismatch, "approximate_deh_chain: target dimension differs");
    }
    if (!(mu >= 0.0) || !(eps >= 0.0) || !std::isfinite(mu) || !std::isfinite(eps)) {
        fail(ErrorKind::InvalidArgument, "approximate_deh_chain: mu and eps must be finite and >= 0");
    }
    DehChainReport out;
    out.mu = mu;
    out.eps = eps;
    out.delta = std::sqrt(2.0 * std::numbers::ln2 * mu) + std::sqrt(2.0 * std::numbers::ln2 * eps);
    out.lambda_min = rho_a2.eigenvalues()(0);

    const DensityMatrix target_state = DensityMatrix::pure(target);
    const double measured = relative_entropy_bits(target_state, rho_a2);
    // The trace norm never exceeds 2, so the chain's delta is capped there.
    const double t = std::min(out.delta, 2.0);
    double bound = 0.0;
    if (t > 0.0) {
        bound = out.lambda_min > kKernelThreshold
                    ? audenaert_bound(t, rho_a2.dim(), std::min(out.lambda_min, 1.0))
                    : kInfinity;
    }
    out.bound = BoundReport::compare(measured, bound);
    return out;
}

DehChainReport approximate_deh_chain(const DensityMatrix& rho_a1, const DensityMatrix& rho_a2,
                                     const StateVector& target) {
    const double mu = relative_entropy_bits(DensityMatrix::pure(target), rho_a1);
    const double eps = relative_entropy_bits(rho_a1, rho_a2);
    if (!std::isfinite(mu) || !std::isfinite(eps)) {
        fail(ErrorKind::InvalidArgument,
             "approximate_deh_chain: infinite relative entropy between the harvester states");
    }
    return approximate_deh_chain(rho_a1, rho_a2, target, mu, eps);
}

}  // namespace dehsim
