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

// Distinguishability and entropy functionals, plus checkers for the
// Pinsker / Audenaert bound chain used by the approximate-harvesting analysis.
//
// Entropies and relative entropies are in nats unless a name says `_bits`.

#include "dehsim/linalg.hpp"

namespace dehsim {

/// Eigenvalues of sigma at or below this are treated as its kernel.
inline constexpr double kKernelThreshold = 1e-12;
/// Weight of rho above this on sigma's kernel makes S(rho||sigma) infinite.
inline constexpr double kSupportThreshold = 1e-10;
inline constexpr double kDefaultSmoothing = 1e-9;
inline constexpr double kBoundSlack = 1e-9;

struct BoundReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = true;
    /// rhs - lhs
    double slack = 0.0;

    static BoundReport compare(double lhs, double rhs);
};

/// <psi|rho|psi>
double fidelity_to_pure(const DensityMatrix& rho, const StateVector& psi);

/// -sum lambda ln lambda over eigenvalues clamped to [0, 1].
double entropy_of_spectrum(const RealVector& eigenvalues);
double von_neumann_entropy(const DensityMatrix& rho);

/// Tr rho (ln rho - ln sigma), evaluated in sigma's eigenbasis. Returns
/// +infinity when rho puts more than 1e-10 of weight on an eigenvector of
/// sigma whose eigenvalue is at most 1e-12.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
double relative_entropy_bits(const DensityMatrix& rho, const DensityMatrix& sigma);

/// ||rho - sigma||_1, the unhalved trace norm used in the bound chain.
double trace_norm_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
/// (1/2) ||rho - sigma||_1, in [0, 1].
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
/// sqrt(Tr (rho - sigma)^2)
double hs_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double hs_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// (1 - eta) rho + eta I / d, full rank for eta > 0.
DensityMatrix smooth(const DensityMatrix& rho, double eta = kDefaultSmoothing);

/// lhs = (1/2) ||rho - sigma||_1^2, rhs = S(rho||sigma) in nats
/// (= ln 2 * S_bits). An infinite relative entropy holds trivially.
BoundReport pinsker_check(const DensityMatrix& rho, const DensityMatrix& sigma);

/// T log2 d + min(-T log2 T, 1/e) - T log2(lambda_min) / 2, in bits, with
/// T = ||rho - sigma||_1 in [0, 2] and -T log2 T := 0 at T = 0.
double audenaert_bound(double t_norm, Index dim, double lambda_min);

struct DehChainReport {
    double mu = 0.0;
    double eps = 0.0;
    /// sqrt(2 ln2 mu) + sqrt(2 ln2 eps)
    double delta = 0.0;
    double lambda_min = 0.0;
    /// lhs = S_bits(target || rho_a2), rhs = Audenaert bound at T = min(delta, 2).
    BoundReport bound;
};

/// Pinsker on both legs, triangle inequality, then the Audenaert bound on
/// S(target || rho_a2). `mu` and `eps` are in bits: mu = S(target || rho_a1)
/// and eps bounds S(rho_a1 || rho_a2). A rank-deficient rho_a2 gives an
/// infinite right-hand side once delta > 0.
DehChainReport approximate_deh_chain(const DensityMatrix& rho_a1, const DensityMatrix& rho_a2,
                                     const StateVector& target, double mu, double eps);
/// Same chain with mu = S_bits(target || rho_a1) and eps = S_bits(rho_a1 || rho_a2).
DehChainReport approximate_deh_chain(const DensityMatrix& rho_a1, const DensityMatrix& rho_a2,
                                     const StateVector& target);

}  // namespace dehsim
