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

// Harvesting protocol checks: the qubit starts in |g>, each source member is
// evolved jointly with it, and success is the excited-state fidelity at tau.

#include <span>
#include <vector>

#include "dehsim/dynamics.hpp"
#include "dehsim/fock.hpp"
#include "dehsim/phase_space.hpp"

namespace dehsim {

inline constexpr double kDefaultDehTolerance = 1e-3;
/// Tolerance on the affinity identity F(sum p_i rho_i) = sum p_i F(rho_i).
inline constexpr double kAffinityTolerance = 1e-10;
inline constexpr double kDecompositionTolerance = 1e-10;
inline constexpr double kTrajectoryTolerance = 1e-9;
inline constexpr double kEntropyDriftTolerance = 1e-8;
inline constexpr double kReconstructionTolerance = 1e-12;

struct DehReport {
    double tau = 0.0;
    double tolerance = kDefaultDehTolerance;
    std::vector<double> weights;
    std::vector<double> per_member_fidelity;
    double min_fidelity = 0.0;
    /// sum_i w_i F_i
    double mixture_fidelity = 0.0;
    /// min_fidelity >= 1 - tolerance
    bool achieved = false;
};

/// Excited-state fidelity at tau for every member, starting from |g>.
DehReport verify_deh(const SourceEnsemble& ensemble, const HamiltonianSpec& spec, double tau,
                     double tolerance = kDefaultDehTolerance);

struct OptimalTau {
    double tau = 0.0;
    double min_fidelity = 0.0;
};

/// Maximizes t -> min_i F_i(t) over the window: grid scan, then golden-section
/// refinement around the best sample down to 1e-6 / g. Ties go to the
/// earliest time (within 1e-12 in the objective) and a refinement is kept
/// only if it improves on its grid sample.
OptimalTau find_optimal_tau(const SourceEnsemble& ensemble, const HamiltonianSpec& spec,
                            const TimeGrid& window);

struct InvarianceReport {
    double max_trajectory_deviation = 0.0;
    double decomposition_distance = 0.0;
    bool propagated = false;
    bool passed = false;
};

/// Compares the reduced qubit trajectories of two ensembles meant to realize
/// the same field state. Each side is the weighted average of its members'
/// trajectories. Nothing is propagated when the mixtures differ by more than
/// 1e-10 in Hilbert-Schmidt distance.
InvarianceReport decomposition_invariance_check(const SourceEnsemble& a, const SourceEnsemble& b,
                                                const HamiltonianSpec& spec, const TimeGrid& grid);

/// One report per weight vector; members with zero weight are left out of
/// the report. Raises InvariantViolation if the propagated mixture's fidelity
/// differs from sum_i w_i F_i by more than 1e-10.
std::vector<DehReport> convex_closure_check(const SourceEnsemble& members,
                                            std::span<const std::vector<double>> weight_vectors,
                                            const HamiltonianSpec& spec, double tau,
                                            double tolerance = kDefaultDehTolerance);

struct SuperpositionReport {
    /// Over the sign-pattern superpositions.
    DehReport superpositions;
    /// Over the input states with weights |a_k|^2.
    DehReport base;
    /// max entrywise |mix(superpositions) - sum |a_k|^2 |phi_k><phi_k||
    double reconstruction_error = 0.0;
    /// True when the base mixture achieved and the per-superposition bound
    /// F_r >= 1 - tolerance / p_r was checked.
    bool exactness_checked = false;
};

/// Raises InvariantViolation on a reconstruction error above 1e-12, on an
/// affinity mismatch above 1e-10, or (when the base achieves) on a
/// superposition fidelity below 1 - tolerance / p_r - 1e-10.
SuperpositionReport superposition_closure_check(std::span<const StateVector> states,
                                                std::span<const Complex> amplitudes,
                                                const HamiltonianSpec& spec, double tau,
                                                double tolerance = kDefaultDehTolerance);

struct RobustnessEntry {
    double hs_in = 0.0;
    double hs_out_max = 0.0;
    /// ||W_A1 - W_A2||_2 at the final time (qubit read on Fock {0, 1}).
    double wigner_lhs = 0.0;
    /// ||W_B1 - W_B2||_2 / sqrt(2 pi)
    double wigner_rhs = 0.0;
    bool wigner_holds = true;
    /// Nats.
    double rel_entropy_in = 0.0;
    double rel_entropy_out_max = 0.0;
    /// max_t |hs(rho_AB1(t), rho_AB2(t)) - hs(rho_AB1(0), rho_AB2(0))|
    double joint_hs_drift = 0.0;
};

/// Both sources are smoothed with `eta` and the smoothed states are used for
/// every quantity. Raises InvariantViolation if rel_entropy_out_max exceeds
/// rel_entropy_in + 1e-9. The Wigner inequality is recorded only.
std::vector<RobustnessEntry> robustness_sweep(const DensityMatrix& base,
                                              std::span<const DensityMatrix> perturbations,
                                              const HamiltonianSpec& spec, const TimeGrid& grid,
                                              const WignerConfig& wigner_config = {},
                                              double eta = kDefaultSmoothing);

struct EntropyCycle {
    TimeSeries series;
    /// max_t |S_AB(t) - S_AB(0)|
    double s_ab_drift = 0.0;
    /// min over t > 0 of S_A(t) and where it occurs.
    double min_s_a = 0.0;
    double min_s_a_time = 0.0;
};

/// Raises InvariantViolation if S_AB drifts by more than 1e-8.
EntropyCycle entropy_cycle(const DensityMatrix& rho_b, const HamiltonianSpec& spec,
                           const TimeGrid& grid);

}  // namespace dehsim
