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

#include "dehsim/deh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dehsim/error.hpp"
#include "dehsim/measures.hpp"
#include "parallel.hpp"

namespace dehsim {

namespace {

const DensityMatrix& harvester_start() {
    static const DensityMatrix ground = DensityMatrix::pure(qubit::ground());
    return ground;
}

std::vector<Trajectory> member_trajectories(const BipartitePropagator& propagator,
                                            const SourceEnsemble& ensemble) {
    std::vector<Trajectory> out;
    out.reserve(ensemble.size());
    for (const auto& member : ensemble.members()) {
        out.push_back(propagator.prepare(harvester_start(), member.state));
    }
    return out;
}

void check_truncation_at(const Trajectory& traj, const HamiltonianSpec& spec, double t) {
    const double leak = truncation_check(traj.reduced_b(t), spec.simulation_space());
    if (leak > kRunnerLeakageLimit) {
        std::ostringstream os;
        os << "field population in the top two Fock levels reached " << leak << " at t = " << t
           << "; increase n_max";
        throw TruncationError(os.str(), leak);
    }
}

DehReport summarize(const SourceEnsemble& ensemble, std::vector<double> fidelities, double tau,
                    double tolerance) {
    DehReport r;
    r.tau = tau;
    r.tolerance = tolerance;
    for (const auto& m : ensemble.members()) {
        r.weights.push_back(m.weight);
    }
    r.per_member_fidelity = std::move(fidelities);
    r.min_fidelity = *std::min_element(r.per_member_fidelity.begin(), r.per_member_fidelity.end());
    for (std::size_t i = 0; i < r.weights.size(); ++i) {
        r.mixture_fidelity += r.weights[i] * r.per_member_fidelity[i];
    }
    r.achieved = r.min_fidelity >= 1.0 - tolerance;
    return r;
}

// Objective values this close count as equal when picking the earliest maximizer.
constexpr double kTauTieTolerance = 1e-12;

void check_tolerance(double tolerance) {
    if (!(tolerance >= 0.0 && tolerance < 1.0)) {
        fail(ErrorKind::Validation, "DEH tolerance must lie in [0, 1)");
    }
}

}  // namespace

DehReport verify_deh(const SourceEnsemble& ensemble, const HamiltonianSpec& spec, double tau,
                     double tolerance) {
    check_tolerance(tolerance);
    if (!std::isfinite(tau)) {
        fail(ErrorKind::Validation, "tau must be finite");
    }
    const BipartitePropagator propagator(spec);
    const auto trajectories = member_trajectories(propagator, ensemble);
    std::vector<double> fidelity(trajectories.size());
    detail::parallel_for(trajectories.size(), [&](std::size_t i) {
        check_truncation_at(trajectories[i], spec, tau);
        fidelity[i] = trajectories[i].excited_population(tau);
    });
    return summarize(ensemble, std::move(fidelity), tau, tolerance);
}

OptimalTau find_optimal_tau(const SourceEnsemble& ensemble, const HamiltonianSpec& spec,
                            const TimeGrid& window) {
    window.validate();
    const BipartitePropagator propagator(spec);
    const auto trajectories = member_trajectories(propagator, ensemble);
    auto objective = [&](double t) {
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& traj : trajectories) {
            worst = std::min(worst, traj.excited_population(t));
        }
        return worst;
    };

    std::vector<double> scan(static_cast<std::size_t>(window.samples));
    detail::parallel_for(scan.size(), [&](std::size_t k) {
        scan[k] = objective(window.at(static_cast<Index>(k)));
    });
    // Every local maximum of the scan is refined, since grid sampling can
    // rank a later peak of equal height above the earliest one.
    const double target = 1e-6 / spec.g;
    auto refine = [&](Index k) {
        double lo = window.at(std::max<Index>(k - 1, 0));
        double hi = window.at(std::min<Index>(k + 1, window.samples - 1));
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = hi - inv_phi * (hi - lo);
        double x2 = lo + inv_phi * (hi - lo);
        double f1 = objective(x1);
        double f2 = objective(x2);
        while (hi - lo > target) {
            if (f1 >= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = objective(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = objective(x2);
            }
        }
        const double t = 0.5 * (lo + hi);
        OptimalTau refined{t, objective(t)};
        const OptimalTau sampled{window.at(k), scan[static_cast<std::size_t>(k)]};
        return refined.min_fidelity > sampled.min_fidelity ? refined : sampled;
    };

    const auto last = static_cast<std::size_t>(window.samples - 1);
    std::vector<Index> peaks;
    for (std::size_t k = 0; k <= last; ++k) {
        const bool left = k == 0 || scan[k] >= scan[k - 1];
        const bool right = k == last || scan[k] >= scan[k + 1];
        if (left && right) {
            peaks.push_back(static_cast<Index>(k));
        }
    }
    std::vector<OptimalTau> candidates(peaks.size());
    detail::parallel_for(peaks.size(), [&](std::size_t i) { candidates[i] = refine(peaks[i]); });

    double best = -std::numeric_limits<double>::infinity();
    for (const auto& c : candidates) {
        best = std::max(best, c.min_fidelity);
    }
    OptimalTau out = candidates.front();
    for (const auto& c : candidates) {
        if (c.min_fidelity >= best - kTauTieTolerance) {
            out = c;
            break;
        }
    }
    check_truncation_at(trajectories.front(), spec, out.tau);
    return out;
}

namespace {

// Weighted average of the members' reduced qubit states at every sample.
std::vector<ComplexMatrix> averaged_trajectory(const BipartitePropagator& propagator,
                                               const SourceEnsemble& ensemble,
                                               const TimeGrid& grid) {
    const auto trajectories = member_trajectories(propagator, ensemble);
    const auto n = static_cast<std::size_t>(grid.samples);
    std::vector<ComplexMatrix> out(n);
    detail::parallel_for(n, [&](std::size_t k) {
        const double t = grid.at(static_cast<Index>(k));
        ComplexMatrix acc = ComplexMatrix::Zero(2, 2);
        for (std::size_t i = 0; i < trajectories.size(); ++i) {
            acc += ensemble.members()[i].weight * trajectories[i].reduced_a(t).matrix();
        }
        out[k] = acc;
    });
    for (const auto& traj : trajectories) {
        check_truncation_at(traj, propagator.spec(), grid.t_end);
    }
    return out;
}

}  // namespace

InvarianceReport decomposition_invariance_check(const SourceEnsemble& a, const SourceEnsemble& b,
                                                const HamiltonianSpec& spec, const TimeGrid& grid) {
    grid.validate();
    InvarianceReport r;
    if (a.dim() != b.dim()) {
        fail(ErrorKind::DimensionMismatch, "ensembles live on different Fock spaces");
    }
    r.decomposition_distance = hs_distance(mix(a), mix(b));
    if (r.decomposition_distance > kDecompositionTolerance) {
        return r;
    }
    const BipartitePropagator propagator(spec);
    const auto ra = averaged_trajectory(propagator, a, grid);
    const auto rb = averaged_trajectory(propagator, b, grid);
    for (std::size_t k = 0; k < ra.size(); ++k) {
        r.max_trajectory_deviation = std::max(r.max_trajectory_deviation, hs_distance(ra[k], rb[k]));
    }
    r.propagated = true;
    r.passed = r.max_trajectory_deviation <= kTrajectoryTolerance;
    return r;
}

std::vector<DehReport> convex_closure_check(const SourceEnsemble& members,
                                            std::span<const std::vector<double>> weight_vectors,
                                            const HamiltonianSpec& spec, double tau,
                                            double tolerance) {
    check_tolerance(tolerance);
    const BipartitePropagator propagator(spec);
    const auto trajectories = member_trajectories(propagator, members);
    std::vector<double> fidelity(trajectories.size());
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
        check_truncation_at(trajectories[i], spec, tau);
        fidelity[i] = trajectories[i].excited_population(tau);
    }

    std::vector<DehReport> reports;
    for (const auto& weights : weight_vectors) {
        if (weights.size() != members.size()) {
            fail(ErrorKind::Validation, "weight vector length differs from the member count");
        }
        std::vector<SourceEnsemble::Member> active;
        std::vector<double> active_fidelity;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (weights[i] > 0.0) {
                active.push_back({weights[i], members.members()[i].state});
                active_fidelity.push_back(fidelity[i]);
            }
        }
        // Validates the weights.
        const SourceEnsemble mixture_ensemble(std::move(active), members.label());
        DehReport r = summarize(mixture_ensemble, std::move(active_fidelity), tau, tolerance);

        const Trajectory mixed = propagator.prepare(harvester_start(), mix(mixture_ensemble));
        const double direct = mixed.excited_population(tau);
        if (std::abs(direct - r.mixture_fidelity) > kAffinityTolerance) {
            std::ostringstream os;
            os << "mixture fidelity " << direct << " differs from the weighted member average "
               << r.mixture_fidelity;
            fail(ErrorKind::InvariantViolation, os.str());
        }
        reports.push_back(std::move(r));
    }
    return reports;
}

SuperpositionReport superposition_closure_check(std::span<const StateVector> states,
                                                std::span<const Complex> amplitudes,
                                                const HamiltonianSpec& spec, double tau,
                                                double tolerance) {
    const SourceEnsemble sup = superposition_ensemble(states, amplitudes);
    std::vector<SourceEnsemble::Member> base_members;
    for (std::size_t k = 0; k < states.size(); ++k) {
        const double w = std::norm(amplitudes[k]);
        if (w > 0.0) {
            base_members.push_back({w, DensityMatrix::pure(states[k])});
        }
    }
    const SourceEnsemble base(std::move(base_members), "base");

    SuperpositionReport r;
    r.reconstruction_error = max_abs(mix(sup).matrix() - mix(base).matrix());
    if (r.reconstruction_error > kReconstructionTolerance) {
        std::ostringstream os;
        os << "superposition ensemble misses the base mixture by " << r.reconstruction_error;
        fail(ErrorKind::InvariantViolation, os.str());
    }
    r.superpositions = verify_deh(sup, spec, tau, tolerance);
    r.base = verify_deh(base, spec, tau, tolerance);
    if (std::abs(r.superpositions.mixture_fidelity - r.base.mixture_fidelity) > kAffinityTolerance) {
        fail(ErrorKind::InvariantViolation,
             "superposition and base ensembles give different mixture fidelities");
    }
    if (r.base.achieved) {
        r.exactness_checked = true;
        for (std::size_t i = 0; i < r.superpositions.weights.size(); ++i) {
            const double floor = 1.0 - tolerance / r.superpositions.weights[i] - kAffinityTolerance;
            if (r.superpositions.per_member_fidelity[i] < floor) {
                std::ostringstream os;
                os << "superposition member " << i << " has fidelity "
                   << r.superpositions.per_member_fidelity[i] << " below " << floor;
                fail(ErrorKind::InvariantViolation, os.str());
            }
        }
    }
    return r;
}

std::vector<RobustnessEntry> robustness_sweep(const DensityMatrix& base,
                                              std::span<const DensityMatrix> perturbations,
                                              const HamiltonianSpec& spec, const TimeGrid& grid,
                                              const WignerConfig& wigner_config, double eta) {
    grid.validate();
    wigner_config.validate();
    const BipartitePropagator propagator(spec);
    const DensityMatrix b1 = smooth(base, eta);
    const Trajectory t1 = propagator.prepare(harvester_start(), b1);
    check_truncation_at(t1, spec, grid.t_end);
    const WignerGrid w_b1 = wigner(b1, wigner_config);
    const WignerGrid w_a1 = wigner(qubit_as_field(t1.reduced_a(grid.t_end)), wigner_config);
    const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

    std::vector<RobustnessEntry> out(perturbations.size());
    for (std::size_t i = 0; i < perturbations.size(); ++i) {
        const DensityMatrix b2 = smooth(perturbations[i], eta);
        const Trajectory t2 = propagator.prepare(harvester_start(), b2);
        check_truncation_at(t2, spec, grid.t_end);

        RobustnessEntry& e = out[i];
        e.hs_in = hs_distance(b1, b2);
        e.rel_entropy_in = relative_entropy(b1, b2);

        const auto n = static_cast<std::size_t>(grid.samples);
        std::vector<double> hs_out(n), rel_out(n), joint_hs(n);
        detail::parallel_for(n, [&](std::size_t k) {
            const double t = grid.at(static_cast<Index>(k));
            const ComplexMatrix f1 = t1.factor(t);
            const ComplexMatrix f2 = t2.factor(t);
            const DensityMatrix a1 = reduce_factor_a(f1, t1.field_dim());
            const DensityMatrix a2 = reduce_factor_a(f2, t2.field_dim());
            hs_out[k] = hs_distance(a1, a2);
            rel_out[k] = relative_entropy(a1, a2);
            joint_hs[k] = factor_hs_distance(f1, f2);
        });
        for (std::size_t k = 0; k < n; ++k) {
            e.hs_out_max = std::max(e.hs_out_max, hs_out[k]);
            e.rel_entropy_out_max = std::max(e.rel_entropy_out_max, rel_out[k]);
            e.joint_hs_drift = std::max(e.joint_hs_drift, std::abs(joint_hs[k] - joint_hs[0]));
        }
        if (e.rel_entropy_out_max > e.rel_entropy_in + kBoundSlack) {
            std::ostringstream os;
            os << "relative entropy grew from " << e.rel_entropy_in << " to "
               << e.rel_entropy_out_max << " for perturbation " << i;
            fail(ErrorKind::InvariantViolation, os.str());
        }

        const WignerGrid w_b2 = wigner(b2, wigner_config);
        const WignerGrid w_a2 = wigner(qubit_as_field(t2.reduced_a(grid.t_end)), wigner_config);
        e.wigner_lhs = wigner_l2_distance(w_a1, w_a2);
        e.wigner_rhs = inv_sqrt_2pi * wigner_l2_distance(w_b1, w_b2);
        e.wigner_holds = e.wigner_lhs <= e.wigner_rhs;
    }
    return out;
}

EntropyCycle entropy_cycle(const DensityMatrix& rho_b, const HamiltonianSpec& spec,
                           const TimeGrid& grid) {
    EntropyCycle out;
    out.series = propagate_bipartite(harvester_start(), rho_b, spec, grid);
    const auto& s_ab = out.series.channel("S_AB");
    const auto& s_a = out.series.channel("S_A");
    for (double s : s_ab) {
        out.s_ab_drift = std::max(out.s_ab_drift, std::abs(s - s_ab.front()));
    }
    if (out.s_ab_drift > kEntropyDriftTolerance) {
        std::ostringstream os;
        os << "joint entropy drifted by " << out.s_ab_drift;
        fail(ErrorKind::InvariantViolation, os.str());
    }
    out.min_s_a = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < s_a.size(); ++k) {
        if (s_a[k] < out.min_s_a) {
            out.min_s_a = s_a[k];
            out.min_s_a_time = out.series.grid.at(static_cast<Index>(k));
        }
    }
    return out;
}

}  // namespace dehsim
