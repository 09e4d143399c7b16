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

// Qubit-field Hamiltonians and their propagation over time grids.
//
// Qubit basis: |g> has index 0, |e> index 1. Joint states are qubit-major, so
// |g, n> sits at index n and |e, n> at index dim_field + n. hbar = 1 and all
// frequencies are in units of the coupling g unless configured otherwise.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dehsim/fock.hpp"
#include "dehsim/linalg.hpp"

namespace dehsim {

namespace qubit {
inline constexpr Index kGround = 0;
inline constexpr Index kExcited = 1;

/// |e><e| - |g><g|
ComplexMatrix sigma_z();
/// |e><g|
ComplexMatrix sigma_plus();
/// |g><e|
ComplexMatrix sigma_minus();
ComplexMatrix sigma_x();
StateVector ground();
StateVector excited();
}  // namespace qubit

enum class HamiltonianKind { JcRwa, RabiFull, Semiclassical };

const char* to_string(HamiltonianKind kind) noexcept;
HamiltonianKind hamiltonian_kind_from_string(const std::string& name);

/// Extra Fock levels appended for the counter-rotating (full Rabi) coupling,
/// which does not conserve excitation number.
inline constexpr Index kRabiGuardBand = 10;

struct HamiltonianSpec {
    HamiltonianKind kind = HamiltonianKind::JcRwa;
    double omega0 = 10.0;
    /// Field frequency. For the semiclassical kind this is the drive frequency.
    double omega_c = 10.0;
    double g = 1.0;
    /// Semiclassical only: H(t) = omega0/2 sigma_z + 2 A cos(omega_c t + phase) sigma_x.
    double drive_amplitude = 0.0;
    double phase = 0.0;
    Index n_max = 30;

    void validate() const;
    bool has_field() const { return kind != HamiltonianKind::Semiclassical; }
    /// The space source states live on.
    FockSpace field_space() const { return FockSpace(n_max); }
    /// The space the joint evolution runs on (field_space plus guard band for RabiFull).
    FockSpace simulation_space() const;
};

struct TimeGrid {
    double t_start = 0.0;
    double t_end = 25.0;
    Index samples = 1001;

    void validate() const;
    double spacing() const { return (t_end - t_start) / static_cast<double>(samples - 1); }
    double at(Index k) const;
    std::vector<double> times() const;
};

/// Reduced qubit trajectory plus named scalar channels. Field propagation
/// fills "fidelity" and "P_e" (both <e|rho_A|e>) and, when entropies are
/// requested, "S_A", "S_B", "S_AB" in nats.
struct TimeSeries {
    TimeGrid grid;
    std::vector<DensityMatrix> rho_a;
    std::map<std::string, std::vector<double>> scalars;

    bool has_channel(const std::string& name) const { return scalars.count(name) != 0; }
    const std::vector<double>& channel(const std::string& name) const;
};

/// Time-independent Hamiltonian for field kinds; the static part
/// (omega0/2) sigma_z for the semiclassical kind.
ComplexMatrix build_hamiltonian(const HamiltonianSpec& spec);

/// H(t) = static_part + 2 A cos(omega t + phase) drive_operator.
struct DrivenQubit {
    ComplexMatrix static_part;
    ComplexMatrix drive_operator;
    double amplitude = 0.0;
    double frequency = 0.0;
    double phase = 0.0;

    ComplexMatrix at(double t) const;
};

DrivenQubit build_driven_qubit(const HamiltonianSpec& spec);

struct PropagationOptions {
    bool entropies = true;
    /// Abort when the field's top-two-level population at the final sample exceeds 1e-6.
    bool check_truncation = true;
};

/// Joint state rho_A(0) (x) rho_B(0) held as a weighted set of pure vectors
/// expanded in the Hamiltonian eigenbasis, so each time costs O(d^2 r) with r
/// the joint rank.
class Trajectory {
public:
    DensityMatrix reduced_a(double t) const;
    DensityMatrix reduced_b(double t) const;
    DensityMatrix joint(double t) const;
    double excited_population(double t) const;

    Index field_dim() const { return field_dim_; }

    /// F(t) with columns sqrt(p_r) |psi_r(t)>, so rho_AB(t) = F F^dagger.
    ComplexMatrix factor(double t) const;

private:
    friend class BipartitePropagator;

    Trajectory(std::shared_ptr<const EigenSystem> eig, Index field_dim, ComplexMatrix coefficients);

    std::shared_ptr<const EigenSystem> eig_;
    Index field_dim_;
    ComplexMatrix coefficients_;
};

/// Reduced states of rho_AB = F F^dagger for a qubit-major factor F.
DensityMatrix reduce_factor_a(const ComplexMatrix& factor, Index field_dim);
DensityMatrix reduce_factor_b(const ComplexMatrix& factor, Index field_dim);
/// Spectrum-based entropy of F F^dagger via the smaller Gram matrix.
double factor_entropy(const ComplexMatrix& factor);
/// ||F1 F1^dagger - F2 F2^dagger||_2 without forming the joint matrices.
double factor_hs_distance(const ComplexMatrix& f1, const ComplexMatrix& f2);

/// Diagonalizes a constant field Hamiltonian once and evolves product states.
class BipartitePropagator {
public:
    explicit BipartitePropagator(const HamiltonianSpec& spec);

    const HamiltonianSpec& spec() const { return spec_; }
    const EigenSystem& eigensystem() const { return *eig_; }

    /// rho_b0 must live on spec().field_space().
    Trajectory prepare(const DensityMatrix& rho_a0, const DensityMatrix& rho_b0) const;

    TimeSeries propagate(const DensityMatrix& rho_a0, const DensityMatrix& rho_b0,
                         const TimeGrid& grid, PropagationOptions options = {}) const;

private:
    HamiltonianSpec spec_;
    std::shared_ptr<const EigenSystem> eig_;
};

TimeSeries propagate_bipartite(const DensityMatrix& rho_a0, const DensityMatrix& rho_b0,
                               const HamiltonianSpec& spec, const TimeGrid& grid,
                               PropagationOptions options = {});

/// Largest P_e change tolerated when the substep count is doubled.
inline constexpr double kSemiclassicalConvergence = 1e-8;

/// Time-ordered product of midpoint exponentials exp(-i H(t_mid) h) with
/// `substeps` steps per grid interval. The run is repeated with twice the
/// substeps and a Convergence error is raised if any P_e sample moves by more
/// than 1e-8. Channels: "P_e", "fidelity", "S_A".
TimeSeries propagate_semiclassical(const DensityMatrix& rho_a0, const HamiltonianSpec& spec,
                                   const TimeGrid& grid, Index substeps);

struct SemiclassicalComparison {
    double alpha_mag = 0.0;
    double max_deviation = 0.0;
    double max_deviation_time = 0.0;
    /// Gaussian-envelope collapse time sqrt(2)/g of the coherent-source JCM.
    double collapse_time_estimate = 0.0;
    std::vector<double> times;
    std::vector<double> jcm_population;
    std::vector<double> semiclassical_population;
};

/// Full JCM with a coherent source of amplitude alpha_mag against the
/// semiclassical prediction sin^2(g |alpha| t). Requires
/// n_max >= |alpha|^2 + 10 |alpha| and t_end <= quarter_periods * pi / (2 g |alpha|).
SemiclassicalComparison semiclassical_limit_compare(double alpha_mag, const HamiltonianSpec& spec_full,
                                                    const TimeGrid& grid, double quarter_periods = 2.0);

}  // namespace dehsim
