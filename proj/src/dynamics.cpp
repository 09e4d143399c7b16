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

#include "dehsim/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dehsim/error.hpp"
#include "dehsim/measures.hpp"

namespace dehsim {

namespace qubit {

ComplexMatrix sigma_z() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(kGround, kGround) = -1.0;
    m(kExcited, kExcited) = 1.0;
    return m;
}

ComplexMatrix sigma_plus() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(kExcited, kGround) = 1.0;
    return m;
}

ComplexMatrix sigma_minus() {
    return sigma_plus().adjoint();
}

ComplexMatrix sigma_x() {
    return sigma_plus() + sigma_minus();
}

StateVector ground() {
    return StateVector::basis(2, kGround);
}

StateVector excited() {
    return StateVector::basis(2, kExcited);
}

}  // namespace qubit

namespace {

// Product-state components below this weight are dropped from the joint
// expansion; their total trace contribution is at most d * 1e-15.
constexpr double kRankCutoff = 1e-15;

void require(bool ok, ErrorKind kind, const std::string& what) {
    if (!ok) {
        fail(kind, what);
    }
}

}  // namespace

const char* to_string(HamiltonianKind kind) noexcept {
    switch (kind) {
    case HamiltonianKind::JcRwa: return "jc_rwa";
    case HamiltonianKind::RabiFull: return "rabi_full";
    case HamiltonianKind::Semiclassical: return "semiclassical";
    }
    return "unknown";
}

HamiltonianKind hamiltonian_kind_from_string(const std::string& name) {
    if (name == "jc_rwa") return HamiltonianKind::JcRwa;
    if (name == "rabi_full") return HamiltonianKind::RabiFull;
    if (name == "semiclassical") return HamiltonianKind::Semiclassical;
    fail(ErrorKind::Validation, "unknown Hamiltonian kind '" + name + "'");
}

void HamiltonianSpec::validate() const {
    require(std::isfinite(omega0) && std::isfinite(omega_c) && std::isfinite(drive_amplitude) &&
                std::isfinite(phase),
            ErrorKind::Validation, "Hamiltonian parameters must be finite");
    require(g > 0.0 && std::isfinite(g), ErrorKind::Validation, "coupling g must be positive");
    if (has_field()) {
        require(n_max >= 1, ErrorKind::Validation, "field truncation n_max must be at least 1");
    }
}

FockSpace HamiltonianSpec::simulation_space() const {
    return FockSpace(kind == HamiltonianKind::RabiFull ? n_max + kRabiGuardBand : n_max);
}

void TimeGrid::validate() const {
    require(std::isfinite(t_start) && std::isfinite(t_end) && t_end > t_start,
            ErrorKind::Validation, "time grid requires finite t_end > t_start");
    require(samples >= 2, ErrorKind::Validation, "time grid requires at least 2 samples");
}

double TimeGrid::at(Index k) const {
    // Exact endpoints; no accumulated rounding.
    return t_start + (t_end - t_start) * static_cast<double>(k) / static_cast<double>(samples - 1);
}

std::vector<double> TimeGrid::times() const {
    std::vector<double> out(static_cast<std::size_t>(samples));
    for (Index k = 0; k < samples; ++k) {
        out[static_cast<std::size_t>(k)] = at(k);
    }
    return out;
}

const std::vector<double>& TimeSeries::channel(const std::string& name) const {
    auto it = scalars.find(name);
    if (it == scalars.end()) {
        fail(ErrorKind::InvalidArgument, "time series has no channel '" + name + "'");
    }
    return it->second;
}

ComplexMatrix build_hamiltonian(const HamiltonianSpec& spec) {
    spec.validate();
    if (!spec.has_field()) {
        return 0.5 * spec.omega0 * qubit::sigma_z();
    }
    const FockSpace space = spec.simulation_space();
    const Index df = space.dim();
    const ComplexMatrix id_a = ComplexMatrix::Identity(2, 2);
    const ComplexMatrix id_b = ComplexMatrix::Identity(df, df);
    const ComplexMatrix a = annihilation(space);
    const ComplexMatrix a_dag = a.adjoint();

    ComplexMatrix h = 0.5 * spec.omega0 * tensor(qubit::sigma_z(), id_b) +
                      spec.omega_c * tensor(id_a, number_operator(space));
    if (spec.kind == HamiltonianKind::JcRwa) {
        h += spec.g * (tensor(qubit::sigma_plus(), a) + tensor(qubit::sigma_minus(), a_dag));
    } else {
        h += spec.g * tensor(qubit::sigma_x(), a + a_dag);
    }
    return hermitian_part(h);
}

ComplexMatrix DrivenQubit::at(double t) const {
    return static_part + (2.0 * amplitude * std::cos(frequency * t + phase)) * drive_operator;
}

DrivenQubit build_driven_qubit(const HamiltonianSpec& spec) {
    spec.validate();
    require(spec.kind == HamiltonianKind::Semiclassical, ErrorKind::Validation,
            "driven qubit requires a semiclassical Hamiltonian");
    return DrivenQubit{build_hamiltonian(spec), qubit::sigma_x(), spec.drive_amplitude, spec.omega_c,
                       spec.phase};
}

Trajectory::Trajectory(std::shared_ptr<const EigenSystem> eig, Index field_dim,
                       ComplexMatrix coefficients)
    : eig_(std::move(eig)), field_dim_(field_dim), coefficients_(std::move(coefficients)) {}

ComplexMatrix Trajectory::factor(double t) const {
    const Index d = eig_->dim();
    ComplexVector phases(d);
    for (Index k = 0; k < d; ++k) {
        phases(k) = std::polar(1.0, -eig_->values(k) * t);
    }
    return eig_->vectors * (phases.asDiagonal() * coefficients_);
}

DensityMatrix Trajectory::reduced_a(double t) const {
    return reduce_factor_a(factor(t), field_dim_);
}

DensityMatrix Trajectory::reduced_b(double t) const {
    return reduce_factor_b(factor(t), field_dim_);
}

DensityMatrix Trajectory::joint(double t) const {
    const ComplexMatrix f = factor(t);
    return DensityMatrix::assume_valid(f * f.adjoint());
}

double Trajectory::excited_population(double t) const {
    return factor(t).middleRows(qubit::kExcited * field_dim_, field_dim_).squaredNorm();
}

DensityMatrix reduce_factor_a(const ComplexMatrix& f, Index field_dim) {
    ComplexMatrix rho(2, 2);
    for (Index i = 0; i < 2; ++i) {
        for (Index j = 0; j < 2; ++j) {
            rho(i, j) = (f.middleRows(i * field_dim, field_dim).array() *
                         f.middleRows(j * field_dim, field_dim).conjugate().array())
                            .sum();
        }
    }
    return DensityMatrix::assume_valid(rho);
}

DensityMatrix reduce_factor_b(const ComplexMatrix& f, Index field_dim) {
    ComplexMatrix rho = ComplexMatrix::Zero(field_dim, field_dim);
    for (Index i = 0; i < 2; ++i) {
        const auto block = f.middleRows(i * field_dim, field_dim);
        rho.noalias() += block * block.adjoint();
    }
    return DensityMatrix::assume_valid(rho);
}

double factor_entropy(const ComplexMatrix& f) {
    // The nonzero spectrum of F F^dagger equals that of the smaller F^dagger F.
    const ComplexMatrix gram = f.cols() <= f.rows() ? ComplexMatrix(f.adjoint() * f)
                                                    : ComplexMatrix(f * f.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(gram), Eigen::EigenvaluesOnly);
    return entropy_of_spectrum(solver.eigenvalues());
}

double factor_hs_distance(const ComplexMatrix& f1, const ComplexMatrix& f2) {
    const double sq = (f1.adjoint() * f1).squaredNorm() + (f2.adjoint() * f2).squaredNorm() -
                      2.0 * (f1.adjoint() * f2).squaredNorm();
    return std::sqrt(std::max(sq, 0.0));
}

BipartitePropagator::BipartitePropagator(const HamiltonianSpec& spec) : spec_(spec) {
    spec_.validate();
    require(spec_.has_field(), ErrorKind::Validation,
            "bipartite propagation requires a field Hamiltonian (jc_rwa or rabi_full)");
    eig_ = std::make_shared<const EigenSystem>(eig_hermitian(build_hamiltonian(spec_)));
}

Trajectory BipartitePropagator::prepare(const DensityMatrix& rho_a0,
                                        const DensityMatrix& rho_b0) const {
    const FockSpace field = spec_.field_space();
    if (rho_a0.dim() != 2 || rho_b0.dim() != field.dim()) {
        std::ostringstream os;
        os << "initial state dimensions (" << rho_a0.dim() << ", " << rho_b0.dim()
           << ") do not match qubit x Fock(" << field.n_max() << ")";
        fail(ErrorKind::DimensionMismatch, os.str());
    }
    const double leak = truncation_check(rho_b0, field);
    if (leak > kRunnerLeakageLimit) {
        std::ostringstream os;
        os << "source state holds " << leak << " in the top two Fock levels (limit "
           << kRunnerLeakageLimit << ")";
        throw TruncationError(os.str(), leak);
    }

    const Index db = spec_.simulation_space().dim();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig_a(rho_a0.matrix());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig_b(rho_b0.matrix());

    std::vector<ComplexVector> columns;
    for (Index i = 0; i < 2; ++i) {
        for (Index j = 0; j < field.dim(); ++j) {
            const double w = eig_a.eigenvalues()(i) * eig_b.eigenvalues()(j);
            if (w <= kRankCutoff) {
                continue;
            }
            ComplexVector b = ComplexVector::Zero(db);
            b.head(field.dim()) = eig_b.eigenvectors().col(j);
            ComplexVector v(2 * db);
            v.head(db) = eig_a.eigenvectors()(0, i) * b;
            v.tail(db) = eig_a.eigenvectors()(1, i) * b;
            columns.push_back(std::sqrt(w) * v);
        }
    }
    ComplexMatrix states(2 * db, static_cast<Index>(columns.size()));
    for (std::size_t r = 0; r < columns.size(); ++r) {
        states.col(static_cast<Index>(r)) = columns[r];
    }
    return Trajectory(eig_, db, eig_->vectors.adjoint() * states);
}

TimeSeries BipartitePropagator::propagate(const DensityMatrix& rho_a0, const DensityMatrix& rho_b0,
                                          const TimeGrid& grid, PropagationOptions options) const {
    grid.validate();
    const Trajectory traj = prepare(rho_a0, rho_b0);
    const Index db = traj.field_dim();
    const auto n = static_cast<std::size_t>(grid.samples);

    TimeSeries out;
    out.grid = grid;
    out.rho_a.reserve(n);
    std::vector<double> pe(n), s_a, s_b, s_ab;
    if (options.entropies) {
        s_a.resize(n);
        s_b.resize(n);
        s_ab.resize(n);
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double t = grid.at(static_cast<Index>(k));
        const ComplexMatrix f = traj.factor(t);
        out.rho_a.push_back(reduce_factor_a(f, db));
        pe[k] = out.rho_a.back()(qubit::kExcited, qubit::kExcited).real();
        if (options.entropies) {
            s_a[k] = von_neumann_entropy(out.rho_a.back());
            s_b[k] = von_neumann_entropy(reduce_factor_b(f, db));
            s_ab[k] = factor_entropy(f);
        }
    }
    if (options.check_truncation) {
        const FockSpace sim = spec_.simulation_space();
        const double leak = truncation_check(traj.reduced_b(grid.t_end), sim);
        if (leak > kRunnerLeakageLimit) {
            std::ostringstream os;
            os << "field population in the top two Fock levels reached " << leak << " at t = "
               << grid.t_end << "; increase n_max";
            throw TruncationError(os.str(), leak);
        }
    }
    out.scalars["P_e"] = pe;
    out.scalars["fidelity"] = std::move(pe);
    if (options.entropies) {
        out.scalars["S_A"] = std::move(s_a);
        out.scalars["S_B"] = std::move(s_b);
        out.scalars["S_AB"] = std::move(s_ab);
    }
    return out;
}

TimeSeries propagate_bipartite(const DensityMatrix& rho_a0, const DensityMatrix& rho_b0,
                               const HamiltonianSpec& spec, const TimeGrid& grid,
                               PropagationOptions options) {
    return BipartitePropagator(spec).propagate(rho_a0, rho_b0, grid, options);
}

namespace {

// exp(-i H h) for a 2x2 Hermitian H, via H = c I + K with K traceless.
ComplexMatrix qubit_step(const ComplexMatrix& h, double step) {
    const Complex c = 0.5 * (h(0, 0) + h(1, 1));
    ComplexMatrix k = h;
    k(0, 0) -= c;
    k(1, 1) -= c;
    const double omega = std::sqrt(std::norm(k(0, 0)) + std::norm(k(0, 1)));
    ComplexMatrix u = ComplexMatrix::Identity(2, 2) * std::cos(omega * step);
    if (omega > 0.0) {
        u -= Complex(0.0, std::sin(omega * step) / omega) * k;
    }
    return std::polar(1.0, -c.real() * step) * u;
}

std::vector<DensityMatrix> run_driven(const DensityMatrix& rho_a0, const DrivenQubit& drive,
                                      const TimeGrid& grid, Index substeps) {
    std::vector<DensityMatrix> out;
    out.reserve(static_cast<std::size_t>(grid.samples));
    ComplexMatrix u = ComplexMatrix::Identity(2, 2);
    out.push_back(rho_a0);
    for (Index k = 1; k < grid.samples; ++k) {
        const double t0 = grid.at(k - 1);
        const double h = (grid.at(k) - t0) / static_cast<double>(substeps);
        for (Index s = 0; s < substeps; ++s) {
            const double t_mid = t0 + (static_cast<double>(s) + 0.5) * h;
            u = qubit_step(drive.at(t_mid), h) * u;
        }
        out.push_back(DensityMatrix::assume_valid(u * rho_a0.matrix() * u.adjoint()));
    }
    return out;
}

}  // namespace

TimeSeries propagate_semiclassical(const DensityMatrix& rho_a0, const HamiltonianSpec& spec,
                                   const TimeGrid& grid, Index substeps) {
    grid.validate();
    require(substeps >= 1, ErrorKind::Validation, "substeps must be at least 1");
    require(rho_a0.dim() == 2, ErrorKind::DimensionMismatch, "semiclassical propagation needs a qubit state");
    const DrivenQubit drive = build_driven_qubit(spec);

    TimeSeries out;
    out.grid = grid;
    out.rho_a = run_driven(rho_a0, drive, grid, substeps);
    const std::vector<DensityMatrix> refined = run_driven(rho_a0, drive, grid, 2 * substeps);

    const auto n = out.rho_a.size();
    std::vector<double> pe(n), s_a(n);
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        pe[k] = out.rho_a[k](qubit::kExcited, qubit::kExcited).real();
        const double fine = refined[k](qubit::kExcited, qubit::kExcited).real();
        worst = std::max(worst, std::abs(pe[k] - fine));
        s_a[k] = von_neumann_entropy(out.rho_a[k]);
    }
    if (worst > kSemiclassicalConvergence) {
        std::ostringstream os;
        os << "semiclassical propagation not converged at " << substeps
           << " substeps: doubling moves P_e by " << worst;
        fail(ErrorKind::Convergence, os.str());
    }
    out.scalars["P_e"] = pe;
    out.scalars["fidelity"] = std::move(pe);
    out.scalars["S_A"] = std::move(s_a);
    return out;
}

SemiclassicalComparison semiclassical_limit_compare(double alpha_mag, const HamiltonianSpec& spec_full,
                                                    const TimeGrid& grid, double quarter_periods) {
    require(alpha_mag > 0.0 && std::isfinite(alpha_mag), ErrorKind::InvalidArgument,
            "semiclassical comparison requires |alpha| > 0");
    require(spec_full.kind == HamiltonianKind::JcRwa, ErrorKind::Validation,
            "semiclassical comparison runs the jc_rwa model");
    spec_full.validate();
    grid.validate();
    const double mean = alpha_mag * alpha_mag;
    const FockSpace field = spec_full.field_space();
    if (static_cast<double>(field.n_max()) < mean + 10.0 * alpha_mag) {
        std::ostringstream os;
        os << "n_max = " << field.n_max() << " is below |alpha|^2 + 10|alpha| = "
           << mean + 10.0 * alpha_mag;
        throw TruncationError(os.str(), coherent_leakage(Complex(alpha_mag, 0.0), field));
    }
    const double rabi = spec_full.g * alpha_mag;
    const double t_limit = quarter_periods * std::numbers::pi / (2.0 * rabi);
    if (grid.t_end > t_limit * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "comparison window ends at " << grid.t_end << ", beyond " << quarter_periods
           << " quarter Rabi periods (" << t_limit << ")";
        fail(ErrorKind::Validation, os.str());
    }

    const BipartitePropagator propagator(spec_full);
    const DensityMatrix source =
        DensityMatrix::pure(coherent_state(Complex(alpha_mag, 0.0), field));
    const Trajectory traj = propagator.prepare(DensityMatrix::pure(qubit::ground()), source);

    SemiclassicalComparison out;
    out.alpha_mag = alpha_mag;
    out.collapse_time_estimate = std::sqrt(2.0) / spec_full.g;
    out.times = grid.times();
    for (double t : out.times) {
        const double jcm = traj.excited_population(t);
        const double s = std::sin(rabi * t);
        out.jcm_population.push_back(jcm);
        out.semiclassical_population.push_back(s * s);
        const double dev = std::abs(jcm - s * s);
        if (dev > out.max_deviation) {
            out.max_deviation = dev;
            out.max_deviation_time = t;
        }
    }
    const double leak = truncation_check(traj.reduced_b(grid.t_end), spec_full.simulation_space());
    if (leak > kRunnerLeakageLimit) {
        throw TruncationError("field population reached the top of the Fock ladder", leak);
    }
    return out;
}

}  // namespace dehsim
