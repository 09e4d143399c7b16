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

#include "dehsim/fock.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "dehsim/error.hpp"

namespace dehsim {

FockSpace::FockSpace(Index n_max) : n_max_(n_max) {
    if (n_max < 0) {
        fail(ErrorKind::InvalidArgument, "Fock space truncation n_max must be non-negative");
    }
}

ComplexMatrix annihilation(FockSpace space) {
    ComplexMatrix a = ComplexMatrix::Zero(space.dim(), space.dim());
    for (Index n = 1; n < space.dim(); ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

ComplexMatrix creation(FockSpace space) {
    return annihilation(space).adjoint();
}

ComplexMatrix number_operator(FockSpace space) {
    ComplexMatrix n = ComplexMatrix::Zero(space.dim(), space.dim());
    for (Index k = 0; k < space.dim(); ++k) {
        n(k, k) = static_cast<double>(k);
    }
    return n;
}

StateVector fock_state(Index n, FockSpace space) {
    if (n < 0 || n > space.n_max()) {
        std::ostringstream os;
        os << "Fock level " << n << " outside truncated space with n_max = " << space.n_max();
        fail(ErrorKind::InvalidArgument, os.str());
    }
    return StateVector::basis(space.dim(), n);
}

double coherent_leakage(Complex alpha, FockSpace space) {
    const double mean = std::norm(alpha);
    if (mean == 0.0) {
        return 0.0;
    }
    // Sum the Poisson tail directly rather than 1 - head, which loses
    // everything below machine epsilon.
    const double log_mean = std::log(mean);
    double tail = 0.0;
    for (Index n = space.n_max() + 1;; ++n) {
        const double dn = static_cast<double>(n);
        const double term = std::exp(-mean + dn * log_mean - std::lgamma(dn + 1.0));
        tail += term;
        if (dn > mean && term <= 1e-18 * tail) {
            break;
        }
        if (term == 0.0 && dn > mean) {
            break;
        }
    }
    return std::min(tail, 1.0);
}

namespace {

ComplexVector coherent_amplitudes(Complex alpha, FockSpace space) {
    ComplexVector c(space.dim());
    c(0) = std::exp(-0.5 * std::norm(alpha));
    for (Index n = 1; n < space.dim(); ++n) {
        c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    }
    return c;
}

void require_coherent_support(Complex alpha, FockSpace space) {
    const double leak = coherent_leakage(alpha, space);
    if (leak > kConstructorLeakageLimit) {
        std::ostringstream os;
        os << "coherent amplitude |alpha| = " << std::abs(alpha) << " leaks " << leak
           << " of its weight above n_max = " << space.n_max();
        throw TruncationError(os.str(), leak);
    }
}

}  // namespace

StateVector coherent_state(Complex alpha, FockSpace space) {
    require_coherent_support(alpha, space);
    return StateVector::normalized(coherent_amplitudes(alpha, space));
}

double cat_normalization(Complex alpha, Parity parity) {
    const double overlap = std::exp(-2.0 * std::norm(alpha));
    const double sign = parity == Parity::Even ? 1.0 : -1.0;
    return 1.0 / std::sqrt(2.0 * (1.0 + sign * overlap));
}

double cat_mixture_weight(Complex alpha, Parity parity) {
    const double overlap = std::exp(-2.0 * std::norm(alpha));
    return parity == Parity::Even ? 0.5 * (1.0 + overlap) : 0.5 * (1.0 - overlap);
}

StateVector cat_state(Complex alpha, Parity parity, FockSpace space) {
    if (parity == Parity::Odd && alpha == Complex(0.0)) {
        fail(ErrorKind::DegenerateState, "odd cat state at alpha = 0 is the zero vector");
    }
    require_coherent_support(alpha, space);
    // c_n(-alpha) = (-1)^n c_n(alpha): the sum keeps one parity sector, doubled.
    ComplexVector c = coherent_amplitudes(alpha, space);
    const Index keep = parity == Parity::Even ? 0 : 1;
    for (Index n = 0; n < c.size(); ++n) {
        c(n) = (n % 2 == keep) ? 2.0 * c(n) : Complex(0.0);
    }
    return StateVector::normalized(std::move(c));
}

double thermal_occupation(double beta_omega) {
    if (!(beta_omega > 0.0)) {
        fail(ErrorKind::InvalidArgument, "beta * omega must be positive");
    }
    return 1.0 / std::expm1(beta_omega);
}

DensityMatrix thermal_state(double n_bar, FockSpace space) {
    if (!(n_bar >= 0.0) || !std::isfinite(n_bar)) {
        fail(ErrorKind::InvalidArgument, "thermal occupation must be finite and non-negative");
    }
    const double ratio = n_bar / (1.0 + n_bar);
    const double leak = std::pow(ratio, static_cast<double>(space.n_max() + 1));
    if (leak > kConstructorLeakageLimit) {
        std::ostringstream os;
        os << "thermal state with n_bar = " << n_bar << " leaks " << leak
           << " above n_max = " << space.n_max();
        throw TruncationError(os.str(), leak);
    }
    RealVector p(space.dim());
    p(0) = 1.0 / (1.0 + n_bar);
    for (Index n = 1; n < space.dim(); ++n) {
        p(n) = p(n - 1) * ratio;
    }
    p /= p.sum();
    return DensityMatrix::assume_valid(p.cast<Complex>().asDiagonal().toDenseMatrix());
}

double truncation_check(const DensityMatrix& state, FockSpace space) {
    const Index lower = std::max<Index>(0, space.n_max() - 1);
    double leak = 0.0;
    for (Index n = lower; n < state.dim(); ++n) {
        leak += state(n, n).real();
    }
    return std::max(leak, 0.0);
}

SourceEnsemble::SourceEnsemble(std::vector<Member> members, std::string label)
    : members_(std::move(members)), label_(std::move(label)) {
    if (members_.empty()) {
        fail(ErrorKind::Validation, "source ensemble must have at least one member");
    }
    double total = 0.0;
    for (const auto& m : members_) {
        if (!(m.weight >= 0.0) || !std::isfinite(m.weight)) {
            fail(ErrorKind::Validation, "source ensemble weights must be finite and non-negative");
        }
        if (m.state.dim() != members_.front().state.dim()) {
            fail(ErrorKind::DimensionMismatch, "source ensemble members differ in dimension");
        }
        total += m.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "source ensemble weights sum to " << total << ", not 1";
        fail(ErrorKind::Validation, os.str());
    }
}

SourceEnsemble SourceEnsemble::single(DensityMatrix state, std::string label) {
    std::vector<Member> members;
    members.push_back({1.0, std::move(state)});
    return SourceEnsemble(std::move(members), std::move(label));
}

SourceEnsemble SourceEnsemble::uniform(std::vector<DensityMatrix> states, std::string label) {
    if (states.empty()) {
        fail(ErrorKind::Validation, "source ensemble must have at least one member");
    }
    const double w = 1.0 / static_cast<double>(states.size());
    std::vector<Member> members;
    members.reserve(states.size());
    for (auto& s : states) {
        members.push_back({w, std::move(s)});
    }
    return SourceEnsemble(std::move(members), std::move(label));
}

DensityMatrix mix(const SourceEnsemble& ensemble) {
    ComplexMatrix acc = ComplexMatrix::Zero(ensemble.dim(), ensemble.dim());
    for (const auto& m : ensemble.members()) {
        acc += m.weight * m.state.matrix();
    }
    return DensityMatrix::assume_valid(acc);
}

SourceEnsemble superposition_ensemble(std::span<const StateVector> states,
                                      std::span<const Complex> amplitudes, std::string label) {
    const std::size_t m = states.size();
    if (m == 0) {
        fail(ErrorKind::InvalidArgument, "superposition needs at least one state");
    }
    if (m > kMaxSuperpositionStates) {
        std::ostringstream os;
        os << "superposition of " << m << " states exceeds the limit of "
           << kMaxSuperpositionStates;
        fail(ErrorKind::InvalidArgument, os.str());
    }
    if (amplitudes.size() != m) {
        fail(ErrorKind::DimensionMismatch, "one amplitude per state is required");
    }
    double norm = 0.0;
    for (const auto& a : amplitudes) {
        norm += std::norm(a);
    }
    if (std::abs(norm - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "superposition amplitudes have sum |a_k|^2 = " << norm << ", not 1";
        fail(ErrorKind::InvalidArgument, os.str());
    }
    const Index dim = states.front().dim();
    for (const auto& s : states) {
        if (s.dim() != dim) {
            fail(ErrorKind::DimensionMismatch, "superposed states differ in dimension");
        }
    }

    const std::size_t patterns = std::size_t{1} << (m - 1);
    const double pattern_weight = 1.0 / static_cast<double>(patterns);
    std::vector<SourceEnsemble::Member> members;
    double kept = 0.0;
    for (std::size_t r = 0; r < patterns; ++r) {
        ComplexVector psi = ComplexVector::Zero(dim);
        for (std::size_t k = 0; k < m; ++k) {
            // Bit k-1 of r is r_k for k >= 1; r_0 is fixed at 0.
            const bool flip = k > 0 && ((r >> (k - 1)) & 1U);
            psi += (flip ? -amplitudes[k] : amplitudes[k]) * states[k].amplitudes();
        }
        const double n_r = psi.squaredNorm();
        if (n_r <= 1e-14) {
            continue;
        }
        const double w = n_r * pattern_weight;
        kept += w;
        members.push_back({w, DensityMatrix::pure(StateVector::normalized(std::move(psi)))});
    }
    for (auto& mem : members) {
        mem.weight /= kept;
    }
    return SourceEnsemble(std::move(members), std::move(label));
}

}  // namespace dehsim
