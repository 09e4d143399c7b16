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

#include "dehsim/phase_space.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dehsim/error.hpp"
#include "parallel.hpp"

namespace dehsim {

void WignerConfig::validate() const {
    if (!(std::isfinite(q_min) && std::isfinite(q_max) && std::isfinite(p_min) &&
          std::isfinite(p_max) && q_max > q_min && p_max > p_min)) {
        fail(ErrorKind::Validation, "Wigner grid ranges must be finite with max > min");
    }
    if (points < 3) {
        fail(ErrorKind::Validation, "Wigner grid needs at least 3 points per axis");
    }
}

double WignerGrid::normalization() const {
    return values.sum() * dq() * dp();
}

double WignerGrid::l2_norm() const {
    return std::sqrt(values.squaredNorm() * dq() * dp());
}

bool WignerGrid::same_axes(const WignerGrid& other) const {
    return q_axis == other.q_axis && p_axis == other.p_axis;
}

std::vector<double> wigner_axis(double lo, double hi, Index points) {
    std::vector<double> axis(static_cast<std::size_t>(points));
    for (Index i = 0; i < points; ++i) {
        axis[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return axis;
}

namespace {

// W = sum_{m,n} rho_mn <n|D(2A) (parity)|m> / pi, written as the recurrence
// over generalized Laguerre terms. `work` has rho.dim() entries.
double wigner_point(const ComplexMatrix& rho, Complex a, std::vector<Complex>& work) {
    const Index dim = rho.rows();
    const Complex two_a = 2.0 * a;
    const Complex two_conj_a = std::conj(two_a);

    work[0] = std::exp(-2.0 * std::norm(a)) / std::numbers::pi;
    double w = rho(0, 0).real() * work[0].real();
    for (Index n = 1; n < dim; ++n) {
        work[n] = two_a * work[n - 1] / std::sqrt(static_cast<double>(n));
        w += 2.0 * (rho(0, n) * work[n]).real();
    }
    for (Index m = 1; m < dim; ++m) {
        const double sm = std::sqrt(static_cast<double>(m));
        Complex temp = work[m];
        work[m] = (two_conj_a * temp - sm * work[m - 1]) / sm;
        w += (rho(m, m) * work[m]).real();
        for (Index n = m + 1; n < dim; ++n) {
            const Complex next = (two_a * work[n - 1] - sm * temp) / std::sqrt(static_cast<double>(n));
            temp = work[n];
            work[n] = next;
            w += 2.0 * (rho(m, n) * work[n]).real();
        }
    }
    return w;
}

}  // namespace

double wigner_at(const DensityMatrix& rho, double q, double p) {
    std::vector<Complex> work(static_cast<std::size_t>(rho.dim()));
    return wigner_point(rho.matrix(), Complex(q, p) / std::numbers::sqrt2, work);
}

WignerGrid wigner(const DensityMatrix& rho, const WignerConfig& config) {
    config.validate();
    WignerGrid grid;
    grid.q_axis = wigner_axis(config.q_min, config.q_max, config.points);
    grid.p_axis = wigner_axis(config.p_min, config.p_max, config.points);
    grid.values.resize(config.points, config.points);

    const ComplexMatrix& m = rho.matrix();
    detail::parallel_for(static_cast<std::size_t>(config.points), [&](std::size_t i) {
        std::vector<Complex> work(static_cast<std::size_t>(m.rows()));
        for (Index j = 0; j < config.points; ++j) {
            const Complex a = Complex(grid.q_axis[i], grid.p_axis[static_cast<std::size_t>(j)]) /
                              std::numbers::sqrt2;
            grid.values(static_cast<Index>(i), j) = wigner_point(m, a, work);
        }
    });
    if (!grid.values.allFinite()) {
        fail(ErrorKind::InvariantViolation, "Wigner grid contains non-finite values");
    }
    return grid;
}

DensityMatrix qubit_as_field(const DensityMatrix& rho_qubit) {
    if (rho_qubit.dim() != 2) {
        fail(ErrorKind::DimensionMismatch, "qubit_as_field expects a 2x2 state");
    }
    return rho_qubit;
}

double wigner_l2_distance(const WignerGrid& a, const WignerGrid& b) {
    if (!a.same_axes(b)) {
        fail(ErrorKind::DimensionMismatch, "Wigner grids have different axes");
    }
    return std::sqrt((a.values - b.values).squaredNorm() * a.dq() * a.dp());
}

BoundReport purity_identity_check(const DensityMatrix& rho, const WignerGrid& grid) {
    const double norm = grid.normalization();
    if (std::abs(norm - 1.0) > kGridBudget) {
        std::ostringstream os;
        os << "Wigner grid integrates to " << norm << "; it does not cover the state's support";
        fail(ErrorKind::Validation, os.str());
    }
    BoundReport r;
    r.lhs = 2.0 * std::numbers::pi * grid.values.squaredNorm() * grid.dq() * grid.dp();
    r.rhs = rho.purity();
    r.slack = kGridBudget - std::abs(r.lhs - r.rhs);
    r.holds = r.slack >= 0.0;
    return r;
}

}  // namespace dehsim
