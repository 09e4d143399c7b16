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

// Wigner functions of field density matrices on rectangular (q, p) grids,
// hbar = 1, with beta = (q + i p) / sqrt(2).

#include <vector>

#include "dehsim/linalg.hpp"
#include "dehsim/measures.hpp"

namespace dehsim {

/// Tolerated |integral - 1| and |2 pi integral W^2 - Tr rho^2| on a grid.
inline constexpr double kGridBudget = 1e-3;

struct WignerConfig {
    double q_min = -6.0;
    double q_max = 6.0;
    double p_min = -6.0;
    double p_max = 6.0;
    Index points = 201;

    void validate() const;
};

struct WignerGrid {
    std::vector<double> q_axis;
    std::vector<double> p_axis;
    /// values(i, j) = W(q_axis[i], p_axis[j])
    Eigen::MatrixXd values;

    double dq() const { return q_axis[1] - q_axis[0]; }
    double dp() const { return p_axis[1] - p_axis[0]; }
    /// Riemann sum of W dq dp.
    double normalization() const;
    /// sqrt(sum W^2 dq dp)
    double l2_norm() const;
    bool same_axes(const WignerGrid& other) const;
};

std::vector<double> wigner_axis(double lo, double hi, Index points);

/// Point value via the Laguerre recurrence for the displaced-parity
/// expectation. Exact for the given matrix; no displacement operator is built.
double wigner_at(const DensityMatrix& rho, double q, double p);

WignerGrid wigner(const DensityMatrix& rho, const WignerConfig& config = {});

/// Qubit state read as a field state on Fock levels {0, 1}, |g> -> |0>.
DensityMatrix qubit_as_field(const DensityMatrix& rho_qubit);

double wigner_l2_distance(const WignerGrid& a, const WignerGrid& b);

/// lhs = 2 pi sum W^2 dq dp, rhs = Tr rho^2; holds when they agree within
/// kGridBudget. Raises Validation when the grid normalization is off by more
/// than kGridBudget (the grid does not cover the state).
BoundReport purity_identity_check(const DensityMatrix& rho, const WignerGrid& grid);

}  // namespace dehsim
