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

#include <cmath>
#include <numbers>

#include "dehsim/error.hpp"
#include "dehsim/fock.hpp"
#include "dehsim/phase_space.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace dehsim;

namespace {

const FockSpace kSpace(30);

DensityMatrix pure(const StateVector& s) {
    return DensityMatrix::pure(s);
}

}  // namespace

TEST_SUITE("phase_space") {

TEST_CASE("vacuum at the origin and against the Gaussian closed form") {
    const DensityMatrix vac = DensityMatrix::basis(31, 0);
    CHECK(std::abs(wigner_at(vac, 0.0, 0.0) - 1.0 / std::numbers::pi) <= 1e-6);
    for (double q : {-1.5, 0.2, 2.0})
        for (double p : {-0.7, 0.0, 1.1})
            CHECK(std::abs(wigner_at(vac, q, p) - oracle::gaussian_wigner(q, p, 0, 0, 1)) <= 1e-14);
}

TEST_CASE("vacuum against the defining integral at three points") {
    const DensityMatrix vac = DensityMatrix::basis(31, 0);
    for (auto [q, p] : {std::pair{0.0, 0.0}, std::pair{0.5, -0.3}, std::pair{-1.0, 1.2}}) {
        CHECK(std::abs(wigner_at(vac, q, p) - oracle::vacuum_wigner_integral(q, p)) <= 1e-10);
    }
}

TEST_CASE("coherent states are displaced Gaussians") {
    for (Complex alpha : {Complex(1.0, 0.0), Complex(0.0, 1.0), Complex(-0.8, 1.3)}) {
        const DensityMatrix c = pure(coherent_state(alpha, kSpace));
        for (double q : {-1.0, 0.4, 1.6})
            for (double p : {-0.9, 0.0, 1.4})
                CHECK(std::abs(wigner_at(c, q, p) - oracle::coherent_wigner(alpha, q, p)) <= 1e-10);
    }
    const WignerGrid g = wigner(pure(coherent_state(1.0, kSpace)));
    Index i = 0, j = 0;
    g.values.maxCoeff(&i, &j);
    CHECK(std::abs(g.q_axis[static_cast<std::size_t>(i)] - std::numbers::sqrt2) <= g.dq());
    CHECK(std::abs(g.p_axis[static_cast<std::size_t>(j)]) <= g.dp());
}

TEST_CASE("thermal state is a widened Gaussian") {
    const DensityMatrix th = thermal_state(1.0, FockSpace(60));
    for (double q : {0.0, 0.8, -2.1})
        CHECK(std::abs(wigner_at(th, q, 0.3) - oracle::thermal_wigner(1.0, q, 0.3)) <= 1e-9);
}

TEST_CASE("odd cats have parity -1 at the origin") {
    for (double alpha : {0.5, 1.0, 2.0}) {
        const DensityMatrix odd = pure(cat_state(alpha, Parity::Odd, kSpace));
        CHECK(std::abs(wigner_at(odd, 0.0, 0.0) + 1.0 / std::numbers::pi) <= 1e-6);
    }
}

TEST_CASE("grid axes, normalization and L2 norms") {
    const WignerConfig cfg;
    const WignerGrid g = wigner(DensityMatrix::basis(31, 0), cfg);
    CHECK(g.q_axis.size() == 201);
    CHECK(g.q_axis.front() == -6.0);
    CHECK(g.q_axis.back() == 6.0);
    CHECK(g.q_axis[100] == 0.0);
    CHECK(std::abs(g.normalization() - 1.0) <= kGridBudget);
    CHECK(std::abs(g.l2_norm() - 1.0 / std::sqrt(2.0 * std::numbers::pi)) <= 1e-3);
    CHECK(wigner_l2_distance(g, g) == 0.0);
}

TEST_CASE("L2 distance between opposite coherent states") {
    const DensityMatrix a = pure(coherent_state(2.0, kSpace));
    const DensityMatrix b = pure(coherent_state(-2.0, kSpace));
    const double d = wigner_l2_distance(wigner(a), wigner(b));
    // ||W1 - W2||^2 = (Tr r1^2 + Tr r2^2 - 2 Tr r1 r2) / (2 pi)
    const double overlap = (a.matrix() * b.matrix()).trace().real();
    const double exact = std::sqrt((2.0 - 2.0 * overlap) / (2.0 * std::numbers::pi));
    CHECK(std::abs(d - exact) <= 1e-3);
    CHECK(std::abs(d - std::numbers::sqrt2 / std::sqrt(2.0 * std::numbers::pi)) <= 1e-3);
}

TEST_CASE("L2 distance requires matching grids") {
    const DensityMatrix vac = DensityMatrix::basis(31, 0);
    WignerConfig small;
    small.points = 51;
    CHECK_THROWS_AS((void)wigner_l2_distance(wigner(vac), wigner(vac, small)), Error);
}

TEST_CASE("purity identity") {
    const BoundReport vac = purity_identity_check(DensityMatrix::basis(31, 0), wigner(DensityMatrix::basis(31, 0)));
    CHECK(vac.holds);
    CHECK(std::abs(vac.lhs - 1.0) <= 1e-3);
    const DensityMatrix th = thermal_state(1.0, kSpace);
    const BoundReport t = purity_identity_check(th, wigner(th));
    CHECK(t.holds);
    CHECK(std::abs(t.lhs - 1.0 / 3.0) <= 1e-3);
    const DensityMatrix even = pure(cat_state(1.0, Parity::Even, kSpace));
    const BoundReport e = purity_identity_check(even, wigner(even));
    CHECK(e.holds);
    CHECK(std::abs(e.lhs - 1.0) <= 1e-3);
}

TEST_CASE("purity identity refuses a grid that misses the state") {
    WignerConfig narrow{-1.0, 1.0, -1.0, 1.0, 41};
    const DensityMatrix c = pure(coherent_state(3.0, kSpace));
    CHECK_THROWS_AS((void)purity_identity_check(c, wigner(c, narrow)), Error);
}

TEST_CASE("linearity, mixture/cat-ensemble agreement and reflection symmetry") {
    const WignerConfig cfg{-5.0, 5.0, -5.0, 5.0, 81};
    const DensityMatrix a = pure(coherent_state(1.0, kSpace));
    const DensityMatrix b = pure(coherent_state(-1.0, kSpace));
    const DensityMatrix m = mix(SourceEnsemble::uniform({a, b}, "pm"));
    const WignerGrid wm = wigner(m, cfg);
    const Eigen::MatrixXd lin = 0.5 * (wigner(a, cfg).values + wigner(b, cfg).values);
    CHECK((wm.values - lin).cwiseAbs().maxCoeff() <= 1e-10);

    const double pe = cat_mixture_weight(1.0, Parity::Even), po = cat_mixture_weight(1.0, Parity::Odd);
    const Eigen::MatrixXd cats = pe * wigner(pure(cat_state(1.0, Parity::Even, kSpace)), cfg).values +
                                 po * wigner(pure(cat_state(1.0, Parity::Odd, kSpace)), cfg).values;
    CHECK((wm.values - cats).cwiseAbs().maxCoeff() <= 1e-10);

    // m commutes with parity, so W(q, p) = W(-q, -p).
    CHECK((wm.values - wm.values.reverse()).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("qubit states read on Fock {0, 1}") {
    const DensityMatrix g = qubit_as_field(DensityMatrix::basis(2, 0));
    const WignerGrid w = wigner(g);
    CHECK(std::abs(w.l2_norm() - 1.0 / std::sqrt(2.0 * std::numbers::pi)) <= 1e-3);
    CHECK_THROWS_AS((void)qubit_as_field(DensityMatrix::basis(3, 0)), Error);
}

TEST_CASE("grid configuration checks") {
    WignerConfig bad;
    bad.points = 2;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = WignerConfig{1.0, -1.0, -1.0, 1.0, 11};
    CHECK_THROWS_AS(bad.validate(), Error);
}

}  // TEST_SUITE
