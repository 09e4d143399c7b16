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
#include <limits>
#include <numbers>

#include "dehsim/error.hpp"
#include "dehsim/fock.hpp"
#include "dehsim/measures.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace dehsim;

namespace {

DensityMatrix basis(Index k) {
    return DensityMatrix::basis(2, k);
}

DensityMatrix random_state(oracle::Rng& rng, Index dim) {
    return DensityMatrix::from_matrix(rng.density(dim));
}

}  // namespace

TEST_SUITE("measures") {

TEST_CASE("fidelity to a pure target") {
    const StateVector psi = StateVector::normalized(ComplexVector::Ones(2));
    ComplexVector orth(2);
    orth << 1.0, -1.0;
    CHECK(fidelity_to_pure(DensityMatrix::pure(psi), psi) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(fidelity_to_pure(DensityMatrix::pure(StateVector::normalized(orth)), psi)) <= 1e-15);
    CHECK(fidelity_to_pure(DensityMatrix::maximally_mixed(2), psi) == doctest::Approx(0.5));
}

TEST_CASE("von Neumann entropy") {
    CHECK(std::abs(von_neumann_entropy(basis(0))) <= 1e-10);
    CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(2)) == doctest::Approx(std::numbers::ln2));
    const DensityMatrix th = thermal_state(1.0, FockSpace(60));
    CHECK(std::abs(von_neumann_entropy(th) - 2.0 * std::numbers::ln2) <= 1e-6);
}

TEST_CASE("relative entropy closed forms") {
    oracle::Rng rng(31);
    const DensityMatrix r = random_state(rng, 3);
    CHECK(std::abs(relative_entropy(r, r)) <= 1e-10);
    CHECK(std::abs(relative_entropy(basis(0), DensityMatrix::maximally_mixed(2)) - std::numbers::ln2) <= 1e-10);
    CHECK(std::isinf(relative_entropy(basis(0), basis(1))));
    CHECK(relative_entropy_bits(basis(0), DensityMatrix::maximally_mixed(2)) == doctest::Approx(1.0));
}

TEST_CASE("relative entropy matches the matrix-log oracle and is non-negative") {
    oracle::Rng rng(32);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityMatrix a = random_state(rng, 4), b = random_state(rng, 4);
        const double s = relative_entropy(a, b);
        CHECK(s >= 0.0);
        CHECK(std::abs(s - oracle::relative_entropy(a.matrix(), b.matrix())) <= 1e-9);
        CHECK(hs_distance(a, b) > 1e-8);
        CHECK(s > 0.0);
    }
}

TEST_CASE("distances") {
    CHECK(trace_distance(basis(0), basis(0)) == 0.0);
    CHECK(hs_distance(basis(0), basis(0)) == 0.0);
    CHECK(trace_distance(basis(0), basis(1)) == doctest::Approx(1.0));
    CHECK(trace_norm_distance(basis(0), basis(1)) == doctest::Approx(2.0));
    CHECK(hs_distance(basis(0), basis(1)) == doctest::Approx(std::numbers::sqrt2));

    oracle::Rng rng(33);
    for (int trial = 0; trial < 100; ++trial) {
        const DensityMatrix a = random_state(rng, 3), b = random_state(rng, 3);
        CHECK(hs_distance(a, b) <= trace_norm_distance(a, b) + 1e-12);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.matrix() - b.matrix());
        CHECK(trace_norm_distance(a, b) == doctest::Approx(es.eigenvalues().cwiseAbs().sum()).epsilon(1e-12));
    }
}

TEST_CASE("smoothing gives full rank and stays close") {
    const DensityMatrix s = smooth(basis(0), 1e-9);
    CHECK(s.eigenvalues().minCoeff() == doctest::Approx(0.5e-9).epsilon(1e-6));
    CHECK(std::isfinite(relative_entropy(basis(1), s)));
    CHECK_THROWS_AS((void)smooth(basis(0), 1.5), Error);
}

TEST_CASE("Pinsker check") {
    const BoundReport same = pinsker_check(basis(0), basis(0));
    CHECK(same.lhs == 0.0);
    CHECK(same.holds);
    const BoundReport r = pinsker_check(basis(0), DensityMatrix::maximally_mixed(2));
    CHECK(r.lhs == doctest::Approx(0.5));
    CHECK(r.rhs == doctest::Approx(std::numbers::ln2));
    CHECK(r.holds);
    CHECK(r.slack == doctest::Approx(std::numbers::ln2 - 0.5));
    const BoundReport inf = pinsker_check(basis(0), basis(1));
    CHECK(inf.holds);
}

TEST_CASE("Audenaert bound closed forms and domain") {
    CHECK(audenaert_bound(0.0, 2, 0.3) == 0.0);
    CHECK(audenaert_bound(1.0, 2, 0.5) == doctest::Approx(1.5));
    CHECK_THROWS_AS((void)audenaert_bound(2.5, 2, 0.5), Error);
    CHECK_THROWS_AS((void)audenaert_bound(1.0, 2, 0.0), Error);
    CHECK_THROWS_AS((void)audenaert_bound(1.0, 0, 0.5), Error);
}

TEST_CASE("bound report semantics") {
    CHECK(BoundReport::compare(1.0, 1.0 - 5e-10).holds);
    CHECK_FALSE(BoundReport::compare(1.0, 1.0 - 2e-9).holds);
    const BoundReport r = BoundReport::compare(0.25, 1.0);
    CHECK(r.slack == doctest::Approx(0.75));
}

TEST_CASE("approximate harvesting chain") {
    const StateVector e = StateVector::basis(2, 1);
    const DensityMatrix target = DensityMatrix::pure(e);
    const DehChainReport exact = approximate_deh_chain(target, target, e);
    CHECK(exact.bound.lhs == doctest::Approx(0.0));
    CHECK(exact.bound.rhs == doctest::Approx(0.0));
    CHECK(exact.bound.holds);

    const DensityMatrix near = smooth(target, 1e-3);
    const DehChainReport r = approximate_deh_chain(near, near, e);
    CHECK(r.eps == doctest::Approx(0.0));
    CHECK(r.bound.holds);
    CHECK(r.bound.slack > 0.0);
    CHECK(r.delta == doctest::Approx(std::sqrt(2 * std::numbers::ln2 * r.mu)));
}

TEST_CASE("unitary invariance of entropy and affinity of fidelity") {
    oracle::Rng rng(34);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix r = random_state(rng, 4);
        const ComplexMatrix u = oracle::unitary(rng.hermitian(4), 1.0);
        const DensityMatrix rot = DensityMatrix::from_matrix(u * r.matrix() * u.adjoint());
        CHECK(std::abs(von_neumann_entropy(rot) - von_neumann_entropy(r)) <= 1e-10);

        const DensityMatrix a = random_state(rng, 4), b = random_state(rng, 4);
        const StateVector psi = StateVector::normalized(rng.state(4));
        const double p = rng.uniform();
        const DensityMatrix m = DensityMatrix::from_matrix(p * a.matrix() + (1 - p) * b.matrix());
        CHECK(std::abs(fidelity_to_pure(m, psi) - (p * fidelity_to_pure(a, psi) + (1 - p) * fidelity_to_pure(b, psi))) <=
              1e-12);
    }
}

}  // TEST_SUITE
