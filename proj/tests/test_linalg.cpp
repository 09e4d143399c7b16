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
#include "dehsim/linalg.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace dehsim;

namespace {

ComplexMatrix pauli_z() {
    ComplexMatrix z = ComplexMatrix::Zero(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return z;
}

ComplexMatrix pauli_x() {
    ComplexMatrix x = ComplexMatrix::Zero(2, 2);
    x(0, 1) = x(1, 0) = 1.0;
    return x;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("tensor of identities is the identity") {
    const ComplexMatrix t = tensor(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3));
    CHECK(t.rows() == 6);
    CHECK(max_abs(t - ComplexMatrix::Identity(6, 6)) == 0.0);
}

TEST_CASE("tensor(sigma_z, I2) is diag(1, 1, -1, -1) in A-major order") {
    const ComplexMatrix t = tensor(pauli_z(), ComplexMatrix::Identity(2, 2));
    const double expected[] = {1, 1, -1, -1};
    for (int i = 0; i < 4; ++i) CHECK(t(i, i).real() == expected[i]);
    CHECK(max_abs(t - ComplexMatrix(t.diagonal().asDiagonal())) == 0.0);
}

TEST_CASE("tensor of ground and vacuum projectors sits at joint index 0") {
    const ComplexMatrix t = tensor(DensityMatrix::basis(2, 0).matrix(), DensityMatrix::basis(4, 0).matrix());
    CHECK(t(0, 0) == Complex(1.0));
    CHECK(t.cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("tensor matches the loop Kronecker oracle and is associative") {
    oracle::Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix a = rng.ginibre(2, 3), b = rng.ginibre(3, 2), c = rng.ginibre(2, 2);
        CHECK(max_abs(tensor(a, b) - oracle::kron(a, b)) == 0.0);
        CHECK(max_abs(tensor(tensor(a, b), c) - tensor(a, tensor(b, c))) <= 1e-14);
    }
}

TEST_CASE("partial traces of product states") {
    oracle::Rng rng(12);
    const ComplexMatrix rho = rng.density(2), sigma = rng.density(3);
    const DensityMatrix joint = tensor(DensityMatrix::from_matrix(rho), DensityMatrix::from_matrix(sigma));
    CHECK(max_abs(partial_trace_b(joint, 2, 3).matrix() - rho) <= 1e-14);
    CHECK(max_abs(partial_trace_a(joint, 2, 3).matrix() - sigma) <= 1e-14);

    // Unnormalized second factor scales the result by its trace.
    const ComplexMatrix s = 2.5 * sigma;
    CHECK(max_abs(partial_trace_b(tensor(rho, s), 2, 3) - 2.5 * rho) <= 1e-13);
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
    ComplexVector bell = ComplexVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::numbers::sqrt2;
    const DensityMatrix rho = DensityMatrix::pure(StateVector::from_amplitudes(bell));
    CHECK(max_abs(partial_trace_b(rho, 2, 2).matrix() - DensityMatrix::maximally_mixed(2).matrix()) <=
          1e-15);
}

TEST_CASE("partial traces match loop oracles and preserve trace") {
    oracle::Rng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix rho = rng.density(6);
        CHECK(max_abs(partial_trace_b(rho, 2, 3) - oracle::ptrace_b(rho, 2, 3)) <= 1e-15);
        CHECK(max_abs(partial_trace_a(rho, 2, 3) - oracle::ptrace_a(rho, 2, 3)) <= 1e-15);
        const DensityMatrix ra = partial_trace_b(DensityMatrix::from_matrix(rho), 2, 3);
        CHECK(std::abs(ra(0, 0).real() + ra(1, 1).real() - 1.0) <= 1e-12);
    }
}

TEST_CASE("partial trace rejects mismatched dimensions") {
    const DensityMatrix rho = DensityMatrix::maximally_mixed(6);
    try {
        (void)partial_trace_b(rho, 2, 2);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DimensionMismatch);
    }
}

TEST_CASE("eig_hermitian closed forms") {
    const EigenSystem z = eig_hermitian(pauli_z());
    CHECK(z.values(0) == doctest::Approx(-1.0));
    CHECK(z.values(1) == doctest::Approx(1.0));

    const EigenSystem x = eig_hermitian(pauli_x());
    CHECK(x.values(0) == doctest::Approx(-1.0));
    CHECK(x.values(1) == doctest::Approx(1.0));
    // (|0> - |1>)/sqrt2 and (|0> + |1>)/sqrt2 up to phase.
    CHECK(std::abs(x.vectors(0, 0) + x.vectors(1, 0)) <= 1e-14);
    CHECK(std::abs(x.vectors(0, 1) - x.vectors(1, 1)) <= 1e-14);
    CHECK(std::abs(x.vectors(0, 0)) == doctest::Approx(1.0 / std::numbers::sqrt2));

    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    d(2, 2) = 2.0;
    const EigenSystem e = eig_hermitian(d);
    CHECK(e.values(0) == doctest::Approx(1.0));
    CHECK(e.values(1) == doctest::Approx(2.0));
    CHECK(e.values(2) == doctest::Approx(3.0));
    CHECK(std::abs(e.vectors(1, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(e.vectors(2, 1)) == doctest::Approx(1.0));
    CHECK(std::abs(e.vectors(0, 2)) == doctest::Approx(1.0));
}

TEST_CASE("eig_hermitian reconstructs and is orthonormal") {
    oracle::Rng rng(14);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix h = rng.hermitian(8);
        const EigenSystem e = eig_hermitian(h);
        CHECK(max_abs(e.reconstruct() - h) <= 1e-10 * max_abs(h));
        CHECK(max_abs(e.vectors.adjoint() * e.vectors - ComplexMatrix::Identity(8, 8)) <= 1e-12);
        for (Index k = 1; k < 8; ++k) CHECK(e.values(k) >= e.values(k - 1));
    }
}

TEST_CASE("eig_hermitian rejects non-Hermitian input but repairs small drift") {
    ComplexMatrix h = pauli_x();
    h(0, 1) += 1e-12;
    CHECK_NOTHROW((void)eig_hermitian(h));
    h(0, 1) += 1e-3;
    try {
        (void)eig_hermitian(h);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonHermitian);
    }
}

TEST_CASE("propagator matches the Taylor expm oracle") {
    oracle::Rng rng(15);
    const ComplexMatrix h = rng.hermitian(6);
    const EigenSystem e = eig_hermitian(h);
    for (double t : {0.3, 1.7, 4.0}) {
        CHECK(max_abs(e.propagator(t) - oracle::unitary(h, t)) <= 1e-10);
    }
}

TEST_CASE("evolve closed forms") {
    const DensityMatrix plus = DensityMatrix::pure(
        StateVector::normalized(ComplexVector::Ones(2)));
    const EigenSystem zero = eig_hermitian(ComplexMatrix::Zero(2, 2));
    CHECK(max_abs(evolve(plus, zero, 3.0).matrix() - plus.matrix()) == 0.0);

    ComplexVector m(2);
    m << 1.0, -1.0;
    const DensityMatrix minus = DensityMatrix::pure(StateVector::normalized(m));
    const EigenSystem half_z = eig_hermitian(0.5 * pauli_z());
    CHECK(max_abs(evolve(plus, half_z, std::numbers::pi).matrix() - minus.matrix()) <= 1e-14);
}

TEST_CASE("evolve preserves spectrum, composes and is exact at t = 0") {
    oracle::Rng rng(16);
    for (int trial = 0; trial < 10; ++trial) {
        const DensityMatrix rho = DensityMatrix::from_matrix(rng.density(5));
        const EigenSystem e = eig_hermitian(rng.hermitian(5));
        const double t1 = rng.uniform(0, 5), t2 = rng.uniform(0, 5);
        const DensityMatrix r = evolve(rho, e, t1);
        CHECK(std::abs(r.trace() - 1.0) <= 1e-10);
        CHECK(std::abs(r.purity() - rho.purity()) <= 1e-12);
        CHECK((r.eigenvalues() - rho.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK(max_abs(evolve(rho, e, t1 + t2).matrix() - evolve(r, e, t2).matrix()) <= 1e-10);
        CHECK(max_abs(evolve(rho, e, 0.0).matrix() - rho.matrix()) <= 1e-14);
    }
}

TEST_CASE("density matrix validation") {
    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    CHECK_THROWS_AS((void)DensityMatrix::from_matrix(bad), Error);  // trace 2
    bad = ComplexMatrix::Zero(2, 2);
    bad(0, 0) = 1.5;
    bad(1, 1) = -0.5;
    CHECK_THROWS_AS((void)DensityMatrix::from_matrix(bad), Error);  // negative eigenvalue
    bad = DensityMatrix::maximally_mixed(2).matrix();
    bad(0, 1) = Complex(0.0, 0.1);
    CHECK_THROWS_AS((void)DensityMatrix::from_matrix(bad), Error);  // not Hermitian
    CHECK_THROWS_AS((void)StateVector::normalized(ComplexVector::Zero(3)), Error);
    CHECK_THROWS_AS((void)StateVector::from_amplitudes(ComplexVector::Ones(2)), Error);
}

}  // TEST_SUITE
