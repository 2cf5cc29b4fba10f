// Copyright 2026 The qdesign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdesign/linalg.h"

#include <cmath>

#include "doctest.h"
#include "qdesign/random.h"

using namespace qdesign;

namespace {

const ComplexMatrix X{{0, 1}, {1, 0}};
const ComplexMatrix Z{{1, 0}, {0, -1}};

}  // namespace

TEST_CASE("root_of_unity") {
    CHECK(root_of_unity(0, 3) == cplx{1, 0});
    CHECK(root_of_unity(3, 4) == cplx{0, -1});
    CHECK(root_of_unity(-1, 4) == cplx{0, -1});
    CHECK(std::abs(root_of_unity(1, 3) - std::polar(1.0, 2 * M_PI / 3)) < 1e-15);
    CHECK_THROWS(root_of_unity(1, 0));
}

TEST_CASE("tensor_examples") {
    CHECK(tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) == ComplexMatrix::identity(4));
    CHECK(tensor(StateVector::basis(2, 0), StateVector::basis(2, 1)) == StateVector::basis(4, 1));

    double r = 1 / std::sqrt(2.0);
    StateVector plus(std::vector<cplx>{r, r});
    StateVector zero = StateVector::basis(2, 0);
    StateVector via_matrix = tensor(X, Z) * tensor(plus, zero);
    StateVector via_factors = tensor(X * plus, Z * zero);
    for (size_t k = 0; k < 4; k++) {
        CHECK(std::abs(via_matrix[k] - via_factors[k]) < 1e-15);
    }
}

TEST_CASE("tensor_associative_and_bilinear") {
    Rng rng(3);
    for (int trial = 0; trial < 5; trial++) {
        auto a = random_gaussian_matrix(2, 3, rng);
        auto b = random_gaussian_matrix(3, 2, rng);
        auto c = random_gaussian_matrix(2, 2, rng);
        auto a2 = random_gaussian_matrix(2, 3, rng);
        CHECK(tensor(tensor(a, b), c).max_abs_diff(tensor(a, tensor(b, c))) < 1e-12);
        cplx s{0.7, -0.2};
        CHECK(tensor(a * s + a2, b).max_abs_diff(tensor(a, b) * s + tensor(a2, b)) < 1e-12);
        CHECK(tensor(b, a * s + a2).max_abs_diff(tensor(b, a) * s + tensor(b, a2)) < 1e-12);
    }
}

TEST_CASE("hs_inner_examples") {
    for (size_t d = 1; d <= 5; d++) {
        CHECK(hs_inner(ComplexMatrix::identity(d), ComplexMatrix::identity(d)) == cplx(double(d), 0));
    }
    for (int a = 0; a < 3; a++) {
        for (int b = 0; b < 3; b++) {
            for (int a2 = 0; a2 < 3; a2++) {
                for (int b2 = 0; b2 < 3; b2++) {
                    cplx v = hs_inner(weyl_operator(3, a, b), weyl_operator(3, a2, b2));
                    double expected = (a == a2 && b == b2) ? 3.0 : 0.0;
                    CHECK(std::abs(v - expected) < 1e-12);
                }
            }
        }
    }
    Rng rng(11);
    for (int trial = 0; trial < 10; trial++) {
        auto a = random_gaussian_matrix(4, 4, rng);
        auto b = random_gaussian_matrix(4, 4, rng);
        cplx aa = hs_inner(a, a);
        CHECK(aa.real() > 0);
        CHECK(std::abs(aa.imag()) < 1e-12);
        CHECK(std::abs(hs_inner(a, b) - std::conj(hs_inner(b, a))) < 1e-12);
        CHECK(std::abs(hs_inner(a, b) - (a.adjoint() * b).trace()) < 1e-12);
    }
    CHECK_THROWS(hs_inner(ComplexMatrix::identity(2), ComplexMatrix::identity(3)));
}

TEST_CASE("partial_trace_examples") {
    Rng rng(5);
    auto rho = random_density_matrix(3, rng);
    auto half_i = ComplexMatrix::identity(2) * 0.5;
    CHECK(partial_trace(tensor(rho, half_i), 3, 2, Subsystem::A).max_abs_diff(rho) < 1e-15);
    CHECK(partial_trace(tensor(half_i, rho), 2, 3, Subsystem::B).max_abs_diff(rho) < 1e-15);

    double r = 1 / std::sqrt(2.0);
    StateVector bell(std::vector<cplx>{r, 0, 0, r});
    CHECK(partial_trace(bell.projector(), 2, 2, Subsystem::A).max_abs_diff(half_i) < 1e-15);

    for (int trial = 0; trial < 5; trial++) {
        auto sa = random_density_matrix(2, rng);
        auto sb = random_density_matrix(4, rng);
        auto joint = tensor(sa, sb);
        CHECK(partial_trace(joint, 2, 4, Subsystem::A).max_abs_diff(sa) < 1e-12);
        CHECK(partial_trace(joint, 2, 4, Subsystem::B).max_abs_diff(sb) < 1e-12);
        auto g = random_gaussian_matrix(8, 8, rng);
        CHECK(std::abs(partial_trace(g, 2, 4, Subsystem::A).trace() - g.trace()) < 1e-12);
    }
    CHECK_THROWS(partial_trace(ComplexMatrix::identity(5), 2, 2, Subsystem::A));
}

TEST_CASE("hermitian_eig_examples") {
    auto ez = hermitian_eig(Z);
    CHECK(ez.values[0] == doctest::Approx(-1));
    CHECK(ez.values[1] == doctest::Approx(1));

    auto ex = hermitian_eig(X);
    CHECK(ex.values[0] == doctest::Approx(-1));
    CHECK(ex.values[1] == doctest::Approx(1));
    double r = 1 / std::sqrt(2.0);
    // |-> and |+> with first component real positive.
    CHECK(std::abs(ex.vectors(0, 0) - r) < 1e-12);
    CHECK(std::abs(ex.vectors(1, 0) + r) < 1e-12);
    CHECK(std::abs(ex.vectors(0, 1) - r) < 1e-12);
    CHECK(std::abs(ex.vectors(1, 1) - r) < 1e-12);

    CHECK_THROWS_AS(hermitian_eig(ComplexMatrix{{0, 1}, {0, 0}}), std::invalid_argument);
}

TEST_CASE("hermitian_eig_reconstructs_random") {
    Rng rng(8);
    for (size_t d : {1, 2, 5, 8, 16}) {
        auto a = random_hermitian(d, rng);
        auto eig = hermitian_eig(a);
        for (size_t k = 1; k < d; k++) {
            CHECK(eig.values[k - 1] <= eig.values[k]);
        }
        std::vector<cplx> diag(eig.values.begin(), eig.values.end());
        auto rebuilt = eig.vectors * ComplexMatrix::diagonal(diag) * eig.vectors.adjoint();
        CHECK(rebuilt.max_abs_diff(a) < 1e-8 * a.frobenius_norm());
        CHECK(eig.vectors.is_unitary(1e-10));
        for (size_t j = 0; j < d; j++) {
            for (size_t k = 0; k < d; k++) {
                if (std::abs(eig.vectors(k, j)) > 1e-12) {
                    CHECK(std::abs(eig.vectors(k, j).imag()) < 1e-14);
                    CHECK(eig.vectors(k, j).real() > 0);
                    break;
                }
            }
        }
    }
}

TEST_CASE("degenerate_spectrum") {
    auto eig = hermitian_eig(ComplexMatrix::identity(4) * 2.0);
    for (double v : eig.values) {
        CHECK(v == doctest::Approx(2));
    }
    CHECK(eig.vectors.is_unitary(1e-12));
}

TEST_CASE("trace_unitary_invariance") {
    Rng rng(21);
    for (int trial = 0; trial < 10; trial++) {
        auto u = random_unitary(6, rng);
        CHECK(u.is_unitary(1e-12));
        auto a = random_gaussian_matrix(6, 6, rng);
        CHECK(std::abs((u * a * u.adjoint()).trace() - a.trace()) < 1e-12);
    }
    // A unitary built from the spectral decomposition of a Hermitian matrix.
    auto h = random_hermitian(5, rng);
    auto eig = hermitian_eig(h);
    std::vector<cplx> phases;
    for (double v : eig.values) {
        phases.push_back(std::polar(1.0, v));
    }
    auto u = eig.vectors * ComplexMatrix::diagonal(phases) * eig.vectors.adjoint();
    CHECK(u.is_unitary(1e-10));
    auto a = random_gaussian_matrix(5, 5, rng);
    CHECK(std::abs((u * a * u.adjoint()).trace() - a.trace()) < 1e-12);
}

TEST_CASE("weyl_operator") {
    auto z3 = weyl_operator(3, 0, 1);
    CHECK(z3.max_abs_diff(ComplexMatrix::diagonal({1, root_of_unity(1, 3), root_of_unity(2, 3)})) < 1e-15);
    auto x3 = weyl_operator(3, 1, 0);
    CHECK(x3(1, 0) == cplx(1, 0));
    CHECK(x3(0, 2) == cplx(1, 0));
    // XZ for a qubit equals -iY.
    ComplexMatrix y{{0, cplx(0, -1)}, {cplx(0, 1), 0}};
    CHECK(weyl_operator(2, 1, 1).max_abs_diff(y * cplx(0, -1)) < 1e-15);
    // Z X = w X Z.
    CHECK((z3 * x3).max_abs_diff(x3 * z3 * root_of_unity(1, 3)) < 1e-15);
}
