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

#include "qdesign/mub.h"

#include <cmath>

#include "doctest.h"
#include "qdesign/random.h"

using namespace qdesign;

namespace {

bool contains_up_to_phase(const std::vector<StateVector> &basis, const StateVector &v) {
    for (const auto &s : basis) {
        if (std::abs(overlap_modulus(s, v) - 1) < 1e-12) {
            return true;
        }
    }
    return false;
}

StateVector sv(std::vector<cplx> amps, double scale) {
    for (auto &a : amps) {
        a *= scale;
    }
    return StateVector(amps);
}

std::vector<MubFamily> small_families() {
    std::vector<MubFamily> out;
    out.push_back(mub_prime(3));
    out.push_back(mub_prime(5));
    out.push_back(mub_prime_power(3, 2));
    out.push_back(mub_galois_ring(1));
    out.push_back(mub_galois_ring(2));
    out.push_back(mub_galois_ring(3));
    return out;
}

}  // namespace

TEST_CASE("mub_prime_qutrit_examples") {
    auto f = mub_prime(3);
    CHECK(f.d == 3);
    CHECK(f.bases.size() == 4);
    cplx w = root_of_unity(1, 3);
    cplx w2 = root_of_unity(2, 3);
    double r = 1 / std::sqrt(3.0);
    CHECK(contains_up_to_phase(f.bases[1], sv({1, w, w}, r)));
    CHECK(contains_up_to_phase(f.bases[1], sv({1, w2, 1}, r)));
    CHECK(contains_up_to_phase(f.bases[1], sv({1, 1, w2}, r)));
    CHECK(contains_up_to_phase(f.bases[0], sv({1, 1, 1}, r)));
    // The defining formula is reproduced verbatim, not only up to phase.
    CHECK(f.state(1, 0) == sv({1, w, w}, r));
    CHECK(f.state(3, 2) == StateVector::basis(3, 2));
}

TEST_CASE("mub_prime_rejects") {
    CHECK_THROWS_AS(mub_prime(2), std::invalid_argument);
    CHECK_THROWS_AS(mub_prime(9), std::invalid_argument);
    CHECK_THROWS_AS(mub_prime(131), std::invalid_argument);
    CHECK_THROWS_AS(mub_prime_power(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(mub_prime_power(3, 5), std::invalid_argument);
}

TEST_CASE("mub_prime_power_degenerates_to_prime") {
    auto a = mub_prime_power(3, 1);
    auto b = mub_prime(3);
    for (size_t x = 0; x <= 3; x++) {
        for (size_t y = 0; y < 3; y++) {
            for (size_t k = 0; k < 3; k++) {
                CHECK(std::abs(a.state(x, y)[k] - b.state(x, y)[k]) < 1e-15);
            }
        }
    }
    auto f5 = mub_prime_power(5, 1);
    for (size_t k = 0; k < 5; k++) {
        CHECK(std::abs(std::abs(f5.state(1, 0)[k]) - 1 / std::sqrt(5.0)) < 1e-15);
    }
}

TEST_CASE("mub_prime_power_9_cross_overlaps") {
    auto f = mub_prime_power(3, 2);
    // Naive std::complex loops over the 90 states.
    for (size_t a = 0; a <= 9; a++) {
        for (size_t b = 0; b < 9; b++) {
            for (size_t a2 = 0; a2 <= 9; a2++) {
                for (size_t b2 = 0; b2 < 9; b2++) {
                    cplx s = 0;
                    for (size_t x = 0; x < 9; x++) {
                        s += std::conj(f.state(a, b)[x]) * f.state(a2, b2)[x];
                    }
                    double expected = a == a2 ? (b == b2 ? 1.0 : 0.0) : 1.0 / 9;
                    CHECK(std::abs(std::norm(s) - expected) < 1e-9);
                }
            }
        }
    }
}

TEST_CASE("mub_galois_ring_single_qubit") {
    auto f = mub_galois_ring(1);
    double r = 1 / std::sqrt(2.0);
    cplx i{0, 1};
    std::vector<std::vector<StateVector>> expected = {
        {sv({1, 1}, r), sv({1, -1}, r)},
        {sv({1, i}, r), sv({1, -i}, r)},
        {sv({1, 0}, 1), sv({0, 1}, 1)},
    };
    for (const auto &basis : expected) {
        bool found = false;
        for (const auto &fb : f.bases) {
            if (contains_up_to_phase(fb, basis[0]) && contains_up_to_phase(fb, basis[1])) {
                found = true;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("mub_galois_ring_two_qubits") {
    auto f = mub_galois_ring(2);
    cplx i{0, 1};
    CHECK(contains_up_to_phase(f.bases[0], sv({1, 1, 1, 1}, 0.5)));
    CHECK(contains_up_to_phase(f.bases[1], sv({1, -1, -i, -i}, 0.5)));
    CHECK(f.state(1, 0) == sv({1, -1, -i, -i}, 0.5));
    auto rep = verify_unbiased(f, 1e-9);
    CHECK(rep.pass);
    CHECK(rep.max_orthonormality_error < 1e-12);
    CHECK(rep.max_unbiasedness_error < 1e-12);
}

TEST_CASE("verify_unbiased_passes_for_constructions") {
    for (const auto &f : small_families()) {
        CHECK(verify_unbiased(f, 1e-9).pass);
    }
    CHECK(verify_unbiased(mub_prime(7), 1e-9).pass);
    CHECK(verify_unbiased(mub_galois_ring(4), 1e-9).pass);
}

TEST_CASE("verify_unbiased_locates_corruption") {
    auto f = mub_prime(5);
    f.bases[2][1] = StateVector::basis(5, 0);
    auto rep = verify_unbiased(f, 1e-9);
    CHECK_FALSE(rep.pass);
    bool located = (rep.worst_a == 2 && rep.worst_b == 1) || (rep.worst_a2 == 2 && rep.worst_b2 == 1);
    CHECK(located);
}

TEST_CASE("state_design_sum_examples") {
    for (const auto &f : small_families()) {
        double d = (double)f.d;
        auto id = ComplexMatrix::identity(f.d);
        CHECK(std::abs(state_design_sum(f, id, id) - d * d - d) < 1e-9);
    }
    auto f2 = mub_galois_ring(1);
    ComplexMatrix z{{1, 0}, {0, -1}};
    CHECK(std::abs(state_design_sum(f2, z, z) - 2.0) < 1e-12);

    Rng rng(99);
    auto f9 = mub_prime_power(3, 2);
    for (int trial = 0; trial < 5; trial++) {
        auto m = random_gaussian_matrix(9, 9, rng);
        auto n = random_gaussian_matrix(9, 9, rng);
        cplx direct = 0;
        for (size_t r = 0; r < 9; r++) {
            for (size_t c = 0; c < 9; c++) {
                direct += m(r, c) * n(c, r);
            }
        }
        cplx tm = 0, tn = 0;
        for (size_t r = 0; r < 9; r++) {
            tm += m(r, r);
            tn += n(r, r);
        }
        direct += tm * tn;
        cplx got = state_design_sum(f9, m, n);
        CHECK(std::abs(got - direct) < 1e-8 * std::abs(direct));
    }
    CHECK_THROWS(state_design_sum(f9, ComplexMatrix::identity(3), ComplexMatrix::identity(9)));
}

TEST_CASE("state_design_sum_bilinear") {
    Rng rng(4);
    auto f = mub_prime(5);
    auto m1 = random_gaussian_matrix(5, 5, rng);
    auto m2 = random_gaussian_matrix(5, 5, rng);
    auto n = random_gaussian_matrix(5, 5, rng);
    cplx s{0.4, 1.1};
    cplx lhs = state_design_sum(f, m1 * s + m2, n);
    cplx rhs = s * state_design_sum(f, m1, n) + state_design_sum(f, m2, n);
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(rhs));
    lhs = state_design_sum(f, n, m1 * s + m2);
    rhs = s * state_design_sum(f, n, m1) + state_design_sum(f, n, m2);
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(rhs));
}

TEST_CASE("haar_moment_matches_family_average") {
    CHECK(std::abs(haar_moment(ComplexMatrix::identity(4), ComplexMatrix::identity(4)) - 1.0) < 1e-15);
    Rng rng(12);
    for (const auto &f : small_families()) {
        auto m = random_gaussian_matrix(f.d, f.d, rng);
        auto n = random_gaussian_matrix(f.d, f.d, rng);
        double count = (double)f.num_states();
        CHECK(std::abs(state_design_sum(f, m, n) / count - haar_moment(m, n)) < 1e-10);
    }
}

TEST_CASE("haar_moment_monte_carlo") {
    Rng rng(2024);
    size_t d = 4;
    auto m = random_hermitian(d, rng);
    auto n = random_hermitian(d, rng);
    const int samples = 100000;
    double sum = 0, sum_sq = 0;
    for (int s = 0; s < samples; s++) {
        auto psi = random_state(d, rng);
        double v = (expectation(m, psi) * expectation(n, psi)).real();
        sum += v;
        sum_sq += v * v;
    }
    double mean = sum / samples;
    double se = std::sqrt((sum_sq / samples - mean * mean) / samples);
    CHECK(std::abs(mean - haar_moment(m, n).real()) < 5 * se);
}

TEST_CASE("t_design_angle_sums") {
    for (const auto &f : small_families()) {
        double d = (double)f.d;
        CHECK(t_design_angle_check(f, 0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(t_design_angle_check(f, 1) - 1 / d) < 1e-9);
        CHECK(std::abs(t_design_angle_check(f, 2) - 2 / (d * (d + 1))) < 1e-9);
    }
}

TEST_CASE("angle_set_is_zero_or_inverse_dimension") {
    for (const auto &f : small_families()) {
        for (size_t s = 0; s < f.num_states(); s++) {
            for (size_t t = s + 1; t < f.num_states(); t++) {
                double sq = std::norm(inner(f.state(s / f.d, s % f.d), f.state(t / f.d, t % f.d)));
                bool ok = sq < 1e-9 || std::abs(sq - 1.0 / f.d) < 1e-9;
                if (!ok) {
                    FAIL("unexpected squared overlap ", sq);
                }
            }
        }
    }
}

TEST_CASE("global_phases_do_not_change_verification") {
    Rng rng(31);
    std::uniform_real_distribution<double> ang(0, 2 * M_PI);
    auto f = mub_galois_ring(3);
    auto g = f;
    for (auto &basis : g.bases) {
        for (auto &s : basis) {
            cplx ph = std::polar(1.0, ang(rng));
            for (auto &a : s.amps()) {
                a *= ph;
            }
        }
    }
    auto rf = verify_unbiased(f, 1e-9);
    auto rg = verify_unbiased(g, 1e-9);
    CHECK(rg.pass == rf.pass);
    CHECK(std::abs(rg.max_unbiasedness_error - rf.max_unbiasedness_error) < 1e-12);
    auto m = random_gaussian_matrix(8, 8, rng);
    auto n = random_gaussian_matrix(8, 8, rng);
    CHECK(std::abs(state_design_sum(f, m, n) - state_design_sum(g, m, n)) < 1e-9);
    CHECK(std::abs(t_design_angle_check(f, 2) - t_design_angle_check(g, 2)) < 1e-12);
}

TEST_CASE("mub_for_dimension") {
    CHECK(mub_for_dimension(8).kind == MubKind::GaloisRing);
    CHECK(mub_for_dimension(9).kind == MubKind::PrimePower);
    CHECK(mub_for_dimension(7).kind == MubKind::Prime);
    CHECK(mub_for_dimension(2).d == 2);
    CHECK_THROWS(mub_for_dimension(6));
    CHECK_THROWS(mub_for_dimension(1));
}

TEST_CASE("export_parse_round_trip") {
    for (const auto &f : small_families()) {
        std::string text = export_mub(f);
        auto g = parse_mub(text);
        CHECK(g.d == f.d);
        CHECK(g.kind == f.kind);
        CHECK(g.bases == f.bases);
        CHECK(export_mub(g) == text);
    }
    auto text = export_mub(mub_prime(3));
    CHECK(text.rfind("MUB d=3 kind=prime\n", 0) == 0);
    CHECK_THROWS(parse_mub("MUB d=3\n"));
    CHECK_THROWS(parse_mub("MUB d=3 kind=prime\n0 0 1 0\n"));
}
