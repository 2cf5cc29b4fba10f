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

#include <cmath>

#include "doctest.h"
#include "qdesign/circuit.h"
#include "qdesign/mub.h"
#include "qdesign/mub_circuits.h"
#include "qdesign/random.h"

using namespace qdesign;

namespace {

const double R2 = 1 / std::sqrt(2.0);

// Dense operator of a one-qubit matrix on qubit q of n (qubit q has weight 2^q).
ComplexMatrix embed_1q(const ComplexMatrix &m, int q, int n) {
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (int k = n - 1; k >= 0; k--) {
        out = tensor(out, k == q ? m : ComplexMatrix::identity(2));
    }
    return out;
}

ComplexMatrix dense_cnot(int control, int target, int n) {
    size_t dim = size_t{1} << n;
    ComplexMatrix out(dim, dim);
    for (size_t x = 0; x < dim; x++) {
        size_t y = ((x >> control) & 1) ? x ^ (size_t{1} << target) : x;
        out(y, x) = 1;
    }
    return out;
}

StateVector head(const StateVector &v, size_t len) {
    std::vector<cplx> amps(v.amps().begin(), v.amps().begin() + len);
    StateVector out(amps);
    out.normalize();
    return out;
}

Circuit random_qubit_circuit(int n, int gates, Rng &rng) {
    Circuit c(n, 2);
    std::uniform_int_distribution<int> kind(0, 8), qubit(0, n - 1);
    std::uniform_real_distribution<double> angle(-3, 3);
    for (int g = 0; g < gates; g++) {
        int q = qubit(rng);
        int q2 = (q + 1 + qubit(rng) % (n - 1)) % n;
        switch (kind(rng)) {
            case 0:
                c.append(Gate::h(q));
                break;
            case 1:
                c.append(Gate::t(q));
                break;
            case 2:
                c.append(Gate::ry(q, angle(rng)));
                break;
            case 3:
                c.append(Gate::t_pi8(q));
                break;
            case 4:
                c.append(Gate::cnot(q, q2));
                break;
            case 5:
                c.append(Gate::cphase(q, q2, 3, 7));
                break;
            case 6:
                c.append(Gate::s(q).with_controls({q2}));
                break;
            case 7:
                c.append(Gate::phase_vec(q, {2, 5}, 9));
                break;
            default:
                c.append(Gate::x(q));
                break;
        }
    }
    return c;
}

}  // namespace

TEST_CASE("simulate_basic_gates") {
    Circuit h(1, 2);
    h.append(Gate::h(0));
    StateVector plus = simulate(h, StateVector::basis(2, 0));
    CHECK(std::abs(plus[0] - R2) < 1e-15);
    CHECK(std::abs(plus[1] - R2) < 1e-15);

    // |10> with qubit 1 as the first tensor factor: qubit 1 set, index 2.
    Circuit cx(2, 2);
    cx.append(Gate::cnot(1, 0));
    StateVector out = simulate(cx, StateVector::basis(4, 2));
    CHECK(std::abs(out[3] - 1.0) < 1e-15);

    Circuit hh(1, 2);
    hh.append(Gate::h(0));
    hh.append(Gate::h(0));
    CHECK(circuit_unitary(hh).max_abs_diff(ComplexMatrix::identity(2)) < 1e-15);
    CHECK(circuit_unitary(Circuit(3, 2)).max_abs_diff(ComplexMatrix::identity(8)) < 1e-15);
}

TEST_CASE("simulate_matches_dense_product") {
    ComplexMatrix hm{{R2, R2}, {R2, -R2}};
    ComplexMatrix tm = ComplexMatrix::diagonal({1, std::polar(1.0, M_PI / 4)});
    ComplexMatrix ym{{std::cos(0.35), -std::sin(0.35)}, {std::sin(0.35), std::cos(0.35)}};
    Circuit c(3, 2);
    c.append(Gate::h(0));
    c.append(Gate::cnot(0, 2));
    c.append(Gate::t_pi8(2));
    c.append(Gate::ry(1, 0.7));
    c.append(Gate::cnot(1, 0));
    c.append(Gate::h(2));
    ComplexMatrix dense = embed_1q(hm, 2, 3) * dense_cnot(1, 0, 3) * embed_1q(ym, 1, 3) * embed_1q(tm, 2, 3) *
                          dense_cnot(0, 2, 3) * embed_1q(hm, 0, 3);
    CHECK(circuit_unitary(c).max_abs_diff(dense) < 1e-12);

    Rng rng(5);
    StateVector in = random_state(8, rng);
    StateVector a = simulate(c, in), b = dense * in;
    for (size_t i = 0; i < 8; i++) {
        CHECK(std::abs(a[i] - b[i]) < 1e-12);
    }
}

TEST_CASE("fast_and_reference_paths_agree") {
    Rng rng(11);
    for (int trial = 0; trial < 10; trial++) {
        Circuit c = random_qubit_circuit(4, 40, rng);
        StateVector in = random_state(16, rng);
        StateVector a = simulate(c, in), b = simulate_reference(c, in);
        double worst = 0;
        for (size_t i = 0; i < 16; i++) {
            worst = std::max(worst, std::abs(a[i] - b[i]));
        }
        CHECK(worst < 1e-12);
        CHECK(std::abs(a.norm() - 1) < 1e-9);
        ComplexMatrix u = circuit_unitary(c);
        CHECK(u.is_unitary(1e-10));
        CHECK((u * circuit_unitary(c.inverse())).max_abs_diff(ComplexMatrix::identity(16)) < 1e-10);
    }
}

TEST_CASE("qudit_gates") {
    Circuit f(1, 3);
    f.append(Gate::fp(0));
    StateVector flat = simulate(f, StateVector::basis(3, 0));
    for (size_t i = 0; i < 3; i++) {
        CHECK(std::abs(flat[i] - 1 / std::sqrt(3.0)) < 1e-15);
    }

    Circuit c(2, 3);
    c.append(Gate::xd(0, 2));
    c.append(Gate::cadd(0, 1, 2));
    StateVector out = simulate(c, StateVector::basis(9, 0));
    // digit0 = 2, digit1 = 0 + 2 * 2 = 1 mod 3: index 2 + 3 * 1 = 5.
    CHECK(std::abs(out[5] - 1.0) < 1e-15);

    Circuit q(2, 5);
    q.append(Gate::qphase(0, 2, 5));
    q.append(Gate::cphase(0, 1, 1, 5));
    q.append(Gate::zd(1, 3));
    q.append(Gate::phase_vec(0, {0, 1, 2, 3, 4}, 10));
    ComplexMatrix u = circuit_unitary(q);
    for (size_t x = 0; x < 25; x++) {
        int64_t u0 = x % 5, u1 = x / 5;
        cplx want = root_of_unity(2 * u0 * u0, 5) * root_of_unity(u0 * u1, 5) * root_of_unity(3 * u1, 5) *
                    root_of_unity(u0, 10);
        CHECK(std::abs(u(x, x) - want) < 1e-12);
    }
    CHECK((circuit_unitary(q) * circuit_unitary(q.inverse())).max_abs_diff(ComplexMatrix::identity(25)) < 1e-12);
}

TEST_CASE("append_validation") {
    Circuit c(2, 2);
    CHECK_THROWS_AS(c.append(Gate::h(2)), std::invalid_argument);
    CHECK_THROWS_AS(c.append(Gate::cnot(1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(c.append(Gate::phase(0, 1, 0)), std::invalid_argument);
    CHECK_THROWS_AS(c.append(Gate::phase_vec(0, {1, 2, 3}, 4)), std::invalid_argument);
    Circuit q(2, 3);
    CHECK_THROWS_AS(q.append(Gate::h(0)), std::invalid_argument);
    CHECK_THROWS_AS(q.append(Gate::zd(0, 1).with_controls({1})), std::invalid_argument);
    CHECK_THROWS_AS(q.append(Gate::fp(0, 2)), std::invalid_argument);
    CHECK_THROWS_AS(simulate(c, StateVector::basis(8, 0)), std::invalid_argument);
}

TEST_CASE("emit_parse_round_trip") {
    Circuit h(1, 2);
    h.append(Gate::h(0));
    std::string text = emit_circuit(h);
    CHECK(text == "CIRCUIT n=1 d=2\nGATE H targets=0 controls= param=0/1\n");

    Rng rng(3);
    Circuit c = random_qubit_circuit(4, 60, rng);
    CHECK(parse_circuit(emit_circuit(c)) == c);

    Circuit m = build_mub_circuit_prime(5, 2, 1, 2);
    CHECK(emit_circuit(parse_circuit(emit_circuit(m))) == emit_circuit(m));
    Circuit pp = build_mub_circuit_prime_power(3, 2, 4, 7);
    CHECK(parse_circuit(emit_circuit(pp)) == pp);

    std::string bad = "CIRCUIT n=2 d=2\n# comment\nGATE H targets=0 controls= param=0/1\nGATE H targets=7 controls= param=0/1\n";
    try {
        parse_circuit(bad);
        FAIL("expected parse error");
    } catch (const std::invalid_argument &e) {
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_circuit("CIRCUIT n=1 d=2\nGATE FOO targets=0 controls= param=0/1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit("CIRCUIT n=1 d=2\nGATE H 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit("HELLO\n"), std::invalid_argument);
}

TEST_CASE("depth_and_counts") {
    Circuit c(3, 2);
    c.append(Gate::h(0));
    c.append(Gate::h(1));
    c.append(Gate::cnot(0, 1));
    c.append(Gate::h(2));
    CHECK(c.depth() == 2);
    CHECK(c.gate_count() == 4);
    CHECK(c.multi_qudit_count() == 1);
    CHECK(c.count(GateKind::H) == 3);
}

TEST_CASE("prime_mub_circuit_small_cases") {
    Circuit comp = build_mub_circuit_prime(3, 1, 3, 2);
    StateVector out = simulate(comp, StateVector::basis(4, 0));
    CHECK(std::abs(out[2] - 1.0) < 1e-15);

    StateVector flat = head(simulate(build_mub_circuit_prime(3, 1, 0, 0), StateVector::basis(4, 0)), 3);
    for (size_t i = 0; i < 3; i++) {
        CHECK(std::abs(flat[i] - 1 / std::sqrt(3.0)) < 1e-12);
    }
    CHECK_THROWS_AS(build_mub_circuit_prime(5, 2, 6, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_mub_circuit_prime(5, 2, 0, 5), std::invalid_argument);
    CHECK_THROWS_AS(build_mub_circuit_prime(11, 2, 0, 0), std::invalid_argument);
}

TEST_CASE("prime_mub_circuit_matches_closed_form") {
    for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 1}, {5, 2}, {7, 2}, {11, 3}, {13, 3}}) {
        MubFamily f = mub_prime(p);
        size_t width = (size_t)n + 1;
        for (int a = 0; a <= p; a++) {
            for (int b = 0; b < p; b++) {
                Circuit c = build_mub_circuit_prime(p, n, a, b);
                StateVector out = simulate(c, StateVector::basis(size_t{1} << width, 0));
                CHECK(overlap_modulus(head(out, p), f.state(a, b)) >= 1 - 1e-10);
                CHECK(c.gate_count() <= width * (width + 1) / 2 + 3 * width);
                CHECK(c.depth() <= (size_t)n + 3);
            }
        }
    }
}

TEST_CASE("prime_power_mub_circuit_matches_closed_form") {
    MubFamily f = mub_prime_power(3, 2);
    for (uint32_t a = 0; a <= 9; a++) {
        for (uint32_t b = 0; b < 9; b++) {
            Circuit c = build_mub_circuit_prime_power(3, 2, a, b);
            StateVector out = simulate(c, StateVector::basis(9, 0));
            CHECK(overlap_modulus(out, f.state(a, b)) >= 1 - 1e-10);
            if (a < 9) {
                CHECK(c.count(GateKind::CPHASE) == 1);
                CHECK(c.count(GateKind::QPHASE) == 2);
            }
        }
    }
    MubFamily f3 = mub_prime(3);
    for (uint32_t a = 0; a <= 3; a++) {
        for (uint32_t b = 0; b < 3; b++) {
            StateVector out = simulate(build_mub_circuit_prime_power(3, 1, a, b), StateVector::basis(3, 0));
            CHECK(overlap_modulus(out, f3.state(a, b)) >= 1 - 1e-12);
        }
    }
    MubFamily f25 = mub_prime_power(5, 2);
    for (uint32_t a : {0u, 1u, 7u, 24u, 25u}) {
        for (uint32_t b : {0u, 3u, 19u}) {
            StateVector out = simulate(build_mub_circuit_prime_power(5, 2, a, b), StateVector::basis(25, 0));
            CHECK(overlap_modulus(out, f25.state(a, b)) >= 1 - 1e-10);
        }
    }
    CHECK_THROWS_AS(build_mub_circuit_prime_power(2, 2, 0, 0), std::invalid_argument);
}

TEST_CASE("amplitude_amplification_sweet_spots") {
    // A = H (x) H, good = |11>: p_good = 1/4.
    Circuit a(2, 2);
    a.append(Gate::h(0));
    a.append(Gate::h(1));
    ComplexMatrix good(4, 4);
    good(3, 3) = 1;
    StateVector out = amplitude_amplify(a, good, 1);
    CHECK(std::abs(std::norm(out[3]) - 1) < 1e-12);

    // p_good = sin^2(pi/10) prepared by a single RY.
    Circuit r(1, 2);
    r.append(Gate::ry(0, 2 * M_PI / 10));
    ComplexMatrix good1(2, 2);
    good1(1, 1) = 1;
    out = amplitude_amplify(r, good1, 2);
    CHECK(std::abs(std::norm(out[1]) - 1) < 1e-12);

    ComplexMatrix none(4, 4);
    CHECK_THROWS_AS(amplitude_amplify(a, none, 1), std::invalid_argument);
    CHECK_THROWS_AS(amplitude_amplify(a, ComplexMatrix::identity(4), 1), std::invalid_argument);
}

TEST_CASE("amplitude_amplification_random_instances") {
    Rng rng(2024);
    for (int trial = 0; trial < 20; trial++) {
        Circuit prep = random_qubit_circuit(3, 25, rng);
        StateVector psi = simulate(prep, StateVector::basis(8, 0));
        // Random good subspace spanned by a few computational basis states.
        ComplexMatrix good(8, 8);
        std::uniform_int_distribution<int> coin(0, 1);
        int rank = 0;
        for (size_t i = 0; i < 8; i++) {
            if (coin(rng)) {
                good(i, i) = 1;
                rank++;
            }
        }
        if (rank == 0 || rank == 8) {
            continue;
        }
        AmplitudeSplit split = amplitude_split(psi, good);
        double p_good = std::pow(std::sin(split.theta), 2);
        if (p_good < 1e-6 || p_good > 1 - 1e-6) {
            continue;
        }
        StateVector good_dir = good * psi;
        good_dir.normalize();
        StateVector bad_dir = (ComplexMatrix::identity(8) - good) * psi;
        bad_dir.normalize();
        // Dense oracle: Q = (2|psi><psi| - I)(I - 2 good).
        ComplexMatrix q = (psi.projector() * cplx(2) - ComplexMatrix::identity(8)) *
                          (ComplexMatrix::identity(8) - good * cplx(2));
        StateVector dense = psi;
        for (int k = 0; k <= 3; k++) {
            StateVector out = amplitude_amplify(prep, good, k);
            CHECK(std::abs(inner(good_dir, out) - std::sin((2 * k + 1) * split.theta)) < 1e-9);
            CHECK(std::abs(inner(bad_dir, out) - std::cos((2 * k + 1) * split.theta)) < 1e-9);
            for (size_t i = 0; i < 8; i++) {
                CHECK(std::abs(out[i] - dense[i]) < 1e-9);
            }
            dense = q * dense;
        }
    }
}

TEST_CASE("projected_mub_preparation") {
    CHECK(embedding_prime(2) == 5);
    CHECK(embedding_prime(3) == 11);
    CHECK(embedding_prime(4) == 17);
    for (int n : {2, 3}) {
        int p = embedding_prime(n);
        MubFamily f = mub_prime(p);
        size_t out_dim = size_t{1} << n;
        for (int a = 0; a <= p; a++) {
            for (int b = 0; b < p; b++) {
                ProjectedPrep prep = projected_mub_prepare(n, a, b);
                if (a == p) {
                    if ((size_t)b < out_dim) {
                        CHECK(std::abs(prep.state[b] - 1.0) < 1e-15);
                    } else {
                        CHECK(prep.projection_weight == 0);
                    }
                    continue;
                }
                CHECK(prep.ancilla_residue < 1e-6);
                CHECK(std::abs(prep.cos_theta - R2) < 1e-12);
                CHECK(std::abs(prep.projection_weight - (double)out_dim / p) < 1e-12);
                CHECK(overlap_modulus(prep.state, head(f.state(a, b), out_dim)) >= 1 - 1e-8);
            }
        }
    }
}

TEST_CASE("parity_circuits") {
    Circuit one = parallel_prefix_parity(3, {1}, 0);
    CHECK(one.gate_count() == 1);

    for (int n = 2; n <= 6; n++) {
        std::vector<int> controls;
        for (int q = 0; q < n - 1; q++) {
            controls.push_back(q);
        }
        Circuit fast = parallel_prefix_parity(n, controls, n - 1);
        Circuit naive = naive_parity_chain(n, controls, n - 1);
        CHECK(circuit_unitary(fast).max_abs_diff(circuit_unitary(naive)) < 1e-12);
    }

    std::vector<int> controls{0, 1, 2, 3, 5, 6, 7, 8};
    Circuit c = parallel_prefix_parity(9, controls, 4);
    for (uint64_t x = 0; x < 512; x++) {
        uint64_t parity = 0;
        for (int q : controls) {
            parity ^= (x >> q) & 1;
        }
        CHECK(simulate_classical(c, x) == (x ^ (parity << 4)));
    }

    for (int r = 1; r <= 32; r++) {
        std::vector<int> ctl;
        for (int q = 0; q < r; q++) {
            ctl.push_back(q);
        }
        Circuit pc = parallel_prefix_parity(r + 1, ctl, r);
        size_t log2r = 0;
        while ((size_t{1} << log2r) < (size_t)r) {
            log2r++;
        }
        CHECK(pc.depth() == 2 * log2r + 1);
        CHECK(pc.gate_count() == 2 * (size_t)(r - 1) + 1);
    }
    CHECK_THROWS_AS(parallel_prefix_parity(3, {0, 2}, 2), std::invalid_argument);
}
