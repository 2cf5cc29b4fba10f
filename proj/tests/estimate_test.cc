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

#include "qdesign/estimate.h"

#include <cmath>

#include "doctest.h"
#include "json.hpp"

using namespace qdesign;

namespace {

ExperimentConfig config(const KrausChannel &ch, Protocol protocol, uint64_t trials, uint64_t seed = 1) {
    ExperimentConfig cfg;
    cfg.protocol = protocol;
    cfg.channel = ch;
    cfg.trials = trials;
    cfg.seed = seed;
    return cfg;
}

// Fubini-Study average of the success probability by direct sampling of Haar states.
double haar_success_oracle(const KrausChannel &ch, Rng &rng, int samples) {
    double total = 0;
    for (int s = 0; s < samples; s++) {
        StateVector psi = random_state(ch.dim, rng);
        for (const auto &a : ch.kraus) {
            total += std::norm(inner(psi, a * psi));
        }
    }
    return total / samples;
}

}  // namespace

TEST_CASE("mub_exact_mode_matches_closed_form") {
    Rng rng(2);
    for (size_t d : {2, 3, 4, 5, 8, 9}) {
        MubFamily f = mub_for_dimension(d);
        for (int t = 0; t < 3; t++) {
            KrausChannel ch = random_channel(d, 2, rng);
            EstimateResult r = mub_mc_estimate(config(ch, Protocol::MubMc, 0), f);
            CHECK(std::abs(r.p_hat - avg_fidelity_exact(ComplexMatrix::identity(d), ch)) < 1e-9);
            CHECK(r.std_err == 0);
            CHECK(r.trials_used == 0);
        }
    }
    KrausChannel ch = random_channel(3, 2, rng);
    CHECK(haar_success_oracle(ch, rng, 20000) ==
          doctest::Approx(run_experiment(config(ch, Protocol::MubExact, 50)).p_hat).epsilon(0.01));
}

TEST_CASE("mub_monte_carlo") {
    EstimateResult id = run_experiment(config(identity_channel(4), Protocol::MubMc, 1000));
    CHECK(id.p_hat == 1);
    CHECK(id.std_err == 0);
    EstimateResult r = run_experiment(config(depolarizing(4, 0.9), Protocol::MubMc, 100000, 7));
    CHECK(r.exact == doctest::Approx(0.925));
    CHECK(std::abs(r.p_hat - 0.925) < 3 * r.std_err);
    CHECK(r.std_err <= 1 / std::sqrt(100000.0));
    CHECK(r.trials_used == 100000);

    // Unbiasedness over repetitions.
    double mean = 0;
    double se = 0;
    for (uint64_t seed = 0; seed < 100; seed++) {
        EstimateResult rep = run_experiment(config(depolarizing(3, 0.6), Protocol::MubMc, 2000, seed));
        mean += rep.p_hat / 100;
        se = rep.std_err;
    }
    CHECK(std::abs(mean - (0.6 + 0.4 / 3)) < 4 * se / 10);
}

TEST_CASE("workers_are_deterministic") {
    ExperimentConfig cfg = config(depolarizing(2, 0.7), Protocol::MubMc, 10001, 42);
    cfg.workers = 4;
    EstimateResult a = run_experiment(cfg);
    EstimateResult b = run_experiment(cfg);
    CHECK(a.p_hat == b.p_hat);
    CHECK(a.trials_used == 10001);
    cfg.workers = 1;
    EstimateResult c = run_experiment(cfg);
    CHECK(std::abs(c.p_hat - a.p_hat) < 5 * a.std_err + 1e-12);
    cfg.workers = 0;
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("target_unitary_factors_out") {
    Rng rng(8);
    ComplexMatrix u = random_unitary(4, rng);
    KrausChannel noise = random_channel(4, 2, rng);
    ExperimentConfig plain = config(noise, Protocol::MubExact, 0);
    ExperimentConfig with_u = config(compose(unitary_channel(u), noise), Protocol::MubExact, 0);
    with_u.target_unitary = u;
    CHECK(run_experiment(with_u).p_hat == doctest::Approx(run_experiment(plain).p_hat).epsilon(1e-10));
    CHECK(run_experiment(with_u).exact == doctest::Approx(avg_fidelity_exact(u, with_u.channel)).epsilon(1e-12));
    with_u.target_unitary = ComplexMatrix::identity(3);
    CHECK_THROWS_AS(run_experiment(with_u), std::invalid_argument);
}

TEST_CASE("projected_protocol") {
    EstimateResult id = run_experiment(config(identity_channel(4), Protocol::Projected, 0));
    CHECK(id.fidelity == doctest::Approx(1).epsilon(1e-9));
    EstimateResult dep = run_experiment(config(depolarizing(4, 0.8), Protocol::Projected, 0));
    CHECK(std::abs(dep.fidelity - 0.85) < 1e-6);
    Rng rng(4);
    KrausChannel ch = random_channel(4, 3, rng);
    EstimateResult r = run_experiment(config(ch, Protocol::Projected, 0));
    CHECK(std::abs(r.fidelity - avg_fidelity_exact(ComplexMatrix::identity(4), ch)) < 1e-6);
    CHECK(std::abs(r.p_hat - r.exact) < 1e-6);
    EstimateResult mc = run_experiment(config(ch, Protocol::Projected, 200000, 3));
    CHECK(std::abs(mc.p_hat - r.exact) < 4 * mc.std_err);
    CHECK_THROWS_AS(run_experiment(config(identity_channel(3), Protocol::Projected, 0)), std::invalid_argument);
}

TEST_CASE("ancilla_protocol") {
    CHECK(run_experiment(config(identity_channel(4), Protocol::Ancilla, 0)).p_hat == doctest::Approx(1));
    EstimateResult dep = run_experiment(config(depolarizing(4, 0.9), Protocol::Ancilla, 0));
    CHECK(dep.p_hat == doctest::Approx(0.90625).epsilon(1e-12));
    CHECK(dep.fidelity == doctest::Approx(0.925).epsilon(1e-12));
    Rng rng(6);
    for (size_t d : {2, 3, 4, 6, 8}) {
        KrausChannel ch = random_channel(d, 3, rng);
        EstimateResult r = run_experiment(config(ch, Protocol::Ancilla, 0));
        CHECK(std::abs(r.p_hat - entanglement_fidelity(ch)) < 1e-10);
        CHECK(std::abs(r.fidelity - avg_fidelity_exact(ComplexMatrix::identity(d), ch)) < 1e-10);
    }
    Circuit prep = bell_prep_circuit(4);
    CHECK(prep.num_qudits() == 4);
    StateVector phi = simulate(prep, StateVector::basis(16, 0));
    for (size_t x = 0; x < 4; x++) {
        CHECK(std::abs(phi[x * 4 + x] - 0.5) < 1e-12);
    }
}

TEST_CASE("pauli_expectation_sampling") {
    Rng rng(9);
    ComplexMatrix zero{{1, 0}, {0, 0}};
    PauliEstimate z = pauli_expectation(zero, PauliLabel::from_index(2, 1, 2), 1000, rng);
    CHECK(z.mean == 1);
    PauliEstimate x = pauli_expectation(ComplexMatrix::identity(2) * 0.5, PauliLabel::from_index(2, 1, 1), 10000, rng);
    CHECK(std::abs(x.mean) < 3 / std::sqrt(10000.0));
    CHECK(hermitian_pauli(PauliLabel::from_index(2, 1, 3)).is_hermitian(1e-15));
    for (int t = 0; t < 10; t++) {
        ComplexMatrix rho = random_density_matrix(4, rng);
        PauliLabel l = PauliLabel::from_index(2, 2, 1 + t);
        double want = (hermitian_pauli(l) * rho).trace().real();
        PauliEstimate e = pauli_expectation(rho, l, 20000, rng);
        CHECK(e.std_err <= 1 / std::sqrt(20000.0));
        CHECK(std::abs(e.mean - want) < 5 / std::sqrt(20000.0));
    }
}

TEST_CASE("result_json_schema") {
    EstimateResult r = run_experiment(config(depolarizing(2, 0.5), Protocol::MubMc, 100, 5));
    auto j = nlohmann::json::parse(result_to_json(r));
    for (const char *key : {"protocol", "d", "trials", "seed", "p_hat", "std_err", "exact", "fidelity"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["protocol"] == "mub_mc");
    CHECK(j["seed"] == 5);
    CHECK(parse_protocol("ancilla") == Protocol::Ancilla);
    CHECK_THROWS_AS(parse_protocol("bogus"), std::invalid_argument);
}
