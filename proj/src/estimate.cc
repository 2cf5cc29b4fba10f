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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "qdesign/mub_circuits.h"

namespace qdesign {

std::string protocol_name(Protocol p) {
    switch (p) {
        case Protocol::MubMc:
            return "mub_mc";
        case Protocol::MubExact:
            return "mub_exact";
        case Protocol::Projected:
            return "projected";
        case Protocol::Ancilla:
            return "ancilla";
    }
    return "unknown";
}

Protocol parse_protocol(const std::string &name) {
    for (Protocol p : {Protocol::MubMc, Protocol::MubExact, Protocol::Projected, Protocol::Ancilla}) {
        if (protocol_name(p) == name) {
            return p;
        }
    }
    throw std::invalid_argument("unknown protocol '" + name + "'");
}

namespace {

// Kraus operators U^dagger A_k of the channel the measurement actually sees.
std::vector<ComplexMatrix> reversed_kraus(const ExperimentConfig &cfg) {
    const KrausChannel &ch = cfg.channel;
    if (ch.dim == 0 || ch.kraus.empty()) {
        throw std::invalid_argument("experiment: empty channel");
    }
    if (!ch.trace_preserving) {
        throw std::invalid_argument("experiment: channel must be trace preserving");
    }
    if (cfg.workers < 1) {
        throw std::invalid_argument("experiment: workers must be >= 1");
    }
    if (cfg.target_unitary.rows() == 0) {
        return ch.kraus;
    }
    const ComplexMatrix &u = cfg.target_unitary;
    if (u.rows() != ch.dim || u.cols() != ch.dim || !u.is_unitary(1e-8)) {
        throw std::invalid_argument("experiment: target unitary does not match the channel");
    }
    std::vector<ComplexMatrix> out;
    ComplexMatrix u_dag = u.adjoint();
    for (const auto &a : ch.kraus) {
        out.push_back(u_dag * a);
    }
    return out;
}

ComplexMatrix target_or_identity(const ExperimentConfig &cfg) {
    return cfg.target_unitary.rows() ? cfg.target_unitary : ComplexMatrix::identity(cfg.channel.dim);
}

double success_probability(const std::vector<ComplexMatrix> &kraus, const StateVector &psi) {
    double total = 0;
    for (const auto &b : kraus) {
        total += std::norm(inner(psi, b * psi));
    }
    return total;
}

// One candidate input: success probability and the value recorded on success.
struct Outcome {
    double prob = 0;
    double value = 1;
};

struct Moments {
    double sum = 0;
    double sum_sq = 0;
    uint64_t count = 0;
};

Moments sample_shard(const std::vector<Outcome> &outcomes, uint64_t trials, uint64_t seed) {
    Rng rng(seed);
    std::uniform_int_distribution<size_t> pick(0, outcomes.size() - 1);
    std::uniform_real_distribution<double> unif(0, 1);
    Moments m;
    for (uint64_t t = 0; t < trials; t++) {
        const Outcome &o = outcomes[pick(rng)];
        double x = unif(rng) < o.prob ? o.value : 0;
        m.sum += x;
        m.sum_sq += x * x;
    }
    m.count = trials;
    return m;
}

// Exact average for trials = 0, otherwise a sharded two-stage sample.
void estimate_mean(const std::vector<Outcome> &outcomes, const ExperimentConfig &cfg, EstimateResult &res) {
    res.seed = cfg.seed;
    if (cfg.trials == 0) {
        double total = 0;
        for (const auto &o : outcomes) {
            total += o.prob * o.value;
        }
        res.p_hat = total / (double)outcomes.size();
        res.std_err = 0;
        res.trials_used = 0;
        return;
    }
    uint64_t shards = std::min<uint64_t>((uint64_t)cfg.workers, cfg.trials);
    std::vector<Moments> parts(shards);
    std::vector<std::thread> pool;
    for (uint64_t s = 0; s < shards; s++) {
        uint64_t n = cfg.trials / shards + (s < cfg.trials % shards ? 1 : 0);
        uint64_t seed = derive_seed(cfg.seed, s);
        if (shards == 1) {
            parts[s] = sample_shard(outcomes, n, seed);
        } else {
            pool.emplace_back([&, s, n, seed] { parts[s] = sample_shard(outcomes, n, seed); });
        }
    }
    for (auto &t : pool) {
        t.join();
    }
    Moments total;
    for (const auto &m : parts) {
        total.sum += m.sum;
        total.sum_sq += m.sum_sq;
        total.count += m.count;
    }
    double n = (double)total.count;
    res.p_hat = total.sum / n;
    double var = std::max(0.0, total.sum_sq / n - res.p_hat * res.p_hat);
    res.std_err = std::sqrt(var / n);
    res.trials_used = total.count;
}

}  // namespace

EstimateResult mub_mc_estimate(const ExperimentConfig &cfg, const MubFamily &family) {
    auto kraus = reversed_kraus(cfg);
    if (family.d != cfg.channel.dim) {
        throw std::invalid_argument("mub_mc_estimate: family dimension differs from channel dimension");
    }
    std::vector<Outcome> outcomes;
    for (const auto &basis : family.bases) {
        for (const auto &psi : basis) {
            outcomes.push_back({success_probability(kraus, psi), 1});
        }
    }
    EstimateResult res;
    res.protocol = cfg.protocol == Protocol::MubExact ? Protocol::MubExact : Protocol::MubMc;
    res.d = family.d;
    estimate_mean(outcomes, cfg, res);
    res.exact = avg_fidelity_exact(target_or_identity(cfg), cfg.channel);
    res.fidelity = res.p_hat;
    return res;
}

EstimateResult projected_estimate(const ExperimentConfig &cfg) {
    auto kraus = reversed_kraus(cfg);
    size_t d = cfg.channel.dim;
    int num_qubits = 0;
    while ((size_t{1} << num_qubits) < d) {
        num_qubits++;
    }
    if ((size_t{1} << num_qubits) != d || num_qubits < 2) {
        throw std::invalid_argument("projected_estimate: dimension must be 2^N with N >= 2");
    }
    int p = embedding_prime(num_qubits);
    std::vector<Outcome> outcomes;
    for (int a = 0; a <= p; a++) {
        for (int b = 0; b < p; b++) {
            ProjectedPrep prep = projected_mub_prepare(num_qubits, a, b);
            double w = prep.projection_weight;
            if (w == 0) {
                outcomes.push_back({1, 0});
            } else {
                outcomes.push_back({success_probability(kraus, prep.state), w * w});
            }
        }
    }
    EstimateResult res;
    res.protocol = Protocol::Projected;
    res.d = d;
    estimate_mean(outcomes, cfg, res);
    double scale = (double)p * (p + 1) / ((double)d * (d + 1));
    res.fidelity = scale * res.p_hat;
    res.exact = avg_fidelity_exact(target_or_identity(cfg), cfg.channel) / scale;
    return res;
}

Circuit bell_prep_circuit(size_t d) {
    if (d < 2) {
        throw std::invalid_argument("bell_prep_circuit: d must be >= 2");
    }
    int n = 0;
    while ((size_t{1} << n) < d) {
        n++;
    }
    if ((size_t{1} << n) == d) {
        Circuit c(2 * n, 2);
        for (int i = 0; i < n; i++) {
            c.append(Gate::h(n + i));
        }
        for (int i = 0; i < n; i++) {
            c.append(Gate::cnot(n + i, i));
        }
        return c;
    }
    Circuit c(2, (int)d);
    c.append(Gate::fp(1));
    c.append(Gate::cadd(1, 0));
    return c;
}

EstimateResult ancilla_entanglement_estimate(const ExperimentConfig &cfg) {
    auto kraus = reversed_kraus(cfg);
    size_t d = cfg.channel.dim;
    if (d > 32) {
        throw std::invalid_argument("ancilla_entanglement_estimate: dimension exceeds 32");
    }
    Circuit prep = bell_prep_circuit(d);
    Circuit unprep = prep.inverse();
    StateVector phi = simulate(prep, StateVector::basis(d * d, 0));
    double fe = 0;
    for (const auto &b : kraus) {
        StateVector out(d * d);
        for (size_t anc = 0; anc < d; anc++) {
            for (size_t i = 0; i < d; i++) {
                cplx acc = 0;
                for (size_t j = 0; j < d; j++) {
                    acc += b(i, j) * phi[anc * d + j];
                }
                out[anc * d + i] = acc;
            }
        }
        fe += std::norm(simulate(unprep, out)[0]);
    }
    EstimateResult res;
    res.protocol = Protocol::Ancilla;
    res.d = d;
    estimate_mean({{fe, 1}}, cfg, res);
    res.exact = entanglement_fidelity(make_channel(kraus));
    res.fidelity = ((double)d * res.p_hat + 1) / ((double)d + 1);
    return res;
}

EstimateResult run_experiment(const ExperimentConfig &cfg) {
    switch (cfg.protocol) {
        case Protocol::MubMc:
            return mub_mc_estimate(cfg, mub_for_dimension(cfg.channel.dim));
        case Protocol::MubExact: {
            ExperimentConfig exact = cfg;
            exact.trials = 0;
            return mub_mc_estimate(exact, mub_for_dimension(cfg.channel.dim));
        }
        case Protocol::Projected:
            return projected_estimate(cfg);
        case Protocol::Ancilla:
            return ancilla_entanglement_estimate(cfg);
    }
    throw std::invalid_argument("run_experiment: unknown protocol");
}

ComplexMatrix hermitian_pauli(const PauliLabel &label) {
    if (label.d != 2) {
        throw std::invalid_argument("hermitian_pauli: qubit labels only");
    }
    PauliLabel l = label;
    l.phase = 0;
    for (int i = 0; i < l.n; i++) {
        l.phase += l.x[i] * l.x[l.n + i];
    }
    l.phase %= 4;
    return pauli_matrix(l);
}

PauliEstimate pauli_expectation(const ComplexMatrix &rho, const PauliLabel &label, uint64_t shots, Rng &rng) {
    ComplexMatrix p = hermitian_pauli(label);
    if (rho.rows() != p.rows() || rho.cols() != p.cols()) {
        throw std::invalid_argument("pauli_expectation: state and label dimensions differ");
    }
    if (shots == 0) {
        throw std::invalid_argument("pauli_expectation: shots must be >= 1");
    }
    double expect = (p * rho).trace().real();
    double prob_plus = std::clamp((1 + expect) / 2, 0.0, 1.0);
    std::binomial_distribution<uint64_t> draw(shots, prob_plus);
    uint64_t plus = draw(rng);
    PauliEstimate est;
    est.mean = (2.0 * (double)plus - (double)shots) / (double)shots;
    est.std_err = std::sqrt(std::max(0.0, 1 - est.mean * est.mean) / (double)shots);
    return est;
}

std::string result_to_json(const EstimateResult &r) {
    nlohmann::json j = {
        {"protocol", protocol_name(r.protocol)},
        {"d", r.d},
        {"trials", r.trials_used},
        {"seed", r.seed},
        {"p_hat", r.p_hat},
        {"std_err", r.std_err},
        {"exact", r.exact},
        {"fidelity", r.fidelity},
    };
    return j.dump(2);
}

}  // namespace qdesign
