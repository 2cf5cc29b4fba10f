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

#include "qdesign/mub_circuits.h"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "qdesign/finite_algebra.h"

namespace qdesign {

namespace {

int64_t mod(int64_t v, int64_t m) {
    int64_t r = v % m;
    return r < 0 ? r + m : r;
}

int64_t pow2_mod(int e, int64_t m) {
    int64_t r = 1 % m;
    for (int i = 0; i < e; i++) {
        r = (r * 2) % m;
    }
    return r;
}

// Circle-method schedule of the complete graph on m vertices: m-1 rounds of
// disjoint pairs (m rounds when m is odd).
std::vector<std::vector<std::pair<int, int>>> round_robin(int m) {
    int slots = m + (m % 2);
    std::vector<std::vector<std::pair<int, int>>> rounds;
    for (int r = 0; r < slots - 1; r++) {
        std::vector<std::pair<int, int>> round;
        auto add = [&](int u, int v) {
            if (u < m && v < m) {
                round.emplace_back(std::min(u, v), std::max(u, v));
            }
        };
        add(slots - 1, r);
        for (int k = 1; k < slots / 2; k++) {
            add((r + k) % (slots - 1), (r - k + slots - 1) % (slots - 1));
        }
        rounds.push_back(std::move(round));
    }
    return rounds;
}

}  // namespace

Circuit build_mub_circuit_prime(int p, int num_qubits, int64_t a, int64_t b) {
    if (num_qubits < 1 || num_qubits > 20) {
        throw std::invalid_argument("prime MUB circuit: qubit count must be in [1, 20]");
    }
    if (p < 3 || !is_prime((uint64_t)p) || p > (int64_t{1} << (num_qubits + 1))) {
        throw std::invalid_argument("prime MUB circuit: p must be an odd prime at most 2^(N+1)");
    }
    if (a < 0 || a > p || b < 0 || b >= p) {
        throw std::invalid_argument("prime MUB circuit: need 0 <= a <= p and 0 <= b < p");
    }
    int width = num_qubits + 1;
    Circuit c(width, 2);
    if (a == p) {
        for (int i = 0; i < width; i++) {
            if ((b >> i) & 1) {
                c.append(Gate::x(i));
            }
        }
        return c;
    }
    for (int i = 0; i < width; i++) {
        c.append(Gate::h(i));
    }
    for (int i = 0; i < width; i++) {
        int64_t num = mod(b * pow2_mod(i, p) + a * pow2_mod(2 * i, p), p);
        c.append(Gate::phase(i, num, p));
    }
    for (const auto &round : round_robin(width)) {
        for (auto [i, j] : round) {
            c.append(Gate::cphase(i, j, mod(a * pow2_mod(i + j + 1, p), p), p));
        }
    }
    return c;
}

Circuit build_mub_circuit_prime_power(int p, int num_qudits, uint32_t a, uint32_t b) {
    if (p == 2) {
        throw std::invalid_argument("prime-power MUB circuit: p = 2 is not supported");
    }
    GfContext field(p, num_qudits);
    if (field.size() > 128) {
        throw std::invalid_argument("prime-power MUB circuit: p^N must be at most 128");
    }
    uint32_t q = field.size();
    if (a > q || b >= q) {
        throw std::invalid_argument("prime-power MUB circuit: label out of range");
    }
    Circuit c(num_qudits, p);
    if (a == q) {
        uint32_t rest = b;
        for (int i = 0; i < num_qudits; i++) {
            if (rest % p) {
                c.append(Gate::xd(i, rest % p));
            }
            rest /= p;
        }
        return c;
    }
    GfElement ea = field.element(a), eb = field.element(b), xi = field.generator();
    // Basis monomials xi^i in the polynomial basis: the label of xi^i is p^i for i < k.
    std::vector<GfElement> mono;
    for (int i = 0; i < 2 * num_qudits - 1; i++) {
        mono.push_back(field.pow(xi, i));
    }
    for (int i = 0; i < num_qudits; i++) {
        c.append(Gate::xd(i, field.trace(field.mul(eb, mono[i]))));
    }
    for (int i = 0; i < num_qudits; i++) {
        c.append(Gate::fp(i, 1));
    }
    for (int i = 0; i < num_qudits; i++) {
        c.append(Gate::qphase(i, field.trace(field.mul(ea, mono[2 * i])), p));
    }
    for (const auto &round : round_robin(num_qudits)) {
        for (auto [i, j] : round) {
            c.append(Gate::cphase(i, j, mod(2 * field.trace(field.mul(ea, mono[i + j])), p), p));
        }
    }
    return c;
}

AmplitudeSplit amplitude_split(const StateVector &psi, const ComplexMatrix &good_projector) {
    if (good_projector.rows() != psi.dim() || good_projector.cols() != psi.dim()) {
        throw std::invalid_argument("amplitude_split: projector dimension mismatch");
    }
    double p_good = expectation(good_projector, psi).real();
    p_good = std::min(1.0, std::max(0.0, p_good));
    return {std::asin(std::sqrt(p_good)), good_projector};
}

StateVector amplitude_amplify(const Circuit &prep, const ComplexMatrix &good_projector, int rounds) {
    if (rounds < 0) {
        throw std::invalid_argument("amplitude_amplify: rounds must be nonnegative");
    }
    size_t dim = prep.hilbert_dim();
    StateVector psi = simulate(prep, StateVector::basis(dim, 0));
    AmplitudeSplit split = amplitude_split(psi, good_projector);
    double p_good = std::pow(std::sin(split.theta), 2);
    if (p_good < 1e-12) {
        throw std::invalid_argument("amplitude_amplify: good probability is zero");
    }
    if (p_good > 1 - 1e-12) {
        throw std::invalid_argument("amplitude_amplify: good probability is already one");
    }
    Circuit unprep = prep.inverse();
    ComplexMatrix flip_good = ComplexMatrix::identity(dim) - good_projector * cplx(2);
    for (int r = 0; r < rounds; r++) {
        psi = flip_good * psi;
        psi = simulate(unprep, psi);
        cplx zero_amp = psi[0];
        for (size_t i = 0; i < dim; i++) {
            psi[i] = -psi[i];
        }
        psi[0] = zero_amp;
        psi = simulate(prep, psi);
    }
    return psi;
}

int embedding_prime(int num_qubits) {
    if (num_qubits < 1 || num_qubits > 20) {
        throw std::invalid_argument("embedding_prime: qubit count must be in [1, 20]");
    }
    uint64_t p = uint64_t{1} << num_qubits;
    while (!is_prime(p)) {
        p++;
    }
    return (int)p;
}

namespace {

double measured_cos_theta(const Circuit &state_prep, int high_qubit) {
    StateVector out = simulate(state_prep, StateVector::basis(state_prep.hilbert_dim(), 0));
    size_t half = size_t{1} << high_qubit;
    double w = 0;
    for (size_t x = 0; x < half; x++) {
        w += std::norm(out[x]);
    }
    return std::sqrt(w);
}

}  // namespace

Circuit projected_mub_circuit(int num_qubits, int64_t a, int64_t b) {
    if (num_qubits < 2) {
        throw std::invalid_argument("projected MUB: need at least 2 qubits");
    }
    int p = embedding_prime(num_qubits);
    if (a < 0 || a >= p) {
        throw std::invalid_argument("projected MUB circuit: need 0 <= a < p");
    }
    int high = num_qubits;
    int ancilla = num_qubits + 1;
    int width = num_qubits + 2;
    Circuit inner = build_mub_circuit_prime(p, num_qubits, a, b);
    double cos_theta = measured_cos_theta(inner, high);
    double alpha = std::cos(M_PI / 3) / cos_theta;
    if (alpha > 1) {
        throw std::runtime_error("projected MUB circuit: good amplitude too small for one round");
    }

    Circuit prep(width, 2);
    for (const auto &g : inner.gates()) {
        prep.append(g);
    }
    prep.append(Gate::ry(ancilla, 2 * std::acos(alpha)));

    Circuit flip_good(width, 2);
    flip_good.append(Gate::x(high));
    flip_good.append(Gate::x(ancilla));
    flip_good.append(Gate::cphase(high, ancilla, 1, 2));
    flip_good.append(Gate::x(high));
    flip_good.append(Gate::x(ancilla));

    // I - 2|0><0|, which is the zero reflection up to a global sign.
    Circuit flip_zero(width, 2);
    std::vector<int> others;
    for (int q = 0; q < width; q++) {
        flip_zero.append(Gate::x(q));
        if (q > 0) {
            others.push_back(q);
        }
    }
    flip_zero.append(Gate::z(0).with_controls(others));
    for (int q = 0; q < width; q++) {
        flip_zero.append(Gate::x(q));
    }

    Circuit c(width, 2);
    c.append(prep);
    c.append(flip_good);
    c.append(prep.inverse());
    c.append(flip_zero);
    c.append(prep);
    return c;
}

ProjectedPrep projected_mub_prepare(int num_qubits, int64_t a, int64_t b) {
    int p = embedding_prime(num_qubits);
    if (num_qubits < 2) {
        throw std::invalid_argument("projected MUB: need at least 2 qubits");
    }
    if (a < 0 || a > p || b < 0 || b >= p) {
        throw std::invalid_argument("projected MUB: need 0 <= a <= p and 0 <= b < p");
    }
    size_t out_dim = size_t{1} << num_qubits;
    ProjectedPrep res;
    if (a == p) {
        res.cos_theta = 1;
        if ((size_t)b < out_dim) {
            res.state = StateVector::basis(out_dim, b);
            res.projection_weight = 1;
        } else {
            res.state = StateVector(out_dim);
            res.projection_weight = 0;
        }
        return res;
    }
    res.cos_theta = measured_cos_theta(build_mub_circuit_prime(p, num_qubits, a, b), num_qubits);
    Circuit c = projected_mub_circuit(num_qubits, a, b);
    StateVector out = simulate(c, StateVector::basis(c.hilbert_dim(), 0));
    std::vector<cplx> head(out.amps().begin(), out.amps().begin() + out_dim);
    double kept = 0;
    for (const auto &v : head) {
        kept += std::norm(v);
    }
    res.ancilla_residue = std::max(0.0, 1 - kept);
    if (res.ancilla_residue > 1e-6) {
        throw std::runtime_error("projected MUB: ancilla residue " + std::to_string(res.ancilla_residue) +
                                 " exceeds 1e-6");
    }
    res.state = StateVector(std::move(head));
    res.state.normalize();
    res.projection_weight = (double)out_dim / p;
    return res;
}

Circuit parallel_prefix_parity(int n, const std::vector<int> &controls, int target) {
    Circuit c(n, 2);
    for (int q : controls) {
        if (q == target) {
            throw std::invalid_argument("parity: target must not be a control");
        }
    }
    size_t r = controls.size();
    if (r == 0) {
        return c;
    }
    std::vector<Gate> tree;
    for (size_t stride = 1; stride < r; stride *= 2) {
        for (size_t i = 0; i + stride < r; i += 2 * stride) {
            tree.push_back(Gate::cnot(controls[i + stride], controls[i]));
        }
    }
    for (const auto &g : tree) {
        c.append(g);
    }
    c.append(Gate::cnot(controls[0], target));
    for (auto it = tree.rbegin(); it != tree.rend(); ++it) {
        c.append(*it);
    }
    return c;
}

Circuit naive_parity_chain(int n, const std::vector<int> &controls, int target) {
    Circuit c(n, 2);
    for (int q : controls) {
        c.append(Gate::cnot(q, target));
    }
    return c;
}

}  // namespace qdesign
