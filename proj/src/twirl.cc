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

#include "qdesign/twirl.h"

#include <cmath>
#include <algorithm>
#include <cstdio>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

#include "qdesign/mub_circuits.h"

namespace qdesign {

int phase_modulus(int d) {
    return d % 2 ? d : 2 * d;
}

uint64_t num_pauli_labels(int d, int n) {
    uint64_t out = 1;
    for (int i = 0; i < 2 * n; i++) {
        out *= (uint64_t)d;
    }
    return out;
}

PauliLabel PauliLabel::identity(int d, int n) {
    if (d < 2 || n < 1) {
        throw std::invalid_argument("PauliLabel: need d >= 2 and n >= 1");
    }
    return {d, n, std::vector<int>(2 * n, 0), 0};
}

PauliLabel PauliLabel::from_index(int d, int n, uint64_t index) {
    PauliLabel l = identity(d, n);
    if (index >= num_pauli_labels(d, n)) {
        throw std::invalid_argument("PauliLabel: index out of range");
    }
    for (int i = 0; i < n; i++) {
        l.x[i] = (int)(index % d);
        index /= d;
        l.x[n + i] = (int)(index % d);
        index /= d;
    }
    return l;
}

uint64_t PauliLabel::index() const {
    uint64_t out = 0;
    for (int i = n - 1; i >= 0; i--) {
        out = (out * d + x[n + i]) * d + x[i];
    }
    return out;
}

bool PauliLabel::is_identity() const {
    for (int v : x) {
        if (v) {
            return false;
        }
    }
    return true;
}

bool PauliLabel::same_operator(const PauliLabel &other) const {
    return d == other.d && n == other.n && x == other.x;
}

ComplexMatrix pauli_matrix(const PauliLabel &l) {
    if (std::pow((double)l.d, l.n) > 256) {
        throw std::invalid_argument("pauli_matrix: d^n exceeds 256");
    }
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (int i = l.n - 1; i >= 0; i--) {
        out = tensor(out, weyl_operator(l.d, l.x[i], l.x[l.n + i]));
    }
    return out * root_of_unity(l.phase, phase_modulus(l.d));
}

static void require_same_shape(const PauliLabel &x, const PauliLabel &y) {
    if (x.d != y.d || x.n != y.n) {
        throw std::invalid_argument("Pauli labels have different shapes");
    }
}

int symplectic_inner(const PauliLabel &x, const PauliLabel &y) {
    require_same_shape(x, y);
    int64_t s = 0;
    for (int i = 0; i < x.n; i++) {
        s += (int64_t)x.x[i] * y.x[x.n + i] - (int64_t)x.x[x.n + i] * y.x[i];
    }
    s %= x.d;
    return (int)(s < 0 ? s + x.d : s);
}

int commutation_check(const PauliLabel &x, const PauliLabel &y) {
    require_same_shape(x, y);
    if (std::pow((double)x.d, x.n) > 64) {
        throw std::invalid_argument("commutation_check: d^n exceeds 64");
    }
    int s = symplectic_inner(x, y);
    ComplexMatrix px = pauli_matrix(x), py = pauli_matrix(y);
    ComplexMatrix lhs = px * py, rhs = py * px;
    int want = (x.d - s) % x.d;
    if (lhs.max_abs_diff(rhs * root_of_unity(want, x.d)) > 1e-10) {
        throw std::logic_error("commutation_check: matrices violate the symplectic commutation rule");
    }
    return s;
}

cplx char_sum(const PauliLabel &j) {
    cplx total = 0;
    uint64_t count = num_pauli_labels(j.d, j.n);
    for (uint64_t k = 0; k < count; k++) {
        total += root_of_unity(symplectic_inner(PauliLabel::from_index(j.d, j.n, k), j), j.d);
    }
    return total;
}

std::vector<ComplexMatrix> pauli_group(int d, int n) {
    std::vector<ComplexMatrix> out;
    uint64_t count = num_pauli_labels(d, n);
    for (uint64_t k = 0; k < count; k++) {
        out.push_back(pauli_matrix(PauliLabel::from_index(d, n, k)));
    }
    return out;
}

KrausChannel pauli_channel_to_kraus(const PauliChannel &pc) {
    std::vector<ComplexMatrix> ops;
    for (uint64_t r = 0; r < pc.weights.size(); r++) {
        if (pc.weights[r] > 0) {
            ops.push_back(pauli_matrix(PauliLabel::from_index(pc.d, pc.n, r)) * cplx(std::sqrt(pc.weights[r])));
        }
    }
    if (ops.empty()) {
        throw std::invalid_argument("pauli_channel_to_kraus: all weights are zero");
    }
    return make_channel(std::move(ops));
}

PauliChannel pauli_twirl(const KrausChannel &ch, int d, int n) {
    double dim = std::pow((double)d, n);
    if (dim > 64) {
        throw std::invalid_argument("pauli_twirl: d^n exceeds 64");
    }
    if ((size_t)dim != ch.dim) {
        throw std::invalid_argument("pauli_twirl: channel dimension is not d^n");
    }
    PauliChannel pc{d, n, std::vector<double>(num_pauli_labels(d, n), 0)};
    for (uint64_t r = 0; r < pc.weights.size(); r++) {
        ComplexMatrix p = pauli_matrix(PauliLabel::from_index(d, n, r));
        for (const auto &a : ch.kraus) {
            pc.weights[r] += std::norm(hs_inner(a, p)) / (dim * dim);
        }
    }
    return pc;
}

Supermatrix twirl_supermatrix(const Supermatrix &s, const std::vector<ComplexMatrix> &set) {
    if (set.empty()) {
        throw std::invalid_argument("twirl_supermatrix: empty set");
    }
    size_t d2 = s.dim * s.dim;
    Supermatrix out{s.dim, ComplexMatrix(d2, d2)};
    for (const auto &v : set) {
        ComplexMatrix hat = tensor(v.conj(), v);
        out.mat += hat * s.mat * hat.adjoint();
    }
    out.mat *= cplx(1.0 / (double)set.size());
    return out;
}

namespace {

ComplexMatrix canonical_phase(const ComplexMatrix &m) {
    for (const auto &z : m.entries()) {
        if (std::abs(z) > 1e-9) {
            return m * (std::conj(z) / std::abs(z));
        }
    }
    return m;
}

std::string matrix_key(const ComplexMatrix &m) {
    std::string key;
    for (const auto &z : m.entries()) {
        key += std::to_string(std::llround(z.real() * 1e6)) + "," + std::to_string(std::llround(z.imag() * 1e6)) + ";";
    }
    return key;
}

}  // namespace

std::vector<ComplexMatrix> clifford_group_1q() {
    const double r = 1 / std::sqrt(2.0);
    std::vector<ComplexMatrix> gens{ComplexMatrix{{r, r}, {r, -r}}, ComplexMatrix{{1, 0}, {0, cplx(0, 1)}}};
    std::vector<ComplexMatrix> group{ComplexMatrix::identity(2)};
    std::set<std::string> seen{matrix_key(group[0])};
    for (size_t head = 0; head < group.size(); head++) {
        for (const auto &g : gens) {
            ComplexMatrix next = canonical_phase(g * group[head]);
            if (seen.insert(matrix_key(next)).second) {
                group.push_back(next);
            }
        }
    }
    if (group.size() != 24) {
        throw std::logic_error("clifford_group_1q: closure produced " + std::to_string(group.size()) + " elements");
    }
    return group;
}

CliffordTwirlResult clifford_twirl_exact(const KrausChannel &ch) {
    if (ch.dim != 2) {
        throw std::invalid_argument("clifford_twirl_exact: single-qubit channels only");
    }
    Supermatrix twirled = twirl_supermatrix(kraus_to_supermatrix(ch), clifford_group_1q());
    InvariantParams ip = invariant_decompose(twirled);
    std::vector<cplx> vid = vec(ComplexMatrix::identity(2));
    ComplexMatrix model = ComplexMatrix::identity(4) * ip.p;
    for (size_t i = 0; i < 4; i++) {
        for (size_t j = 0; j < 4; j++) {
            model(i, j) += ip.q / 2.0 * vid[i] * std::conj(vid[j]);
        }
    }
    CliffordTwirlResult res{ip.p.real(), twirled.mat.max_abs_diff(model)};
    if (res.residual > 1e-6) {
        throw std::runtime_error("clifford_twirl_exact: twirled map is not depolarizing (residual " +
                                 std::to_string(res.residual) + ")");
    }
    return res;
}

double unitary_design_check(const std::vector<ComplexMatrix> &set, const ComplexMatrix &m, const ComplexMatrix &n,
                            const ComplexMatrix &o) {
    if (set.empty()) {
        throw std::invalid_argument("unitary_design_check: empty set");
    }
    size_t d = m.rows();
    ComplexMatrix avg(d, d);
    for (const auto &u : set) {
        ComplexMatrix ud = u.adjoint();
        avg += ud * m * u * n * ud * o * u;
    }
    avg *= cplx(1.0 / (double)set.size());
    double dd = (double)d;
    cplx tr_hat = m.trace() * o.trace();
    cplx tr_image = (m * o).trace();
    cplx p = (tr_hat - tr_image / dd) / (dd * dd - 1);
    cplx q = tr_image / dd - p;
    ComplexMatrix haar = n * p + ComplexMatrix::identity(d) * (q * n.trace() / dd);
    return avg.max_abs_diff(haar);
}

double unitary_one_design_check(const std::vector<ComplexMatrix> &set, const ComplexMatrix &rho) {
    if (set.empty()) {
        throw std::invalid_argument("unitary_one_design_check: empty set");
    }
    size_t d = rho.rows();
    ComplexMatrix avg(d, d);
    for (const auto &u : set) {
        avg += u * rho * u.adjoint();
    }
    avg *= cplx(1.0 / (double)set.size());
    return avg.max_abs_diff(ComplexMatrix::identity(d) * (rho.trace() / (double)d));
}

PauliLabel conjugate_label(const Gate &g, const PauliLabel &l) {
    if (l.d != 2) {
        throw std::invalid_argument("conjugate_label: qubit labels only");
    }
    PauliLabel out = l;
    int n = l.n;
    auto check = [&](int q) {
        if (q < 0 || q >= n) {
            throw std::invalid_argument("conjugate_label: qubit index out of range");
        }
    };
    auto hadamard = [&](int q) {
        int &a = out.x[q], &b = out.x[n + q];
        out.phase += 2 * a * b;
        std::swap(a, b);
    };
    auto phase_gate = [&](int q) {
        out.phase += out.x[q];
        out.x[n + q] ^= out.x[q];
    };
    bool extra_controls = g.kind == GateKind::CNOT ? g.controls.size() != 1 : !g.controls.empty();
    if (extra_controls) {
        throw std::invalid_argument("conjugate_label: controlled gates other than CNOT are not Clifford here");
    }
    int q = g.targets.at(0);
    check(q);
    switch (g.kind) {
        case GateKind::H:
            hadamard(q);
            break;
        case GateKind::S:
            phase_gate(q);
            break;
        case GateKind::T:
            phase_gate(q);
            hadamard(q);
            break;
        case GateKind::X:
            out.phase += 2 * out.x[n + q];
            break;
        case GateKind::Z:
            out.phase += 2 * out.x[q];
            break;
        case GateKind::CNOT: {
            int c = g.controls[0];
            check(c);
            out.x[q] ^= out.x[c];
            out.x[n + c] ^= out.x[n + q];
            break;
        }
        default:
            throw std::invalid_argument("conjugate_label: unsupported gate " + gate_kind_name(g.kind));
    }
    out.phase %= 4;
    return out;
}

PauliLabel conjugate_label(const Circuit &c, const PauliLabel &l) {
    if (c.local_dim() != 2 || c.num_qudits() != l.n) {
        throw std::invalid_argument("conjugate_label: circuit shape does not match label");
    }
    PauliLabel out = l;
    for (const auto &g : c.gates()) {
        out = conjugate_label(g, out);
    }
    return out;
}

bool BitSource::bit() {
    if (left_ == 0) {
        word_ = rng_();
        left_ = 64;
    }
    bool b = word_ & 1;
    word_ >>= 1;
    left_--;
    used_++;
    return b;
}

int BitSource::trit() {
    while (true) {
        int v = (bit() ? 2 : 0) + (bit() ? 1 : 0);
        if (v < 3) {
            return v;
        }
    }
}

bool BitSource::three_quarters() {
    bool hi = bit();
    bool lo = bit();
    return hi || lo;
}

TwirlRoundChoices sample_round_choices(int n, BitSource &bits) {
    if (n < 2 || n > 62) {
        throw std::invalid_argument("twirl: qubit count must be in [2, 62]");
    }
    TwirlRoundChoices ch;
    uint64_t mask = 0;
    while (mask == 0) {
        for (int q = 0; q < n; q++) {
            mask |= (uint64_t)bits.bit() << q;
        }
    }
    for (int q = 0; q < n; q++) {
        if ((mask >> q) & 1) {
            ch.subset.push_back(q);
        }
    }
    int control = ch.subset[0];
    ch.pre_twirl.assign(n, 0);
    ch.post_twirl.assign(n, 0);
    ch.fan_out.assign(n, false);
    ch.fan_in.assign(n, false);
    for (int q = 0; q < n; q++) {
        if (q != control) {
            ch.pre_twirl[q] = bits.trit();
        }
    }
    for (int q = 0; q < n; q++) {
        if (q != control) {
            ch.fan_out[q] = bits.three_quarters();
        }
    }
    for (int q = 0; q < n; q++) {
        if (q != control) {
            ch.post_twirl[q] = bits.trit();
        }
    }
    ch.phase_flip = bits.bit();
    for (int q = 0; q < n; q++) {
        if (q != control) {
            ch.fan_in[q] = bits.bit();
        }
    }
    ch.final_twirl = bits.trit();
    return ch;
}

Circuit build_round_circuit(int n, const TwirlRoundChoices &ch, bool parallel_prefix) {
    Circuit c(n, 2);
    int control = ch.subset.at(0);
    auto t_power = [&](int q, int power) {
        for (int k = 0; k < power; k++) {
            c.append(Gate::t(q));
        }
    };
    auto fan_onto_control = [&](const std::vector<int> &sources) {
        if (parallel_prefix) {
            c.append(parallel_prefix_parity(n, sources, control));
        } else {
            for (int s : sources) {
                c.append(Gate::cnot(s, control));
            }
        }
    };
    std::vector<int> others(ch.subset.begin() + 1, ch.subset.end());
    fan_onto_control(others);
    for (int q = 0; q < n; q++) {
        if (q != control) {
            t_power(q, ch.pre_twirl[q]);
        }
    }
    std::vector<int> out_targets;
    for (int q = 0; q < n; q++) {
        if (q != control && ch.fan_out[q]) {
            out_targets.push_back(q);
        }
    }
    if (parallel_prefix && out_targets.size() >= 2) {
        // H (x) H turns CNOT(control -> t) into CNOT(t -> control).
        c.append(Gate::h(control));
        for (int t : out_targets) {
            c.append(Gate::h(t));
        }
        fan_onto_control(out_targets);
        c.append(Gate::h(control));
        for (int t : out_targets) {
            c.append(Gate::h(t));
        }
    } else {
        for (int t : out_targets) {
            c.append(Gate::cnot(control, t));
        }
    }
    for (int q = 0; q < n; q++) {
        if (q != control) {
            t_power(q, ch.post_twirl[q]);
        }
    }
    if (ch.phase_flip) {
        c.append(Gate::s(control));
    }
    std::vector<int> in_sources;
    for (int q = 0; q < n; q++) {
        if (q != control && ch.fan_in[q]) {
            in_sources.push_back(q);
        }
    }
    fan_onto_control(in_sources);
    t_power(control, ch.final_twirl);
    return c;
}

TwirlSample sample_twirl_circuit(int n, int rounds, Rng &rng, bool parallel_prefix) {
    if (n < 2) {
        throw std::invalid_argument("sample_twirl_circuit: need n >= 2");
    }
    if (rounds < 0) {
        throw std::invalid_argument("sample_twirl_circuit: rounds must be nonnegative");
    }
    BitSource bits(rng);
    TwirlSample s{Circuit(n, 2), 0, rounds};
    for (int r = 0; r < rounds; r++) {
        s.circuit.append(build_round_circuit(n, sample_round_choices(n, bits), parallel_prefix));
    }
    s.random_bits_used = bits.bits_used();
    return s;
}

PauliDistribution PauliDistribution::point_mass(int n, uint64_t label) {
    PauliDistribution d{n, std::vector<double>(num_pauli_labels(2, n), 0)};
    d.probs.at(label) = 1;
    return d;
}

PauliDistribution PauliDistribution::uniform_nonidentity(int n) {
    uint64_t count = num_pauli_labels(2, n);
    PauliDistribution d{n, std::vector<double>(count, 1.0 / (double)(count - 1))};
    d.probs[0] = 0;
    return d;
}

double l1_to_uniform(const PauliDistribution &dist) {
    double u = 1.0 / (double)(dist.probs.size() - 1);
    double total = std::abs(dist.probs[0]);
    for (size_t x = 1; x < dist.probs.size(); x++) {
        total += std::abs(dist.probs[x] - u);
    }
    return total;
}

double epsilon0(int n) {
    return 1 / (std::pow(2.0, n) - std::pow(2.0, -n));
}

namespace {

// Qubit Pauli without phase as X and Z bit masks.
struct Bits {
    uint64_t a = 0, b = 0;
};

Bits bits_of(uint64_t index, int n) {
    Bits p;
    for (int i = 0; i < n; i++) {
        uint64_t code = (index >> (2 * i)) & 3;
        p.a |= (code & 1) << i;
        p.b |= (code >> 1) << i;
    }
    return p;
}

uint64_t index_of(const Bits &p, int n) {
    uint64_t out = 0;
    for (int i = 0; i < n; i++) {
        out |= (((p.a >> i) & 1) | (((p.b >> i) & 1) << 1)) << (2 * i);
    }
    return out;
}

void cnot(Bits &p, int c, int t) {
    p.a ^= ((p.a >> c) & 1) << t;
    p.b ^= ((p.b >> t) & 1) << c;
}

void phase_gate(Bits &p, int q) {
    p.b ^= ((p.a >> q) & 1) << q;
}

void hadamard(Bits &p, int q) {
    uint64_t a = (p.a >> q) & 1, b = (p.b >> q) & 1;
    p.a = (p.a & ~(uint64_t{1} << q)) | (b << q);
    p.b = (p.b & ~(uint64_t{1} << q)) | (a << q);
}

void t_power(Bits &p, int q, int power) {
    for (int k = 0; k < power; k++) {
        phase_gate(p, q);
        hadamard(p, q);
    }
}

// Label action of build_round_circuit, optionally without the step-1 fan-in.
uint64_t apply_round(const TwirlRoundChoices &ch, int n, uint64_t label, bool with_fan_in_step) {
    Bits p = bits_of(label, n);
    int control = ch.subset[0];
    if (with_fan_in_step) {
        for (size_t k = 1; k < ch.subset.size(); k++) {
            cnot(p, ch.subset[k], control);
        }
    }
    for (int q = 0; q < n; q++) {
        if (q != control) {
            t_power(p, q, ch.pre_twirl[q]);
        }
    }
    for (int q = 0; q < n; q++) {
        if (q != control && ch.fan_out[q]) {
            cnot(p, control, q);
        }
    }
    for (int q = 0; q < n; q++) {
        if (q != control) {
            t_power(p, q, ch.post_twirl[q]);
        }
    }
    if (ch.phase_flip) {
        phase_gate(p, control);
    }
    for (int q = 0; q < n; q++) {
        if (q != control && ch.fan_in[q]) {
            cnot(p, q, control);
        }
    }
    t_power(p, control, ch.final_twirl);
    return index_of(p, n);
}

// Calls visit(choices, probability) for every second-half choice with a fixed control.
template <typename Visit>
void enumerate_second_half(int n, int control, const std::vector<int> &subset, Visit &&visit) {
    std::vector<int> targets;
    for (int q = 0; q < n; q++) {
        if (q != control) {
            targets.push_back(q);
        }
    }
    size_t m = targets.size();
    uint64_t pow3 = 1;
    for (size_t i = 0; i < m; i++) {
        pow3 *= 3;
    }
    uint64_t pow2 = uint64_t{1} << m;
    TwirlRoundChoices ch;
    ch.subset = subset;
    ch.pre_twirl.assign(n, 0);
    ch.post_twirl.assign(n, 0);
    ch.fan_out.assign(n, false);
    ch.fan_in.assign(n, false);
    for (uint64_t pre = 0; pre < pow3; pre++) {
        for (uint64_t fo = 0; fo < pow2; fo++) {
            double p_fo = 1;
            for (size_t i = 0; i < m; i++) {
                bool on = (fo >> i) & 1;
                ch.fan_out[targets[i]] = on;
                p_fo *= on ? 0.75 : 0.25;
            }
            for (uint64_t post = 0; post < pow3; post++) {
                uint64_t a = pre, b = post;
                for (size_t i = 0; i < m; i++) {
                    ch.pre_twirl[targets[i]] = (int)(a % 3);
                    ch.post_twirl[targets[i]] = (int)(b % 3);
                    a /= 3;
                    b /= 3;
                }
                for (int s = 0; s < 2; s++) {
                    ch.phase_flip = s;
                    for (uint64_t fi = 0; fi < pow2; fi++) {
                        for (size_t i = 0; i < m; i++) {
                            ch.fan_in[targets[i]] = (fi >> i) & 1;
                        }
                        for (int j = 0; j < 3; j++) {
                            ch.final_twirl = j;
                            double prob = p_fo / (double)(pow3 * pow3) / 2 / (double)pow2 / 3;
                            visit(ch, prob);
                        }
                    }
                }
            }
        }
    }
}

void require_markov_size(int n) {
    if (n < 2 || n > 3) {
        throw std::invalid_argument("exact twirl chain supports n in [2, 3]");
    }
}

}  // namespace

std::vector<std::vector<double>> twirl_transition(int n) {
    require_markov_size(n);
    static std::mutex mu;
    static std::map<int, std::vector<std::vector<double>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) {
        return it->second;
    }
    uint64_t count = num_pauli_labels(2, n);
    std::vector<std::vector<double>> t(count, std::vector<double>(count, 0));
    uint64_t subsets = (uint64_t{1} << n) - 1;
    for (uint64_t mask = 1; mask <= subsets; mask++) {
        std::vector<int> subset;
        for (int q = 0; q < n; q++) {
            if ((mask >> q) & 1) {
                subset.push_back(q);
            }
        }
        enumerate_second_half(n, subset[0], subset, [&](const TwirlRoundChoices &ch, double prob) {
            for (uint64_t from = 0; from < count; from++) {
                t[apply_round(ch, n, from, true)][from] += prob / (double)subsets;
            }
        });
    }
    cache[n] = t;
    return t;
}

PauliDistribution twirl_markov_step(const PauliDistribution &dist, int n) {
    if (dist.n != n || dist.probs.size() != num_pauli_labels(2, n)) {
        throw std::invalid_argument("twirl_markov_step: distribution shape mismatch");
    }
    auto t = twirl_transition(n);
    PauliDistribution out{n, std::vector<double>(dist.probs.size(), 0)};
    for (size_t to = 0; to < t.size(); to++) {
        double acc = 0;
        for (size_t from = 0; from < t.size(); from++) {
            acc += t[to][from] * dist.probs[from];
        }
        out.probs[to] = acc;
    }
    return out;
}

PauliDistribution twirl_good_case_distribution(int n, uint64_t start, int control) {
    require_markov_size(n);
    if (control < 0 || control >= n) {
        throw std::invalid_argument("twirl_good_case_distribution: control out of range");
    }
    PauliDistribution out{n, std::vector<double>(num_pauli_labels(2, n), 0)};
    enumerate_second_half(n, control, {control}, [&](const TwirlRoundChoices &ch, double prob) {
        out.probs[apply_round(ch, n, start, false)] += prob;
    });
    return out;
}

PauliDistribution idealized_good_case_distribution(int n) {
    uint64_t count = num_pauli_labels(2, n);
    uint64_t unreachable = uint64_t{1} << (n - 1);
    PauliDistribution out{n, std::vector<double>(count, 0)};
    for (uint64_t x = 0; x < count; x++) {
        Bits p = bits_of(x, n);
        bool control_identity = ((p.a | p.b) & 1) == 0;
        bool others_diagonal = p.a == 0;
        if (!(control_identity && others_diagonal)) {
            out.probs[x] = 1.0 / (double)(count - unreachable);
        }
    }
    return out;
}

double twirl_error_prefactor(const Supermatrix &s) {
    double dim = (double)s.dim;
    cplx tr_image = apply(s, ComplexMatrix::identity(s.dim)).trace();
    cplx tr_hat = s.mat.trace();
    return ((dim * tr_image - tr_hat) / std::pow(dim, 4)).real();
}

ApproxTwirlResult approx_twirl_channel(const PauliChannel &pc, int rounds, TwirlMode mode, uint64_t trials, Rng &rng) {
    if (pc.d != 2) {
        throw std::invalid_argument("approx_twirl_channel: qubit channels only");
    }
    int n = pc.n;
    uint64_t count = num_pauli_labels(2, n);
    if (pc.weights.size() != count) {
        throw std::invalid_argument("approx_twirl_channel: weight vector has wrong length");
    }
    if (rounds < 0) {
        throw std::invalid_argument("approx_twirl_channel: rounds must be nonnegative");
    }
    ApproxTwirlResult res;
    res.channel = {2, n, std::vector<double>(count, 0)};
    res.channel.weights[0] = pc.weights[0];
    res.epsilon0 = epsilon0(n);
    double moving = 0;
    for (uint64_t j = 1; j < count; j++) {
        moving += pc.weights[j];
    }
    double weighted_l1 = 0;
    if (mode == TwirlMode::Exact) {
        require_markov_size(n);
        for (uint64_t j = 1; j < count; j++) {
            if (pc.weights[j] <= 0) {
                continue;
            }
            PauliDistribution row = PauliDistribution::point_mass(n, j);
            for (int r = 0; r < rounds; r++) {
                row = twirl_markov_step(row, n);
            }
            for (uint64_t x = 0; x < count; x++) {
                res.channel.weights[x] += pc.weights[j] * row.probs[x];
            }
            weighted_l1 += pc.weights[j] * l1_to_uniform(row);
        }
    } else {
        if (trials == 0) {
            throw std::invalid_argument("approx_twirl_channel: Monte Carlo mode needs trials >= 1");
        }
        BitSource bits(rng);
        std::uniform_real_distribution<double> unif(0, 1);
        std::map<uint64_t, std::vector<uint64_t>> hist;
        std::map<uint64_t, uint64_t> starts;
        for (uint64_t t = 0; t < trials; t++) {
            double u = unif(rng) * (moving + pc.weights[0]);
            uint64_t label = 0;
            double acc = pc.weights[0];
            for (uint64_t j = 1; j < count && acc <= u; j++) {
                acc += pc.weights[j];
                label = j;
            }
            if (label == 0) {
                continue;
            }
            uint64_t start = label;
            for (int r = 0; r < rounds; r++) {
                label = apply_round(sample_round_choices(n, bits), n, label, true);
            }
            auto &h = hist[start];
            if (h.empty()) {
                h.assign(count, 0);
            }
            h[label]++;
            starts[start]++;
        }
        uint64_t moved = 0;
        for (const auto &[start, c] : starts) {
            moved += c;
        }
        for (const auto &[start, h] : hist) {
            PauliDistribution emp{n, std::vector<double>(count, 0)};
            for (uint64_t x = 0; x < count; x++) {
                emp.probs[x] = (double)h[x] / (double)starts[start];
                res.channel.weights[x] += moving * (double)h[x] / (double)moved;
            }
            weighted_l1 += moving * (double)starts[start] / (double)moved * l1_to_uniform(emp);
        }
    }
    res.l1 = moving > 0 ? weighted_l1 / moving : 0;
    double total = 0;
    for (double w : pc.weights) {
        total += w;
    }
    double dim = std::pow(2.0, n);
    double prefactor = (dim * dim * total - dim * dim * pc.weights[0]) / std::pow(dim, 4);
    res.bound = prefactor * (res.epsilon0 + std::max(0.0, res.l1 - res.epsilon0));
    return res;
}

uint64_t apply_round_to_label(const TwirlRoundChoices &choices, int n, uint64_t label) {
    if (n < 2 || n > 31 || label >= num_pauli_labels(2, n) || choices.subset.empty()) {
        throw std::invalid_argument("apply_round_to_label: bad shape");
    }
    return apply_round(choices, n, label, true);
}

std::vector<double> twirl_l1_curve(int n, int rounds, uint64_t start, TwirlMode mode, uint64_t trials, Rng &rng) {
    if (rounds < 0) {
        throw std::invalid_argument("twirl_l1_curve: rounds must be nonnegative");
    }
    if (n < 2 || n > 6) {
        throw std::invalid_argument("twirl_l1_curve: n must be in [2, 6]");
    }
    uint64_t count = num_pauli_labels(2, n);
    if (start >= count) {
        throw std::invalid_argument("twirl_l1_curve: start label out of range");
    }
    PauliDistribution dist = PauliDistribution::point_mass(n, start);
    std::vector<double> curve{l1_to_uniform(dist)};
    if (mode == TwirlMode::Exact) {
        for (int r = 0; r < rounds; r++) {
            dist = twirl_markov_step(dist, n);
            curve.push_back(l1_to_uniform(dist));
        }
        return curve;
    }
    if (trials == 0) {
        throw std::invalid_argument("twirl_l1_curve: Monte Carlo mode needs trials >= 1");
    }
    BitSource bits(rng);
    std::vector<uint64_t> labels(trials, start);
    for (int r = 0; r < rounds; r++) {
        std::fill(dist.probs.begin(), dist.probs.end(), 0.0);
        for (auto &l : labels) {
            l = apply_round(sample_round_choices(n, bits), n, l, true);
            dist.probs[l] += 1.0 / (double)trials;
        }
        curve.push_back(l1_to_uniform(dist));
    }
    return curve;
}

std::string distribution_to_csv(const PauliDistribution &dist) {
    std::string out = "label,probability\n";
    char buf[64];
    for (size_t x = 0; x < dist.probs.size(); x++) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", x, dist.probs[x]);
        out += buf;
    }
    return out;
}

}  // namespace qdesign
