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

#include "qdesign/circuit.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "qdesign/kernels.h"

namespace qdesign {

namespace {

struct KindInfo {
    GateKind kind;
    const char *name;
    bool qubit_only;
};

constexpr KindInfo KINDS[] = {
    {GateKind::H, "H", true},          {GateKind::X, "X", true},
    {GateKind::Z, "Z", true},          {GateKind::S, "S", true},
    {GateKind::T_PI8, "T_PI8", true},  {GateKind::T, "T", true},
    {GateKind::RY, "RY", true},        {GateKind::PHASE, "PHASE", false},
    {GateKind::QPHASE, "QPHASE", false}, {GateKind::PHASEVEC, "PHASEVEC", false},
    {GateKind::XD, "XD", false},       {GateKind::ZD, "ZD", false},
    {GateKind::FP, "FP", false},       {GateKind::CPHASE, "CPHASE", false},
    {GateKind::CNOT, "CNOT", true},    {GateKind::CADD, "CADD", false},
};

const KindInfo &info(GateKind kind) {
    for (const auto &k : KINDS) {
        if (k.kind == kind) {
            return k;
        }
    }
    throw std::logic_error("unknown gate kind");
}

int64_t mod(int64_t v, int64_t m) {
    int64_t r = v % m;
    return r < 0 ? r + m : r;
}

}  // namespace

std::string gate_kind_name(GateKind kind) {
    return info(kind).name;
}

GateKind parse_gate_kind(const std::string &name) {
    for (const auto &k : KINDS) {
        if (name == k.name) {
            return k.kind;
        }
    }
    throw std::invalid_argument("unknown gate kind '" + name + "'");
}

static Gate make_gate(GateKind kind, std::vector<int> targets, std::vector<int> controls = {}, int64_t num = 0,
                      int64_t den = 1) {
    Gate g;
    g.kind = kind;
    g.targets = std::move(targets);
    g.controls = std::move(controls);
    g.num = num;
    g.den = den;
    return g;
}

Gate Gate::h(int q) {
    return make_gate(GateKind::H, {q});
}
Gate Gate::x(int q) {
    return make_gate(GateKind::X, {q});
}
Gate Gate::z(int q) {
    return make_gate(GateKind::Z, {q});
}
Gate Gate::s(int q) {
    return make_gate(GateKind::S, {q});
}
Gate Gate::t_pi8(int q) {
    return make_gate(GateKind::T_PI8, {q});
}
Gate Gate::t(int q) {
    return make_gate(GateKind::T, {q});
}
Gate Gate::ry(int q, double angle) {
    Gate g = make_gate(GateKind::RY, {q});
    g.angle = angle;
    return g;
}
Gate Gate::phase(int q, int64_t num, int64_t den) {
    return make_gate(GateKind::PHASE, {q}, {}, num, den);
}
Gate Gate::qphase(int q, int64_t num, int64_t den) {
    return make_gate(GateKind::QPHASE, {q}, {}, num, den);
}
Gate Gate::phase_vec(int q, std::vector<int64_t> nums, int64_t den) {
    Gate g = make_gate(GateKind::PHASEVEC, {q}, {}, 0, den);
    g.phase_nums = std::move(nums);
    return g;
}
Gate Gate::xd(int q, int64_t shift) {
    return make_gate(GateKind::XD, {q}, {}, shift, 1);
}
Gate Gate::zd(int q, int64_t power) {
    return make_gate(GateKind::ZD, {q}, {}, power, 1);
}
Gate Gate::fp(int q, int64_t sign) {
    return make_gate(GateKind::FP, {q}, {}, sign, 1);
}
Gate Gate::cphase(int q1, int q2, int64_t num, int64_t den) {
    return make_gate(GateKind::CPHASE, {q1, q2}, {}, num, den);
}
Gate Gate::cnot(int control, int target) {
    return make_gate(GateKind::CNOT, {target}, {control});
}
Gate Gate::cadd(int control, int target, int64_t multiplier) {
    return make_gate(GateKind::CADD, {target}, {control}, multiplier, 1);
}

Gate Gate::with_controls(std::vector<int> extra) const {
    Gate g = *this;
    g.controls.insert(g.controls.end(), extra.begin(), extra.end());
    return g;
}

std::vector<int> Gate::qudits() const {
    std::vector<int> out = targets;
    out.insert(out.end(), controls.begin(), controls.end());
    return out;
}

std::vector<int> gate_operands(const Gate &g) {
    if (g.kind == GateKind::CADD) {
        return {g.controls[0], g.targets[0]};
    }
    return g.targets;
}

bool gate_is_diagonal(const Gate &g) {
    switch (g.kind) {
        case GateKind::Z:
        case GateKind::S:
        case GateKind::T_PI8:
        case GateKind::PHASE:
        case GateKind::QPHASE:
        case GateKind::PHASEVEC:
        case GateKind::ZD:
        case GateKind::CPHASE:
            return true;
        default:
            return false;
    }
}

ComplexMatrix gate_local_matrix(const Gate &g, int d) {
    const double r = 1 / std::sqrt(2.0);
    const cplx i{0, 1};
    auto diag = [&](auto &&phase_of_level) {
        std::vector<cplx> entries(d);
        for (int u = 0; u < d; u++) {
            entries[u] = phase_of_level((int64_t)u);
        }
        return ComplexMatrix::diagonal(entries);
    };
    switch (g.kind) {
        case GateKind::H:
            return {{r, r}, {r, -r}};
        case GateKind::X:
        case GateKind::CNOT:
            return {{0, 1}, {1, 0}};
        case GateKind::Z:
            return {{1, 0}, {0, -1}};
        case GateKind::S:
            return {{1, 0}, {0, i}};
        case GateKind::T_PI8:
            return {{1, 0}, {0, std::polar(1.0, M_PI / 4)}};
        case GateKind::T:
            return {{r, r * i}, {r, -r * i}};
        case GateKind::RY: {
            double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
            return {{c, -s}, {s, c}};
        }
        case GateKind::PHASE:
            return diag([&](int64_t u) { return root_of_unity(g.num * u, g.den); });
        case GateKind::QPHASE:
            return diag([&](int64_t u) { return root_of_unity(g.num * u * u, g.den); });
        case GateKind::PHASEVEC:
            return diag([&](int64_t u) { return root_of_unity(g.phase_nums[u], g.den); });
        case GateKind::ZD:
            return diag([&](int64_t u) { return root_of_unity(g.num * u, d); });
        case GateKind::XD: {
            ComplexMatrix m(d, d);
            for (int64_t u = 0; u < d; u++) {
                m(mod(u + g.num, d), u) = 1;
            }
            return m;
        }
        case GateKind::FP: {
            ComplexMatrix m(d, d);
            double amp = 1 / std::sqrt((double)d);
            for (int64_t y = 0; y < d; y++) {
                for (int64_t x = 0; x < d; x++) {
                    m(y, x) = amp * root_of_unity(g.num * x * y, d);
                }
            }
            return m;
        }
        case GateKind::CPHASE: {
            std::vector<cplx> entries(d * d);
            for (int64_t u = 0; u < d; u++) {
                for (int64_t v = 0; v < d; v++) {
                    entries[u * d + v] = root_of_unity(g.num * u * v, g.den);
                }
            }
            return ComplexMatrix::diagonal(entries);
        }
        case GateKind::CADD: {
            ComplexMatrix m(d * d, d * d);
            for (int64_t c = 0; c < d; c++) {
                for (int64_t t = 0; t < d; t++) {
                    m(c * d + mod(t + g.num * c, d), c * d + t) = 1;
                }
            }
            return m;
        }
    }
    throw std::logic_error("unhandled gate kind");
}

Circuit::Circuit(int n, int d) : n_(n), d_(d) {
    if (n < 1 || n > 64) {
        throw std::invalid_argument("circuit: qudit count must be in [1, 64]");
    }
    if (d < 2) {
        throw std::invalid_argument("circuit: local dimension must be at least 2");
    }
}

size_t Circuit::hilbert_dim() const {
    double size = std::pow((double)d_, n_);
    if (size > (double)(size_t{1} << 30)) {
        throw std::invalid_argument("circuit: Hilbert space too large to simulate");
    }
    size_t out = 1;
    for (int k = 0; k < n_; k++) {
        out *= (size_t)d_;
    }
    return out;
}

void Circuit::append(const Gate &g) {
    const auto &ki = info(g.kind);
    std::string name = ki.name;
    if (ki.qubit_only && d_ != 2) {
        throw std::invalid_argument(name + " requires qubits (d=2)");
    }
    size_t want_targets = g.kind == GateKind::CPHASE ? 2 : 1;
    if (g.targets.size() != want_targets) {
        throw std::invalid_argument(name + " expects " + std::to_string(want_targets) + " target(s)");
    }
    if (g.kind == GateKind::CNOT || g.kind == GateKind::CADD) {
        if (g.controls.size() != 1) {
            throw std::invalid_argument(name + " expects exactly one control");
        }
    } else if (!g.controls.empty() && d_ != 2) {
        throw std::invalid_argument("controlled " + name + " is only supported for qubits");
    }
    std::set<int> seen;
    for (int q : g.qudits()) {
        if (q < 0 || q >= n_) {
            throw std::invalid_argument(name + ": qudit index " + std::to_string(q) + " out of range");
        }
        if (!seen.insert(q).second) {
            throw std::invalid_argument(name + ": repeated qudit index " + std::to_string(q));
        }
    }
    switch (g.kind) {
        case GateKind::PHASE:
        case GateKind::QPHASE:
        case GateKind::CPHASE:
        case GateKind::PHASEVEC:
            if (g.den <= 0) {
                throw std::invalid_argument(name + ": denominator must be positive");
            }
            break;
        default:
            break;
    }
    if (g.kind == GateKind::PHASEVEC && g.phase_nums.size() != (size_t)d_) {
        throw std::invalid_argument("PHASEVEC needs one phase per level");
    }
    if (g.kind == GateKind::FP && g.num != 1 && g.num != -1) {
        throw std::invalid_argument("FP parameter must be +1 or -1");
    }
    if (!std::isfinite(g.angle)) {
        throw std::invalid_argument(name + ": non-finite angle");
    }
    gates_.push_back(g);
}

void Circuit::append(const Circuit &other) {
    if (other.n_ != n_ || other.d_ != d_) {
        throw std::invalid_argument("circuit append: shape mismatch");
    }
    for (const auto &g : other.gates_) {
        gates_.push_back(g);
    }
}

size_t Circuit::multi_qudit_count() const {
    size_t c = 0;
    for (const auto &g : gates_) {
        c += g.qudits().size() >= 2;
    }
    return c;
}

size_t Circuit::count(GateKind kind) const {
    size_t c = 0;
    for (const auto &g : gates_) {
        c += g.kind == kind;
    }
    return c;
}

size_t Circuit::depth() const {
    std::vector<size_t> level(n_, 0);
    size_t depth = 0;
    for (const auto &g : gates_) {
        size_t l = 0;
        for (int q : g.qudits()) {
            l = std::max(l, level[q]);
        }
        l++;
        for (int q : g.qudits()) {
            level[q] = l;
        }
        depth = std::max(depth, l);
    }
    return depth;
}

Circuit Circuit::inverse() const {
    Circuit out(n_, d_);
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        Gate g = *it;
        switch (g.kind) {
            case GateKind::H:
            case GateKind::X:
            case GateKind::Z:
            case GateKind::CNOT:
                out.gates_.push_back(g);
                break;
            case GateKind::S:
                out.gates_.push_back(Gate::phase(g.targets[0], -1, 4).with_controls(g.controls));
                break;
            case GateKind::T_PI8:
                out.gates_.push_back(Gate::phase(g.targets[0], -1, 8).with_controls(g.controls));
                break;
            case GateKind::T:
                // (H S)^-1 = S^dagger H: H first.
                out.gates_.push_back(Gate::h(g.targets[0]).with_controls(g.controls));
                out.gates_.push_back(Gate::phase(g.targets[0], -1, 4).with_controls(g.controls));
                break;
            case GateKind::RY:
                g.angle = -g.angle;
                out.gates_.push_back(g);
                break;
            case GateKind::PHASEVEC:
                for (auto &v : g.phase_nums) {
                    v = -v;
                }
                out.gates_.push_back(g);
                break;
            default:
                g.num = -g.num;
                out.gates_.push_back(g);
                break;
        }
    }
    return out;
}

namespace {

struct Layout {
    size_t dim;
    std::vector<size_t> weights;  // d^q
};

Layout layout(const Circuit &c) {
    Layout l{c.hilbert_dim(), {}};
    size_t w = 1;
    for (int q = 0; q < c.num_qudits(); q++) {
        l.weights.push_back(w);
        w *= (size_t)c.local_dim();
    }
    return l;
}

size_t control_mask(const Gate &g) {
    if (g.kind == GateKind::CADD) {
        return 0;
    }
    size_t mask = 0;
    for (int q : g.controls) {
        mask |= size_t{1} << q;
    }
    return mask;
}

void apply_generic(const Gate &g, int d, const Layout &lay, std::vector<cplx> &amps) {
    std::vector<int> ops = gate_operands(g);
    ComplexMatrix local = gate_local_matrix(g, d);
    size_t k = ops.size();
    size_t ld = local.rows();
    std::vector<size_t> offsets(ld, 0);
    for (size_t l = 0; l < ld; l++) {
        size_t rest = l;
        for (size_t j = k; j-- > 0;) {
            offsets[l] += (rest % (size_t)d) * lay.weights[ops[j]];
            rest /= (size_t)d;
        }
    }
    size_t cmask = control_mask(g);
    std::vector<cplx> in(ld), out(ld);
    for (size_t idx = 0; idx < lay.dim; idx++) {
        bool base = true;
        for (int q : ops) {
            if ((idx / lay.weights[q]) % (size_t)d != 0) {
                base = false;
                break;
            }
        }
        if (!base || (idx & cmask) != cmask) {
            continue;
        }
        for (size_t l = 0; l < ld; l++) {
            in[l] = amps[idx + offsets[l]];
        }
        for (size_t r = 0; r < ld; r++) {
            cplx s = 0;
            const cplx *row = local.row(r);
            for (size_t c = 0; c < ld; c++) {
                s += row[c] * in[c];
            }
            out[r] = s;
        }
        for (size_t l = 0; l < ld; l++) {
            amps[idx + offsets[l]] = out[l];
        }
    }
}

void apply_diagonal(const Gate &g, int d, const Layout &lay, std::vector<cplx> &amps) {
    std::vector<int> ops = gate_operands(g);
    ComplexMatrix local = gate_local_matrix(g, d);
    std::vector<cplx> factors(lay.dim);
    for (size_t idx = 0; idx < lay.dim; idx++) {
        size_t l = 0;
        for (int q : ops) {
            l = l * (size_t)d + (idx / lay.weights[q]) % (size_t)d;
        }
        factors[idx] = local(l, l);
    }
    kernels::active_kernels().mul_elementwise(amps.data(), factors.data(), lay.dim);
}

StateVector run(const Circuit &c, const StateVector &input, bool fast) {
    Layout lay = layout(c);
    if (input.dim() != lay.dim) {
        throw std::invalid_argument("simulate: input dimension does not match circuit");
    }
    std::vector<cplx> amps = input.amps();
    int d = c.local_dim();
    for (const auto &g : c.gates()) {
        bool uncontrolled = g.kind == GateKind::CADD || g.controls.empty();
        if (fast && uncontrolled && gate_is_diagonal(g)) {
            apply_diagonal(g, d, lay, amps);
        } else if (fast && uncontrolled && d == 2 && gate_operands(g).size() == 1) {
            ComplexMatrix m = gate_local_matrix(g, d);
            kernels::active_kernels().apply_2x2(amps.data(), lay.dim, lay.weights[g.targets[0]], m.entries().data());
        } else {
            apply_generic(g, d, lay, amps);
        }
    }
    return StateVector(std::move(amps));
}

}  // namespace

StateVector simulate(const Circuit &c, const StateVector &input) {
    return run(c, input, true);
}

StateVector simulate_reference(const Circuit &c, const StateVector &input) {
    return run(c, input, false);
}

ComplexMatrix circuit_unitary(const Circuit &c) {
    double size = std::pow((double)c.local_dim(), c.num_qudits());
    if (size > 256) {
        throw std::invalid_argument("circuit_unitary: d^n exceeds 256");
    }
    size_t dim = c.hilbert_dim();
    ComplexMatrix u(dim, dim);
    for (size_t col = 0; col < dim; col++) {
        StateVector out = simulate(c, StateVector::basis(dim, col));
        for (size_t row = 0; row < dim; row++) {
            u(row, col) = out[row];
        }
    }
    return u;
}

uint64_t simulate_classical(const Circuit &c, uint64_t bits) {
    if (c.local_dim() != 2) {
        throw std::invalid_argument("simulate_classical: qubit circuits only");
    }
    for (const auto &g : c.gates()) {
        if (g.kind != GateKind::X && g.kind != GateKind::CNOT) {
            throw std::invalid_argument("simulate_classical: only X and CNOT gates are classical");
        }
        uint64_t mask = 0;
        for (int q : g.controls) {
            mask |= uint64_t{1} << q;
        }
        if ((bits & mask) == mask) {
            bits ^= uint64_t{1} << g.targets[0];
        }
    }
    return bits;
}

namespace {

std::string join(const std::vector<int> &v) {
    std::string out;
    for (size_t k = 0; k < v.size(); k++) {
        out += (k ? "," : "") + std::to_string(v[k]);
    }
    return out;
}

std::string param_text(const Gate &g) {
    switch (g.kind) {
        case GateKind::PHASE:
        case GateKind::QPHASE:
        case GateKind::CPHASE:
        case GateKind::XD:
        case GateKind::ZD:
        case GateKind::FP:
        case GateKind::CADD:
            return std::to_string(g.num) + "/" + std::to_string(g.den);
        case GateKind::PHASEVEC: {
            std::string out;
            for (size_t k = 0; k < g.phase_nums.size(); k++) {
                out += (k ? "," : "") + std::to_string(g.phase_nums[k]);
            }
            return out + "/" + std::to_string(g.den);
        }
        case GateKind::RY: {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", g.angle);
            return buf;
        }
        default:
            return "0/1";
    }
}

std::vector<int> parse_index_list(const std::string &s) {
    std::vector<int> out;
    if (s.empty()) {
        return out;
    }
    size_t start = 0;
    while (true) {
        size_t comma = s.find(',', start);
        std::string tok = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) {
            throw std::invalid_argument("bad index '" + tok + "'");
        }
        out.push_back(v);
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

int64_t parse_int(const std::string &tok) {
    size_t used = 0;
    int64_t v = std::stoll(tok, &used);
    if (used != tok.size()) {
        throw std::invalid_argument("bad integer '" + tok + "'");
    }
    return v;
}

}  // namespace

std::string emit_circuit(const Circuit &c) {
    std::string out = "CIRCUIT n=" + std::to_string(c.num_qudits()) + " d=" + std::to_string(c.local_dim()) + "\n";
    for (const auto &g : c.gates()) {
        out += "GATE " + gate_kind_name(g.kind) + " targets=" + join(g.targets) + " controls=" + join(g.controls) +
               " param=" + param_text(g) + "\n";
    }
    return out;
}

Circuit parse_circuit(const std::string &text) {
    std::vector<std::string> lines;
    size_t start = 0;
    while (start <= text.size()) {
        size_t nl = text.find('\n', start);
        lines.push_back(text.substr(start, nl == std::string::npos ? std::string::npos : nl - start));
        if (nl == std::string::npos) {
            break;
        }
        start = nl + 1;
    }
    auto fail = [](size_t line_no, const std::string &msg) {
        throw std::invalid_argument("circuit line " + std::to_string(line_no) + ": " + msg);
    };
    size_t header_line = 0;
    while (header_line < lines.size() && (lines[header_line].empty() || lines[header_line][0] == '#')) {
        header_line++;
    }
    if (header_line == lines.size()) {
        throw std::invalid_argument("circuit: missing header");
    }
    int n = 0, d = 0;
    if (std::sscanf(lines[header_line].c_str(), "CIRCUIT n=%d d=%d", &n, &d) != 2) {
        fail(header_line + 1, "expected 'CIRCUIT n=<n> d=<d>'");
    }
    Circuit circuit(n, d);
    for (size_t li = header_line + 1; li < lines.size(); li++) {
        const std::string &line = lines[li];
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::vector<std::string> toks;
        size_t p = 0;
        while (p < line.size()) {
            size_t sp = line.find(' ', p);
            if (sp == std::string::npos) {
                sp = line.size();
            }
            if (sp > p) {
                toks.push_back(line.substr(p, sp - p));
            }
            p = sp + 1;
        }
        if (toks.size() != 5 || toks[0] != "GATE" || toks[2].rfind("targets=", 0) != 0 ||
            toks[3].rfind("controls=", 0) != 0 || toks[4].rfind("param=", 0) != 0) {
            fail(li + 1, "expected 'GATE <kind> targets=... controls=... param=...'");
        }
        try {
            Gate g;
            g.kind = parse_gate_kind(toks[1]);
            g.targets = parse_index_list(toks[2].substr(8));
            g.controls = parse_index_list(toks[3].substr(9));
            std::string param = toks[4].substr(6);
            if (g.kind == GateKind::RY) {
                size_t used = 0;
                g.angle = std::stod(param, &used);
                if (used != param.size()) {
                    throw std::invalid_argument("bad angle");
                }
            } else {
                size_t slash = param.rfind('/');
                if (slash == std::string::npos) {
                    throw std::invalid_argument("param must be <num>/<den>");
                }
                g.den = parse_int(param.substr(slash + 1));
                std::string nums = param.substr(0, slash);
                if (g.kind == GateKind::PHASEVEC) {
                    size_t s = 0;
                    while (true) {
                        size_t comma = nums.find(',', s);
                        g.phase_nums.push_back(
                            parse_int(nums.substr(s, comma == std::string::npos ? std::string::npos : comma - s)));
                        if (comma == std::string::npos) {
                            break;
                        }
                        s = comma + 1;
                    }
                } else {
                    g.num = parse_int(nums);
                }
                bool parametrized = g.kind == GateKind::PHASE || g.kind == GateKind::QPHASE ||
                                    g.kind == GateKind::CPHASE || g.kind == GateKind::PHASEVEC ||
                                    g.kind == GateKind::XD || g.kind == GateKind::ZD || g.kind == GateKind::FP ||
                                    g.kind == GateKind::CADD;
                if (!parametrized) {
                    g.num = 0;
                    g.den = 1;
                }
            }
            circuit.append(g);
        } catch (const std::invalid_argument &e) {
            fail(li + 1, e.what());
        } catch (const std::out_of_range &e) {
            fail(li + 1, "number out of range");
        }
    }
    return circuit;
}

}  // namespace qdesign
