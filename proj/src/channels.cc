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

#include "qdesign/channels.h"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace qdesign {

double completeness_error(const KrausChannel &ch) {
    ComplexMatrix sum(ch.dim, ch.dim);
    for (const auto &a : ch.kraus) {
        sum += a.adjoint() * a;
    }
    return sum.max_abs_diff(ComplexMatrix::identity(ch.dim));
}

KrausChannel make_channel(std::vector<ComplexMatrix> kraus) {
    if (kraus.empty()) {
        throw std::invalid_argument("channel: need at least one Kraus operator");
    }
    size_t d = kraus[0].rows();
    for (const auto &a : kraus) {
        if (a.rows() != d || a.cols() != d) {
            throw std::invalid_argument("channel: Kraus operators must be square and equal-sized");
        }
    }
    KrausChannel ch{d, std::move(kraus), false};
    ch.trace_preserving = completeness_error(ch) <= 1e-8;
    return ch;
}

KrausChannel identity_channel(size_t d) {
    return make_channel({ComplexMatrix::identity(d)});
}

KrausChannel unitary_channel(const ComplexMatrix &u) {
    if (!u.is_unitary(1e-9)) {
        throw std::invalid_argument("unitary_channel: matrix is not unitary");
    }
    return make_channel({u});
}

KrausChannel compose(const KrausChannel &first, const KrausChannel &second) {
    if (first.dim != second.dim) {
        throw std::invalid_argument("compose: dimension mismatch");
    }
    std::vector<ComplexMatrix> ops;
    for (const auto &b : second.kraus) {
        for (const auto &a : first.kraus) {
            ops.push_back(b * a);
        }
    }
    return make_channel(std::move(ops));
}

ComplexMatrix apply(const KrausChannel &ch, const ComplexMatrix &rho) {
    if (rho.rows() != ch.dim || rho.cols() != ch.dim) {
        throw std::invalid_argument("apply: operator dimension does not match channel");
    }
    ComplexMatrix out(ch.dim, ch.dim);
    for (const auto &a : ch.kraus) {
        out += a * rho * a.adjoint();
    }
    return out;
}

KrausChannel depolarizing(size_t d, double p) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("depolarizing: p must be in [0, 1]");
    }
    if (d < 2) {
        throw std::invalid_argument("depolarizing: d must be at least 2");
    }
    double spread = (1 - p) / (double)(d * d);
    std::vector<ComplexMatrix> ops;
    for (size_t x = 0; x < d; x++) {
        for (size_t z = 0; z < d; z++) {
            double w = spread + (x == 0 && z == 0 ? p : 0.0);
            if (w > 0) {
                ops.push_back(weyl_operator(d, x, z) * cplx(std::sqrt(w)));
            }
        }
    }
    return make_channel(std::move(ops));
}

KrausChannel standard_noise(NoiseKind kind, double p) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("standard_noise: p must be in [0, 1]");
    }
    ComplexMatrix sigma;
    switch (kind) {
        case NoiseKind::BitFlip:
            sigma = {{0, 1}, {1, 0}};
            break;
        case NoiseKind::PhaseFlip:
            sigma = {{1, 0}, {0, -1}};
            break;
        case NoiseKind::BitPhaseFlip:
            sigma = {{0, cplx(0, -1)}, {cplx(0, 1), 0}};
            break;
    }
    return make_channel({ComplexMatrix::identity(2) * cplx(std::sqrt(p)), sigma * cplx(std::sqrt(1 - p))});
}

NoiseKind parse_noise_kind(const std::string &name) {
    if (name == "bit_flip") {
        return NoiseKind::BitFlip;
    }
    if (name == "phase_flip") {
        return NoiseKind::PhaseFlip;
    }
    if (name == "bit_phase_flip") {
        return NoiseKind::BitPhaseFlip;
    }
    throw std::invalid_argument("unknown noise kind '" + name + "'");
}

namespace {

// Right-multiplies every operator by S^(-1/2), S = sum_k G_k^dagger G_k.
void normalize_completeness(std::vector<ComplexMatrix> &ops) {
    size_t d = ops[0].cols();
    ComplexMatrix s(d, d);
    for (const auto &g : ops) {
        s += g.adjoint() * g;
    }
    EigenDecomposition eig = hermitian_eig(s);
    std::vector<cplx> inv_sqrt;
    for (double v : eig.values) {
        inv_sqrt.push_back(1 / std::sqrt(v));
    }
    ComplexMatrix s_inv_half = eig.vectors * ComplexMatrix::diagonal(inv_sqrt) * eig.vectors.adjoint();
    for (auto &g : ops) {
        g = g * s_inv_half;
    }
}

}  // namespace

KrausChannel random_channel(size_t d, size_t rank, Rng &rng) {
    if (d < 1 || rank < 1) {
        throw std::invalid_argument("random_channel: need d >= 1 and rank >= 1");
    }
    std::vector<ComplexMatrix> g;
    for (size_t k = 0; k < rank; k++) {
        g.push_back(random_gaussian_matrix(d, d, rng));
    }
    normalize_completeness(g);
    normalize_completeness(g);
    return make_channel(std::move(g));
}

std::vector<cplx> vec(const ComplexMatrix &m) {
    size_t d = m.rows();
    std::vector<cplx> out(d * m.cols());
    for (size_t j = 0; j < m.cols(); j++) {
        for (size_t i = 0; i < d; i++) {
            out[j * d + i] = m(i, j);
        }
    }
    return out;
}

ComplexMatrix unvec(const std::vector<cplx> &v, size_t d) {
    if (v.size() != d * d) {
        throw std::invalid_argument("unvec: length is not d^2");
    }
    ComplexMatrix out(d, d);
    for (size_t j = 0; j < d; j++) {
        for (size_t i = 0; i < d; i++) {
            out(i, j) = v[j * d + i];
        }
    }
    return out;
}

Supermatrix kraus_to_supermatrix(const KrausChannel &ch) {
    size_t d2 = ch.dim * ch.dim;
    Supermatrix s{ch.dim, ComplexMatrix(d2, d2)};
    for (const auto &a : ch.kraus) {
        s.mat += tensor(a.conj(), a);
    }
    return s;
}

ComplexMatrix apply(const Supermatrix &s, const ComplexMatrix &rho) {
    if (rho.rows() != s.dim || rho.cols() != s.dim) {
        throw std::invalid_argument("apply: operator dimension does not match supermatrix");
    }
    std::vector<cplx> v = vec(rho);
    std::vector<cplx> out(v.size());
    for (size_t r = 0; r < v.size(); r++) {
        cplx acc = 0;
        for (size_t c = 0; c < v.size(); c++) {
            acc += s.mat(r, c) * v[c];
        }
        out[r] = acc;
    }
    return unvec(out, s.dim);
}

ChoiMatrix supermatrix_to_choi(const Supermatrix &s) {
    size_t d = s.dim;
    ChoiMatrix c{d, ComplexMatrix(d * d, d * d)};
    // Entry ((p, q), (r, s)) of the sum picks S((s, q), (r, p)).
    for (size_t p = 0; p < d; p++) {
        for (size_t q = 0; q < d; q++) {
            for (size_t r = 0; r < d; r++) {
                for (size_t t = 0; t < d; t++) {
                    c.mat(p * d + q, r * d + t) = s.mat(t * d + q, r * d + p);
                }
            }
        }
    }
    return c;
}

KrausChannel choi_to_kraus(const ChoiMatrix &c) {
    size_t d = c.dim;
    if (!c.mat.is_hermitian(1e-8)) {
        throw std::invalid_argument("choi_to_kraus: Choi matrix is not Hermitian");
    }
    EigenDecomposition eig = hermitian_eig(c.mat);
    std::vector<ComplexMatrix> ops;
    for (size_t k = 0; k < eig.values.size(); k++) {
        double lambda = eig.values[k];
        if (lambda < -1e-8) {
            throw std::invalid_argument("choi_to_kraus: map is not completely positive (eigenvalue " +
                                        std::to_string(lambda) + ")");
        }
        if (lambda < 1e-10) {
            continue;
        }
        ComplexMatrix a(d, d);
        double scale = std::sqrt(lambda);
        for (size_t p = 0; p < d; p++) {
            for (size_t q = 0; q < d; q++) {
                a(q, p) = scale * eig.vectors(p * d + q, k);
            }
        }
        ops.push_back(std::move(a));
    }
    if (ops.empty()) {
        ops.push_back(ComplexMatrix(d, d));
    }
    return make_channel(std::move(ops));
}

static void require_trace_preserving(const KrausChannel &ch, const char *who) {
    if (!ch.trace_preserving) {
        throw std::invalid_argument(std::string(who) + ": channel is not trace preserving");
    }
}

double avg_fidelity_exact(const ComplexMatrix &u, const KrausChannel &ch) {
    require_trace_preserving(ch, "avg_fidelity_exact");
    if (u.rows() != ch.dim || u.cols() != ch.dim || !u.is_unitary(1e-8)) {
        throw std::invalid_argument("avg_fidelity_exact: U must be a d x d unitary");
    }
    double d = (double)ch.dim;
    ComplexMatrix u_dag = u.adjoint();
    double sum = 0;
    for (const auto &a : ch.kraus) {
        sum += std::norm((a * u_dag).trace());
    }
    return (sum + d) / (d * d + d);
}

double entanglement_fidelity(const KrausChannel &ch) {
    require_trace_preserving(ch, "entanglement_fidelity");
    size_t d = ch.dim;
    StateVector phi(d * d);
    for (size_t x = 0; x < d; x++) {
        phi[x * d + x] = 1 / std::sqrt((double)d);
    }
    double total = 0;
    for (const auto &a : ch.kraus) {
        StateVector out = tensor(ComplexMatrix::identity(d), a) * phi;
        total += std::norm(inner(phi, out));
    }
    return total;
}

InvariantParams invariant_decompose(const Supermatrix &s) {
    double d = (double)s.dim;
    cplx tr_hat = s.mat.trace();
    cplx tr_image = apply(s, ComplexMatrix::identity(s.dim)).trace();
    cplx p = (tr_hat - tr_image / d) / (d * d - 1);
    return {p, tr_image / d - p};
}

std::string channel_to_json(const KrausChannel &ch) {
    nlohmann::json doc;
    doc["dim"] = ch.dim;
    doc["kraus"] = nlohmann::json::array();
    for (const auto &a : ch.kraus) {
        nlohmann::json op = nlohmann::json::array();
        for (const auto &v : a.entries()) {
            op.push_back({v.real(), v.imag()});
        }
        doc["kraus"].push_back(std::move(op));
    }
    return doc.dump();
}

KrausChannel channel_from_json(const std::string &text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("channel JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("kraus") || !doc["dim"].is_number_unsigned() ||
        !doc["kraus"].is_array()) {
        throw std::invalid_argument("channel JSON: expected {\"dim\": d, \"kraus\": [...]}");
    }
    size_t d = doc["dim"].get<size_t>();
    if (d < 1 || d > 256) {
        throw std::invalid_argument("channel JSON: dim out of range");
    }
    std::vector<ComplexMatrix> ops;
    for (const auto &op : doc["kraus"]) {
        if (!op.is_array() || op.size() != d * d) {
            throw std::invalid_argument("channel JSON: each Kraus operator needs d*d entries");
        }
        ComplexMatrix a(d, d);
        for (size_t k = 0; k < d * d; k++) {
            const auto &e = op[k];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                throw std::invalid_argument("channel JSON: entries must be [re, im]");
            }
            a(k / d, k % d) = {e[0].get<double>(), e[1].get<double>()};
        }
        ops.push_back(std::move(a));
    }
    if (ops.empty()) {
        throw std::invalid_argument("channel JSON: no Kraus operators");
    }
    KrausChannel ch = make_channel(std::move(ops));
    if (completeness_error(ch) > 1e-6) {
        throw std::invalid_argument("channel JSON: Kraus operators are not complete (sum A^dagger A != I)");
    }
    ch.trace_preserving = true;
    return ch;
}

}  // namespace qdesign
