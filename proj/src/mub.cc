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
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "qdesign/finite_algebra.h"
#include "qdesign/kernels.h"

namespace qdesign {

std::string mub_kind_name(MubKind kind) {
    switch (kind) {
        case MubKind::Prime:
            return "prime";
        case MubKind::PrimePower:
            return "prime_power";
        case MubKind::GaloisRing:
            return "galois_ring";
    }
    throw std::logic_error("unknown MubKind");
}

MubKind parse_mub_kind(const std::string &name) {
    if (name == "prime") {
        return MubKind::Prime;
    }
    if (name == "prime_power") {
        return MubKind::PrimePower;
    }
    if (name == "galois_ring") {
        return MubKind::GaloisRing;
    }
    throw std::invalid_argument("unknown MUB kind '" + name + "'");
}

static void append_computational_basis(MubFamily &f) {
    std::vector<StateVector> comp;
    for (size_t b = 0; b < f.d; b++) {
        comp.push_back(StateVector::basis(f.d, b));
    }
    f.bases.push_back(std::move(comp));
}

MubFamily mub_prime(int p) {
    if (p == 2) {
        throw std::invalid_argument("mub_prime: p = 2 has characteristic 2; use mub_galois_ring(1)");
    }
    if (p < 3 || !is_prime((uint64_t)p) || p > 127) {
        throw std::invalid_argument("mub_prime: p must be an odd prime at most 127");
    }
    MubFamily f;
    f.d = (size_t)p;
    f.kind = MubKind::Prime;
    double amp = 1 / std::sqrt((double)p);
    for (int64_t a = 0; a < p; a++) {
        std::vector<StateVector> basis;
        for (int64_t b = 0; b < p; b++) {
            StateVector v(f.d);
            for (int64_t x = 0; x < p; x++) {
                v[x] = amp * root_of_unity((a * x * x + b * x) % p, p);
            }
            basis.push_back(std::move(v));
        }
        f.bases.push_back(std::move(basis));
    }
    append_computational_basis(f);
    return f;
}

MubFamily mub_prime_power(int p, int k) {
    if (p == 2) {
        throw std::invalid_argument("mub_prime_power: p = 2 has characteristic 2; use mub_galois_ring");
    }
    GfContext ctx(p, k);
    if (ctx.size() > 128) {
        throw std::invalid_argument("mub_prime_power: p^k must be at most 128");
    }
    MubFamily f;
    f.d = ctx.size();
    f.kind = MubKind::PrimePower;
    uint32_t q = ctx.size();
    double amp = 1 / std::sqrt((double)q);
    std::vector<uint32_t> squares(q);
    for (uint32_t x = 0; x < q; x++) {
        squares[x] = ctx.mul_labels(x, x);
    }
    for (uint32_t a = 0; a < q; a++) {
        std::vector<StateVector> basis;
        for (uint32_t b = 0; b < q; b++) {
            StateVector v(q);
            for (uint32_t x = 0; x < q; x++) {
                int t = ctx.trace_label(ctx.mul_labels(a, squares[x])) + ctx.trace_label(ctx.mul_labels(b, x));
                v[x] = amp * root_of_unity(t, p);
            }
            basis.push_back(std::move(v));
        }
        f.bases.push_back(std::move(basis));
    }
    append_computational_basis(f);
    return f;
}

MubFamily mub_galois_ring(int n) {
    if (n < 1 || n > 7) {
        throw std::invalid_argument("mub_galois_ring: n must be in [1, 7]");
    }
    GrContext ring(n);
    static const cplx i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const auto &t = ring.teichmuller_labels();
    size_t d = t.size();
    MubFamily f;
    f.d = d;
    f.kind = MubKind::GaloisRing;
    double amp = 1 / std::sqrt((double)d);
    for (size_t a = 0; a < d; a++) {
        std::vector<StateVector> basis;
        for (size_t b = 0; b < d; b++) {
            uint32_t c = ring.add_labels(t[a], ring.label(ring.scale(ring.element(t[b]), 2)));
            StateVector v(d);
            for (size_t x = 0; x < d; x++) {
                v[x] = amp * i_pow[ring.trace_label(ring.mul_labels(c, t[x]))];
            }
            basis.push_back(std::move(v));
        }
        f.bases.push_back(std::move(basis));
    }
    append_computational_basis(f);
    return f;
}

MubFamily mub_for_dimension(size_t d) {
    if (d >= 2 && (d & (d - 1)) == 0) {
        int n = 0;
        while ((size_t{1} << n) < d) {
            n++;
        }
        return mub_galois_ring(n);
    }
    for (uint64_t p = 3; p <= d; p += 2) {
        if (!is_prime(p) || d % p != 0) {
            continue;
        }
        size_t rest = d;
        int k = 0;
        while (rest % p == 0) {
            rest /= p;
            k++;
        }
        if (rest != 1) {
            break;
        }
        return k == 1 ? mub_prime((int)p) : mub_prime_power((int)p, k);
    }
    throw std::invalid_argument("no MUB construction for dimension " + std::to_string(d));
}

namespace {

// Flattened view: state s = a * d + b.
struct StateTable {
    size_t d;
    size_t count;
    std::vector<const cplx *> rows;

    explicit StateTable(const MubFamily &f) : d(f.d), count(f.num_states()) {
        if (f.bases.size() != f.d + 1) {
            throw std::invalid_argument("MUB family must contain d+1 bases");
        }
        for (const auto &basis : f.bases) {
            if (basis.size() != f.d) {
                throw std::invalid_argument("MUB basis must contain d states");
            }
            for (const auto &s : basis) {
                if (s.dim() != f.d) {
                    throw std::invalid_argument("MUB state has wrong dimension");
                }
                rows.push_back(s.amps().data());
            }
        }
    }
};

}  // namespace

UnbiasednessReport verify_unbiased(const MubFamily &f, double tol) {
    StateTable tab(f);
    const auto &k = kernels::active_kernels();
    double target = 1 / std::sqrt((double)f.d);
    UnbiasednessReport rep;
    double worst_err = -1;
    for (size_t s = 0; s < tab.count; s++) {
        for (size_t t = s; t < tab.count; t++) {
            cplx g = k.dot(tab.rows[s], tab.rows[t], tab.d);
            size_t a = s / f.d, b = s % f.d, a2 = t / f.d, b2 = t % f.d;
            double err;
            if (a == a2) {
                err = std::abs(g - (b == b2 ? 1.0 : 0.0));
                rep.max_orthonormality_error = std::max(rep.max_orthonormality_error, err);
            } else {
                err = std::abs(std::abs(g) - target);
                rep.max_unbiasedness_error = std::max(rep.max_unbiasedness_error, err);
            }
            if (err > worst_err) {
                worst_err = err;
                rep.worst_a = a;
                rep.worst_b = b;
                rep.worst_a2 = a2;
                rep.worst_b2 = b2;
            }
        }
    }
    rep.pass = rep.max_orthonormality_error <= tol && rep.max_unbiasedness_error <= tol;
    return rep;
}

cplx state_design_sum(const MubFamily &f, const ComplexMatrix &m, const ComplexMatrix &n) {
    if (m.rows() != f.d || m.cols() != f.d || n.rows() != f.d || n.cols() != f.d) {
        throw std::invalid_argument("state_design_sum: operator dimension mismatch");
    }
    cplx total = 0;
    for (const auto &basis : f.bases) {
        for (const auto &psi : basis) {
            total += expectation(m, psi) * expectation(n, psi);
        }
    }
    return total;
}

cplx haar_moment(const ComplexMatrix &m, const ComplexMatrix &n) {
    if (!m.is_square() || m.rows() != n.rows() || !n.is_square()) {
        throw std::invalid_argument("haar_moment: operators must be square of equal size");
    }
    double d = (double)m.rows();
    return ((m * n).trace() + m.trace() * n.trace()) / (d * (d + 1));
}

double t_design_angle_check(const MubFamily &f, int k) {
    if (k < 0) {
        throw std::invalid_argument("t_design_angle_check: k must be nonnegative");
    }
    StateTable tab(f);
    const auto &kern = kernels::active_kernels();
    double total = 0;
    for (size_t s = 0; s < tab.count; s++) {
        total += 1;  // |<psi|psi>|^(2k) for unit vectors
        for (size_t t = s + 1; t < tab.count; t++) {
            double sq = std::norm(kern.dot(tab.rows[s], tab.rows[t], tab.d));
            total += 2 * std::pow(sq, k);
        }
    }
    double n = (double)tab.count;
    return total / (n * n);
}

std::string export_mub(const MubFamily &f) {
    std::string out = "MUB d=" + std::to_string(f.d) + " kind=" + mub_kind_name(f.kind) + "\n";
    char buf[64];
    for (size_t a = 0; a < f.bases.size(); a++) {
        for (size_t b = 0; b < f.bases[a].size(); b++) {
            out += std::to_string(a) + " " + std::to_string(b);
            for (const auto &amp : f.bases[a][b].amps()) {
                std::snprintf(buf, sizeof(buf), " %.17g %.17g", amp.real(), amp.imag());
                out += buf;
            }
            out += "\n";
        }
    }
    return out;
}

MubFamily parse_mub(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("MUB file: missing header");
    }
    std::istringstream header(line);
    std::string magic, dtok, ktok;
    header >> magic >> dtok >> ktok;
    if (magic != "MUB" || dtok.rfind("d=", 0) != 0 || ktok.rfind("kind=", 0) != 0) {
        throw std::invalid_argument("MUB file line 1: expected 'MUB d=<d> kind=<kind>'");
    }
    MubFamily f;
    try {
        f.d = std::stoul(dtok.substr(2));
    } catch (const std::exception &) {
        throw std::invalid_argument("MUB file line 1: bad dimension");
    }
    f.kind = parse_mub_kind(ktok.substr(5));
    f.bases.assign(f.d + 1, std::vector<StateVector>(f.d));
    std::vector<std::vector<bool>> filled(f.d + 1, std::vector<bool>(f.d, false));
    size_t line_no = 1;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty()) {
            continue;
        }
        std::istringstream ls(line);
        size_t a, b;
        if (!(ls >> a >> b) || a > f.d || b >= f.d) {
            throw std::invalid_argument("MUB file line " + std::to_string(line_no) + ": bad (a, b) index");
        }
        StateVector v(f.d);
        for (size_t x = 0; x < f.d; x++) {
            double re, im;
            if (!(ls >> re >> im)) {
                throw std::invalid_argument("MUB file line " + std::to_string(line_no) + ": too few amplitudes");
            }
            v[x] = {re, im};
        }
        std::string extra;
        if (ls >> extra) {
            throw std::invalid_argument("MUB file line " + std::to_string(line_no) + ": trailing data");
        }
        f.bases[a][b] = std::move(v);
        filled[a][b] = true;
    }
    for (size_t a = 0; a <= f.d; a++) {
        for (size_t b = 0; b < f.d; b++) {
            if (!filled[a][b]) {
                throw std::invalid_argument("MUB file: missing state (" + std::to_string(a) + ", " +
                                            std::to_string(b) + ")");
            }
        }
    }
    return f;
}

}  // namespace qdesign
