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

#include "qdesign/finite_algebra.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qdesign {

namespace {

constexpr uint32_t MAX_ORDER = 1u << 16;

int mod(int64_t v, int q) {
    int64_t r = v % q;
    return (int)(r < 0 ? r + q : r);
}

uint32_t to_label(const std::vector<int> &coeffs, int base) {
    uint32_t label = 0;
    for (size_t i = coeffs.size(); i-- > 0;) {
        label = label * (uint32_t)base + (uint32_t)coeffs[i];
    }
    return label;
}

std::vector<int> from_label(uint32_t label, int base, int len) {
    std::vector<int> out(len);
    for (int i = 0; i < len; i++) {
        out[i] = (int)(label % (uint32_t)base);
        label /= (uint32_t)base;
    }
    return out;
}

// x * X reduced by the monic modulus h over Z_q.
std::vector<int> times_x(const std::vector<int> &x, const std::vector<int> &h, int q) {
    size_t k = x.size();
    int overflow = x[k - 1];
    std::vector<int> out(k);
    for (size_t i = k; i-- > 1;) {
        out[i] = x[i - 1];
    }
    out[0] = 0;
    for (size_t i = 0; i < k; i++) {
        out[i] = mod(out[i] - (int64_t)overflow * h[i], q);
    }
    return out;
}

std::vector<int> mulmod(const std::vector<int> &x, const std::vector<int> &y, const std::vector<int> &h, int q) {
    size_t k = x.size();
    std::vector<int64_t> prod(2 * k - 1, 0);
    for (size_t i = 0; i < k; i++) {
        if (x[i] == 0) {
            continue;
        }
        for (size_t j = 0; j < k; j++) {
            prod[i + j] += (int64_t)x[i] * y[j];
        }
    }
    for (size_t deg = 2 * k - 1; deg-- > k;) {
        int c = mod(prod[deg], q);
        if (c == 0) {
            continue;
        }
        for (size_t i = 0; i < k; i++) {
            prod[deg - k + i] -= (int64_t)c * h[i];
        }
        prod[deg] = 0;
    }
    std::vector<int> out(k);
    for (size_t i = 0; i < k; i++) {
        out[i] = mod(prod[i], q);
    }
    return out;
}

// Multiplicative order of X in Z_q[X]/(h) is exactly `order`.
bool root_has_order(const std::vector<int> &h, int q, uint32_t order, std::vector<uint32_t> *powers) {
    size_t k = h.size() - 1;
    std::vector<int> one(k, 0);
    one[0] = 1;
    std::vector<int> x = one;
    if (powers != nullptr) {
        powers->clear();
        powers->push_back(to_label(one, q));
    }
    for (uint32_t e = 1; e <= order; e++) {
        x = times_x(x, h, q);
        bool is_one = x == one;
        if (is_one != (e == order)) {
            return false;
        }
        if (powers != nullptr && e < order) {
            powers->push_back(to_label(x, q));
        }
    }
    return true;
}

}  // namespace

bool is_prime(uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (uint64_t f = 2; f * f <= n; f++) {
        if (n % f == 0) {
            return false;
        }
    }
    return true;
}

GfContext::GfContext(int p, int k) : p_(p), k_(k) {
    if (p < 2 || !is_prime((uint64_t)p)) {
        throw std::invalid_argument("GF(p^k): p=" + std::to_string(p) + " is not prime");
    }
    if (k < 1) {
        throw std::invalid_argument("GF(p^k): k must be at least 1");
    }
    uint64_t q = 1;
    for (int i = 0; i < k; i++) {
        q *= (uint64_t)p;
        if (q > MAX_ORDER) {
            throw std::invalid_argument("GF(p^k): p^k exceeds 2^16");
        }
        pow_p_.push_back((uint32_t)(q / p));
    }
    size_ = (uint32_t)q;

    bool found = false;
    for (uint32_t low = 0; low < size_ && !found; low++) {
        std::vector<int> h = from_label(low, p, k);
        h.push_back(1);
        if (root_has_order(h, p, size_ - 1, &exp_table_)) {
            h_ = h;
            found = true;
        }
    }
    if (!found) {
        throw std::logic_error("GF(p^k): no primitive polynomial found");
    }
    log_table_.assign(size_, 0);
    for (uint32_t e = 0; e < size_ - 1; e++) {
        log_table_[exp_table_[e]] = e;
    }

    mul_matrices_.resize(k);
    for (int i = 0; i < k; i++) {
        mul_matrices_[i] = mul_matrix(pow(generator(), (uint64_t)i));
    }
    trace_vector_.resize(k);
    for (int i = 0; i < k; i++) {
        trace_vector_[i] = trace_by_powers(pow(generator(), (uint64_t)i));
    }
}

void GfContext::check(const GfElement &x) const {
    if ((int)x.coeffs.size() != k_) {
        throw std::invalid_argument("GF element does not belong to this context (wrong degree)");
    }
    for (int c : x.coeffs) {
        if (c < 0 || c >= p_) {
            throw std::invalid_argument("GF element does not belong to this context (coefficient out of range)");
        }
    }
}

std::vector<std::vector<int>> GfContext::mul_matrix(const GfElement &y) const {
    check(y);
    std::vector<std::vector<int>> m(k_, std::vector<int>(k_));
    for (int j = 0; j < k_; j++) {
        GfElement basis = zero();
        basis.coeffs[j] = 1;
        GfElement col = mul(basis, y);
        for (int r = 0; r < k_; r++) {
            m[r][j] = col.coeffs[r];
        }
    }
    return m;
}

GfElement GfContext::element(uint32_t label) const {
    if (label >= size_) {
        throw std::out_of_range("GF element label out of range");
    }
    return {from_label(label, p_, k_)};
}

uint32_t GfContext::label(const GfElement &x) const {
    check(x);
    return to_label(x.coeffs, p_);
}

GfElement GfContext::zero() const {
    return {std::vector<int>(k_, 0)};
}

GfElement GfContext::one() const {
    return element(1);
}

GfElement GfContext::generator() const {
    return element(exp_table_[size_ > 2 ? 1 : 0]);
}

GfElement GfContext::add(const GfElement &x, const GfElement &y) const {
    check(x);
    check(y);
    GfElement out = x;
    for (int i = 0; i < k_; i++) {
        out.coeffs[i] = (x.coeffs[i] + y.coeffs[i]) % p_;
    }
    return out;
}

GfElement GfContext::sub(const GfElement &x, const GfElement &y) const {
    return add(x, neg(y));
}

GfElement GfContext::neg(const GfElement &x) const {
    return scale(x, -1);
}

GfElement GfContext::scale(const GfElement &x, int64_t c) const {
    check(x);
    GfElement out = x;
    for (auto &v : out.coeffs) {
        v = mod((int64_t)v * mod(c, p_), p_);
    }
    return out;
}

GfElement GfContext::mul(const GfElement &x, const GfElement &y) const {
    return element(mul_labels(label(x), label(y)));
}

GfElement GfContext::mul_reference(const GfElement &x, const GfElement &y) const {
    check(x);
    check(y);
    return {mulmod(x.coeffs, y.coeffs, h_, p_)};
}

GfElement GfContext::pow(const GfElement &x, uint64_t e) const {
    uint32_t lx = label(x);
    if (lx == 0) {
        return e == 0 ? one() : zero();
    }
    uint64_t order = size_ - 1;
    uint64_t le = ((uint64_t)log_table_[lx] * (e % order)) % order;
    return element(exp_table_[le]);
}

GfElement GfContext::inv(const GfElement &x) const {
    uint32_t lx = label(x);
    if (lx == 0) {
        throw std::domain_error("GF inverse of zero");
    }
    uint32_t order = size_ - 1;
    return element(exp_table_[(order - log_table_[lx]) % order]);
}

int GfContext::trace(const GfElement &x) const {
    return trace_label(label(x));
}

int GfContext::trace_by_powers(const GfElement &x) const {
    GfElement s = zero();
    uint64_t e = 1;
    for (int i = 0; i < k_; i++) {
        s = add(s, pow(x, e));
        e *= (uint64_t)p_;
    }
    for (int i = 1; i < k_; i++) {
        if (s.coeffs[i] != 0) {
            throw std::logic_error("GF trace is not in the prime field");
        }
    }
    return s.coeffs[0];
}

std::complex<double> GfContext::gauss_sum(const GfElement &a) const {
    uint32_t la = label(a);
    std::complex<double> s = 0;
    for (uint32_t x = 0; x < size_; x++) {
        int t = trace_label(mul_labels(la, x));
        s += std::polar(1.0, 2 * M_PI * t / p_);
    }
    return s;
}

uint32_t GfContext::add_labels(uint32_t x, uint32_t y) const {
    uint32_t out = 0;
    for (int i = 0; i < k_; i++) {
        uint32_t cx = (x / pow_p_[i]) % (uint32_t)p_;
        uint32_t cy = (y / pow_p_[i]) % (uint32_t)p_;
        out += ((cx + cy) % (uint32_t)p_) * pow_p_[i];
    }
    return out;
}

uint32_t GfContext::mul_labels(uint32_t x, uint32_t y) const {
    if (x == 0 || y == 0) {
        return 0;
    }
    uint32_t order = size_ - 1;
    return exp_table_[(log_table_[x] + log_table_[y]) % order];
}

int GfContext::trace_label(uint32_t x) const {
    int64_t s = 0;
    for (int i = 0; i < k_; i++) {
        s += (int64_t)trace_vector_[i] * ((x / pow_p_[i]) % (uint32_t)p_);
    }
    return mod(s, p_);
}

GrContext::GrContext(int m) : m_(m) {
    if (m < 1 || m > 8) {
        throw std::invalid_argument("GR(4^m): m must be in [1, 8]");
    }
    size_ = 1u << (2 * m);
    uint32_t teich_order = (1u << m) - 1;

    GfContext base(2, m);
    const auto &h2 = base.modulus();
    std::vector<std::vector<int>> lifts;
    for (uint32_t mask = 0; mask < (1u << m); mask++) {
        std::vector<int> h = h2;
        for (int i = 0; i < m; i++) {
            h[i] += 2 * (int)((mask >> i) & 1);
        }
        lifts.push_back(h);
    }
    std::sort(lifts.begin(), lifts.end(), [&](const auto &x, const auto &y) {
        return to_label(x, 4) < to_label(y, 4);
    });
    std::vector<uint32_t> powers;
    for (const auto &h : lifts) {
        if (root_has_order(h, 4, teich_order, &powers)) {
            h_ = h;
            break;
        }
    }
    if (h_.empty()) {
        throw std::logic_error("GR(4^m): no basic primitive lift found");
    }

    teich_labels_.push_back(0);
    teich_labels_.insert(teich_labels_.end(), powers.begin(), powers.end());
    teich_index_.assign(size_, -1);
    for (size_t j = 0; j < teich_labels_.size(); j++) {
        teich_.push_back(element(teich_labels_[j]));
        teich_index_[teich_labels_[j]] = (int)j;
    }

    two_adic_.assign(size_, {UINT32_MAX, UINT32_MAX});
    for (uint32_t ia = 0; ia < teich_.size(); ia++) {
        for (uint32_t ib = 0; ib < teich_.size(); ib++) {
            uint32_t c = label(add(teich_[ia], scale(teich_[ib], 2)));
            if (two_adic_[c].first != UINT32_MAX) {
                throw std::logic_error("GR(4^m): 2-adic decomposition is not unique");
            }
            two_adic_[c] = {ia, ib};
        }
    }

    trace_table_.resize(size_);
    for (uint32_t c = 0; c < size_; c++) {
        trace_table_[c] = trace_uncached(c);
    }
}

void GrContext::check(const GrElement &x) const {
    if ((int)x.coeffs.size() != m_) {
        throw std::invalid_argument("GR element does not belong to this context (wrong degree)");
    }
    for (int c : x.coeffs) {
        if (c < 0 || c >= 4) {
            throw std::invalid_argument("GR element does not belong to this context (coefficient out of range)");
        }
    }
}

GrElement GrContext::element(uint32_t label) const {
    if (label >= size_) {
        throw std::out_of_range("GR element label out of range");
    }
    return {from_label(label, 4, m_)};
}

uint32_t GrContext::label(const GrElement &x) const {
    check(x);
    return to_label(x.coeffs, 4);
}

GrElement GrContext::add(const GrElement &x, const GrElement &y) const {
    check(x);
    check(y);
    GrElement out = x;
    for (int i = 0; i < m_; i++) {
        out.coeffs[i] = (x.coeffs[i] + y.coeffs[i]) & 3;
    }
    return out;
}

GrElement GrContext::neg(const GrElement &x) const {
    return scale(x, -1);
}

GrElement GrContext::scale(const GrElement &x, int64_t c) const {
    check(x);
    GrElement out = x;
    for (auto &v : out.coeffs) {
        v = mod((int64_t)v * c, 4);
    }
    return out;
}

GrElement GrContext::mul(const GrElement &x, const GrElement &y) const {
    check(x);
    check(y);
    return {mulmod(x.coeffs, y.coeffs, h_, 4)};
}

GrElement GrContext::pow(const GrElement &x, uint64_t e) const {
    GrElement result = element(1);
    GrElement base = x;
    while (e) {
        if (e & 1) {
            result = mul(result, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

std::pair<GrElement, GrElement> GrContext::two_adic(const GrElement &c) const {
    auto [ia, ib] = two_adic_[label(c)];
    return {teich_[ia], teich_[ib]};
}

int GrContext::trace_uncached(uint32_t c) const {
    auto [ia, ib] = two_adic_[c];
    GrElement s = element(0);
    uint64_t e = 1;
    for (int i = 0; i < m_; i++) {
        s = add(s, pow(teich_[ia], e));
        s = add(s, scale(pow(teich_[ib], e), 2));
        e *= 2;
    }
    for (int i = 1; i < m_; i++) {
        if (s.coeffs[i] != 0) {
            throw std::logic_error("GR generalized trace is not in Z_4");
        }
    }
    return s.coeffs[0];
}

int GrContext::trace(const GrElement &c) const {
    return trace_table_[label(c)];
}

uint32_t GrContext::mul_labels(uint32_t x, uint32_t y) const {
    return label(mul(element(x), element(y)));
}

uint32_t GrContext::add_labels(uint32_t x, uint32_t y) const {
    return label(add(element(x), element(y)));
}

std::complex<double> GrContext::exponential_sum(const GrElement &x) const {
    static const std::complex<double> i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    std::complex<double> s = 0;
    for (const auto &y : teich_) {
        s += i_pow[trace(mul(x, y))];
    }
    return s;
}

}  // namespace qdesign
