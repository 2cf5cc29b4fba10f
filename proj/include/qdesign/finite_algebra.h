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

#ifndef QDESIGN_FINITE_ALGEBRA_H
#define QDESIGN_FINITE_ALGEBRA_H

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace qdesign {

bool is_prime(uint64_t n);

/// Element of GF(p^k): coeffs[i] is the coefficient of xi^i, each in [0, p).
struct GfElement {
    std::vector<int> coeffs;
    bool operator==(const GfElement &other) const = default;
};

/// GF(p^k) realized as F_p[X]/(h) for a primitive h.
///
/// Elements are labeled by the base-p integer sum_i coeffs[i] p^i. h is the
/// lexicographically smallest monic primitive polynomial of degree k, where
/// candidates are ordered by the base-p value of their low coefficients
/// (highest-degree coefficient most significant).
class GfContext {
   public:
    GfContext(int p, int k);

    int p() const {
        return p_;
    }
    int k() const {
        return k_;
    }
    uint32_t size() const {
        return size_;
    }
    /// Coefficients of h, length k+1, h[k] == 1.
    const std::vector<int> &modulus() const {
        return h_;
    }
    /// t with tr(x) = sum_i t[i] x.coeffs[i] mod p.
    const std::vector<int> &trace_vector() const {
        return trace_vector_;
    }
    /// mul_matrices()[i] is M_{xi^i}: column j holds the coefficients of xi^(i+j).
    const std::vector<std::vector<std::vector<int>>> &mul_matrices() const {
        return mul_matrices_;
    }
    /// M_y, the k x k matrix over F_p with coeffs(x y) = M_y coeffs(x).
    std::vector<std::vector<int>> mul_matrix(const GfElement &y) const;

    GfElement element(uint32_t label) const;
    uint32_t label(const GfElement &x) const;
    GfElement zero() const;
    GfElement one() const;
    GfElement generator() const;

    GfElement add(const GfElement &x, const GfElement &y) const;
    GfElement sub(const GfElement &x, const GfElement &y) const;
    GfElement neg(const GfElement &x) const;
    GfElement mul(const GfElement &x, const GfElement &y) const;
    GfElement scale(const GfElement &x, int64_t c) const;
    GfElement pow(const GfElement &x, uint64_t e) const;
    GfElement inv(const GfElement &x) const;
    /// Schoolbook multiplication and reduction mod h (no tables).
    GfElement mul_reference(const GfElement &x, const GfElement &y) const;

    /// tr(x) via the trace vector.
    int trace(const GfElement &x) const;
    /// tr(x) as sum_{i<k} x^(p^i), which must be a constant polynomial.
    int trace_by_powers(const GfElement &x) const;

    /// sum_x exp(2 pi i tr(a x) / p).
    std::complex<double> gauss_sum(const GfElement &a) const;

    uint32_t add_labels(uint32_t x, uint32_t y) const;
    uint32_t mul_labels(uint32_t x, uint32_t y) const;
    int trace_label(uint32_t x) const;

   private:
    void check(const GfElement &x) const;
    std::vector<int> reduce_product(const std::vector<int> &x, const std::vector<int> &y) const;

    int p_;
    int k_;
    uint32_t size_;
    std::vector<int> h_;
    std::vector<int> trace_vector_;
    std::vector<std::vector<std::vector<int>>> mul_matrices_;
    std::vector<uint32_t> exp_table_;  // exp_table_[e] = label of xi^e, e < size-1
    std::vector<uint32_t> log_table_;  // inverse of exp_table_ on nonzero labels
    std::vector<uint32_t> pow_p_;      // powers of p
};

/// Element of GR(4^m) = Z_4[X]/(h): coeffs[i] in [0, 4).
struct GrElement {
    std::vector<int> coeffs;
    bool operator==(const GrElement &other) const = default;
};

/// Galois ring GR(4^m) with its Teichmueller set.
///
/// Labels are base-4 integers of the coefficient vector. The Teichmueller set is
/// ordered {0, 1, X, X^2, ..., X^(2^m - 2)}.
class GrContext {
   public:
    explicit GrContext(int m);

    int m() const {
        return m_;
    }
    uint32_t size() const {
        return size_;
    }
    const std::vector<int> &modulus() const {
        return h_;
    }
    const std::vector<GrElement> &teichmuller() const {
        return teich_;
    }
    /// Labels of the Teichmueller elements in Teichmueller order.
    const std::vector<uint32_t> &teichmuller_labels() const {
        return teich_labels_;
    }
    /// Position of a label in the Teichmueller order, or -1.
    int teichmuller_index(uint32_t label) const {
        return teich_index_[label];
    }

    GrElement element(uint32_t label) const;
    uint32_t label(const GrElement &x) const;

    GrElement add(const GrElement &x, const GrElement &y) const;
    GrElement neg(const GrElement &x) const;
    GrElement mul(const GrElement &x, const GrElement &y) const;
    GrElement scale(const GrElement &x, int64_t c) const;
    GrElement pow(const GrElement &x, uint64_t e) const;

    /// The unique (a, b) in T x T with a + 2b = c.
    std::pair<GrElement, GrElement> two_adic(const GrElement &c) const;
    /// Teichmueller indices of the 2-adic digits of a label.
    std::pair<uint32_t, uint32_t> two_adic_indices(uint32_t label) const {
        return two_adic_[label];
    }

    /// Generalized trace into Z_4.
    int trace(const GrElement &c) const;
    int trace_label(uint32_t label) const {
        return trace_table_[label];
    }
    uint32_t mul_labels(uint32_t x, uint32_t y) const;
    uint32_t add_labels(uint32_t x, uint32_t y) const;

    /// sum over y in T of i^tr(x y).
    std::complex<double> exponential_sum(const GrElement &x) const;

   private:
    void check(const GrElement &x) const;
    int trace_uncached(uint32_t label) const;

    int m_;
    uint32_t size_;
    std::vector<int> h_;
    std::vector<GrElement> teich_;
    std::vector<uint32_t> teich_labels_;
    std::vector<int> teich_index_;
    std::vector<std::pair<uint32_t, uint32_t>> two_adic_;
    std::vector<int> trace_table_;
};

}  // namespace qdesign

#endif
