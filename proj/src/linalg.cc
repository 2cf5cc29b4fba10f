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

#include "qdesign/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qdesign/kernels.h"

namespace qdesign {

cplx root_of_unity(int64_t num, int64_t den) {
    if (den <= 0) {
        throw std::invalid_argument("root_of_unity: denominator must be positive");
    }
    int64_t r = num % den;
    if (r < 0) {
        r += den;
    }
    if (r == 0) {
        return {1, 0};
    }
    if (2 * r == den) {
        return {-1, 0};
    }
    if (4 * r == den) {
        return {0, 1};
    }
    if (4 * r == 3 * den) {
        return {0, -1};
    }
    double angle = 2 * M_PI * (double)r / (double)den;
    return {std::cos(angle), std::sin(angle)};
}

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
}

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) {
        throw std::invalid_argument("ComplexMatrix: entry count does not match shape");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto &r : rows) {
        if (r.size() != cols_) {
            throw std::invalid_argument("ComplexMatrix: ragged initializer");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

ComplexMatrix ComplexMatrix::identity(size_t d) {
    ComplexMatrix m(d, d);
    for (size_t k = 0; k < d; k++) {
        m(k, k) = 1;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx> &diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (size_t k = 0; k < diag.size(); k++) {
        m(k, k) = diag[k];
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            out(c, r) = (*this)(r, c);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix out = *this;
    for (auto &e : out.data_) {
        e = std::conj(e);
    }
    return out;
}

cplx ComplexMatrix::trace() const {
    if (!is_square()) {
        throw std::invalid_argument("trace of non-square matrix");
    }
    cplx t = 0;
    for (size_t k = 0; k < rows_; k++) {
        t += (*this)(k, k);
    }
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0;
    for (const auto &e : data_) {
        s += std::norm(e);
    }
    return std::sqrt(s);
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix &other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    }
    double m = 0;
    for (size_t k = 0; k < data_.size(); k++) {
        m = std::max(m, std::abs(data_[k] - other.data_[k]));
    }
    return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (!is_square()) {
        return false;
    }
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = r; c < cols_; c++) {
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) {
                return false;
            }
        }
    }
    return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
    if (!is_square()) {
        return false;
    }
    return (adjoint() * *this).max_abs_diff(identity(rows_)) <= tol;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix &other) const {
    if (cols_ != other.rows_) {
        throw std::invalid_argument("matrix product: inner dimension mismatch");
    }
    const auto &k = kernels::active_kernels();
    ComplexMatrix out(rows_, other.cols_);
    for (size_t r = 0; r < rows_; r++) {
        cplx *dst = out.row(r);
        for (size_t m = 0; m < cols_; m++) {
            cplx a = (*this)(r, m);
            if (a != cplx{0, 0}) {
                k.axpy(a, other.row(m), dst, other.cols_);
            }
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix &other) const {
    ComplexMatrix out = *this;
    out += other;
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix &other) const {
    ComplexMatrix out = *this;
    out -= other;
    return out;
}

ComplexMatrix ComplexMatrix::operator*(cplx scale) const {
    ComplexMatrix out = *this;
    out *= scale;
    return out;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("matrix sum: shape mismatch");
    }
    for (size_t k = 0; k < data_.size(); k++) {
        data_[k] += other.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("matrix difference: shape mismatch");
    }
    for (size_t k = 0; k < data_.size(); k++) {
        data_[k] -= other.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(cplx scale) {
    for (auto &e : data_) {
        e *= scale;
    }
    return *this;
}

std::string ComplexMatrix::str() const {
    std::stringstream ss;
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            ss << (c ? " " : "") << (*this)(r, c);
        }
        ss << "\n";
    }
    return ss.str();
}

StateVector::StateVector(size_t dim) : amps_(dim) {
}

StateVector::StateVector(std::vector<cplx> amps) : amps_(std::move(amps)) {
}

StateVector StateVector::basis(size_t dim, size_t index) {
    if (index >= dim) {
        throw std::out_of_range("basis index out of range");
    }
    StateVector v(dim);
    v[index] = 1;
    return v;
}

double StateVector::norm() const {
    return std::sqrt(kernels::active_kernels().dot(amps_.data(), amps_.data(), amps_.size()).real());
}

void StateVector::normalize() {
    double n = norm();
    if (n == 0) {
        throw std::domain_error("cannot normalize the zero vector");
    }
    for (auto &a : amps_) {
        a /= n;
    }
}

ComplexMatrix StateVector::projector() const {
    size_t d = dim();
    ComplexMatrix m(d, d);
    for (size_t r = 0; r < d; r++) {
        for (size_t c = 0; c < d; c++) {
            m(r, c) = amps_[r] * std::conj(amps_[c]);
        }
    }
    return m;
}

cplx inner(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("inner: dimension mismatch");
    }
    return kernels::active_kernels().dot(a.amps().data(), b.amps().data(), a.dim());
}

double overlap_modulus(const StateVector &a, const StateVector &b) {
    return std::abs(inner(a, b)) / (a.norm() * b.norm());
}

StateVector operator*(const ComplexMatrix &m, const StateVector &v) {
    if (m.cols() != v.dim()) {
        throw std::invalid_argument("matrix-vector product: dimension mismatch");
    }
    StateVector out(m.rows());
    for (size_t r = 0; r < m.rows(); r++) {
        cplx s = 0;
        const cplx *row = m.row(r);
        for (size_t c = 0; c < m.cols(); c++) {
            s += row[c] * v[c];
        }
        out[r] = s;
    }
    return out;
}

cplx expectation(const ComplexMatrix &m, const StateVector &v) {
    return inner(v, m * v);
}

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t ar = 0; ar < a.rows(); ar++) {
        for (size_t ac = 0; ac < a.cols(); ac++) {
            cplx s = a(ar, ac);
            if (s == cplx{0, 0}) {
                continue;
            }
            for (size_t br = 0; br < b.rows(); br++) {
                for (size_t bc = 0; bc < b.cols(); bc++) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
                }
            }
        }
    }
    return out;
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    StateVector out(a.dim() * b.dim());
    for (size_t i = 0; i < a.dim(); i++) {
        for (size_t j = 0; j < b.dim(); j++) {
            out[i * b.dim() + j] = a[i] * b[j];
        }
    }
    return out;
}

cplx hs_inner(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("hs_inner: dimension mismatch");
    }
    return kernels::active_kernels().dot(a.entries().data(), b.entries().data(), a.entries().size());
}

ComplexMatrix partial_trace(const ComplexMatrix &rho, size_t dim_a, size_t dim_b, Subsystem keep) {
    if (rho.rows() != dim_a * dim_b || rho.cols() != dim_a * dim_b) {
        throw std::invalid_argument("partial_trace: dimension mismatch");
    }
    if (keep == Subsystem::A) {
        ComplexMatrix out(dim_a, dim_a);
        for (size_t i = 0; i < dim_a; i++) {
            for (size_t j = 0; j < dim_a; j++) {
                cplx s = 0;
                for (size_t k = 0; k < dim_b; k++) {
                    s += rho(i * dim_b + k, j * dim_b + k);
                }
                out(i, j) = s;
            }
        }
        return out;
    }
    ComplexMatrix out(dim_b, dim_b);
    for (size_t i = 0; i < dim_b; i++) {
        for (size_t j = 0; j < dim_b; j++) {
            cplx s = 0;
            for (size_t k = 0; k < dim_a; k++) {
                s += rho(k * dim_b + i, k * dim_b + j);
            }
            out(i, j) = s;
        }
    }
    return out;
}

EigenDecomposition hermitian_eig(const ComplexMatrix &input) {
    size_t n = input.rows();
    double scale = std::max(1.0, input.frobenius_norm());
    if (!input.is_hermitian(1e-8 * scale)) {
        throw std::invalid_argument("hermitian_eig: input is not Hermitian");
    }
    ComplexMatrix a = input;
    ComplexMatrix v = ComplexMatrix::identity(n);

    auto off_norm = [&]() {
        double s = 0;
        for (size_t r = 0; r < n; r++) {
            for (size_t c = 0; c < n; c++) {
                if (r != c) {
                    s += std::norm(a(r, c));
                }
            }
        }
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 100 && off_norm() > 1e-12 * scale; sweep++) {
        for (size_t p = 0; p < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                cplx g = a(p, q);
                double r = std::abs(g);
                if (r < 1e-300) {
                    continue;
                }
                cplx phase = g / r;  // e^{i phi}
                double app = a(p, p).real();
                double aqq = a(q, q).real();
                double theta = 0.5 * std::atan2(2 * r, aqq - app);
                double c = std::cos(theta);
                double s = std::sin(theta);
                // Rotation V on (p, q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
                cplx vqp = -s * std::conj(phase);
                cplx vqq = c * std::conj(phase);
                for (size_t k = 0; k < n; k++) {
                    cplx akp = a(k, p);
                    cplx akq = a(k, q);
                    a(k, p) = akp * c + akq * vqp;
                    a(k, q) = akp * s + akq * vqq;
                }
                for (size_t k = 0; k < n; k++) {
                    cplx apk = a(p, k);
                    cplx aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(vqp) * aqk;
                    a(q, k) = s * apk + std::conj(vqq) * aqk;
                }
                a(p, q) = 0;
                a(q, p) = 0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (size_t k = 0; k < n; k++) {
                    cplx vkp = v(k, p);
                    cplx vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * vqp;
                    v(k, q) = vkp * s + vkq * vqq;
                }
            }
        }
    }

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
        return a(x, x).real() < a(y, y).real();
    });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (size_t j = 0; j < n; j++) {
        size_t src = order[j];
        out.values[j] = a(src, src).real();
        cplx fix = 1;
        for (size_t k = 0; k < n; k++) {
            if (std::abs(v(k, src)) > 1e-12) {
                fix = std::conj(v(k, src)) / std::abs(v(k, src));
                break;
            }
        }
        for (size_t k = 0; k < n; k++) {
            out.vectors(k, j) = v(k, src) * fix;
        }
    }
    return out;
}

ComplexMatrix weyl_operator(size_t d, int64_t x_power, int64_t z_power) {
    auto sd = (int64_t)d;
    int64_t xp = ((x_power % sd) + sd) % sd;
    ComplexMatrix m(d, d);
    // X^a Z^b |j> = w^{b j} |j + a>.
    for (int64_t j = 0; j < sd; j++) {
        m((size_t)((j + xp) % sd), (size_t)j) = root_of_unity(z_power * j, sd);
    }
    return m;
}

}  // namespace qdesign
