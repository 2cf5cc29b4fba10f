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

#ifndef QDESIGN_LINALG_H
#define QDESIGN_LINALG_H

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace qdesign {

using cplx = std::complex<double>;

/// exp(2*pi*i*num/den), with num reduced mod den before evaluation.
cplx root_of_unity(int64_t num, int64_t den);

/// Dense complex matrix stored row-major.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(size_t rows, size_t cols);
    ComplexMatrix(size_t rows, size_t cols, std::vector<cplx> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(size_t d);
    static ComplexMatrix diagonal(const std::vector<cplx> &diag);

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    bool is_square() const {
        return rows_ == cols_;
    }
    cplx &operator()(size_t r, size_t c) {
        return data_[r * cols_ + c];
    }
    const cplx &operator()(size_t r, size_t c) const {
        return data_[r * cols_ + c];
    }
    cplx *row(size_t r) {
        return data_.data() + r * cols_;
    }
    const cplx *row(size_t r) const {
        return data_.data() + r * cols_;
    }
    const std::vector<cplx> &entries() const {
        return data_;
    }
    std::vector<cplx> &entries() {
        return data_;
    }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conj() const;
    cplx trace() const;
    double frobenius_norm() const;
    double max_abs_diff(const ComplexMatrix &other) const;
    bool is_hermitian(double tol) const;
    bool is_unitary(double tol) const;

    ComplexMatrix operator*(const ComplexMatrix &other) const;
    ComplexMatrix operator+(const ComplexMatrix &other) const;
    ComplexMatrix operator-(const ComplexMatrix &other) const;
    ComplexMatrix operator*(cplx scale) const;
    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(cplx scale);
    bool operator==(const ComplexMatrix &other) const = default;

    std::string str() const;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<cplx> data_;
};

inline ComplexMatrix operator*(cplx scale, const ComplexMatrix &m) {
    return m * scale;
}

/// Dense vector of amplitudes.
class StateVector {
   public:
    StateVector() = default;
    explicit StateVector(size_t dim);
    explicit StateVector(std::vector<cplx> amps);

    static StateVector basis(size_t dim, size_t index);

    size_t dim() const {
        return amps_.size();
    }
    cplx &operator[](size_t k) {
        return amps_[k];
    }
    const cplx &operator[](size_t k) const {
        return amps_[k];
    }
    std::vector<cplx> &amps() {
        return amps_;
    }
    const std::vector<cplx> &amps() const {
        return amps_;
    }

    double norm() const;
    /// Scales to unit norm; throws if the vector is zero.
    void normalize();
    /// |psi><psi|.
    ComplexMatrix projector() const;
    bool operator==(const StateVector &other) const = default;

   private:
    std::vector<cplx> amps_;
};

/// <a|b>.
cplx inner(const StateVector &a, const StateVector &b);
/// |<a|b>| for unnormalized inputs divided by both norms.
double overlap_modulus(const StateVector &a, const StateVector &b);
StateVector operator*(const ComplexMatrix &m, const StateVector &v);
/// <v|m|v>.
cplx expectation(const ComplexMatrix &m, const StateVector &v);

/// Kronecker product, first factor's index major.
ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);
StateVector tensor(const StateVector &a, const StateVector &b);

/// tr(A^dagger B).
cplx hs_inner(const ComplexMatrix &a, const ComplexMatrix &b);

enum class Subsystem { A, B };

/// Traces out one factor of a (dim_a * dim_b)-dimensional operator and returns the other.
ComplexMatrix partial_trace(const ComplexMatrix &rho, size_t dim_a, size_t dim_b, Subsystem keep);

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // orthonormal columns
};

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Eigenvalues are returned ascending. Each eigenvector is rotated so that its first
/// component of modulus above 1e-12 is real and positive.
EigenDecomposition hermitian_eig(const ComplexMatrix &a);

/// X^x_power Z^z_power on one qudit of dimension d, with X|j> = |j+1> and Z|j> = w^j |j>.
ComplexMatrix weyl_operator(size_t d, int64_t x_power, int64_t z_power);

}  // namespace qdesign

#endif
