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

#include "qdesign/random.h"

#include <cmath>

namespace qdesign {

static cplx gaussian(Rng &rng) {
    std::normal_distribution<double> dist(0.0, std::sqrt(0.5));
    double re = dist(rng);
    double im = dist(rng);
    return {re, im};
}

ComplexMatrix random_gaussian_matrix(size_t rows, size_t cols, Rng &rng) {
    ComplexMatrix m(rows, cols);
    for (auto &e : m.entries()) {
        e = gaussian(rng);
    }
    return m;
}

ComplexMatrix random_hermitian(size_t d, Rng &rng) {
    ComplexMatrix g = random_gaussian_matrix(d, d, rng);
    return (g + g.adjoint()) * 0.5;
}

ComplexMatrix random_unitary(size_t d, Rng &rng) {
    ComplexMatrix g = random_gaussian_matrix(d, d, rng);
    // Modified Gram-Schmidt over columns.
    for (size_t j = 0; j < d; j++) {
        for (size_t i = 0; i < j; i++) {
            cplx proj = 0;
            for (size_t r = 0; r < d; r++) {
                proj += std::conj(g(r, i)) * g(r, j);
            }
            for (size_t r = 0; r < d; r++) {
                g(r, j) -= proj * g(r, i);
            }
        }
        double nrm = 0;
        for (size_t r = 0; r < d; r++) {
            nrm += std::norm(g(r, j));
        }
        nrm = std::sqrt(nrm);
        for (size_t r = 0; r < d; r++) {
            g(r, j) /= nrm;
        }
    }
    return g;
}

ComplexMatrix random_density_matrix(size_t d, Rng &rng) {
    ComplexMatrix g = random_gaussian_matrix(d, d, rng);
    ComplexMatrix rho = g * g.adjoint();
    return rho * (1.0 / rho.trace().real());
}

StateVector random_state(size_t d, Rng &rng) {
    StateVector v(d);
    for (size_t k = 0; k < d; k++) {
        v[k] = gaussian(rng);
    }
    v.normalize();
    return v;
}

uint64_t derive_seed(uint64_t base, uint64_t stream) {
    // splitmix64 finalizer applied to a stream-offset state.
    uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace qdesign
