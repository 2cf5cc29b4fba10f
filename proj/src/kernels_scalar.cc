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

#include "qdesign/kernels.h"

namespace qdesign {
namespace kernels {

namespace {

inline cplx mul(cplx a, cplx b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

cplx dot_scalar(const cplx *a, const cplx *b, size_t n) {
    double re = 0, im = 0;
    for (size_t i = 0; i < n; i++) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

void axpy_scalar(cplx alpha, const cplx *x, cplx *y, size_t n) {
    for (size_t i = 0; i < n; i++) {
        y[i] += mul(alpha, x[i]);
    }
}

void mul_elementwise_scalar(cplx *amps, const cplx *factors, size_t n) {
    for (size_t i = 0; i < n; i++) {
        amps[i] = mul(amps[i], factors[i]);
    }
}

void apply_2x2_scalar(cplx *amps, size_t n, size_t stride, const cplx *m) {
    for (size_t base = 0; base < n; base += 2 * stride) {
        for (size_t i = base; i < base + stride; i++) {
            cplx a0 = amps[i];
            cplx a1 = amps[i + stride];
            amps[i] = mul(m[0], a0) + mul(m[1], a1);
            amps[i + stride] = mul(m[2], a0) + mul(m[3], a1);
        }
    }
}

}  // namespace

const KernelTable &scalar_kernels() {
    static const KernelTable table{
        "scalar",
        dot_scalar,
        axpy_scalar,
        mul_elementwise_scalar,
        apply_2x2_scalar,
    };
    return table;
}

}  // namespace kernels
}  // namespace qdesign
