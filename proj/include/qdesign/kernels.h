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

#ifndef QDESIGN_KERNELS_H
#define QDESIGN_KERNELS_H

#include <complex>
#include <cstddef>

namespace qdesign {
namespace kernels {

using cplx = std::complex<double>;

/// Inner-loop kernels over interleaved complex<double> arrays.
///
/// Every entry has a portable scalar implementation. On x86-64 an AVX2/FMA
/// variant is selected at runtime when the CPU supports it. Setting the
/// environment variable QDESIGN_KERNELS=scalar forces the scalar table.
struct KernelTable {
    const char *name;
    /// Returns sum_i conj(a[i]) * b[i].
    cplx (*dot)(const cplx *a, const cplx *b, size_t n);
    /// y[i] += alpha * x[i].
    void (*axpy)(cplx alpha, const cplx *x, cplx *y, size_t n);
    /// amps[i] *= factors[i].
    void (*mul_elementwise)(cplx *amps, const cplx *factors, size_t n);
    /// Applies the row-major 2x2 matrix m to every amplitude pair (i, i + stride)
    /// where bit `stride` of i is clear. n must be a multiple of 2 * stride.
    void (*apply_2x2)(cplx *amps, size_t n, size_t stride, const cplx *m);
};

const KernelTable &scalar_kernels();

/// Returns the AVX2 table, or nullptr when not compiled in or not supported by this CPU.
const KernelTable *avx2_kernels();

/// The table used by the rest of the library.
const KernelTable &active_kernels();

}  // namespace kernels
}  // namespace qdesign

#endif
