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

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define QDESIGN_HAVE_AVX2 1
#include <immintrin.h>
#endif

namespace qdesign {
namespace kernels {

#ifdef QDESIGN_HAVE_AVX2

#define QDESIGN_AVX2 __attribute__((target("avx2,fma")))

namespace {

// One __m256d holds two complex numbers [re0, im0, re1, im1].

QDESIGN_AVX2 inline __m256d cmul(__m256d a, __m256d b) {
    __m256d b_re = _mm256_movedup_pd(b);
    __m256d b_im = _mm256_permute_pd(b, 0xF);
    __m256d a_swap = _mm256_permute_pd(a, 0x5);
    return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_swap, b_im));
}

// Multiply by a broadcast complex scalar given as splatted real and imaginary parts.
QDESIGN_AVX2 inline __m256d cmul_splat(__m256d a, __m256d s_re, __m256d s_im) {
    __m256d a_swap = _mm256_permute_pd(a, 0x5);
    return _mm256_fmaddsub_pd(a, s_re, _mm256_mul_pd(a_swap, s_im));
}

QDESIGN_AVX2 cplx dot_avx2(const cplx *a, const cplx *b, size_t n) {
    const double *pa = reinterpret_cast<const double *>(a);
    const double *pb = reinterpret_cast<const double *>(b);
    __m256d s_direct = _mm256_setzero_pd();
    __m256d s_cross = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        s_direct = _mm256_fmadd_pd(va, vb, s_direct);
        s_cross = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0x5), s_cross);
    }
    alignas(32) double d[4];
    alignas(32) double c[4];
    _mm256_store_pd(d, s_direct);
    _mm256_store_pd(c, s_cross);
    // s_direct lanes: ar*br, ai*bi. s_cross lanes: ar*bi, ai*br.
    double re = d[0] + d[1] + d[2] + d[3];
    double im = (c[0] - c[1]) + (c[2] - c[3]);
    for (; i < n; i++) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

QDESIGN_AVX2 void axpy_avx2(cplx alpha, const cplx *x, cplx *y, size_t n) {
    const double *px = reinterpret_cast<const double *>(x);
    double *py = reinterpret_cast<double *>(y);
    __m256d s_re = _mm256_set1_pd(alpha.real());
    __m256d s_im = _mm256_set1_pd(alpha.imag());
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(px + 2 * i);
        __m256d vy = _mm256_loadu_pd(py + 2 * i);
        _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(vy, cmul_splat(vx, s_re, s_im)));
    }
    for (; i < n; i++) {
        y[i] += cplx{
            alpha.real() * x[i].real() - alpha.imag() * x[i].imag(),
            alpha.real() * x[i].imag() + alpha.imag() * x[i].real()};
    }
}

QDESIGN_AVX2 void mul_elementwise_avx2(cplx *amps, const cplx *factors, size_t n) {
    double *pa = reinterpret_cast<double *>(amps);
    const double *pf = reinterpret_cast<const double *>(factors);
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vf = _mm256_loadu_pd(pf + 2 * i);
        _mm256_storeu_pd(pa + 2 * i, cmul(va, vf));
    }
    for (; i < n; i++) {
        cplx a = amps[i];
        cplx f = factors[i];
        amps[i] = {a.real() * f.real() - a.imag() * f.imag(), a.real() * f.imag() + a.imag() * f.real()};
    }
}

QDESIGN_AVX2 void apply_2x2_avx2(cplx *amps, size_t n, size_t stride, const cplx *m) {
    double *p = reinterpret_cast<double *>(amps);
    if (stride == 1) {
        // Each pair is adjacent: v = [a0, a1], result = [m00 a0 + m01 a1, m10 a0 + m11 a1].
        __m256d diag = _mm256_setr_pd(m[0].real(), m[0].imag(), m[3].real(), m[3].imag());
        __m256d off = _mm256_setr_pd(m[1].real(), m[1].imag(), m[2].real(), m[2].imag());
        for (size_t i = 0; i < n; i += 2) {
            __m256d v = _mm256_loadu_pd(p + 2 * i);
            __m256d v_swap = _mm256_permute2f128_pd(v, v, 1);
            _mm256_storeu_pd(p + 2 * i, _mm256_add_pd(cmul(v, diag), cmul(v_swap, off)));
        }
        return;
    }
    __m256d m00r = _mm256_set1_pd(m[0].real()), m00i = _mm256_set1_pd(m[0].imag());
    __m256d m01r = _mm256_set1_pd(m[1].real()), m01i = _mm256_set1_pd(m[1].imag());
    __m256d m10r = _mm256_set1_pd(m[2].real()), m10i = _mm256_set1_pd(m[2].imag());
    __m256d m11r = _mm256_set1_pd(m[3].real()), m11i = _mm256_set1_pd(m[3].imag());
    for (size_t base = 0; base < n; base += 2 * stride) {
        for (size_t i = base; i < base + stride; i += 2) {
            __m256d a0 = _mm256_loadu_pd(p + 2 * i);
            __m256d a1 = _mm256_loadu_pd(p + 2 * (i + stride));
            __m256d r0 = _mm256_add_pd(cmul_splat(a0, m00r, m00i), cmul_splat(a1, m01r, m01i));
            __m256d r1 = _mm256_add_pd(cmul_splat(a0, m10r, m10i), cmul_splat(a1, m11r, m11i));
            _mm256_storeu_pd(p + 2 * i, r0);
            _mm256_storeu_pd(p + 2 * (i + stride), r1);
        }
    }
}

}  // namespace

const KernelTable *avx2_kernels() {
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    static const KernelTable table{
        "avx2",
        dot_avx2,
        axpy_avx2,
        mul_elementwise_avx2,
        apply_2x2_avx2,
    };
    return supported ? &table : nullptr;
}

#else

const KernelTable *avx2_kernels() {
    return nullptr;
}

#endif

}  // namespace kernels
}  // namespace qdesign
