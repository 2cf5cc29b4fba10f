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

#ifndef QDESIGN_CHANNELS_H
#define QDESIGN_CHANNELS_H

#include <string>
#include <vector>

#include "qdesign/linalg.h"
#include "qdesign/random.h"

namespace qdesign {

/// rho -> sum_k A_k rho A_k^dagger.
struct KrausChannel {
    size_t dim = 0;
    std::vector<ComplexMatrix> kraus;
    bool trace_preserving = false;
};

/// Validates shapes and sets trace_preserving from the completeness residual (tol 1e-8).
KrausChannel make_channel(std::vector<ComplexMatrix> kraus);
/// max |sum_k A_k^dagger A_k - I|.
double completeness_error(const KrausChannel &ch);

KrausChannel identity_channel(size_t d);
KrausChannel unitary_channel(const ComplexMatrix &u);
/// Applies `first`, then `second`.
KrausChannel compose(const KrausChannel &first, const KrausChannel &second);

ComplexMatrix apply(const KrausChannel &ch, const ComplexMatrix &rho);

/// p rho + (1 - p) I / d, as a mixture of the d^2 Weyl operators.
KrausChannel depolarizing(size_t d, double p);

enum class NoiseKind { BitFlip, PhaseFlip, BitPhaseFlip };
/// Kraus operators sqrt(p) I and sqrt(1 - p) sigma with sigma = X, Z or Y.
KrausChannel standard_noise(NoiseKind kind, double p);
NoiseKind parse_noise_kind(const std::string &name);

/// G_k S^(-1/2) with S = sum_k G_k^dagger G_k for Gaussian G_k: a random
/// trace-preserving channel with `rank` Kraus operators.
KrausChannel random_channel(size_t d, size_t rank, Rng &rng);

/// Column stacking: vec(rho)[j * d + i] = rho(i, j).
std::vector<cplx> vec(const ComplexMatrix &m);
ComplexMatrix unvec(const std::vector<cplx> &v, size_t d);

/// d^2 x d^2 matrix acting on vec(rho); sum_k conj(A_k) (x) A_k.
struct Supermatrix {
    size_t dim = 0;
    ComplexMatrix mat;
};

struct ChoiMatrix {
    size_t dim = 0;
    ComplexMatrix mat;
};

Supermatrix kraus_to_supermatrix(const KrausChannel &ch);
ComplexMatrix apply(const Supermatrix &s, const ComplexMatrix &rho);
/// sum_{ij} (E_ij (x) I) S (I (x) E_ij).
ChoiMatrix supermatrix_to_choi(const Supermatrix &s);
/// Eigen-decomposes the Choi matrix. Eigenvalues below -1e-8 throw; those below
/// 1e-10 are dropped.
KrausChannel choi_to_kraus(const ChoiMatrix &c);

/// (sum_k |tr(A_k U^dagger)|^2 + d) / (d^2 + d) for a trace-preserving channel.
double avg_fidelity_exact(const ComplexMatrix &u, const KrausChannel &ch);
/// <phi| (I (x) E)(|phi><phi|) |phi> with phi maximally entangled.
double entanglement_fidelity(const KrausChannel &ch);

/// Parameters of the unitarily invariant map X -> p X + q tr(X) I / d that the
/// superoperator twirls to.
struct InvariantParams {
    cplx p;
    cplx q;
};
InvariantParams invariant_decompose(const Supermatrix &s);

/// {"dim": d, "kraus": [[[re, im], ...row-major...], ...]}.
std::string channel_to_json(const KrausChannel &ch);
/// Rejects malformed documents and channels whose completeness error exceeds 1e-6.
KrausChannel channel_from_json(const std::string &text);

}  // namespace qdesign

#endif
