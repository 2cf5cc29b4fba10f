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

#ifndef QDESIGN_MUB_H
#define QDESIGN_MUB_H

#include <string>
#include <vector>

#include "qdesign/linalg.h"

namespace qdesign {

enum class MubKind { Prime, PrimePower, GaloisRing };

std::string mub_kind_name(MubKind kind);
MubKind parse_mub_kind(const std::string &name);

/// A complete set of d+1 mutually unbiased bases.
///
/// bases[a][b] is the b-th state of basis a. Basis a = d is the computational basis.
/// For the field constructions a and b are element labels; for the Galois-ring
/// construction they are positions in the Teichmueller order.
struct MubFamily {
    size_t d = 0;
    MubKind kind = MubKind::Prime;
    std::vector<std::vector<StateVector>> bases;

    const StateVector &state(size_t a, size_t b) const {
        return bases[a][b];
    }
    size_t num_states() const {
        return d * (d + 1);
    }
};

/// (1/sqrt p) sum_x w_p^(a x^2 + b x) |x> for an odd prime p.
MubFamily mub_prime(int p);
/// (1/sqrt q) sum_x w_p^tr(a x^2 + b x) |x> over GF(p^k), p odd.
MubFamily mub_prime_power(int p, int k);
/// 2^(-n/2) sum_{x in T} i^tr((a + 2b) x) |x> over the Teichmueller set of GR(4^n).
MubFamily mub_galois_ring(int n);
/// Picks the construction for a prime-power dimension (Galois ring for powers of two).
MubFamily mub_for_dimension(size_t d);

struct UnbiasednessReport {
    double max_orthonormality_error = 0;
    double max_unbiasedness_error = 0;
    bool pass = false;
    // Pair with the largest violation relative to tol, as (a, b, a', b').
    size_t worst_a = 0, worst_b = 0, worst_a2 = 0, worst_b2 = 0;
};

UnbiasednessReport verify_unbiased(const MubFamily &f, double tol);

/// sum over all states of <psi|M|psi><psi|N|psi>.
cplx state_design_sum(const MubFamily &f, const ComplexMatrix &m, const ComplexMatrix &n);

/// (tr MN + tr M tr N) / (d (d + 1)).
cplx haar_moment(const ComplexMatrix &m, const ComplexMatrix &n);

/// (1/|X|^2) sum_{psi, phi} |<psi|phi>|^(2k) over all d(d+1) states.
double t_design_angle_check(const MubFamily &f, int k);

/// Text export: header "MUB d=<d> kind=<kind>" then "a b re0 im0 re1 im1 ..." per state.
std::string export_mub(const MubFamily &f);
MubFamily parse_mub(const std::string &text);

}  // namespace qdesign

#endif
