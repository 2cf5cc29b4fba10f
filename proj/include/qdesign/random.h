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

#ifndef QDESIGN_RANDOM_H
#define QDESIGN_RANDOM_H

#include <random>

#include "qdesign/linalg.h"

namespace qdesign {

using Rng = std::mt19937_64;

/// Entries drawn i.i.d. from the standard complex Gaussian.
ComplexMatrix random_gaussian_matrix(size_t rows, size_t cols, Rng &rng);
ComplexMatrix random_hermitian(size_t d, Rng &rng);
/// Haar-distributed unitary (Gram-Schmidt on a Gaussian matrix).
ComplexMatrix random_unitary(size_t d, Rng &rng);
/// Full-rank density matrix G G^dagger / tr(G G^dagger).
ComplexMatrix random_density_matrix(size_t d, Rng &rng);
/// Fubini-Study uniform pure state.
StateVector random_state(size_t d, Rng &rng);

/// Derives the seed of an independent stream from a base seed and a stream index.
uint64_t derive_seed(uint64_t base, uint64_t stream);

}  // namespace qdesign

#endif
