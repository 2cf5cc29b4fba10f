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

#ifndef QDESIGN_MUB_CIRCUITS_H
#define QDESIGN_MUB_CIRCUITS_H

#include <cstdint>
#include <vector>

#include "qdesign/circuit.h"
#include "qdesign/linalg.h"

namespace qdesign {

/// Qubit circuit on num_qubits+1 qubits whose output, restricted to the first p
/// amplitudes and renormalized, is the prime MUB state (a, b). a = p selects the
/// computational basis and prepares |b> directly.
Circuit build_mub_circuit_prime(int p, int num_qubits, int64_t a, int64_t b);

/// Qudit circuit on num_qudits qudits of dimension p preparing the GF(p^num_qudits)
/// MUB state with element labels (a, b). a = p^num_qudits selects the computational basis.
Circuit build_mub_circuit_prime_power(int p, int num_qudits, uint32_t a, uint32_t b);

struct AmplitudeSplit {
    double theta = 0;  // sin(theta)^2 = <psi|good|psi>
    ComplexMatrix good_projector;
};

AmplitudeSplit amplitude_split(const StateVector &psi, const ComplexMatrix &good_projector);

/// Q^rounds A|0> with Q = A U0 A^dagger U_bad, U0 = 2|0><0| - I, U_bad = I - 2 good.
StateVector amplitude_amplify(const Circuit &prep, const ComplexMatrix &good_projector, int rounds);

struct ProjectedPrep {
    StateVector state;               // num_qubits-qubit output, normalized (zero when weight is 0)
    double cos_theta = 0;            // measured on the prepared num_qubits+1 qubit state
    double ancilla_residue = 0;      // probability left outside the output subspace
    double projection_weight = 0;    // |P psi|^2 of the p-dimensional MUB state
};

/// Smallest prime >= 2^num_qubits.
int embedding_prime(int num_qubits);

/// The num_qubits+2 qubit circuit: state preparation on qubits 0..num_qubits, rotated
/// ancilla on qubit num_qubits+1, and one amplification round onto the subspace
/// "qubit num_qubits and the ancilla are both |0>". Requires a < p.
Circuit projected_mub_circuit(int num_qubits, int64_t a, int64_t b);

/// Runs projected_mub_circuit and returns the renormalized first 2^num_qubits amplitudes.
/// Throws std::runtime_error when the residue exceeds 1e-6.
ProjectedPrep projected_mub_prepare(int num_qubits, int64_t a, int64_t b);

/// CNOT circuit XOR-ing the parity of `controls` onto `target` with a binary
/// fan-in tree; every control is restored.
Circuit parallel_prefix_parity(int n, const std::vector<int> &controls, int target);
/// One CNOT per control.
Circuit naive_parity_chain(int n, const std::vector<int> &controls, int target);

}  // namespace qdesign

#endif
