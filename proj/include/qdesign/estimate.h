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

#ifndef QDESIGN_ESTIMATE_H
#define QDESIGN_ESTIMATE_H

#include <cstdint>
#include <string>

#include "qdesign/channels.h"
#include "qdesign/circuit.h"
#include "qdesign/mub.h"
#include "qdesign/random.h"
#include "qdesign/twirl.h"

namespace qdesign {

enum class Protocol { MubMc, MubExact, Projected, Ancilla };

std::string protocol_name(Protocol p);
/// Accepts "mub_mc", "mub_exact", "projected" and "ancilla".
Protocol parse_protocol(const std::string &name);

/// One simulated fidelity experiment. `channel` is the noisy implementation of
/// `target_unitary` (an empty target means the identity). trials = 0 averages
/// every state exactly instead of sampling.
struct ExperimentConfig {
    Protocol protocol = Protocol::MubMc;
    KrausChannel channel;
    ComplexMatrix target_unitary;
    uint64_t trials = 0;
    uint64_t seed = 0;
    int workers = 1;
};

struct EstimateResult {
    Protocol protocol = Protocol::MubMc;
    size_t d = 0;
    uint64_t trials_used = 0;
    uint64_t seed = 0;
    double p_hat = 0;     // estimated success probability of the protocol
    double std_err = 0;   // standard error of p_hat (0 in exact mode)
    double exact = 0;     // closed-form value p_hat estimates
    double fidelity = 0;  // average fidelity implied by p_hat
};

/// Prepare a basis state, run the channel and U^dagger, measure in the same basis.
EstimateResult mub_mc_estimate(const ExperimentConfig &cfg, const MubFamily &family);
/// Same experiment in dimension 2^N using circuit-prepared projections of the
/// prime-dimensional family, p the smallest prime >= 2^N. p_hat is the
/// projection-weighted success probability; fidelity rescales it by p(p+1)/(d(d+1)).
EstimateResult projected_estimate(const ExperimentConfig &cfg);
/// Maximally entangled input through a prep circuit, channel on the system half,
/// inverse prep, probability of all zeros. p_hat = F_e, fidelity = (d F_e + 1)/(d + 1).
EstimateResult ancilla_entanglement_estimate(const ExperimentConfig &cfg);
/// Dispatches on cfg.protocol (MUB family picked from the channel dimension).
EstimateResult run_experiment(const ExperimentConfig &cfg);

/// Two-register circuit preparing sum_j |j>|j> / sqrt(d) from |0>. Qubits when d
/// is a power of two (system on the low half), otherwise two qudits.
Circuit bell_prep_circuit(size_t d);

struct PauliEstimate {
    double mean = 0;
    double std_err = 0;
};
/// Samples `shots` +-1 outcomes of the Hermitian representative of a qubit label.
PauliEstimate pauli_expectation(const ComplexMatrix &rho, const PauliLabel &label, uint64_t shots, Rng &rng);
/// Hermitian representative: X^a Z^b times i per qubit carrying both.
ComplexMatrix hermitian_pauli(const PauliLabel &label);

/// {"protocol", "d", "trials", "seed", "p_hat", "std_err", "exact", "fidelity"}.
std::string result_to_json(const EstimateResult &r);

}  // namespace qdesign

#endif
