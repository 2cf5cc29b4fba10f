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

#ifndef QDESIGN_TWIRL_H
#define QDESIGN_TWIRL_H

#include <cstdint>
#include <string>
#include <vector>

#include "qdesign/channels.h"
#include "qdesign/circuit.h"
#include "qdesign/linalg.h"
#include "qdesign/random.h"

namespace qdesign {

/// Tensor-product Pauli X^a Z^b on n qudits of dimension d.
///
/// x holds a (n entries) followed by b (n entries). The scalar factor is
/// exp(2 pi i phase / phase_modulus(d)); it is carried along by conjugation and
/// ignored whenever labels are compared as group elements.
struct PauliLabel {
    int d = 2;
    int n = 1;
    std::vector<int> x;
    int phase = 0;

    static PauliLabel identity(int d, int n);
    /// Index in [0, d^(2n)): sum_i (a_i + d b_i) d^(2i). For qubits the per-qubit
    /// code is I=0, X=1, Z=2, Y=3.
    static PauliLabel from_index(int d, int n, uint64_t index);
    uint64_t index() const;
    bool is_identity() const;
    /// Equality ignoring the phase.
    bool same_operator(const PauliLabel &other) const;
};

/// d for odd d, 2d for even d (phases of qubit Paulis under Clifford conjugation are powers of i).
int phase_modulus(int d);
uint64_t num_pauli_labels(int d, int n);

ComplexMatrix pauli_matrix(const PauliLabel &l);
/// x_a . y_b - x_b . y_a mod d.
int symplectic_inner(const PauliLabel &x, const PauliLabel &y);
/// Returns (x, y)_Sp after checking P_x P_y = w^(-(x, y)_Sp) P_y P_x on the matrices.
/// With Z|j> = w^j |j> and X|j> = |j+1> this sign is forced; for qubits it is immaterial.
int commutation_check(const PauliLabel &x, const PauliLabel &y);
/// sum_x w^((x, j)_Sp) over all labels x.
cplx char_sum(const PauliLabel &j);

/// rho -> sum_r weights[r] P_r rho P_r^dagger, indexed by PauliLabel::index.
struct PauliChannel {
    int d = 2;
    int n = 1;
    std::vector<double> weights;
};

KrausChannel pauli_channel_to_kraus(const PauliChannel &pc);
/// weights[r] = sum_k |tr(A_k^dagger P_r)|^2 / D^2.
PauliChannel pauli_twirl(const KrausChannel &ch, int d, int n);

/// Supermatrix of X -> (1/K) sum_V V Lambda(V^dagger X V) V^dagger.
Supermatrix twirl_supermatrix(const Supermatrix &s, const std::vector<ComplexMatrix> &set);
/// All d^(2n) Pauli matrices (no phase).
std::vector<ComplexMatrix> pauli_group(int d, int n);

/// The 24 single-qubit Cliffords modulo phase; first entry of modulus > 1e-9 is real positive.
std::vector<ComplexMatrix> clifford_group_1q();

struct CliffordTwirlResult {
    double p = 0;         // depolarizing parameter of the twirled map
    double residual = 0;  // max deviation from p X + (1 - p) tr(X) I / 2
};
/// Throws std::runtime_error when the residual exceeds 1e-6.
CliffordTwirlResult clifford_twirl_exact(const KrausChannel &ch);

/// max-entry deviation of (1/K) sum U^dagger M U N U^dagger O U from its Haar average.
double unitary_design_check(const std::vector<ComplexMatrix> &set, const ComplexMatrix &m, const ComplexMatrix &n,
                            const ComplexMatrix &o);
/// max-entry deviation of (1/K) sum U rho U^dagger from tr(rho) I / d.
double unitary_one_design_check(const std::vector<ComplexMatrix> &set, const ComplexMatrix &rho);

/// Label of g P g^dagger for qubit gates H, S, T, X, Z and CNOT, with exact phase.
PauliLabel conjugate_label(const Gate &g, const PauliLabel &l);
/// Conjugation by the whole circuit, gates taken in order.
PauliLabel conjugate_label(const Circuit &c, const PauliLabel &l);

/// Counts the random bits drawn from the underlying generator.
class BitSource {
   public:
    explicit BitSource(Rng &rng) : rng_(rng) {
    }
    bool bit();
    /// Uniform in [0, 3) by two-bit rejection sampling.
    int trit();
    /// True with probability 3/4 (two bits).
    bool three_quarters();
    uint64_t bits_used() const {
        return used_;
    }

   private:
    Rng &rng_;
    uint64_t word_ = 0;
    int left_ = 0;
    uint64_t used_ = 0;
};

/// Random choices of one round of the approximate twirl.
struct TwirlRoundChoices {
    std::vector<int> subset;       // the non-empty set B, ascending; subset[0] is the control
    std::vector<int> pre_twirl;    // T power per qubit before the fan-out (control entry unused)
    std::vector<bool> fan_out;     // CNOT control -> t, probability 3/4
    std::vector<int> post_twirl;   // T power per qubit after the fan-out
    bool phase_flip = false;       // S on the control, probability 1/2
    std::vector<bool> fan_in;      // CNOT t -> control, probability 1/2
    int final_twirl = 0;           // T power on the control
};

TwirlRoundChoices sample_round_choices(int n, BitSource &bits);
/// Gate realization of one round. With parallel_prefix the CNOT fans become
/// logarithmic-depth parity trees (the fan-out through Hadamard conjugation).
Circuit build_round_circuit(int n, const TwirlRoundChoices &choices, bool parallel_prefix);

struct TwirlSample {
    Circuit circuit;
    uint64_t random_bits_used = 0;
    int rounds = 0;
};
TwirlSample sample_twirl_circuit(int n, int rounds, Rng &rng, bool parallel_prefix = false);

/// Probability vector over the 4^n qubit Pauli labels.
struct PauliDistribution {
    int n = 1;
    std::vector<double> probs;

    static PauliDistribution point_mass(int n, uint64_t label);
    static PauliDistribution uniform_nonidentity(int n);
};

/// sum_x |dist(x) - u(x)| with u uniform on the non-identity labels.
double l1_to_uniform(const PauliDistribution &dist);
/// 1 / (2^n - 2^-n).
double epsilon0(int n);

/// Column-stochastic 4^n x 4^n matrix of one exact round (n <= 3).
std::vector<std::vector<double>> twirl_transition(int n);
PauliDistribution twirl_markov_step(const PauliDistribution &dist, int n);
/// Distribution after the second half of a round with a fixed control, starting
/// from `start` (the "control already carries X or Y" case).
PauliDistribution twirl_good_case_distribution(int n, uint64_t start, int control);
/// Uniform distribution on the labels reachable by the good case, which excludes
/// identity on the control with only I/Z elsewhere.
PauliDistribution idealized_good_case_distribution(int n);

/// (D tr Lambda(I) - tr Lambda_hat) / D^4.
double twirl_error_prefactor(const Supermatrix &s);

enum class TwirlMode { Exact, MonteCarlo };

struct ApproxTwirlResult {
    PauliChannel channel;
    double l1 = 0;        // weighted l1 distance of the non-identity mass to uniform
    double epsilon0 = 0;
    double bound = 0;     // B(Lambda) (epsilon0 + max(0, l1 - epsilon0))
};
/// Pushes the Pauli weights of `pc` through `rounds` rounds. Monte Carlo mode
/// samples `trials` label trajectories per call.
ApproxTwirlResult approx_twirl_channel(const PauliChannel &pc, int rounds, TwirlMode mode, uint64_t trials, Rng &rng);

/// Label reached from `label` under one round, phase discarded.
uint64_t apply_round_to_label(const TwirlRoundChoices &choices, int n, uint64_t label);

/// l1 distance to uniform after 0..rounds rounds from a point mass at `start`.
/// Exact mode pushes the distribution through the chain (n <= 3); Monte Carlo mode
/// follows `trials` sampled trajectories and histograms them after each round.
std::vector<double> twirl_l1_curve(int n, int rounds, uint64_t start, TwirlMode mode, uint64_t trials, Rng &rng);

/// "label,probability" rows, label as base-4 integer.
std::string distribution_to_csv(const PauliDistribution &dist);

}  // namespace qdesign

#endif
