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

#ifndef QDESIGN_CIRCUIT_H
#define QDESIGN_CIRCUIT_H

#include <cstdint>
#include <string>
#include <vector>

#include "qdesign/linalg.h"

namespace qdesign {

/// Gate kinds. Unless noted, a kind acts on one target.
///
///   H, X, Z, S, T_PI8, RY   qubit gates; RY(angle) = [[cos a/2, -sin a/2], [sin a/2, cos a/2]]
///   T                       the cyclic qubit Clifford H*S (S applied first)
///   PHASE(num/den)          |u> -> exp(2 pi i num u / den) |u>
///   QPHASE(num/den)         |u> -> exp(2 pi i num u^2 / den) |u>
///   PHASEVEC(nums/den)      |u> -> exp(2 pi i nums[u] / den) |u>
///   XD(num), ZD(num)        |u> -> |u + num>, |u> -> w_d^(num u) |u>
///   FP(num)                 |x> -> d^(-1/2) sum_y w_d^(num x y) |y>, num = +1 or -1
///   CPHASE(num/den)         two targets: |u, v> -> exp(2 pi i num u v / den) |u, v>
///   CNOT                    qubits; one control, one target
///   CADD(num)               one control c, one target t: |c, t> -> |c, t + num c>
///
/// For every kind other than CADD the controls list means "apply only when every
/// control qubit is |1>" and is allowed only for qubits.
enum class GateKind { H, X, Z, S, T_PI8, T, RY, PHASE, QPHASE, PHASEVEC, XD, ZD, FP, CPHASE, CNOT, CADD };

std::string gate_kind_name(GateKind kind);
GateKind parse_gate_kind(const std::string &name);

struct Gate {
    GateKind kind = GateKind::H;
    std::vector<int> targets;
    std::vector<int> controls;
    int64_t num = 0;
    int64_t den = 1;
    double angle = 0;
    std::vector<int64_t> phase_nums;

    bool operator==(const Gate &other) const = default;

    static Gate h(int q);
    static Gate x(int q);
    static Gate z(int q);
    static Gate s(int q);
    static Gate t_pi8(int q);
    static Gate t(int q);
    static Gate ry(int q, double angle);
    static Gate phase(int q, int64_t num, int64_t den);
    static Gate qphase(int q, int64_t num, int64_t den);
    static Gate phase_vec(int q, std::vector<int64_t> nums, int64_t den);
    static Gate xd(int q, int64_t shift);
    static Gate zd(int q, int64_t power);
    static Gate fp(int q, int64_t sign = 1);
    static Gate cphase(int q1, int q2, int64_t num, int64_t den);
    static Gate cnot(int control, int target);
    static Gate cadd(int control, int target, int64_t multiplier = 1);

    Gate with_controls(std::vector<int> extra) const;
    /// Qudits the gate touches (targets and controls).
    std::vector<int> qudits() const;
};

/// Local matrix on the gate's operand qudits. Operands are the targets, except for
/// CADD whose operands are (control, target). The first operand is the most
/// significant index of the local matrix.
ComplexMatrix gate_local_matrix(const Gate &g, int d);
/// Operand list of the local matrix.
std::vector<int> gate_operands(const Gate &g);
bool gate_is_diagonal(const Gate &g);

/// Ordered gate list on n qudits of local dimension d. Qudit i is the digit of
/// weight d^i in the computational-basis index.
class Circuit {
   public:
    Circuit(int n, int d);

    int num_qudits() const {
        return n_;
    }
    int local_dim() const {
        return d_;
    }
    size_t hilbert_dim() const;
    const std::vector<Gate> &gates() const {
        return gates_;
    }

    /// Validates and appends.
    void append(const Gate &g);
    void append(const Circuit &other);

    size_t gate_count() const {
        return gates_.size();
    }
    /// Gates touching two or more qudits.
    size_t multi_qudit_count() const;
    size_t count(GateKind kind) const;
    /// Depth of the greedy as-soon-as-possible layering.
    size_t depth() const;

    /// Gate-reversed circuit of inverse gates.
    Circuit inverse() const;

    bool operator==(const Circuit &other) const = default;

   private:
    int n_;
    int d_;
    std::vector<Gate> gates_;
};

/// Applies the circuit to a state of dimension d^n.
StateVector simulate(const Circuit &c, const StateVector &input);
/// Same as simulate, but every gate goes through the generic local-matrix path.
StateVector simulate_reference(const Circuit &c, const StateVector &input);
/// Full unitary, for d^n <= 256.
ComplexMatrix circuit_unitary(const Circuit &c);
/// Permutation action of an X/CNOT-only qubit circuit on a classical bit string.
uint64_t simulate_classical(const Circuit &c, uint64_t bits);

/// Text format: header "CIRCUIT n=<n> d=<d>", then one line per gate
/// "GATE <kind> targets=<i,j> controls=<k> param=<num>/<den>".
std::string emit_circuit(const Circuit &c);
/// Parses the text format; errors name the offending line.
Circuit parse_circuit(const std::string &text);

}  // namespace qdesign

#endif
