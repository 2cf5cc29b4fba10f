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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdesign/channels.h"
#include "qdesign/circuit.h"
#include "qdesign/estimate.h"
#include "qdesign/mub.h"
#include "qdesign/mub_circuits.h"
#include "qdesign/random.h"
#include "qdesign/twirl.h"

using namespace qdesign;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Common {
    uint64_t seed = 1;
    bool json = false;
    std::string out;
    std::optional<double> tol;
    int workers = 1;
    std::string config;

    double tol_or(double fallback) const {
        return tol ? *tol : fallback;
    }
};

void add_common(CLI::App *sub, Common &c) {
    sub->add_option("--seed", c.seed, "Random seed");
    sub->add_flag("--json", c.json, "Print a JSON document instead of text");
    sub->add_option("--out", c.out, "Write the artifact to this path");
    sub->add_option("--tol", c.tol, "Pass/fail tolerance");
    sub->add_option("--workers", c.workers, "Worker threads for sampling")->check(CLI::PositiveNumber);
    sub->add_option("--config", c.config, "Flat key=value file; command-line flags win");
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::invalid_argument("cannot open '" + path + "' for writing");
    }
    f << text;
}

std::string read_file(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw std::invalid_argument("cannot read '" + path + "'");
    }
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

void emit(const Common &c, const json &doc, const std::string &text) {
    if (c.json) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

int bit_length(int x) {
    int n = 0;
    while (x >> n) {
        n++;
    }
    return n;
}

// Channel selection shared by `channel` and `estimate`.
struct ChannelFlags {
    size_t d = 0;
    std::optional<double> depolarizing;
    std::string noise;
    double noise_p = 0.9;
    size_t random_rank = 0;
    std::string in;
};

void add_channel_flags(CLI::App *sub, ChannelFlags &f) {
    sub->add_option("--d", f.d, "Dimension");
    sub->add_option("--depolarizing", f.depolarizing, "rho -> p rho + (1 - p) I / d (so q = 1 - p is the noise weight)");
    sub->add_option("--noise", f.noise, "bit_flip, phase_flip or bit_phase_flip (qubit)");
    sub->add_option("--p", f.noise_p, "Weight of the identity Kraus term for --noise");
    sub->add_option("--random-rank", f.random_rank, "Random channel with this many Kraus operators");
    sub->add_option("--channel", f.in, "Channel JSON file");
}

KrausChannel build_channel(const ChannelFlags &f, uint64_t seed) {
    int sources = (f.depolarizing ? 1 : 0) + (f.noise.empty() ? 0 : 1) + (f.random_rank ? 1 : 0) + (f.in.empty() ? 0 : 1);
    if (sources > 1) {
        throw std::invalid_argument("choose one of --depolarizing, --noise, --random-rank, --channel");
    }
    if (!f.in.empty()) {
        return channel_from_json(read_file(f.in));
    }
    if (!f.noise.empty()) {
        return standard_noise(parse_noise_kind(f.noise), f.noise_p);
    }
    if (f.d < 2) {
        throw std::invalid_argument("--d must be at least 2");
    }
    if (f.random_rank) {
        Rng rng(derive_seed(seed, 0x636831));
        return random_channel(f.d, f.random_rank, rng);
    }
    if (f.depolarizing) {
        return depolarizing(f.d, *f.depolarizing);
    }
    return identity_channel(f.d);
}

// ---------------------------------------------------------------- mub

struct MubArgs {
    int prime = 0;
    int prime_power = 0;
    int k = 0;
    int qubits = 0;
    size_t d = 0;
};

MubFamily build_family(const MubArgs &a) {
    int chosen = (a.prime ? 1 : 0) + (a.prime_power ? 1 : 0) + (a.qubits ? 1 : 0) + (a.d ? 1 : 0);
    if (chosen != 1) {
        throw std::invalid_argument("choose exactly one of --prime, --prime-power, --qubits, --d");
    }
    if (a.prime) {
        return mub_prime(a.prime);
    }
    if (a.prime_power) {
        return mub_prime_power(a.prime_power, a.k ? a.k : 1);
    }
    if (a.qubits) {
        return mub_galois_ring(a.qubits);
    }
    return mub_for_dimension(a.d);
}

int cmd_mub(const MubArgs &args, const Common &c) {
    MubFamily f = build_family(args);
    double tol = c.tol_or(1e-9);
    UnbiasednessReport rep = verify_unbiased(f, tol);
    if (!c.out.empty()) {
        write_file(c.out, export_mub(f));
    }
    double max_err = std::max(rep.max_orthonormality_error, rep.max_unbiasedness_error);
    json doc = {{"command", "mub"},
                {"d", f.d},
                {"kind", mub_kind_name(f.kind)},
                {"states", f.num_states()},
                {"max_orthonormality_error", rep.max_orthonormality_error},
                {"max_unbiasedness_error", rep.max_unbiasedness_error},
                {"pass", rep.pass},
                {"out", c.out}};
    emit(c, doc,
         std::string(rep.pass ? "PASS" : "FAIL") + " max_err=" + fmt(max_err) + " d=" + std::to_string(f.d) +
             " kind=" + mub_kind_name(f.kind) + " states=" + std::to_string(f.num_states()) + "\n");
    return rep.pass ? kExitPass : kExitCheckFailed;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string mub_file;
    int prime_circuits = 0;
    int prime_power_p = 0;
    int prime_power_k = 0;
};

int cmd_verify(const VerifyArgs &args, const Common &c) {
    int chosen = (args.mub_file.empty() ? 0 : 1) + (args.prime_circuits ? 1 : 0) + (args.prime_power_p ? 1 : 0);
    if (chosen != 1) {
        throw std::invalid_argument("choose exactly one of --mub-file, --prime-circuits, --prime-power-circuits");
    }
    json doc = {{"command", "verify"}};
    bool pass = true;
    std::string text;
    if (!args.mub_file.empty()) {
        MubFamily f = parse_mub(read_file(args.mub_file));
        double tol = c.tol_or(1e-9);
        UnbiasednessReport rep = verify_unbiased(f, tol);
        double d = (double)f.d;
        double angle1 = std::abs(t_design_angle_check(f, 1) - 1 / d);
        double angle2 = std::abs(t_design_angle_check(f, 2) - 2 / (d * (d + 1)));
        pass = rep.pass && angle1 <= tol && angle2 <= tol;
        doc["target"] = "mub_file";
        doc["d"] = f.d;
        doc["max_unbiasedness_error"] = rep.max_unbiasedness_error;
        doc["max_orthonormality_error"] = rep.max_orthonormality_error;
        doc["angle_error_k1"] = angle1;
        doc["angle_error_k2"] = angle2;
        text = " d=" + std::to_string(f.d) + " max_err=" +
               fmt(std::max(rep.max_unbiasedness_error, rep.max_orthonormality_error)) + " angle_err=" +
               fmt(std::max(angle1, angle2));
    } else {
        bool prime = args.prime_circuits != 0;
        int p = prime ? args.prime_circuits : args.prime_power_p;
        int k = prime ? 1 : std::max(1, args.prime_power_k);
        MubFamily f = prime ? mub_prime(p) : mub_prime_power(p, k);
        int width = prime ? bit_length(p) : k;
        int num_qubits = width - 1;
        size_t dim = prime ? (size_t{1} << width) : f.d;
        double worst = 0;
        size_t max_gates = 0, max_depth = 0;
        for (size_t a = 0; a <= f.d; a++) {
            for (size_t b = 0; b < f.d; b++) {
                Circuit circ = prime ? build_mub_circuit_prime(p, num_qubits, (int64_t)a, (int64_t)b)
                                     : build_mub_circuit_prime_power(p, k, (uint32_t)a, (uint32_t)b);
                StateVector out = simulate(circ, StateVector::basis(dim, 0));
                StateVector head(std::vector<cplx>(out.amps().begin(), out.amps().begin() + f.d));
                head.normalize();
                worst = std::max(worst, 1 - overlap_modulus(head, f.state(a, b)));
                max_gates = std::max(max_gates, circ.gate_count());
                max_depth = std::max(max_depth, circ.depth());
            }
        }
        double tol = c.tol_or(1e-8);
        pass = worst <= tol;
        doc["target"] = prime ? "prime_circuits" : "prime_power_circuits";
        doc["d"] = f.d;
        doc["max_overlap_deficit"] = worst;
        doc["max_gates"] = max_gates;
        doc["max_depth"] = max_depth;
        if (prime) {
            size_t gate_bound = (size_t)width * (width + 1) / 2 + 3 * (size_t)width;
            size_t depth_bound = (size_t)num_qubits + 3;
            pass = pass && max_gates <= gate_bound && max_depth <= depth_bound;
            doc["gate_bound"] = gate_bound;
            doc["depth_bound"] = depth_bound;
        }
        text = " d=" + std::to_string(f.d) + " max_overlap_deficit=" + fmt(worst) + " max_gates=" +
               std::to_string(max_gates) + " max_depth=" + std::to_string(max_depth);
    }
    doc["pass"] = pass;
    emit(c, doc, std::string(pass ? "PASS" : "FAIL") + text + "\n");
    return pass ? kExitPass : kExitCheckFailed;
}

// ---------------------------------------------------------------- design

struct DesignArgs {
    std::string check;
    size_t d = 0;
    bool cliffords1q = false;
    bool paulis = false;
    int n = 1;
    int samples = 20;
};

int cmd_design(const DesignArgs &args, const Common &c) {
    Rng rng(c.seed);
    double tol = c.tol_or(1e-8);
    double worst = 0;
    std::string set_name;
    size_t dim = 0;
    if (args.check == "state") {
        if (args.d < 2) {
            throw std::invalid_argument("design state needs --d");
        }
        MubFamily f = mub_for_dimension(args.d);
        dim = f.d;
        set_name = mub_kind_name(f.kind);
        for (int s = 0; s < args.samples; s++) {
            ComplexMatrix m = random_gaussian_matrix(dim, dim, rng);
            ComplexMatrix n = random_gaussian_matrix(dim, dim, rng);
            cplx want = (m * n).trace() + m.trace() * n.trace();
            cplx got = state_design_sum(f, m, n);
            worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
        }
    } else {
        if (args.cliffords1q == args.paulis) {
            throw std::invalid_argument("design unitary needs exactly one of --cliffords1q, --paulis");
        }
        std::vector<ComplexMatrix> set;
        if (args.cliffords1q) {
            set = clifford_group_1q();
            set_name = "cliffords1q";
        } else {
            if (args.n < 1 || args.n > 3) {
                throw std::invalid_argument("--n must be in [1, 3]");
            }
            set = pauli_group(2, args.n);
            set_name = "paulis";
        }
        dim = set[0].rows();
        for (int s = 0; s < args.samples; s++) {
            ComplexMatrix m = random_gaussian_matrix(dim, dim, rng);
            ComplexMatrix n = random_gaussian_matrix(dim, dim, rng);
            ComplexMatrix o = random_gaussian_matrix(dim, dim, rng);
            worst = std::max(worst, unitary_design_check(set, m, n, o));
        }
    }
    bool pass = worst <= tol;
    json doc = {{"command", "design"}, {"check", args.check}, {"set", set_name},     {"d", dim},
                {"samples", args.samples}, {"max_deviation", worst}, {"tol", tol}, {"pass", pass}};
    emit(c, doc,
         std::string(pass ? "PASS" : "FAIL") + " check=" + args.check + " set=" + set_name + " d=" +
             std::to_string(dim) + " max_dev=" + fmt(worst) + "\n");
    return pass ? kExitPass : kExitCheckFailed;
}

// ---------------------------------------------------------------- channel

int cmd_channel(const ChannelFlags &flags, const Common &c) {
    KrausChannel ch = build_channel(flags, c.seed);
    if (!ch.trace_preserving) {
        throw std::invalid_argument("channel is not trace preserving");
    }
    double tol = c.tol_or(1e-8);
    size_t d = ch.dim;
    double dd = (double)d;
    double f_avg = avg_fidelity_exact(ComplexMatrix::identity(d), ch);
    double f_e = entanglement_fidelity(ch);
    double relation = std::abs(f_avg - (dd * f_e + 1) / (dd + 1));
    Supermatrix s = kraus_to_supermatrix(ch);
    KrausChannel back = choi_to_kraus(supermatrix_to_choi(s));
    Rng rng(c.seed);
    double roundtrip = 0;
    for (int t = 0; t < 10; t++) {
        ComplexMatrix rho = random_density_matrix(d, rng);
        roundtrip = std::max(roundtrip, apply(ch, rho).max_abs_diff(apply(back, rho)));
    }
    InvariantParams ip = invariant_decompose(s);
    json doc = {{"command", "channel"},
                {"d", d},
                {"kraus_count", ch.kraus.size()},
                {"completeness_error", completeness_error(ch)},
                {"avg_fidelity", f_avg},
                {"entanglement_fidelity", f_e},
                {"relation_residual", relation},
                {"roundtrip_error", roundtrip},
                {"depolarizing_p", ip.p.real()},
                {"depolarizing_q", ip.q.real()}};
    int n = 0;
    while ((size_t{1} << n) < d) {
        n++;
    }
    if ((size_t{1} << n) == d && n <= 3) {
        doc["pauli_weights"] = pauli_twirl(ch, 2, n).weights;
    }
    if (d == 2) {
        doc["clifford_p"] = clifford_twirl_exact(ch).p;
    }
    bool pass = relation <= tol && roundtrip <= 1e-7;
    doc["pass"] = pass;
    if (!c.out.empty()) {
        write_file(c.out, channel_to_json(ch));
    }
    emit(c, doc,
         std::string(pass ? "PASS" : "FAIL") + " d=" + std::to_string(d) + " F_avg=" + fmt(f_avg) +
             " F_e=" + fmt(f_e) + " relation=" + fmt(relation) + " roundtrip=" + fmt(roundtrip) + "\n");
    return pass ? kExitPass : kExitCheckFailed;
}

// ---------------------------------------------------------------- twirl

struct TwirlArgs {
    int n = 2;
    int k = 10;
    bool exact = false;
    uint64_t trials = 100000;
    uint64_t start = 1;
};

int cmd_twirl(const TwirlArgs &args, const Common &c) {
    Rng rng(c.seed);
    TwirlMode mode = args.exact ? TwirlMode::Exact : TwirlMode::MonteCarlo;
    std::vector<double> curve = twirl_l1_curve(args.n, args.k, args.start, mode, args.trials, rng);
    double e0 = epsilon0(args.n);
    double tol = c.tol_or(args.exact ? 1e-12 : 0.02);
    std::string csv = "k,l1,bound\n";
    bool pass = true;
    std::vector<double> bounds;
    for (size_t k = 0; k < curve.size(); k++) {
        double bound = e0 + 2 * std::pow(0.5, (double)k) * (e0 + 1);
        bounds.push_back(bound);
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", k, curve[k], bound);
        csv += buf;
    }
    pass = curve.back() <= bounds.back() + tol;
    if (!c.out.empty()) {
        write_file(c.out, csv);
    }
    json doc = {{"command", "twirl"}, {"n", args.n},         {"k", args.k},
                {"mode", args.exact ? "exact" : "monte_carlo"},
                {"trials", args.exact ? 0 : args.trials},
                {"start", args.start},    {"l1", curve.back()}, {"epsilon0", e0},
                {"bound", bounds.back()}, {"curve", curve},     {"pass", pass}};
    std::string text = c.out.empty() ? csv : "";
    text += std::string(pass ? "PASS" : "FAIL") + " n=" + std::to_string(args.n) + " k=" + std::to_string(args.k) +
            " l1=" + fmt(curve.back()) + " bound=" + fmt(bounds.back()) + "\n";
    emit(c, doc, text);
    return pass ? kExitPass : kExitCheckFailed;
}

// ---------------------------------------------------------------- estimate

struct EstimateArgs {
    std::string protocol = "mub_mc";
    uint64_t trials = 100000;
};

int cmd_estimate(const EstimateArgs &args, const ChannelFlags &flags, const Common &c) {
    ExperimentConfig cfg;
    cfg.protocol = parse_protocol(args.protocol);
    cfg.channel = build_channel(flags, c.seed);
    cfg.trials = args.trials;
    cfg.seed = c.seed;
    cfg.workers = c.workers;
    EstimateResult r = run_experiment(cfg);
    double tol = c.tol_or(1e-6);
    double gap = std::abs(r.p_hat - r.exact);
    bool pass = gap <= std::max(3 * r.std_err, tol);
    if (!c.out.empty()) {
        write_file(c.out, result_to_json(r) + "\n");
    }
    json doc = json::parse(result_to_json(r));
    doc["pass"] = pass;
    emit(c, doc,
         std::string(pass ? "PASS" : "FAIL") + " protocol=" + protocol_name(r.protocol) + " d=" + std::to_string(r.d) +
             " p_hat=" + fmt(r.p_hat) + " std_err=" + fmt(r.std_err) + " exact=" + fmt(r.exact) +
             " fidelity=" + fmt(r.fidelity) + "\n");
    return pass ? kExitPass : kExitCheckFailed;
}

// ---------------------------------------------------------------- emit

struct EmitArgs {
    bool mub_circuit = false;
    bool prime_power_circuit = false;
    bool projected = false;
    bool twirl = false;
    bool parity = false;
    bool bell = false;
    int p = 0;
    int k = 1;
    int64_t a = 0;
    int64_t b = 0;
    int n = 0;
    int rounds = 1;
    bool parallel_prefix = false;
    size_t d = 0;
};

int cmd_emit(const EmitArgs &args, const Common &c) {
    int chosen = args.mub_circuit + args.prime_power_circuit + args.projected + args.twirl + args.parity + args.bell;
    if (chosen != 1) {
        throw std::invalid_argument(
            "choose exactly one of --mub-circuit, --prime-power-circuit, --projected, --twirl, --parity, --bell");
    }
    Circuit circ(1, 2);
    std::string kind;
    json extra = json::object();
    if (args.mub_circuit) {
        int num_qubits = args.n ? args.n : bit_length(args.p) - 1;
        circ = build_mub_circuit_prime(args.p, num_qubits, args.a, args.b);
        kind = "mub_prime";
    } else if (args.prime_power_circuit) {
        circ = build_mub_circuit_prime_power(args.p, args.k, (uint32_t)args.a, (uint32_t)args.b);
        kind = "mub_prime_power";
    } else if (args.projected) {
        circ = projected_mub_circuit(args.n, args.a, args.b);
        kind = "projected_mub";
    } else if (args.twirl) {
        Rng rng(c.seed);
        TwirlSample s = sample_twirl_circuit(args.n, args.rounds, rng, args.parallel_prefix);
        circ = s.circuit;
        kind = "twirl";
        extra["random_bits"] = s.random_bits_used;
    } else if (args.parity) {
        if (args.n < 2) {
            throw std::invalid_argument("--parity needs --n >= 2");
        }
        std::vector<int> controls;
        for (int q = 0; q + 1 < args.n; q++) {
            controls.push_back(q);
        }
        circ = parallel_prefix_parity(args.n, controls, args.n - 1);
        kind = "parity";
    } else {
        circ = bell_prep_circuit(args.d);
        kind = "bell_prep";
    }
    std::string text = emit_circuit(circ);
    json doc = {{"command", "emit"},         {"kind", kind},
                {"qudits", circ.num_qudits()}, {"d", circ.local_dim()},
                {"gates", circ.gate_count()},  {"depth", circ.depth()},
                {"out", c.out}};
    doc.update(extra);
    if (!c.out.empty()) {
        write_file(c.out, text);
        text = "wrote " + kind + " circuit: " + std::to_string(circ.gate_count()) + " gates, depth " +
               std::to_string(circ.depth()) + " -> " + c.out + "\n";
    } else {
        doc["circuit"] = text;
    }
    emit(c, doc, text);
    return kExitPass;
}

// Splices key=value lines from --config right after the subcommand name.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string path;
    for (size_t i = 1; i < args.size(); i++) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (path.empty() || args.size() < 2) {
        return args;
    }
    std::istringstream in(read_file(path));
    std::vector<std::string> injected;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        auto trim = [](std::string s) {
            size_t b = s.find_first_not_of(" \t\r");
            size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty() || key == "config") {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": bad key");
        }
        if (value == "true") {
            injected.push_back("--" + key);
        } else if (value != "false") {
            injected.push_back("--" + key);
            injected.push_back(value);
        }
    }
    args.insert(args.begin() + 2, injected.begin(), injected.end());
    return args;
}

int run(int argc, char **argv) {
    CLI::App app{"Mutually unbiased bases, unitary designs and fidelity estimation"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    Common common;

    MubArgs mub_args;
    auto *mub = app.add_subcommand("mub", "Build a complete MUB family and verify it");
    mub->add_option("--prime", mub_args.prime, "Odd prime dimension");
    mub->add_option("--prime-power", mub_args.prime_power, "Odd prime p of GF(p^k)");
    mub->add_option("--k", mub_args.k, "Extension degree for --prime-power");
    mub->add_option("--qubits", mub_args.qubits, "Number of qubits (Galois ring construction)");
    mub->add_option("--d", mub_args.d, "Any supported prime-power dimension");
    add_common(mub, common);

    VerifyArgs verify_args;
    auto *verify = app.add_subcommand("verify", "Verify a MUB file or the MUB circuits of a dimension");
    verify->add_option("--mub-file", verify_args.mub_file, "MUB text file");
    verify->add_option("--prime-circuits", verify_args.prime_circuits, "Check every qubit circuit for prime p");
    verify->add_option("--prime-power-circuits", verify_args.prime_power_p, "Check every qudit circuit for p^k");
    verify->add_option("--k", verify_args.prime_power_k, "Extension degree for --prime-power-circuits");
    add_common(verify, common);

    DesignArgs design_args;
    auto *design = app.add_subcommand("design", "Check the state or unitary 2-design identity");
    design->add_option("check", design_args.check, "state or unitary")
        ->required()
        ->check(CLI::IsMember({"state", "unitary"}));
    design->add_option("--d", design_args.d, "Dimension (state)");
    design->add_flag("--cliffords1q", design_args.cliffords1q, "The 24 single-qubit Cliffords");
    design->add_flag("--paulis", design_args.paulis, "The n-qubit Pauli group");
    design->add_option("--n", design_args.n, "Qubits for --paulis");
    design->add_option("--samples", design_args.samples, "Random operator pairs or triples")->check(CLI::PositiveNumber);
    add_common(design, common);

    ChannelFlags channel_flags;
    auto *channel = app.add_subcommand("channel", "Fidelities and representation checks of a channel");
    add_channel_flags(channel, channel_flags);
    add_common(channel, common);

    TwirlArgs twirl_args;
    auto *twirl = app.add_subcommand("twirl", "Convergence of the approximate twirl to uniform");
    twirl->add_option("--n", twirl_args.n, "Qubits");
    twirl->add_option("--k", twirl_args.k, "Rounds")->check(CLI::NonNegativeNumber);
    twirl->add_flag("--exact", twirl_args.exact, "Exact Markov chain (n <= 3)");
    twirl->add_option("--trials", twirl_args.trials, "Monte Carlo trajectories");
    twirl->add_option("--start", twirl_args.start, "Starting Pauli label (base-4 index)");
    add_common(twirl, common);

    EstimateArgs estimate_args;
    ChannelFlags estimate_flags;
    auto *estimate = app.add_subcommand("estimate", "Simulated fidelity estimation experiment");
    estimate->add_option("--protocol", estimate_args.protocol, "mub_mc, mub_exact, projected or ancilla");
    estimate->add_option("--trials", estimate_args.trials, "Trials; 0 averages every input exactly");
    add_channel_flags(estimate, estimate_flags);
    add_common(estimate, common);

    EmitArgs emit_args;
    auto *emit_cmd = app.add_subcommand("emit", "Write a circuit in the text format");
    emit_cmd->add_flag("--mub-circuit", emit_args.mub_circuit, "Prime MUB qubit circuit (--p --a --b)");
    emit_cmd->add_flag("--prime-power-circuit", emit_args.prime_power_circuit, "GF(p^k) qudit circuit (--p --k --a --b)");
    emit_cmd->add_flag("--projected", emit_args.projected, "Projected MUB circuit (--n --a --b)");
    emit_cmd->add_flag("--twirl", emit_args.twirl, "Sampled approximate twirl (--n --rounds)");
    emit_cmd->add_flag("--parity", emit_args.parity, "Parity tree onto the last of --n qubits");
    emit_cmd->add_flag("--bell", emit_args.bell, "Maximally entangled state prep (--d)");
    emit_cmd->add_option("--p", emit_args.p, "Prime");
    emit_cmd->add_option("--k", emit_args.k, "Extension degree");
    emit_cmd->add_option("--a", emit_args.a, "Basis label");
    emit_cmd->add_option("--b", emit_args.b, "State label");
    emit_cmd->add_option("--n", emit_args.n, "Qubits");
    emit_cmd->add_option("--rounds", emit_args.rounds, "Twirl rounds");
    emit_cmd->add_flag("--parallel-prefix", emit_args.parallel_prefix, "Logarithmic-depth CNOT fans");
    emit_cmd->add_option("--d", emit_args.d, "Dimension for --bell");
    add_common(emit_cmd, common);

    std::vector<std::string> raw(argv, argv + argc);
    std::vector<std::string> args;
    try {
        args = expand_config(raw);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*mub) {
            return cmd_mub(mub_args, common);
        }
        if (*verify) {
            return cmd_verify(verify_args, common);
        }
        if (*design) {
            return cmd_design(design_args, common);
        }
        if (*channel) {
            return cmd_channel(channel_flags, common);
        }
        if (*twirl) {
            return cmd_twirl(twirl_args, common);
        }
        if (*estimate) {
            return cmd_estimate(estimate_args, estimate_flags, common);
        }
        return cmd_emit(emit_args, common);
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
}

}  // namespace

int main(int argc, char **argv) {
    return run(argc, argv);
}
