#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qwbm/bayesnet.hpp"

namespace qwbm {

inline constexpr int kDefaultQubitCap = 26;

/// Dense n-qubit state. Basis index bit k is qubit k (little-endian).
struct StateVector {
    std::vector<std::complex<double>> amps;
    int n_qubits = 0;

    static StateVector zero_state(int n, int qubit_cap = kDefaultQubitCap);
    double norm_sq() const;
};

/// Control qubit with required polarity (0 or 1).
struct ControlSpec {
    int qubit;
    int polarity;
};

enum class GateKind { Ry, CRy };

struct GateOp {
    GateKind kind;
    double theta = 0.0;
    int target = 0;
    std::vector<ControlSpec> controls;
};

struct Circuit {
    int n_qubits = 0;
    std::vector<GateOp> ops;

    std::size_t gate_count() const { return ops.size(); }
};

/// Required bits on a subset of qubits: projector P = prod |b_q><b_q|.
struct EvidencePattern {
    std::vector<std::pair<int, int>> pairs;  // (qubit, bit)
};

/// Encoder circuit for a Bayesian network plus its qubit layout:
/// qubit k holds the variable at topological position k.
struct EncodedNetwork {
    Circuit circuit;
    StateVector state;                  // circuit applied to |0...0>
    std::vector<NodeId> order;          // order[k] = variable on qubit k
    std::vector<int> var_to_qubit;      // inverse of order
};

void apply_ry(StateVector& s, int target, double theta,
              const std::vector<ControlSpec>& controls = {});
void apply_controlled_ry(StateVector& s, const std::vector<ControlSpec>& controls,
                         int target, double theta);
void apply_hadamard(StateVector& s, int target);
void apply_gate(StateVector& s, const GateOp& op,
                const std::vector<ControlSpec>& extra_controls = {});

/// Negates the amplitude of states whose `zero_qubits` are all 0
/// (S_0 = I - 2|0><0| on that register). Optional extra controls.
void reflect_zero(StateVector& s, const std::vector<int>& zero_qubits,
                  const std::vector<ControlSpec>& controls = {});
inline void reflect_zero(StateVector& s) {
    std::vector<int> all(s.n_qubits);
    for (int q = 0; q < s.n_qubits; ++q) all[q] = q;
    reflect_zero(s, all);
}

/// V = I - 2P: negates amplitudes matching the pattern on all its qubits.
void reflect_pattern(StateVector& s, const EvidencePattern& p,
                     const std::vector<ControlSpec>& controls = {});

/// Sum of |amp|^2 over pattern-matching basis states.
double measure_amplitude(const StateVector& s, const EvidencePattern& p);

/// Algorithm-2 encoder: one RY per root, 2^{m_k} controlled-RYs per node with
/// parents, in topological order. |amp(q)|^2 equals the network joint.
EncodedNetwork encode_network(const BayesianNetwork& net,
                              int qubit_cap = kDefaultQubitCap);

/// Translates (variable, bit) pairs into the encoder's qubit layout.
EvidencePattern pattern_for(const EncodedNetwork& enc,
                            const std::vector<std::pair<NodeId, int>>& var_bits);

void apply_circuit(StateVector& s, const Circuit& c,
                   const std::vector<ControlSpec>& extra_controls = {});
void apply_circuit_inverse(StateVector& s, const Circuit& c,
                           const std::vector<ControlSpec>& extra_controls = {});

/// Grover operator G = O S_0 O^dag S_x applied in place: S_x first, then the
/// reversed encoder with negated angles, S_0 on the encoder qubits, then O.
/// On span{good, bad} this acts as -R(2 theta) with sin^2 theta = a.
void grover_apply(StateVector& s, const EncodedNetwork& enc, const EvidencePattern& p,
                  const std::vector<ControlSpec>& extra_controls = {});

/// Inverse DFT on the register formed by `qubits` (qubits[k] = bit k of the
/// register value): |t> -> M^{-1/2} sum_j exp(-2 pi i t j / M) |j>.
void inverse_qft(StateVector& s, const std::vector<int>& qubits);
void qft(StateVector& s, const std::vector<int>& qubits);

enum class QpePath { Auto, Repeated, Spectral };

/// Outcome distribution of T-ancilla phase estimation of the Grover operator.
/// Repeated: full statevector simulation with controlled-G^{2^k} by repeated
/// application. Spectral: exact evolution on the 2D invariant subspace.
std::vector<double> qpe_distribution(const EncodedNetwork& enc, const EvidencePattern& p,
                                     int t_ancillas, QpePath path = QpePath::Auto,
                                     int qubit_cap = kDefaultQubitCap);

/// Runs QPE and samples the ancilla register. Returns the folded phase
/// estimate theta~ = pi * |T0 - 2^{T-1}| / 2^T, so sin^2(theta~) estimates a.
double qpe_estimate(const EncodedNetwork& enc, const EvidencePattern& p, int t_ancillas,
                    std::uint64_t seed, QpePath path = QpePath::Auto,
                    int qubit_cap = kDefaultQubitCap);

/// QC-JSON v1 circuit dump, and CSV state dump of (index, re, im) rows.
std::string to_qc_json(const Circuit& c);
std::string state_to_csv(const StateVector& s);

}  // namespace qwbm
