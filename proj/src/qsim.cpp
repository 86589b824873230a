#include "qwbm/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "json.hpp"

namespace qwbm {

namespace {

using cplx = std::complex<double>;

void check_qubit(const StateVector& s, int q) {
    if (q < 0 || q >= s.n_qubits)
        throw IndexOutOfRange("qubit " + std::to_string(q) + " out of range for " +
                              std::to_string(s.n_qubits) + " qubits");
}

void check_distinct(const std::vector<ControlSpec>& controls, int target) {
    for (std::size_t i = 0; i < controls.size(); ++i) {
        if (controls[i].qubit == target)
            throw DuplicateQubit("control equals target qubit " + std::to_string(target));
        for (std::size_t j = i + 1; j < controls.size(); ++j)
            if (controls[i].qubit == controls[j].qubit)
                throw DuplicateQubit("duplicate control qubit " +
                                     std::to_string(controls[i].qubit));
    }
}

// (mask, value): an index i satisfies the controls iff (i & mask) == value.
std::pair<std::size_t, std::size_t> control_mask(const StateVector& s,
                                                 const std::vector<ControlSpec>& controls) {
    std::size_t mask = 0, value = 0;
    for (const ControlSpec& c : controls) {
        check_qubit(s, c.qubit);
        mask |= std::size_t{1} << c.qubit;
        if (c.polarity) value |= std::size_t{1} << c.qubit;
    }
    return {mask, value};
}

std::vector<ControlSpec> merge_controls(const std::vector<ControlSpec>& a,
                                        const std::vector<ControlSpec>& b) {
    std::vector<ControlSpec> out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

double canonical_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// In-place radix-2 transform: buf[j] <- M^{-1/2} sum_t buf[t] exp(sign*2*pi*i*t*j/M).
void fourier(std::vector<cplx>& buf, int sign) {
    const std::size_t m = buf.size();
    for (std::size_t i = 1, j = 0; i < m; ++i) {
        std::size_t bit = m >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(buf[i], buf[j]);
    }
    for (std::size_t len = 2; len <= m; len <<= 1) {
        double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < m; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = buf[i + k];
                cplx v = buf[i + k + len / 2] * w;
                buf[i + k] = u + v;
                buf[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (cplx& x : buf) x *= scale;
}

}  // namespace

StateVector StateVector::zero_state(int n, int qubit_cap) {
    if (n > qubit_cap)
        throw TooManyQubits(std::to_string(n) + " qubits exceeds cap " +
                            std::to_string(qubit_cap));
    if (n < 0) throw InvalidConfig("negative qubit count");
    StateVector s;
    s.n_qubits = n;
    s.amps.assign(std::size_t{1} << n, cplx(0.0, 0.0));
    s.amps[0] = cplx(1.0, 0.0);
    return s;
}

double StateVector::norm_sq() const {
    double total = 0.0;
    for (const cplx& a : amps) total += std::norm(a);
    return total;
}

void apply_ry(StateVector& s, int target, double theta,
              const std::vector<ControlSpec>& controls) {
    check_qubit(s, target);
    check_distinct(controls, target);
    if (!std::isfinite(theta)) throw InvalidConfig("non-finite rotation angle");
    auto [cmask, cval] = control_mask(s, controls);
    const double c = std::cos(theta / 2.0), sn = std::sin(theta / 2.0);
    const std::size_t tbit = std::size_t{1} << target;
    const std::size_t size = s.amps.size();
    for (std::size_t i = 0; i < size; ++i) {
        if (i & tbit) continue;
        if ((i & cmask) != cval) continue;
        cplx a0 = s.amps[i], a1 = s.amps[i | tbit];
        s.amps[i] = c * a0 - sn * a1;
        s.amps[i | tbit] = sn * a0 + c * a1;
    }
}

void apply_controlled_ry(StateVector& s, const std::vector<ControlSpec>& controls,
                         int target, double theta) {
    apply_ry(s, target, theta, controls);
}

void apply_hadamard(StateVector& s, int target) {
    check_qubit(s, target);
    const double r = std::numbers::sqrt2 / 2.0;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < s.amps.size(); ++i) {
        if (i & tbit) continue;
        cplx a0 = s.amps[i], a1 = s.amps[i | tbit];
        s.amps[i] = r * (a0 + a1);
        s.amps[i | tbit] = r * (a0 - a1);
    }
}

void apply_gate(StateVector& s, const GateOp& op,
                const std::vector<ControlSpec>& extra_controls) {
    apply_ry(s, op.target, op.theta, merge_controls(op.controls, extra_controls));
}

void reflect_zero(StateVector& s, const std::vector<int>& zero_qubits,
                  const std::vector<ControlSpec>& controls) {
    std::size_t zmask = 0;
    for (int q : zero_qubits) {
        check_qubit(s, q);
        zmask |= std::size_t{1} << q;
    }
    auto [cmask, cval] = control_mask(s, controls);
    for (std::size_t i = 0; i < s.amps.size(); ++i)
        if ((i & zmask) == 0 && (i & cmask) == cval) s.amps[i] = -s.amps[i];
}

void reflect_pattern(StateVector& s, const EvidencePattern& p,
                     const std::vector<ControlSpec>& controls) {
    std::size_t pmask = 0, pval = 0;
    for (auto [q, bit] : p.pairs) {
        check_qubit(s, q);
        pmask |= std::size_t{1} << q;
        if (bit) pval |= std::size_t{1} << q;
    }
    auto [cmask, cval] = control_mask(s, controls);
    for (std::size_t i = 0; i < s.amps.size(); ++i)
        if ((i & pmask) == pval && (i & cmask) == cval) s.amps[i] = -s.amps[i];
}

double measure_amplitude(const StateVector& s, const EvidencePattern& p) {
    std::size_t pmask = 0, pval = 0;
    for (auto [q, bit] : p.pairs) {
        check_qubit(s, q);
        pmask |= std::size_t{1} << q;
        if (bit) pval |= std::size_t{1} << q;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < s.amps.size(); ++i)
        if ((i & pmask) == pval) total += std::norm(s.amps[i]);
    return total;
}

EncodedNetwork encode_network(const BayesianNetwork& net, int qubit_cap) {
    validate_dag(net);
    const int n = net.n_vars;
    if (n > qubit_cap)
        throw TooManyQubits("network with " + std::to_string(n) +
                            " variables exceeds qubit cap " + std::to_string(qubit_cap));
    EncodedNetwork enc;
    enc.order = topological_sort(net);
    enc.var_to_qubit.assign(n, -1);
    for (int k = 0; k < n; ++k) enc.var_to_qubit[enc.order[k]] = k;
    enc.circuit.n_qubits = n;
    enc.state = StateVector::zero_state(n, qubit_cap);
    for (int k = 0; k < n; ++k) {
        const Cpt& cpt = net.cpts[enc.order[k]];
        const std::size_t m = cpt.parents.size();
        for (std::size_t row = 0; row < cpt.rows.size(); ++row) {
            double p0 = std::clamp(cpt.rows[row][0], 0.0, 1.0);
            GateOp op;
            op.kind = m == 0 ? GateKind::Ry : GateKind::CRy;
            op.target = k;
            op.theta = 2.0 * std::acos(std::sqrt(p0));
            for (std::size_t j = 0; j < m; ++j)
                op.controls.push_back(
                    {enc.var_to_qubit[cpt.parents[j]], static_cast<int>((row >> j) & 1)});
            apply_gate(enc.state, op);
            enc.circuit.ops.push_back(std::move(op));
        }
    }
    return enc;
}

EvidencePattern pattern_for(const EncodedNetwork& enc,
                            const std::vector<std::pair<NodeId, int>>& var_bits) {
    EvidencePattern p;
    for (auto [var, bit] : var_bits) {
        if (var < 0 || var >= static_cast<int>(enc.var_to_qubit.size()))
            throw IndexOutOfRange("variable " + std::to_string(var) + " out of range");
        p.pairs.emplace_back(enc.var_to_qubit[var], bit);
    }
    return p;
}

void apply_circuit(StateVector& s, const Circuit& c,
                   const std::vector<ControlSpec>& extra_controls) {
    for (const GateOp& op : c.ops) apply_gate(s, op, extra_controls);
}

void apply_circuit_inverse(StateVector& s, const Circuit& c,
                           const std::vector<ControlSpec>& extra_controls) {
    for (auto it = c.ops.rbegin(); it != c.ops.rend(); ++it) {
        GateOp inv = *it;
        inv.theta = -inv.theta;
        apply_gate(s, inv, extra_controls);
    }
}

void grover_apply(StateVector& s, const EncodedNetwork& enc, const EvidencePattern& p,
                  const std::vector<ControlSpec>& extra_controls) {
    std::vector<int> data_qubits(enc.circuit.n_qubits);
    for (int q = 0; q < enc.circuit.n_qubits; ++q) data_qubits[q] = q;
    reflect_pattern(s, p, extra_controls);                  // S_x
    apply_circuit_inverse(s, enc.circuit, extra_controls);  // O^dag
    reflect_zero(s, data_qubits, extra_controls);           // S_0
    apply_circuit(s, enc.circuit, extra_controls);          // O
}

namespace {

void qft_impl(StateVector& s, const std::vector<int>& qubits, int sign) {
    std::size_t reg_mask = 0;
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        check_qubit(s, qubits[k]);
        std::size_t bit = std::size_t{1} << qubits[k];
        if (reg_mask & bit) throw DuplicateQubit("repeated qubit in register");
        reg_mask |= bit;
    }
    const std::size_t m = std::size_t{1} << qubits.size();
    std::vector<std::size_t> scatter(m, 0);
    for (std::size_t t = 0; t < m; ++t)
        for (std::size_t k = 0; k < qubits.size(); ++k)
            if ((t >> k) & 1) scatter[t] |= std::size_t{1} << qubits[k];
    std::vector<cplx> buf(m);
    for (std::size_t rest = 0; rest < s.amps.size(); ++rest) {
        if (rest & reg_mask) continue;
        for (std::size_t t = 0; t < m; ++t) buf[t] = s.amps[rest | scatter[t]];
        fourier(buf, sign);
        for (std::size_t t = 0; t < m; ++t) s.amps[rest | scatter[t]] = buf[t];
    }
}

}  // namespace

void inverse_qft(StateVector& s, const std::vector<int>& qubits) { qft_impl(s, qubits, -1); }
void qft(StateVector& s, const std::vector<int>& qubits) { qft_impl(s, qubits, +1); }

namespace {

std::vector<double> qpe_distribution_repeated(const EncodedNetwork& enc,
                                              const EvidencePattern& p, int t_ancillas,
                                              int qubit_cap) {
    const int n_data = enc.circuit.n_qubits;
    const int n = n_data + t_ancillas;
    StateVector s = StateVector::zero_state(n, qubit_cap);
    apply_circuit(s, enc.circuit);  // encoder acts on the low data qubits
    std::vector<int> ancillas(t_ancillas);
    for (int k = 0; k < t_ancillas; ++k) {
        ancillas[k] = n_data + k;
        apply_hadamard(s, ancillas[k]);
    }
    for (int k = 0; k < t_ancillas; ++k) {
        const std::size_t reps = std::size_t{1} << k;
        for (std::size_t r = 0; r < reps; ++r)
            grover_apply(s, enc, p, {{ancillas[k], 1}});
    }
    inverse_qft(s, ancillas);
    const std::size_t m = std::size_t{1} << t_ancillas;
    const std::size_t data_size = std::size_t{1} << n_data;
    std::vector<double> dist(m, 0.0);
    for (std::size_t t = 0; t < m; ++t)
        for (std::size_t d = 0; d < data_size; ++d)
            dist[t] += std::norm(s.amps[(t << n_data) | d]);
    return dist;
}

std::vector<double> qpe_distribution_spectral(const EncodedNetwork& enc,
                                              const EvidencePattern& p, int t_ancillas) {
    // The QPE state stays inside (ancillas) x span{bad, good}; evolve the two
    // subspace coordinates per ancilla register value and Fourier-transform.
    const double a = std::clamp(measure_amplitude(enc.state, p), 0.0, 1.0);
    const double theta = std::asin(std::sqrt(a));
    const double c2 = std::cos(2.0 * theta), s2 = std::sin(2.0 * theta);
    const std::size_t m = std::size_t{1} << t_ancillas;
    const double init = 1.0 / std::sqrt(static_cast<double>(m));
    std::vector<cplx> bad(m), good(m);
    double vb = std::sqrt(1.0 - a) * init, vg = std::sqrt(a) * init;
    for (std::size_t t = 0; t < m; ++t) {
        bad[t] = vb;
        good[t] = vg;
        // G = -R(2 theta) on (bad, good) coordinates.
        double nb = -c2 * vb + s2 * vg;
        double ng = -s2 * vb - c2 * vg;
        vb = nb;
        vg = ng;
    }
    fourier(bad, -1);
    fourier(good, -1);
    std::vector<double> dist(m);
    for (std::size_t t = 0; t < m; ++t) dist[t] = std::norm(bad[t]) + std::norm(good[t]);
    return dist;
}

}  // namespace

std::vector<double> qpe_distribution(const EncodedNetwork& enc, const EvidencePattern& p,
                                     int t_ancillas, QpePath path, int qubit_cap) {
    if (t_ancillas < 1) throw InvalidConfig("need at least one phase ancilla");
    if (path == QpePath::Auto)
        path = enc.circuit.n_qubits + t_ancillas <= 14 ? QpePath::Repeated
                                                       : QpePath::Spectral;
    if (path == QpePath::Repeated)
        return qpe_distribution_repeated(enc, p, t_ancillas, qubit_cap);
    return qpe_distribution_spectral(enc, p, t_ancillas);
}

double qpe_estimate(const EncodedNetwork& enc, const EvidencePattern& p, int t_ancillas,
                    std::uint64_t seed, QpePath path, int qubit_cap) {
    std::vector<double> dist = qpe_distribution(enc, p, t_ancillas, path, qubit_cap);
    std::mt19937_64 rng(seed);
    double u = canonical_uniform(rng);
    std::size_t outcome = dist.size() - 1;
    double acc = 0.0;
    for (std::size_t t = 0; t < dist.size(); ++t) {
        acc += dist[t];
        if (u < acc) {
            outcome = t;
            break;
        }
    }
    const std::size_t m = dist.size();
    const std::size_t half = m / 2;
    const std::size_t fold = outcome >= half ? outcome - half : half - outcome;
    return std::numbers::pi * static_cast<double>(fold) / static_cast<double>(m);
}

std::string to_qc_json(const Circuit& c) {
    nlohmann::json j;
    j["format"] = "QC-JSON v1";
    j["n_qubits"] = c.n_qubits;
    auto ops = nlohmann::json::array();
    for (const GateOp& op : c.ops) {
        nlohmann::json jo;
        jo["kind"] = op.kind == GateKind::Ry ? "RY" : "CRY";
        jo["target"] = op.target;
        jo["theta"] = op.theta;
        auto ctrls = nlohmann::json::array();
        for (const ControlSpec& cs : op.controls) ctrls.push_back({cs.qubit, cs.polarity});
        jo["controls"] = ctrls;
        ops.push_back(jo);
    }
    j["ops"] = ops;
    return j.dump(2);
}

std::string state_to_csv(const StateVector& s) {
    std::ostringstream out;
    out.precision(17);
    out << "index,re,im\n";
    for (std::size_t i = 0; i < s.amps.size(); ++i)
        out << i << ',' << s.amps[i].real() << ',' << s.amps[i].imag() << '\n';
    return out.str();
}

}  // namespace qwbm
