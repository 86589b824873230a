#pragma once

#include <cstdint>

#include "qwbm/qsim.hpp"

namespace qwbm {

/// (epsilon, delta, a_min) contract parameters for amplitude estimation.
struct QaeConfig {
    double epsilon = 0.1;  // relative error target, must be < 1/3
    double delta = 0.1;    // failure probability
    double a_min = 0.1;    // caller-provided lower bound on the true amplitude
    int t_override = 0;    // optional ancilla count, 0 = derive from m
    QpePath path = QpePath::Auto;
    int qubit_cap = kDefaultQubitCap;
};

struct AmplitudeEstimate {
    double a_hat = 0.0;
    int runs = 0;                       // J
    long long grover_power = 0;         // m
    int t_ancillas = 0;                 // T
    long long total_grover_calls = 0;   // J * (2^T - 1)
};

void validate_config(const QaeConfig& cfg);

/// Inverse error function, |erfinv(erf(x)) - x| < 1e-10 over |x| <= 3.5
/// (beyond that the double representation of erf(x) limits the round trip).
double erf_inverse(double y);

/// Grover power m = 2 * ceil(pi / (sqrt(a_min) * epsilon)); even by
/// construction so the a = 1 certainty clause holds.
long long grover_power(const QaeConfig& cfg);

/// Repetition count J = max(1, ceil(2 (pi^2 - 8) erfinv(1 - delta)^2 / pi^2)).
int repetitions(double delta);

/// Phase-estimation ancilla count: smallest T with 2^T >= m + 1.
int ancilla_count(long long m);

/// Runs J seeded phase estimations with T ancillas and averages the per-run
/// sin^2(theta~) values. Run j draws from a stream derived from (seed, j).
AmplitudeEstimate estimate_amplitude(const EncodedNetwork& enc, const EvidencePattern& p,
                                     const QaeConfig& cfg, std::uint64_t seed);

long long query_count(const AmplitudeEstimate& est);

/// Predicted Grover calls for a config without running anything.
long long predicted_query_count(const QaeConfig& cfg);

}  // namespace qwbm
