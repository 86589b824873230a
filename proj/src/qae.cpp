#include "qwbm/qae.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace qwbm {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t run_seed(std::uint64_t seed, int j) {
    // splitmix64 over (seed ^ run index) for independent per-run streams
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(j) + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

void validate_config(const QaeConfig& cfg) {
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0 / 3.0))
        throw InvalidConfig("epsilon must lie in (0, 1/3)");
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0))
        throw InvalidConfig("delta must lie in (0, 1)");
    if (!(cfg.a_min > 0.0 && cfg.a_min <= 1.0))
        throw InvalidConfig("a_min must lie in (0, 1]");
    if (cfg.t_override < 0) throw InvalidConfig("negative ancilla override");
}

double erf_inverse(double y) {
    if (!(y > -1.0 && y < 1.0)) throw InvalidConfig("erf_inverse domain is (-1, 1)");
    if (y == 0.0) return 0.0;
    // Winitzki-style initial guess, then Newton on std::erf.
    const double w = std::log(1.0 - y * y);
    const double p = 2.0 / (kPi * 0.147) + 0.5 * w;
    double x = std::copysign(std::sqrt(std::sqrt(p * p - w / 0.147) - p), y);
    for (int i = 0; i < 3; ++i) {
        double err = std::erf(x) - y;
        x -= err * std::sqrt(kPi) / 2.0 * std::exp(x * x);
    }
    return x;
}

long long grover_power(const QaeConfig& cfg) {
    validate_config(cfg);
    return 2 * static_cast<long long>(std::ceil(kPi / (std::sqrt(cfg.a_min) * cfg.epsilon)));
}

int repetitions(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidConfig("delta must lie in (0, 1)");
    const double inv = erf_inverse(1.0 - delta);
    const double bound = 2.0 * (kPi * kPi - 8.0) * inv * inv / (kPi * kPi);
    return std::max(1, static_cast<int>(std::ceil(bound)));
}

int ancilla_count(long long m) {
    int t = 1;
    while ((1LL << t) < m + 1) ++t;
    return t;
}

AmplitudeEstimate estimate_amplitude(const EncodedNetwork& enc, const EvidencePattern& p,
                                     const QaeConfig& cfg, std::uint64_t seed) {
    validate_config(cfg);
    AmplitudeEstimate est;
    est.grover_power = grover_power(cfg);
    est.t_ancillas = cfg.t_override > 0 ? cfg.t_override : ancilla_count(est.grover_power);
    est.runs = repetitions(cfg.delta);
    double sum = 0.0;
    for (int j = 0; j < est.runs; ++j) {
        double theta = qpe_estimate(enc, p, est.t_ancillas, run_seed(seed, j), cfg.path,
                                    cfg.qubit_cap);
        double s = std::sin(theta);
        sum += s * s;
    }
    est.a_hat = sum / static_cast<double>(est.runs);
    est.total_grover_calls =
        static_cast<long long>(est.runs) * ((1LL << est.t_ancillas) - 1);
    return est;
}

long long query_count(const AmplitudeEstimate& est) { return est.total_grover_calls; }

long long predicted_query_count(const QaeConfig& cfg) {
    const long long m = grover_power(cfg);
    const int t = cfg.t_override > 0 ? cfg.t_override : ancilla_count(m);
    return static_cast<long long>(repetitions(cfg.delta)) * ((1LL << t) - 1);
}

}  // namespace qwbm
