#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "qwbm/qae.hpp"
#include "test_util.hpp"

using namespace qwbm;

namespace {

BayesianNetwork single_node(double p1) {
    BayesianNetwork net;
    net.n_vars = 1;
    net.cpts.resize(1);
    net.cpts[0].rows = {{1.0 - p1, p1}};
    return net;
}

QaeConfig config(double epsilon, double delta, double a_min) {
    QaeConfig cfg;
    cfg.epsilon = epsilon;
    cfg.delta = delta;
    cfg.a_min = a_min;
    return cfg;
}

}  // namespace

TEST_CASE("validate_config enforces parameter ranges") {
    CHECK_NOTHROW(validate_config(config(0.1, 0.1, 0.5)));
    CHECK_THROWS_AS(validate_config(config(0.4, 0.1, 0.5)), InvalidConfig);
    CHECK_THROWS_AS(validate_config(config(0.0, 0.1, 0.5)), InvalidConfig);
    CHECK_THROWS_AS(validate_config(config(0.1, 0.0, 0.5)), InvalidConfig);
    CHECK_THROWS_AS(validate_config(config(0.1, 1.0, 0.5)), InvalidConfig);
    CHECK_THROWS_AS(validate_config(config(0.1, 0.1, 0.0)), InvalidConfig);
    CHECK_THROWS_AS(validate_config(config(0.1, 0.1, 1.5)), InvalidConfig);
}

TEST_CASE("erf_inverse matches reference values") {
    CHECK(erf_inverse(0.9) == doctest::Approx(1.1630871536766743).epsilon(1e-10));
    CHECK(erf_inverse(0.99) == doctest::Approx(1.8213863677184496).epsilon(1e-10));
    CHECK(erf_inverse(0.0) == doctest::Approx(0.0));
    CHECK(erf_inverse(-0.9) == doctest::Approx(-1.1630871536766743).epsilon(1e-10));
    // Past |x| ~ 3.9 the round trip is limited by erf saturating in double
    // precision, so the 1e-10 check stops at 3.5.
    for (double x = -3.5; x <= 3.5; x += 0.31)
        CHECK(erf_inverse(std::erf(x)) == doctest::Approx(x).epsilon(1e-10));
}

TEST_CASE("grover_power evaluates 2 ceil(pi / (sqrt(a_min) eps))") {
    CHECK(grover_power(config(0.1, 0.1, 0.25)) == 126);
    const double eps = 0.2;
    CHECK(grover_power(config(eps, 0.1, 1.0)) ==
          2 * static_cast<long long>(std::ceil(std::numbers::pi / eps)));
    long long prev = 0;
    for (double a_min : {0.5, 0.25, 0.125, 0.0625}) {
        const long long m = grover_power(config(0.1, 0.1, a_min));
        CHECK(m >= prev);
        CHECK(m % 2 == 0);
        prev = m;
    }
}

TEST_CASE("repetitions pins the documented values") {
    CHECK(repetitions(0.1) == 1);
    CHECK(repetitions(0.01) == 2);
    CHECK(repetitions(0.999) == 1);
    CHECK_THROWS_AS(repetitions(0.0), InvalidConfig);
    CHECK_THROWS_AS(repetitions(1.0), InvalidConfig);
}

TEST_CASE("ancilla_count is the smallest T with 2^T >= m + 1") {
    CHECK(ancilla_count(1) == 1);
    CHECK(ancilla_count(126) == 7);
    CHECK(ancilla_count(127) == 7);
    CHECK(ancilla_count(128) == 8);
}

TEST_CASE("estimate_amplitude is exact at a = 0 for every seed") {
    const auto enc = encode_network(single_node(0.0));
    const EvidencePattern p{{{0, 1}}};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto est = estimate_amplitude(enc, p, config(0.1, 0.1, 0.5), seed);
        CHECK(est.a_hat == 0.0);
    }
}

TEST_CASE("estimate_amplitude is exact at a = 1 for every seed") {
    const auto enc = encode_network(single_node(1.0));
    const EvidencePattern p{{{0, 1}}};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto est = estimate_amplitude(enc, p, config(0.1, 0.1, 1.0), seed);
        CHECK(est.a_hat == 1.0);
    }
}

TEST_CASE("estimate_amplitude meets the relative-error contract at a = 0.25") {
    const auto enc = encode_network(single_node(0.25));
    const EvidencePattern p{{{0, 1}}};
    const QaeConfig cfg = config(0.1, 0.1, 0.25);
    int hits = 0;
    const int runs = 200;
    for (std::uint64_t seed = 0; seed < runs; ++seed) {
        const auto est = estimate_amplitude(enc, p, cfg, seed);
        if (std::abs(est.a_hat - 0.25) / 0.25 <= cfg.epsilon) ++hits;
    }
    // 99% binomial lower bound around 1 - delta = 0.9 at n = 200.
    const double slack = 2.326 * std::sqrt(0.9 * 0.1 / runs);
    CHECK(static_cast<double>(hits) / runs >= 0.9 - slack);
}

TEST_CASE("estimate_amplitude is reproducible for a fixed seed") {
    const auto enc = encode_network(single_node(0.3));
    const EvidencePattern p{{{0, 1}}};
    const auto e1 = estimate_amplitude(enc, p, config(0.1, 0.05, 0.3), 99);
    const auto e2 = estimate_amplitude(enc, p, config(0.1, 0.05, 0.3), 99);
    CHECK(e1.a_hat == e2.a_hat);
    CHECK(e1.total_grover_calls == e2.total_grover_calls);
}

TEST_CASE("query_count is J (2^T - 1)") {
    AmplitudeEstimate est;
    est.runs = 1;
    est.t_ancillas = 7;
    est.total_grover_calls = 127;
    CHECK(query_count(est) == 127);

    const auto enc = encode_network(single_node(0.25));
    const EvidencePattern p{{{0, 1}}};
    const auto measured = estimate_amplitude(enc, p, config(0.1, 0.1, 0.25), 5);
    CHECK(measured.total_grover_calls ==
          measured.runs * ((1LL << measured.t_ancillas) - 1));
    CHECK(query_count(measured) == measured.total_grover_calls);
}

TEST_CASE("predicted query counts scale like a_min^{-1/2}") {
    std::vector<double> a_vals, costs;
    for (int k = 2; k <= 6; ++k) {
        const double a_min = std::pow(2.0, -k);
        a_vals.push_back(a_min);
        costs.push_back(static_cast<double>(predicted_query_count(config(0.1, 0.1, a_min))));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < a_vals.size(); ++i) {
        const double lx = std::log(a_vals[i]), ly = std::log(costs[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(a_vals.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope == doctest::Approx(-0.5).epsilon(0.2));
}

TEST_CASE("estimate_amplitude respects the qubit cap") {
    std::mt19937_64 rng(7);
    const auto net = testutil::random_tree_net(rng, 6);
    const auto enc = encode_network(net);
    QaeConfig cfg = config(0.1, 0.1, 0.5);
    cfg.qubit_cap = 8;
    cfg.path = QpePath::Repeated;  // needs 6 data + 7 ancilla qubits
    CHECK_THROWS_AS(estimate_amplitude(enc, EvidencePattern{{{0, 1}}}, cfg, 1),
                    TooManyQubits);
}
