#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "qwbm/qbi.hpp"
#include "test_util.hpp"

using namespace qwbm;

namespace {

BayesianNetwork copy_chain() {
    BayesianNetwork net;
    net.n_vars = 2;
    net.cpts.resize(2);
    net.cpts[0].rows = {{0.5, 0.5}};
    net.cpts[1].parents = {0};
    net.cpts[1].rows = {{1.0, 0.0}, {0.0, 1.0}};
    return net;
}

}  // namespace

TEST_CASE("infer_posterior is exact on the deterministic copy chain") {
    const auto enc = encode_network(copy_chain());
    InferenceRequest req;
    req.evidence = {{1, 0}};
    req.targets = {0};
    req.a_min_evidence = 0.5;
    const auto post = infer_posterior(enc, req);
    CHECK(post.probs[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(post.probs[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("infer_posterior with no targets is the degenerate posterior") {
    const auto enc = encode_network(copy_chain());
    InferenceRequest req;
    req.evidence = {{1, 0}};
    req.a_min_evidence = 0.5;
    const auto post = infer_posterior(enc, req);
    REQUIRE(post.probs.size() == 1);
    CHECK(post.probs[0] == 1.0);
}

TEST_CASE("infer_posterior raises on impossible evidence") {
    BayesianNetwork net = copy_chain();
    net.cpts[0].rows = {{1.0, 0.0}};
    const auto enc = encode_network(net);
    InferenceRequest req;
    req.evidence = {{1, 1}};
    req.targets = {0};
    req.a_min_evidence = 0.5;
    CHECK_THROWS_AS(infer_posterior(enc, req), ZeroEvidenceProbability);
}

TEST_CASE("infer_posterior matches the exact oracle statistically") {
    std::mt19937_64 rng(71);
    int hits = 0, entries = 0;
    int nets_used = 0;
    while (nets_used < 100) {
        const auto net = testutil::random_tree_net(rng, 6);
        const int ev_var = static_cast<int>(rng() % 6);
        const int target = (ev_var + 1 + static_cast<int>(rng() % 5)) % 6;
        Assignment evidence = Assignment::all_missing(6);
        evidence.set(ev_var, 1);
        const double a = testutil::oracle_evidence_prob(net, evidence);
        if (a < 0.1) continue;
        ++nets_used;

        const auto enc = encode_network(net);
        InferenceRequest req;
        req.evidence = {{ev_var, 1}};
        req.targets = {target};
        req.epsilon = 0.1;
        req.delta = 0.1;
        req.a_min_evidence = a;
        req.seed = rng();
        const auto post = infer_posterior(enc, req);
        const auto expect = testutil::oracle_posterior(net, evidence, {target});
        for (int k = 0; k < 2; ++k) {
            ++entries;
            if (std::abs(post.probs[k] - expect[k]) <= 0.1 * expect[k]) ++hits;
        }
    }
    // Per-entry contract is 1 - delta = 0.9; allow 3 sigma binomial slack.
    const double slack = 3.0 * std::sqrt(0.9 * 0.1 / entries);
    CHECK(static_cast<double>(hits) / entries >= 0.9 - slack);
}

TEST_CASE("diagnostics totals add up exactly") {
    std::mt19937_64 rng(73);
    const auto net = testutil::random_tree_net(rng, 5);
    const auto enc = encode_network(net);
    InferenceRequest req;
    req.evidence = {{0, 0}};
    req.targets = {2, 4};
    req.a_min_evidence = 0.15;
    req.seed = 4;
    const auto post = infer_posterior(enc, req);
    REQUIRE(post.diagnostics.size() == 4);
    for (const auto& d : post.diagnostics)
        CHECK(d.denominator == post.diagnostics[0].denominator);
    CHECK(post.total_grover_calls > 0);
    for (std::size_t k = 0; k < post.probs.size(); ++k)
        CHECK(post.probs[k] ==
              doctest::Approx(post.diagnostics[k].numerator /
                              post.diagnostics[k].denominator));
}

TEST_CASE("normalized view sums to 1 without touching probs") {
    std::mt19937_64 rng(79);
    const auto net = testutil::random_tree_net(rng, 4);
    const auto enc = encode_network(net);
    InferenceRequest req;
    req.evidence = {{0, 1}};
    req.targets = {1};
    req.a_min_evidence = 0.2;
    req.seed = 11;
    const auto post = infer_posterior(enc, req);
    const auto view = post.normalized();
    double total = 0.0;
    for (double v : view) total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("restrict_missing keeps only observed variables") {
    std::mt19937_64 rng(83);
    const auto net = testutil::random_tree_net(rng, 3);
    const auto enc = encode_network(net);

    Assignment full = Assignment::observed({1, 0, 1});
    CHECK(restrict_missing(full, enc).pairs.size() == 3);

    Assignment none = Assignment::all_missing(3);
    CHECK(restrict_missing(none, enc).pairs.empty());
    CHECK(measure_amplitude(enc.state, restrict_missing(none, enc)) ==
          doctest::Approx(1.0));

    Assignment partial = Assignment::observed({1, 0, 1});
    partial.clear(1);
    const auto pattern = restrict_missing(partial, enc);
    CHECK(pattern.pairs.size() == 2);
    CHECK(measure_amplitude(enc.state, pattern) ==
          doctest::Approx(testutil::oracle_evidence_prob(net, partial))
              .epsilon(1e-10));
}

TEST_CASE("posterior_cost counts one estimation per entry plus the shared one") {
    InferenceRequest req;
    req.evidence = {{0, 1}};
    req.epsilon = 0.1;
    req.delta = 0.1;
    req.a_min_evidence = 0.25;

    const long long base = posterior_cost(req);  // |targets| = 0
    QaeConfig cfg;
    cfg.epsilon = req.epsilon / 3.0;
    cfg.delta = req.delta / 2.0;
    cfg.a_min = req.a_min_evidence;
    CHECK(base == predicted_query_count(cfg));

    req.targets = {1, 2};
    QaeConfig num_cfg = cfg;
    num_cfg.a_min = req.a_min_evidence / 4.0;
    CHECK(posterior_cost(req) == predicted_query_count(cfg) +
                                     4 * predicted_query_count(num_cfg));
}

TEST_CASE("posterior_cost roughly doubles when 1/epsilon doubles") {
    std::vector<double> inv_eps, costs;
    for (double eps : {0.2, 0.1, 0.05, 0.025}) {
        InferenceRequest req;
        req.evidence = {{0, 1}};
        req.targets = {1};
        req.epsilon = eps;
        req.delta = 0.1;
        req.a_min_evidence = 0.25;
        inv_eps.push_back(1.0 / eps);
        costs.push_back(static_cast<double>(posterior_cost(req)));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < inv_eps.size(); ++i) {
        const double lx = std::log(inv_eps[i]), ly = std::log(costs[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(inv_eps.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope == doctest::Approx(1.0).epsilon(0.1));
}
