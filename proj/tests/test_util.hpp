// Shared test oracles: brute-force enumeration over all assignments, random
// network generators, and spanning-tree enumeration. Deliberately independent
// of the library's inference code paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qwbm/bayesnet.hpp"
#include "qwbm/chowliu.hpp"

namespace testutil {

using namespace qwbm;

// P(X_i = a_i | parents) recomputed from first principles, not via
// joint_probability, so the two implementations check each other.
inline double oracle_joint(const BayesianNetwork& net,
                           const std::vector<int>& bits) {
    double p = 1.0;
    for (int i = 0; i < net.n_vars; ++i) {
        const Cpt& cpt = net.cpts[i];
        std::size_t row = 0;
        for (std::size_t j = 0; j < cpt.parents.size(); ++j)
            row |= static_cast<std::size_t>(bits[cpt.parents[j]]) << j;
        p *= cpt.rows[row][bits[i]];
    }
    return p;
}

inline std::vector<int> bits_of(std::size_t idx, int n) {
    std::vector<int> bits(n);
    for (int i = 0; i < n; ++i) bits[i] = static_cast<int>((idx >> i) & 1);
    return bits;
}

// Sum of the joint over all completions consistent with the evidence.
inline double oracle_evidence_prob(const BayesianNetwork& net,
                                   const Assignment& evidence) {
    double total = 0.0;
    for (std::size_t idx = 0; idx < (std::size_t{1} << net.n_vars); ++idx) {
        const auto bits = bits_of(idx, net.n_vars);
        bool match = true;
        for (int i = 0; i < net.n_vars && match; ++i)
            if (!evidence.is_missing(i) && bits[i] != evidence.values[i]) match = false;
        if (match) total += oracle_joint(net, bits);
    }
    return total;
}

// Posterior over targets by full enumeration.
inline std::vector<double> oracle_posterior(const BayesianNetwork& net,
                                            const Assignment& evidence,
                                            const std::vector<NodeId>& targets) {
    std::vector<double> probs(std::size_t{1} << targets.size(), 0.0);
    double z = 0.0;
    for (std::size_t idx = 0; idx < (std::size_t{1} << net.n_vars); ++idx) {
        const auto bits = bits_of(idx, net.n_vars);
        bool match = true;
        for (int i = 0; i < net.n_vars && match; ++i)
            if (!evidence.is_missing(i) && bits[i] != evidence.values[i]) match = false;
        if (!match) continue;
        const double p = oracle_joint(net, bits);
        std::size_t key = 0;
        for (std::size_t t = 0; t < targets.size(); ++t)
            key |= static_cast<std::size_t>(bits[targets[t]]) << t;
        probs[key] += p;
        z += p;
    }
    for (double& p : probs) p /= z;
    return probs;
}

// Random tree network: node i > 0 gets a parent drawn from [0, i), so the
// identity order is topological. CPT entries stay inside [lo, hi] to keep
// every assignment's probability bounded away from 0.
inline BayesianNetwork random_tree_net(std::mt19937_64& rng, int n,
                                       double lo = 0.2, double hi = 0.8) {
    std::uniform_real_distribution<double> unif(lo, hi);
    BayesianNetwork net;
    net.n_vars = n;
    net.cpts.resize(n);
    for (int i = 0; i < n; ++i) {
        if (i > 0) {
            std::uniform_int_distribution<int> pick(0, i - 1);
            net.cpts[i].parents = {pick(rng)};
        }
        net.cpts[i].rows.resize(net.cpts[i].expected_rows());
        for (auto& row : net.cpts[i].rows) {
            const double p1 = unif(rng);
            row = {1.0 - p1, p1};
        }
    }
    return net;
}

// Random DAG where every node past the first `indegree` has exactly
// `indegree` distinct parents among earlier nodes.
inline BayesianNetwork random_dag_net(std::mt19937_64& rng, int n, int indegree,
                                      double lo = 0.2, double hi = 0.8) {
    std::uniform_real_distribution<double> unif(lo, hi);
    BayesianNetwork net;
    net.n_vars = n;
    net.cpts.resize(n);
    for (int i = 0; i < n; ++i) {
        const int m = std::min(i, indegree);
        std::vector<int> earlier(i);
        for (int j = 0; j < i; ++j) earlier[j] = j;
        std::shuffle(earlier.begin(), earlier.end(), rng);
        net.cpts[i].parents.assign(earlier.begin(), earlier.begin() + m);
        net.cpts[i].rows.resize(net.cpts[i].expected_rows());
        for (auto& row : net.cpts[i].rows) {
            const double p1 = unif(rng);
            row = {1.0 - p1, p1};
        }
    }
    return net;
}

// All labeled spanning trees on n nodes via Prufer decoding; n >= 2.
inline std::vector<std::vector<std::pair<int, int>>> all_spanning_trees(int n) {
    std::vector<std::vector<std::pair<int, int>>> trees;
    if (n == 2) {
        trees.push_back({{0, 1}});
        return trees;
    }
    const int len = n - 2;
    std::vector<int> seq(len, 0);
    std::size_t total = 1;
    for (int i = 0; i < len; ++i) total *= static_cast<std::size_t>(n);
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (int i = 0; i < len; ++i) {
            seq[i] = static_cast<int>(c % n);
            c /= n;
        }
        std::vector<int> degree(n, 1);
        for (int v : seq) ++degree[v];
        std::vector<std::pair<int, int>> edges;
        std::vector<bool> used(n, false);
        for (int v : seq) {
            for (int leaf = 0; leaf < n; ++leaf) {
                if (degree[leaf] == 1 && !used[leaf]) {
                    edges.emplace_back(std::min(leaf, v), std::max(leaf, v));
                    used[leaf] = true;
                    --degree[v];
                    break;
                }
            }
        }
        std::vector<int> last;
        for (int v = 0; v < n; ++v)
            if (!used[v] && degree[v] == 1) last.push_back(v);
        edges.emplace_back(std::min(last[0], last[1]), std::max(last[0], last[1]));
        trees.push_back(edges);
    }
    return trees;
}

// Ancestral sampling directly off the CPTs; valid only when every node's
// parents have smaller ids (true for the generators above).
inline std::vector<std::uint8_t> draw_sample(const BayesianNetwork& net,
                                             std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::uint8_t> bits(net.n_vars);
    for (int i = 0; i < net.n_vars; ++i) {
        std::size_t row = 0;
        for (std::size_t j = 0; j < net.cpts[i].parents.size(); ++j)
            row |= static_cast<std::size_t>(bits[net.cpts[i].parents[j]]) << j;
        bits[i] = unif(rng) < net.cpts[i].rows[row][1] ? 1 : 0;
    }
    return bits;
}

}  // namespace testutil
