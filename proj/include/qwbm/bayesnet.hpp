#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qwbm/errors.hpp"

namespace qwbm {

using NodeId = int;

/// Conditional probability table of one binary node.
///
/// Row index packs the parent assignment little-endian: the value of
/// parents[j] contributes bit j. Each row is (P(X=0|pa), P(X=1|pa)).
struct Cpt {
    std::vector<NodeId> parents;
    std::vector<std::array<double, 2>> rows;

    std::size_t expected_rows() const { return std::size_t{1} << parents.size(); }
};

/// Directed acyclic graph over binary variables plus one CPT per node.
/// Immutable after construction by convention; all operations are pure.
struct BayesianNetwork {
    int n_vars = 0;
    std::vector<Cpt> cpts;

    std::vector<std::pair<NodeId, NodeId>> edges() const;
    int max_indegree() const;
};

/// Full or partial observation of the network's variables.
/// values[i] is 0/1; missing[i] marks unobserved entries.
struct Assignment {
    std::vector<std::uint8_t> values;
    std::vector<std::uint8_t> missing;

    static Assignment observed(std::vector<std::uint8_t> bits);
    static Assignment all_missing(int n);

    int size() const { return static_cast<int>(values.size()); }
    bool is_missing(int i) const { return !missing.empty() && missing[i]; }
    bool fully_observed() const;
    void set(int i, int bit);
    void clear(int i);
};

/// Distribution over joint assignments of `targets`. probs is indexed by the
/// target bits packed little-endian (targets[0] -> bit 0).
struct Posterior {
    std::vector<NodeId> targets;
    std::vector<double> probs;

    double prob_of(const std::vector<int>& bits) const;
};

struct SampleStats {
    long long attempts = 0;
    long long accepted = 0;
};

/// Throws CycleDetected or CptShapeMismatch on a malformed network.
void validate_dag(const BayesianNetwork& net);

/// Kahn's algorithm; ready nodes are processed in ascending NodeId order so
/// the result is deterministic. Throws CycleDetected.
std::vector<NodeId> topological_sort(const BayesianNetwork& net);

/// P(X = a) as the product of per-node conditionals. Requires a fully
/// observed assignment.
double joint_probability(const BayesianNetwork& net, const Assignment& a);

/// P(evidence) by variable elimination over the unobserved variables.
double evidence_probability(const BayesianNetwork& net, const Assignment& evidence);

/// Exact P(targets | evidence) by variable elimination in reverse topological
/// order. Throws ZeroEvidenceProbability when P(evidence) = 0.
Posterior exact_posterior(const BayesianNetwork& net, const Assignment& evidence,
                          const std::vector<NodeId>& targets);

/// Ancestral sampling with rejection against the evidence. Draws until
/// n_accepted samples are consistent with the evidence; the attempt count is
/// the classical query-count baseline.
std::pair<Posterior, SampleStats> forward_sample_posterior(
    const BayesianNetwork& net, const Assignment& evidence,
    const std::vector<NodeId>& targets, long long n_accepted, std::uint64_t seed,
    long long max_attempts = 100'000'000LL);

/// Checks that an ancilla-augmented network reproduces the original
/// conditional P(X_j | pa(X_j)) after summing out the ancillas, and that every
/// ancilla CPT row is normalized. Pure arithmetic check, never throws.
bool verify_ancilla_decomposition(const BayesianNetwork& original,
                                  const BayesianNetwork& augmented, NodeId node,
                                  const std::vector<NodeId>& ancilla_ids);

// BN-JSON v1 round trip.
std::string to_bn_json(const BayesianNetwork& net);
BayesianNetwork from_bn_json(const std::string& text);
void save_network(const BayesianNetwork& net, const std::string& path);
BayesianNetwork load_network(const std::string& path);

}  // namespace qwbm
