#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qwbm/bayesnet.hpp"
#include "qwbm/qae.hpp"

namespace qwbm {

/// Posterior query against an encoded network. Evidence and targets are
/// variable ids; a_min_evidence lower-bounds P(evidence).
struct InferenceRequest {
    std::vector<std::pair<NodeId, int>> evidence;
    std::vector<NodeId> targets;
    double epsilon = 0.1;
    double delta = 0.1;
    double a_min_evidence = 0.1;
    std::uint64_t seed = 0;
    QpePath path = QpePath::Auto;
    int qubit_cap = kDefaultQubitCap;
    /// Optional per-target-assignment a_min for the numerator estimations,
    /// indexed like EstimatedPosterior::probs; empty = worst-case default
    /// a_min_evidence * 2^{-|targets|}.
    std::vector<double> a_min_numerator;
};

struct EntryDiagnostics {
    double numerator = 0.0;
    double denominator = 0.0;
    long long grover_calls = 0;
};

/// Per-entry ratio estimates of P(targets = y | evidence). Entries are NOT
/// renormalized; the contract is per-entry relative error.
struct EstimatedPosterior {
    std::vector<NodeId> targets;
    std::vector<double> probs;  // indexed by target bits, little-endian
    std::vector<EntryDiagnostics> diagnostics;
    long long total_grover_calls = 0;

    std::vector<double> normalized() const;  // display-only view
};

/// Two amplitude estimations per entry at the (epsilon/3, delta/2) budget
/// split; the denominator is estimated once and shared.
EstimatedPosterior infer_posterior(const EncodedNetwork& enc, const InferenceRequest& req);

/// Pattern over the observed variables only; missing variables are
/// marginalized implicitly because the projector sums over them.
EvidencePattern restrict_missing(const Assignment& evidence, const EncodedNetwork& enc);

/// Predicted total Grover calls: denominator estimation plus 2^{|targets|}
/// numerator estimations at the worst-case a_min split.
long long posterior_cost(const InferenceRequest& req);

}  // namespace qwbm
