#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qwbm/bayesnet.hpp"

namespace qwbm {

struct SampleSet {
    std::vector<std::vector<std::uint8_t>> samples;
    int n_vars = 0;
};

using MutualInfoMatrix = std::vector<std::vector<double>>;

/// Undirected spanning tree as index pairs (i < j).
struct SpanningTree {
    std::vector<std::pair<int, int>> edges;
};

/// Empirical Pearson correlation of two binary columns; 0 when either
/// column has zero variance.
double correlation(const SampleSet& s, int i, int j);

/// M_ij = -1/2 ln(1 - Corr^2), with Corr^2 clamped to 1 - 1e-12.
/// Diagonal is 0 by convention.
MutualInfoMatrix mutual_information_matrix(const SampleSet& s);

/// Kruskal on the complete graph weighted by m. Ties broken by ascending
/// (min(i,j), max(i,j)) so results are deterministic.
SpanningTree maximum_spanning_tree(const MutualInfoMatrix& m);

/// DFS from `root` (neighbors visited in ascending index order); each
/// non-root node's parent is its DFS predecessor, so max indegree is 1.
std::vector<std::pair<NodeId, NodeId>> orient_edges(const SpanningTree& t, NodeId root);

/// Laplace-smoothed conditional frequencies:
/// P(X=v | parent=u) = (count(v,u) + alpha) / (count(.,u) + 2 alpha).
BayesianNetwork fit_cpts(const std::vector<std::pair<NodeId, NodeId>>& edges,
                         const SampleSet& s, double alpha);

/// Structure-dependent KL term: -sum of MI over the network's edges.
/// Lower is better; the entropy terms are structure-independent.
double kl_gap_terms(const BayesianNetwork& net, const SampleSet& s);

/// Full pipeline: MI matrix, maximum spanning tree, DFS orientation, CPT fit.
BayesianNetwork chow_liu(const SampleSet& s, double alpha = 1.0, NodeId root = 0);

}  // namespace qwbm
