#include "qwbm/chowliu.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qwbm {

namespace {

// Floor for 1 - Corr^2, i.e. Corr^2 is capped at 1 - 1e-12.
constexpr double kCorrSqFloor = 1e-12;

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

}  // namespace

double correlation(const SampleSet& s, int i, int j) {
    const double n = static_cast<double>(s.samples.size());
    if (n == 0) return 0.0;
    double sx = 0, sy = 0, sxy = 0;
    for (const auto& row : s.samples) {
        sx += row[i];
        sy += row[j];
        sxy += row[i] & row[j];
    }
    double ex = sx / n, ey = sy / n, exy = sxy / n;
    double dx = ex * (1.0 - ex), dy = ey * (1.0 - ey);  // Bernoulli variance
    if (dx <= 0.0 || dy <= 0.0) return 0.0;
    return (exy - ex * ey) / std::sqrt(dx * dy);
}

MutualInfoMatrix mutual_information_matrix(const SampleSet& s) {
    const int n = s.n_vars;
    MutualInfoMatrix m(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double c = correlation(s, i, j);
            // Floor 1 - c^2 directly; subtracting the capped c^2 from 1
            // would lose the floor's precision to cancellation.
            double one_minus = std::max(1.0 - c * c, kCorrSqFloor);
            m[i][j] = m[j][i] = -0.5 * std::log(one_minus);
        }
    return m;
}

SpanningTree maximum_spanning_tree(const MutualInfoMatrix& m) {
    const int n = static_cast<int>(m.size());
    SpanningTree tree;
    if (n <= 1) return tree;
    struct Edge {
        double w;
        int i, j;
    };
    std::vector<Edge> edges;
    edges.reserve(n * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back({m[i][j], i, j});
    std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        if (a.w != b.w) return a.w > b.w;
        return std::pair(a.i, a.j) < std::pair(b.i, b.j);
    });
    Dsu dsu(n);
    for (const Edge& e : edges) {
        if (dsu.unite(e.i, e.j)) {
            tree.edges.emplace_back(e.i, e.j);
            if (static_cast<int>(tree.edges.size()) == n - 1) break;
        }
    }
    return tree;
}

std::vector<std::pair<NodeId, NodeId>> orient_edges(const SpanningTree& t, NodeId root) {
    int n = 0;
    for (auto [i, j] : t.edges) n = std::max({n, i + 1, j + 1});
    n = std::max(n, root + 1);
    std::vector<std::vector<int>> adj(n);
    for (auto [i, j] : t.edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
    // Edges are recorded when a node is first visited, so the output order
    // follows the DFS itself (ascending neighbors first).
    std::vector<std::pair<NodeId, NodeId>> directed;
    std::vector<char> seen(n, 0);
    std::vector<std::pair<int, int>> stack = {{-1, root}};
    while (!stack.empty()) {
        const auto [parent, u] = stack.back();
        stack.pop_back();
        if (seen[u]) continue;
        seen[u] = 1;
        if (parent >= 0) directed.emplace_back(parent, u);
        for (auto it = adj[u].rbegin(); it != adj[u].rend(); ++it)
            if (!seen[*it]) stack.emplace_back(u, *it);
    }
    return directed;
}

BayesianNetwork fit_cpts(const std::vector<std::pair<NodeId, NodeId>>& edges,
                         const SampleSet& s, double alpha) {
    if (s.samples.empty()) throw EmptySampleSet("fit_cpts needs at least one sample");
    const int n = s.n_vars;
    BayesianNetwork net;
    net.n_vars = n;
    net.cpts.resize(n);
    for (auto [from, to] : edges) {
        if (!net.cpts[to].parents.empty())
            throw InvalidConfig("node " + std::to_string(to) + " has indegree > 1");
        net.cpts[to].parents = {from};
    }
    for (int i = 0; i < n; ++i) {
        Cpt& c = net.cpts[i];
        c.rows.assign(c.expected_rows(), {0.0, 0.0});
        std::vector<std::array<double, 2>> counts(c.rows.size(), {0.0, 0.0});
        for (const auto& row : s.samples) {
            std::size_t ctx = c.parents.empty() ? 0 : row[c.parents[0]];
            counts[ctx][row[i]] += 1.0;
        }
        for (std::size_t r = 0; r < c.rows.size(); ++r) {
            double total = counts[r][0] + counts[r][1] + 2.0 * alpha;
            if (total <= 0.0) {
                c.rows[r] = {0.5, 0.5};  // alpha = 0 and unseen context
            } else {
                c.rows[r] = {(counts[r][0] + alpha) / total, (counts[r][1] + alpha) / total};
            }
        }
    }
    validate_dag(net);
    return net;
}

double kl_gap_terms(const BayesianNetwork& net, const SampleSet& s) {
    MutualInfoMatrix m = mutual_information_matrix(s);
    double total = 0.0;
    for (auto [from, to] : net.edges()) total -= m[from][to];
    return total;
}

BayesianNetwork chow_liu(const SampleSet& s, double alpha, NodeId root) {
    if (static_cast<int>(s.samples.size()) < 2)
        throw EmptySampleSet("chow_liu needs at least two samples");
    MutualInfoMatrix m = mutual_information_matrix(s);
    SpanningTree tree = maximum_spanning_tree(m);
    auto edges = orient_edges(tree, root);
    return fit_cpts(edges, s, alpha);
}

}  // namespace qwbm
