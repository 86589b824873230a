#include "qwbm/bayesnet.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <queue>
#include <random>
#include <sstream>

#include "json.hpp"

namespace qwbm {

namespace {

constexpr double kRowSumTol = 1e-12;

double canonical_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<std::pair<NodeId, NodeId>> BayesianNetwork::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId i = 0; i < n_vars; ++i)
        for (NodeId p : cpts[i].parents) out.emplace_back(p, i);
    return out;
}

int BayesianNetwork::max_indegree() const {
    int m = 0;
    for (const auto& c : cpts) m = std::max(m, static_cast<int>(c.parents.size()));
    return m;
}

Assignment Assignment::observed(std::vector<std::uint8_t> bits) {
    Assignment a;
    a.values = std::move(bits);
    a.missing.assign(a.values.size(), 0);
    return a;
}

Assignment Assignment::all_missing(int n) {
    Assignment a;
    a.values.assign(n, 0);
    a.missing.assign(n, 1);
    return a;
}

bool Assignment::fully_observed() const {
    for (std::size_t i = 0; i < values.size(); ++i)
        if (is_missing(static_cast<int>(i))) return false;
    return true;
}

void Assignment::set(int i, int bit) {
    values[i] = static_cast<std::uint8_t>(bit);
    if (missing.empty()) missing.assign(values.size(), 0);
    missing[i] = 0;
}

void Assignment::clear(int i) {
    if (missing.empty()) missing.assign(values.size(), 0);
    missing[i] = 1;
}

double Posterior::prob_of(const std::vector<int>& bits) const {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < bits.size(); ++j)
        if (bits[j]) idx |= std::size_t{1} << j;
    return probs.at(idx);
}

void validate_dag(const BayesianNetwork& net) {
    const int n = net.n_vars;
    if (static_cast<int>(net.cpts.size()) != n)
        throw CptShapeMismatch("cpt list size does not match n_vars");
    for (NodeId i = 0; i < n; ++i) {
        const Cpt& c = net.cpts[i];
        for (NodeId p : c.parents)
            if (p < 0 || p >= n || p == i)
                throw CptShapeMismatch("node " + std::to_string(i) + ": bad parent id");
        if (c.rows.size() != c.expected_rows())
            throw CptShapeMismatch("node " + std::to_string(i) + ": row count " +
                                   std::to_string(c.rows.size()) + " != 2^|parents|");
        for (const auto& row : c.rows)
            if (std::abs(row[0] + row[1] - 1.0) > kRowSumTol || row[0] < 0 || row[1] < 0)
                throw CptShapeMismatch("node " + std::to_string(i) + ": unnormalized row");
    }
    // Kahn pass just for cycle detection; report the leftover nodes.
    std::vector<int> indeg(n, 0);
    for (NodeId i = 0; i < n; ++i) indeg[i] = static_cast<int>(net.cpts[i].parents.size());
    std::vector<std::vector<NodeId>> children(n);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId p : net.cpts[i].parents) children[p].push_back(i);
    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
    for (NodeId i = 0; i < n; ++i)
        if (indeg[i] == 0) ready.push(i);
    int seen = 0;
    while (!ready.empty()) {
        NodeId u = ready.top();
        ready.pop();
        ++seen;
        for (NodeId v : children[u])
            if (--indeg[v] == 0) ready.push(v);
    }
    if (seen != n) {
        std::string cyc;
        for (NodeId i = 0; i < n; ++i)
            if (indeg[i] > 0) cyc += (cyc.empty() ? "" : ",") + std::to_string(i);
        throw CycleDetected("cycle through nodes {" + cyc + "}");
    }
}

std::vector<NodeId> topological_sort(const BayesianNetwork& net) {
    const int n = net.n_vars;
    std::vector<int> indeg(n, 0);
    std::vector<std::vector<NodeId>> children(n);
    for (NodeId i = 0; i < n; ++i) {
        indeg[i] = static_cast<int>(net.cpts[i].parents.size());
        for (NodeId p : net.cpts[i].parents) children[p].push_back(i);
    }
    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
    for (NodeId i = 0; i < n; ++i)
        if (indeg[i] == 0) ready.push(i);
    std::vector<NodeId> order;
    order.reserve(n);
    while (!ready.empty()) {
        NodeId u = ready.top();
        ready.pop();
        order.push_back(u);
        for (NodeId v : children[u])
            if (--indeg[v] == 0) ready.push(v);
    }
    if (static_cast<int>(order.size()) != n) throw CycleDetected("graph has a cycle");
    return order;
}

namespace {

std::size_t cpt_row_index(const Cpt& c, const std::vector<std::uint8_t>& values) {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < c.parents.size(); ++j)
        if (values[c.parents[j]]) idx |= std::size_t{1} << j;
    return idx;
}

/// Factor over a sorted variable list; values indexed little-endian by the
/// position of a variable in `vars`.
struct Factor {
    std::vector<NodeId> vars;
    std::vector<double> values;
};

Factor cpt_factor(const BayesianNetwork& net, NodeId i, const Assignment& evidence) {
    const Cpt& c = net.cpts[i];
    // Scope: the node plus its parents, dropping variables fixed by evidence.
    std::vector<NodeId> free_vars;
    auto fixed = [&](NodeId v) { return v < evidence.size() && !evidence.is_missing(v); };
    if (!fixed(i)) free_vars.push_back(i);
    for (NodeId p : c.parents)
        if (!fixed(p) && std::find(free_vars.begin(), free_vars.end(), p) == free_vars.end())
            free_vars.push_back(p);
    std::sort(free_vars.begin(), free_vars.end());

    Factor f;
    f.vars = free_vars;
    f.values.assign(std::size_t{1} << free_vars.size(), 0.0);
    std::vector<std::uint8_t> assign(net.n_vars, 0);
    for (NodeId v = 0; v < net.n_vars; ++v)
        if (fixed(v)) assign[v] = evidence.values[v];
    for (std::size_t idx = 0; idx < f.values.size(); ++idx) {
        for (std::size_t j = 0; j < free_vars.size(); ++j)
            assign[free_vars[j]] = (idx >> j) & 1;
        f.values[idx] = c.rows[cpt_row_index(c, assign)][assign[i]];
    }
    return f;
}

Factor multiply(const Factor& a, const Factor& b) {
    Factor out;
    out.vars = a.vars;
    for (NodeId v : b.vars)
        if (std::find(out.vars.begin(), out.vars.end(), v) == out.vars.end())
            out.vars.push_back(v);
    std::sort(out.vars.begin(), out.vars.end());
    out.values.assign(std::size_t{1} << out.vars.size(), 0.0);
    auto pos_of = [](const std::vector<NodeId>& vars, NodeId v) {
        return std::find(vars.begin(), vars.end(), v) - vars.begin();
    };
    std::vector<std::size_t> amap(a.vars.size()), bmap(b.vars.size());
    for (std::size_t j = 0; j < a.vars.size(); ++j) amap[j] = pos_of(out.vars, a.vars[j]);
    for (std::size_t j = 0; j < b.vars.size(); ++j) bmap[j] = pos_of(out.vars, b.vars[j]);
    for (std::size_t idx = 0; idx < out.values.size(); ++idx) {
        std::size_t ai = 0, bi = 0;
        for (std::size_t j = 0; j < amap.size(); ++j) ai |= ((idx >> amap[j]) & 1) << j;
        for (std::size_t j = 0; j < bmap.size(); ++j) bi |= ((idx >> bmap[j]) & 1) << j;
        out.values[idx] = a.values[ai] * b.values[bi];
    }
    return out;
}

Factor sum_out(const Factor& f, NodeId v) {
    auto it = std::find(f.vars.begin(), f.vars.end(), v);
    std::size_t pos = it - f.vars.begin();
    Factor out;
    out.vars = f.vars;
    out.vars.erase(out.vars.begin() + pos);
    out.values.assign(std::size_t{1} << out.vars.size(), 0.0);
    std::size_t lo_mask = (std::size_t{1} << pos) - 1;
    for (std::size_t idx = 0; idx < out.values.size(); ++idx) {
        std::size_t base = (idx & lo_mask) | ((idx & ~lo_mask) << 1);
        out.values[idx] = f.values[base] + f.values[base | (std::size_t{1} << pos)];
    }
    return out;
}

/// Eliminates all variables outside `keep` in reverse topological order;
/// returns the unnormalized factor over `keep` (i.e. P(keep, evidence)).
Factor eliminate(const BayesianNetwork& net, const Assignment& evidence,
                 const std::vector<NodeId>& keep) {
    std::vector<Factor> factors;
    factors.reserve(net.n_vars);
    for (NodeId i = 0; i < net.n_vars; ++i) factors.push_back(cpt_factor(net, i, evidence));

    auto fixed = [&](NodeId v) { return v < evidence.size() && !evidence.is_missing(v); };
    std::vector<NodeId> order = topological_sort(net);
    std::reverse(order.begin(), order.end());
    for (NodeId v : order) {
        if (fixed(v) || std::find(keep.begin(), keep.end(), v) != keep.end()) continue;
        Factor merged;
        bool have = false;
        std::vector<Factor> rest;
        for (auto& f : factors) {
            if (std::find(f.vars.begin(), f.vars.end(), v) != f.vars.end()) {
                merged = have ? multiply(merged, f) : std::move(f);
                have = true;
            } else {
                rest.push_back(std::move(f));
            }
        }
        if (have) rest.push_back(sum_out(merged, v));
        factors = std::move(rest);
    }
    Factor result;
    result.values = {1.0};
    for (const auto& f : factors) result = multiply(result, f);
    return result;
}

}  // namespace

double joint_probability(const BayesianNetwork& net, const Assignment& a) {
    if (a.size() != net.n_vars) throw DimensionMismatch("assignment length != n_vars");
    if (!a.fully_observed()) throw MissingValue("joint_probability needs a full assignment");
    double p = 1.0;
    for (NodeId i = 0; i < net.n_vars; ++i) {
        const Cpt& c = net.cpts[i];
        p *= c.rows[cpt_row_index(c, a.values)][a.values[i]];
    }
    return p;
}

double evidence_probability(const BayesianNetwork& net, const Assignment& evidence) {
    Factor f = eliminate(net, evidence, {});
    double total = 0.0;
    for (double v : f.values) total += v;
    return total;
}

Posterior exact_posterior(const BayesianNetwork& net, const Assignment& evidence,
                          const std::vector<NodeId>& targets) {
    for (NodeId t : targets)
        if (t < evidence.size() && !evidence.is_missing(t))
            throw InvalidConfig("target " + std::to_string(t) + " is also evidence");
    Factor f = eliminate(net, evidence, targets);
    // Reorder the factor axes to the caller's target order.
    Posterior post;
    post.targets = targets;
    post.probs.assign(std::size_t{1} << targets.size(), 0.0);
    std::vector<std::size_t> tmap(targets.size());
    for (std::size_t j = 0; j < targets.size(); ++j)
        tmap[j] = std::find(f.vars.begin(), f.vars.end(), targets[j]) - f.vars.begin();
    double total = 0.0;
    for (std::size_t idx = 0; idx < f.values.size(); ++idx) {
        std::size_t out = 0;
        for (std::size_t j = 0; j < targets.size(); ++j) out |= ((idx >> tmap[j]) & 1) << j;
        post.probs[out] += f.values[idx];
        total += f.values[idx];
    }
    if (total <= 0.0) throw ZeroEvidenceProbability("evidence has probability 0");
    for (double& p : post.probs) p /= total;
    return post;
}

std::pair<Posterior, SampleStats> forward_sample_posterior(
    const BayesianNetwork& net, const Assignment& evidence,
    const std::vector<NodeId>& targets, long long n_accepted, std::uint64_t seed,
    long long max_attempts) {
    std::vector<NodeId> order = topological_sort(net);
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> draw(net.n_vars, 0);
    std::vector<long long> counts(std::size_t{1} << targets.size(), 0);
    SampleStats stats;
    auto fixed = [&](NodeId v) { return v < evidence.size() && !evidence.is_missing(v); };
    while (stats.accepted < n_accepted) {
        if (stats.attempts >= max_attempts)
            throw BudgetExceeded("rejection sampling exceeded " +
                                 std::to_string(max_attempts) + " attempts");
        ++stats.attempts;
        bool ok = true;
        for (NodeId v : order) {
            const Cpt& c = net.cpts[v];
            double p1 = c.rows[cpt_row_index(c, draw)][1];
            draw[v] = canonical_uniform(rng) < p1 ? 1 : 0;
            if (fixed(v) && draw[v] != evidence.values[v]) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        ++stats.accepted;
        std::size_t idx = 0;
        for (std::size_t j = 0; j < targets.size(); ++j)
            if (draw[targets[j]]) idx |= std::size_t{1} << j;
        ++counts[idx];
    }
    Posterior post;
    post.targets = targets;
    post.probs.resize(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        post.probs[i] = static_cast<double>(counts[i]) / static_cast<double>(n_accepted);
    return {post, stats};
}

bool verify_ancilla_decomposition(const BayesianNetwork& original,
                                  const BayesianNetwork& augmented, NodeId node,
                                  const std::vector<NodeId>& ancilla_ids) {
    constexpr double kTol = 1e-9;
    if (node < 0 || node >= original.n_vars || node >= augmented.n_vars) return false;
    for (NodeId a : ancilla_ids) {
        if (a < 0 || a >= augmented.n_vars) return false;
        for (const auto& row : augmented.cpts[a].rows)
            if (std::abs(row[0] + row[1] - 1.0) > kTol) return false;
    }
    const Cpt& orig = original.cpts[node];
    const std::size_t n_pa = orig.parents.size();
    const std::size_t n_anc = ancilla_ids.size();
    std::vector<std::uint8_t> values(augmented.n_vars, 0);
    for (std::size_t pa = 0; pa < (std::size_t{1} << n_pa); ++pa) {
        for (std::size_t j = 0; j < n_pa; ++j) values[orig.parents[j]] = (pa >> j) & 1;
        for (int v = 0; v <= 1; ++v) {
            double total = 0.0;
            for (std::size_t aa = 0; aa < (std::size_t{1} << n_anc); ++aa) {
                for (std::size_t j = 0; j < n_anc; ++j)
                    values[ancilla_ids[j]] = (aa >> j) & 1;
                double term = 1.0;
                for (NodeId a : ancilla_ids) {
                    const Cpt& c = augmented.cpts[a];
                    term *= c.rows[cpt_row_index(c, values)][values[a]];
                }
                const Cpt& cx = augmented.cpts[node];
                values[node] = static_cast<std::uint8_t>(v);
                term *= cx.rows[cpt_row_index(cx, values)][v];
                total += term;
            }
            if (std::abs(total - orig.rows[pa][v]) > kTol) return false;
        }
    }
    return true;
}

// --- BN-JSON v1 ---

namespace {

std::string parent_bits_key(std::size_t row, std::size_t n_parents) {
    std::string key(n_parents, '0');
    for (std::size_t j = 0; j < n_parents; ++j)
        if ((row >> j) & 1) key[j] = '1';
    return key;
}

}  // namespace

std::string to_bn_json(const BayesianNetwork& net) {
    nlohmann::json j;
    j["format"] = "BN-JSON v1";
    j["n_vars"] = net.n_vars;
    auto edges = nlohmann::json::array();
    for (auto [from, to] : net.edges()) edges.push_back({from, to});
    j["edges"] = edges;
    auto cpts = nlohmann::json::array();
    for (const Cpt& c : net.cpts) {
        nlohmann::json jc;
        jc["parents"] = c.parents;
        nlohmann::json rows = nlohmann::json::object();
        for (std::size_t r = 0; r < c.rows.size(); ++r)
            rows[parent_bits_key(r, c.parents.size())] = {c.rows[r][0], c.rows[r][1]};
        jc["rows"] = rows;
        cpts.push_back(jc);
    }
    j["cpts"] = cpts;
    return j.dump(2);
}

namespace {

BayesianNetwork from_bn_json_checked(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    BayesianNetwork net;
    net.n_vars = j.at("n_vars").get<int>();
    net.cpts.resize(net.n_vars);
    const auto& cpts = j.at("cpts");
    if (static_cast<int>(cpts.size()) != net.n_vars)
        throw ParseError("BN-JSON: cpt count mismatch");
    for (int i = 0; i < net.n_vars; ++i) {
        Cpt& c = net.cpts[i];
        c.parents = cpts[i].at("parents").get<std::vector<NodeId>>();
        c.rows.assign(c.expected_rows(), {0.0, 0.0});
        const auto& rows = cpts[i].at("rows");
        if (rows.size() != c.expected_rows())
            throw ParseError("BN-JSON: node " + std::to_string(i) + " row count mismatch");
        for (auto it = rows.begin(); it != rows.end(); ++it) {
            const std::string& key = it.key();
            if (key.size() != c.parents.size())
                throw ParseError("BN-JSON: bad row key '" + key + "'");
            std::size_t r = 0;
            for (std::size_t b = 0; b < key.size(); ++b) {
                if (key[b] == '1')
                    r |= std::size_t{1} << b;
                else if (key[b] != '0')
                    throw ParseError("BN-JSON: bad row key '" + key + "'");
            }
            c.rows[r] = {it.value().at(0).get<double>(), it.value().at(1).get<double>()};
        }
    }
    validate_dag(net);
    return net;
}

}  // namespace

BayesianNetwork from_bn_json(const std::string& text) {
    try {
        return from_bn_json_checked(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("BN-JSON: ") + e.what());
    }
}

void save_network(const BayesianNetwork& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    out << to_bn_json(net) << '\n';
}

BayesianNetwork load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_bn_json(ss.str());
}

}  // namespace qwbm
