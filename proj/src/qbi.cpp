#include "qwbm/qbi.hpp"

#include <algorithm>
#include <cmath>

namespace qwbm {

namespace {

void check_request(const InferenceRequest& req) {
    for (auto [var, bit] : req.evidence) {
        if (bit != 0 && bit != 1) throw InvalidConfig("evidence bit must be 0 or 1");
        if (std::find(req.targets.begin(), req.targets.end(), var) != req.targets.end())
            throw InvalidConfig("variable " + std::to_string(var) +
                                " is both evidence and target");
    }
    if (!(req.a_min_evidence > 0.0 && req.a_min_evidence <= 1.0))
        throw InvalidConfig("a_min_evidence must lie in (0, 1]");
    if (!req.a_min_numerator.empty() &&
        req.a_min_numerator.size() != (std::size_t{1} << req.targets.size()))
        throw InvalidConfig("a_min_numerator must have one entry per target assignment");
}

std::uint64_t entry_seed(std::uint64_t seed, std::size_t entry) {
    std::uint64_t z = seed ^ (0xd1342543de82ef95ULL * (entry + 2));
    z = (z ^ (z >> 29)) * 0xff51afd7ed558ccdULL;
    return z ^ (z >> 32);
}

}  // namespace

std::vector<double> EstimatedPosterior::normalized() const {
    double total = 0.0;
    for (double p : probs) total += p;
    std::vector<double> out = probs;
    if (total > 0.0)
        for (double& p : out) p /= total;
    return out;
}

EstimatedPosterior infer_posterior(const EncodedNetwork& enc, const InferenceRequest& req) {
    check_request(req);
    QaeConfig base;
    base.epsilon = req.epsilon / 3.0;
    base.delta = req.delta / 2.0;
    base.path = req.path;
    base.qubit_cap = req.qubit_cap;
    if (!(req.epsilon > 0.0 && req.epsilon < 1.0 / 3.0))
        throw InvalidConfig("epsilon must lie in (0, 1/3)");

    EstimatedPosterior out;
    out.targets = req.targets;
    const std::size_t n_entries = std::size_t{1} << req.targets.size();
    out.probs.assign(n_entries, 0.0);
    out.diagnostics.assign(n_entries, {});

    QaeConfig den_cfg = base;
    den_cfg.a_min = req.a_min_evidence;
    EvidencePattern ev_pattern = pattern_for(enc, req.evidence);
    AmplitudeEstimate den = estimate_amplitude(enc, ev_pattern, den_cfg, entry_seed(req.seed, 0));
    out.total_grover_calls += den.total_grover_calls;
    if (den.a_hat <= 0.0)
        throw ZeroEvidenceProbability("evidence amplitude estimated as 0");
    if (req.targets.empty()) {
        // Degenerate query: the lone entry is the evidence conditioned on itself.
        out.probs[0] = 1.0;
        out.diagnostics[0] = {den.a_hat, den.a_hat, 0};
        return out;
    }

    const double default_a_min =
        req.a_min_evidence * std::ldexp(1.0, -static_cast<int>(req.targets.size()));
    for (std::size_t y = 0; y < n_entries; ++y) {
        auto joint = req.evidence;
        for (std::size_t j = 0; j < req.targets.size(); ++j)
            joint.emplace_back(req.targets[j], static_cast<int>((y >> j) & 1));
        QaeConfig num_cfg = base;
        num_cfg.a_min =
            req.a_min_numerator.empty() ? default_a_min : req.a_min_numerator[y];
        AmplitudeEstimate num =
            estimate_amplitude(enc, pattern_for(enc, joint), num_cfg, entry_seed(req.seed, y + 1));
        out.probs[y] = num.a_hat / den.a_hat;
        out.diagnostics[y] = {num.a_hat, den.a_hat, num.total_grover_calls};
        out.total_grover_calls += num.total_grover_calls;
    }
    return out;
}

EvidencePattern restrict_missing(const Assignment& evidence, const EncodedNetwork& enc) {
    std::vector<std::pair<NodeId, int>> observed;
    for (int i = 0; i < evidence.size(); ++i)
        if (!evidence.is_missing(i)) observed.emplace_back(i, evidence.values[i]);
    return pattern_for(enc, observed);
}

long long posterior_cost(const InferenceRequest& req) {
    check_request(req);
    QaeConfig base;
    base.epsilon = req.epsilon / 3.0;
    base.delta = req.delta / 2.0;
    base.a_min = req.a_min_evidence;
    long long total = predicted_query_count(base);
    // No targets: the posterior is trivially 1, only the denominator runs.
    if (req.targets.empty()) return total;
    const std::size_t n_entries = std::size_t{1} << req.targets.size();
    const double default_a_min =
        req.a_min_evidence * std::ldexp(1.0, -static_cast<int>(req.targets.size()));
    for (std::size_t y = 0; y < n_entries; ++y) {
        QaeConfig num_cfg = base;
        num_cfg.a_min =
            req.a_min_numerator.empty() ? default_a_min : req.a_min_numerator[y];
        total += predicted_query_count(num_cfg);
    }
    return total;
}

}  // namespace qwbm
