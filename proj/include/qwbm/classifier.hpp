#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qwbm/bayesnet.hpp"
#include "qwbm/qae.hpp"

namespace qwbm {

/// One training/evaluation record: feature bits (with optional missing mask)
/// plus a class name.
struct LabeledSample {
    std::vector<std::uint8_t> bits;
    std::vector<std::uint8_t> missing;  // empty = fully observed
    std::string label;
};

enum class PriorsMode { Uniform, Empirical, Explicit };

/// Per-class tree network plus class priors. Classes are kept sorted by name
/// so argmax tie-breaking is reproducible.
struct ClassifierModel {
    std::vector<std::string> class_names;  // sorted ascending
    std::vector<BayesianNetwork> networks;
    std::vector<double> priors;
    double alpha = 1.0;
    std::vector<long long> sample_counts;
    int n_features = 0;

    int class_index(const std::string& name) const;  // throws UnknownLabel
};

enum class Backend { Exact, Quantum };

struct Prediction {
    std::string label;
    std::vector<double> scores;  // per-class log(prior * likelihood), -inf allowed
};

struct ConfusionMatrix {
    std::vector<std::string> class_names;
    std::vector<std::vector<long long>> counts;  // rows true, cols predicted
};

struct EvaluationReport {
    ConfusionMatrix confusion;
    double accuracy = 0.0;
    std::vector<double> precision;
    std::vector<double> recall;
    long long total = 0;
};

/// Chow-Liu structure + smoothed CPTs per class. priors_mode Explicit takes
/// per-class probabilities keyed like the sorted class list.
ClassifierModel train(const std::vector<LabeledSample>& data, double alpha,
                      PriorsMode priors_mode,
                      const std::vector<double>& explicit_priors = {},
                      const std::vector<std::string>& required_classes = {});

/// log P(observed bits | class); missing variables are marginalized by
/// variable elimination. Returns -infinity for zero-probability samples.
double log_likelihood(const ClassifierModel& model, int class_i, const LabeledSample& sample);

/// Exact backend: argmax of log prior + log likelihood. Quantum backend:
/// per-class amplitude estimation of the sample pattern on the encoded
/// network, then the same argmax. Ties break by class-name order.
Prediction classify(const ClassifierModel& model, const LabeledSample& sample,
                    Backend backend = Backend::Exact,
                    const std::optional<QaeConfig>& qcfg = {}, std::uint64_t seed = 0);

EvaluationReport evaluate(const ClassifierModel& model,
                          const std::vector<LabeledSample>& data,
                          Backend backend = Backend::Exact,
                          const std::optional<QaeConfig>& qcfg = {}, std::uint64_t seed = 0,
                          int threads = 1);

// MODEL-JSON v1.
std::string to_model_json(const ClassifierModel& model);
ClassifierModel from_model_json(const std::string& text);
void save_model(const ClassifierModel& model, const std::string& path);
ClassifierModel load_model(const std::string& path);

}  // namespace qwbm
