#include "qwbm/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "qwbm/chowliu.hpp"
#include "qwbm/qbi.hpp"
#include "qwbm/wbm.hpp"

namespace qwbm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Assignment sample_evidence(const LabeledSample& sample) {
    Assignment a;
    a.values = sample.bits;
    a.missing = sample.missing.empty()
                    ? std::vector<std::uint8_t>(sample.bits.size(), 0)
                    : sample.missing;
    return a;
}

}  // namespace

int ClassifierModel::class_index(const std::string& name) const {
    auto it = std::find(class_names.begin(), class_names.end(), name);
    if (it == class_names.end()) throw UnknownLabel("class '" + name + "' not in model");
    return static_cast<int>(it - class_names.begin());
}

ClassifierModel train(const std::vector<LabeledSample>& data, double alpha,
                      PriorsMode priors_mode, const std::vector<double>& explicit_priors,
                      const std::vector<std::string>& required_classes) {
    if (data.empty()) throw EmptySampleSet("no training data");
    std::map<std::string, std::vector<const LabeledSample*>> by_class;
    for (const LabeledSample& s : data) by_class[s.label].push_back(&s);
    std::vector<std::string> names = required_classes;
    if (names.empty()) {
        if (priors_mode == PriorsMode::Empirical) {
            // Empirical priors are only meaningful over the full label set.
            for (int i = 0; i < 9; ++i)
                names.push_back(label_name(static_cast<DefectLabel>(i)));
        } else {
            for (const auto& [name, _] : by_class) names.push_back(name);
        }
    }
    std::sort(names.begin(), names.end());

    ClassifierModel model;
    model.class_names = names;
    model.alpha = alpha;
    model.n_features = static_cast<int>(data.front().bits.size());
    for (const std::string& name : names) {
        auto it = by_class.find(name);
        if (it == by_class.end() || it->second.empty())
            throw MissingClass("class '" + name + "' has no training samples");
        if (it->second.size() < 2)
            throw EmptyClass("class '" + name + "' needs at least two samples");
        SampleSet set;
        set.n_vars = model.n_features;
        for (const LabeledSample* s : it->second) {
            if (static_cast<int>(s->bits.size()) != model.n_features)
                throw DimensionMismatch("inconsistent feature counts in training data");
            set.samples.push_back(s->bits);
        }
        model.networks.push_back(chow_liu(set, alpha));
        model.sample_counts.push_back(static_cast<long long>(set.samples.size()));
    }

    const std::size_t k = names.size();
    switch (priors_mode) {
        case PriorsMode::Uniform:
            model.priors.assign(k, 1.0 / static_cast<double>(k));
            break;
        case PriorsMode::Empirical: {
            long long total = 0;
            for (long long c : model.sample_counts) total += c;
            model.priors.resize(k);
            for (std::size_t i = 0; i < k; ++i)
                model.priors[i] =
                    static_cast<double>(model.sample_counts[i]) / static_cast<double>(total);
            break;
        }
        case PriorsMode::Explicit: {
            if (explicit_priors.size() != k)
                throw InvalidConfig("explicit priors must have one entry per class");
            double total = 0.0;
            for (double p : explicit_priors) {
                if (p < 0.0) throw InvalidConfig("negative prior");
                total += p;
            }
            if (std::abs(total - 1.0) > 1e-12)
                throw InvalidConfig("explicit priors must sum to 1");
            model.priors = explicit_priors;
            break;
        }
    }
    return model;
}

double log_likelihood(const ClassifierModel& model, int class_i,
                      const LabeledSample& sample) {
    if (static_cast<int>(sample.bits.size()) != model.n_features)
        throw DimensionMismatch("sample length does not match model feature count");
    const Assignment evidence = sample_evidence(sample);
    double p;
    if (evidence.fully_observed()) {
        p = joint_probability(model.networks[class_i], evidence);
    } else {
        p = evidence_probability(model.networks[class_i], evidence);
    }
    return p > 0.0 ? std::log(p) : kNegInf;
}

Prediction classify(const ClassifierModel& model, const LabeledSample& sample,
                    Backend backend, const std::optional<QaeConfig>& qcfg,
                    std::uint64_t seed) {
    const std::size_t k = model.class_names.size();
    Prediction pred;
    pred.scores.resize(k);
    if (backend == Backend::Exact) {
        for (std::size_t i = 0; i < k; ++i) {
            double ll = log_likelihood(model, static_cast<int>(i), sample);
            pred.scores[i] =
                model.priors[i] > 0.0 ? std::log(model.priors[i]) + ll : kNegInf;
        }
    } else {
        QaeConfig cfg = qcfg.value_or(QaeConfig{});
        if (model.n_features > cfg.qubit_cap)
            throw TooManyQubits("quantum backend refused: " +
                                std::to_string(model.n_features) +
                                " features exceed the qubit cap; use the exact backend");
        const Assignment evidence = sample_evidence(sample);
        for (std::size_t i = 0; i < k; ++i) {
            EncodedNetwork enc = encode_network(model.networks[i], cfg.qubit_cap);
            EvidencePattern pattern = restrict_missing(evidence, enc);
            AmplitudeEstimate est =
                estimate_amplitude(enc, pattern, cfg, seed * 0x9e3779b9ULL + i);
            pred.scores[i] = est.a_hat > 0.0 && model.priors[i] > 0.0
                                 ? std::log(model.priors[i]) + std::log(est.a_hat)
                                 : kNegInf;
        }
    }
    // argmax; class_names are sorted, so the first max wins ties by name order
    std::size_t best = 0;
    for (std::size_t i = 1; i < k; ++i)
        if (pred.scores[i] > pred.scores[best]) best = i;
    pred.label = model.class_names[best];
    return pred;
}

EvaluationReport evaluate(const ClassifierModel& model,
                          const std::vector<LabeledSample>& data, Backend backend,
                          const std::optional<QaeConfig>& qcfg, std::uint64_t seed,
                          int threads) {
    if (data.empty()) throw EmptySampleSet("no evaluation data");
    const std::size_t k = model.class_names.size();
    EvaluationReport report;
    report.confusion.class_names = model.class_names;
    report.confusion.counts.assign(k, std::vector<long long>(k, 0));
    report.total = static_cast<long long>(data.size());

    std::vector<int> predicted(data.size());
    const int n_workers = std::max(1, threads);
    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            Prediction p = classify(model, data[s], backend, qcfg, seed + s);
            predicted[s] = model.class_index(p.label);
        }
    };
    if (n_workers == 1 || data.size() < 2) {
        worker(0, data.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (data.size() + n_workers - 1) / n_workers;
        for (int w = 0; w < n_workers; ++w) {
            std::size_t begin = w * chunk;
            if (begin >= data.size()) break;
            pool.emplace_back(worker, begin, std::min(begin + chunk, data.size()));
        }
        for (auto& t : pool) t.join();
    }

    long long correct = 0;
    for (std::size_t s = 0; s < data.size(); ++s) {
        int truth = model.class_index(data[s].label);
        ++report.confusion.counts[truth][predicted[s]];
        if (truth == predicted[s]) ++correct;
    }
    report.accuracy = static_cast<double>(correct) / static_cast<double>(report.total);
    report.precision.assign(k, 0.0);
    report.recall.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        long long row = 0, col = 0;
        for (std::size_t j = 0; j < k; ++j) {
            row += report.confusion.counts[i][j];
            col += report.confusion.counts[j][i];
        }
        report.recall[i] =
            row > 0 ? static_cast<double>(report.confusion.counts[i][i]) / row : 0.0;
        report.precision[i] =
            col > 0 ? static_cast<double>(report.confusion.counts[i][i]) / col : 0.0;
    }
    return report;
}

std::string to_model_json(const ClassifierModel& model) {
    nlohmann::json j;
    j["format"] = "MODEL-JSON v1";
    j["n_features"] = model.n_features;
    j["alpha"] = model.alpha;
    j["classes"] = nlohmann::json::array();
    for (std::size_t i = 0; i < model.class_names.size(); ++i) {
        nlohmann::json jc;
        jc["name"] = model.class_names[i];
        jc["prior"] = model.priors[i];
        jc["samples"] = model.sample_counts.empty() ? 0 : model.sample_counts[i];
        jc["network"] = nlohmann::json::parse(to_bn_json(model.networks[i]));
        j["classes"].push_back(jc);
    }
    return j.dump(2);
}

ClassifierModel from_model_json(const std::string& text) {
    ClassifierModel model;
    try {
        const nlohmann::json j = nlohmann::json::parse(text);
        model.n_features = j.at("n_features").get<int>();
        model.alpha = j.at("alpha").get<double>();
        for (const auto& jc : j.at("classes")) {
            model.class_names.push_back(jc.at("name").get<std::string>());
            model.priors.push_back(jc.at("prior").get<double>());
            model.sample_counts.push_back(jc.value("samples", 0LL));
            model.networks.push_back(from_bn_json(jc.at("network").dump()));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("MODEL-JSON: ") + e.what());
    }
    double total = 0.0;
    for (double p : model.priors) total += p;
    if (std::abs(total - 1.0) > 1e-9) throw ParseError("MODEL-JSON: priors do not sum to 1");
    return model;
}

void save_model(const ClassifierModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    out << to_model_json(model) << '\n';
}

ClassifierModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_model_json(ss.str());
}

}  // namespace qwbm
