#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "qwbm/classifier.hpp"
#include "qwbm/qsim.hpp"
#include "qwbm/wbm.hpp"
#include "test_util.hpp"

using namespace qwbm;

namespace {

// Two clearly separated classes on n features: class A is biased toward
// all-zeros, class B toward all-ones.
std::vector<LabeledSample> biased_training_data(int n, int per_class,
                                                std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<LabeledSample> data;
    for (int c = 0; c < 2; ++c) {
        const double p1 = c == 0 ? 0.15 : 0.85;
        for (int s = 0; s < per_class; ++s) {
            LabeledSample sample;
            sample.bits.resize(n);
            for (auto& b : sample.bits) b = unif(rng) < p1 ? 1 : 0;
            sample.label = c == 0 ? "A" : "B";
            data.push_back(sample);
        }
    }
    return data;
}

}  // namespace

TEST_CASE("train keeps class names sorted and defaults to uniform priors") {
    std::mt19937_64 rng(3);
    auto data = biased_training_data(6, 30, rng);
    for (auto& s : data)
        if (s.label == "A") s.label = "Zed";  // force unsorted input order
    const auto model = train(data, 1.0, PriorsMode::Uniform);
    CHECK(model.class_names == std::vector<std::string>{"B", "Zed"});
    CHECK(model.priors[0] == doctest::Approx(0.5));
    CHECK(model.priors[1] == doctest::Approx(0.5));
    CHECK(model.n_features == 6);
    for (const auto& net : model.networks) CHECK(net.max_indegree() <= 1);
}

TEST_CASE("train computes empirical priors over the nine-label set") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<LabeledSample> data;
    for (int c = 0; c < 9; ++c) {
        const int count = 10 + 5 * c;
        for (int s = 0; s < count; ++s) {
            LabeledSample sample;
            sample.bits.resize(4);
            for (auto& b : sample.bits) b = unif(rng) < 0.5 ? 1 : 0;
            sample.label = label_name(static_cast<DefectLabel>(c));
            data.push_back(sample);
        }
    }
    const auto model = train(data, 1.0, PriorsMode::Empirical);
    REQUIRE(model.class_names.size() == 9);
    double total = 0.0;
    for (std::size_t i = 0; i < 9; ++i) {
        CHECK(model.priors[i] ==
              doctest::Approx(static_cast<double>(model.sample_counts[i]) /
                              static_cast<double>(data.size())));
        total += model.priors[i];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("train raises MissingClass on single-class empirical data") {
    std::mt19937_64 rng(7);
    auto data = biased_training_data(4, 20, rng);
    data.erase(std::remove_if(data.begin(), data.end(),
                              [](const LabeledSample& s) { return s.label == "B"; }),
               data.end());
    for (auto& s : data) s.label = "Normal";
    CHECK_THROWS_AS(train(data, 1.0, PriorsMode::Empirical), MissingClass);
}

TEST_CASE("train validates explicit priors") {
    std::mt19937_64 rng(11);
    const auto data = biased_training_data(4, 20, rng);
    CHECK_THROWS_AS(train(data, 1.0, PriorsMode::Explicit, {0.3, 0.3}), InvalidConfig);
    const auto model = train(data, 1.0, PriorsMode::Explicit, {0.25, 0.75});
    CHECK(model.priors == std::vector<double>{0.25, 0.75});
}

TEST_CASE("log_likelihood returns -infinity on impossible samples") {
    std::mt19937_64 rng(13);
    auto data = biased_training_data(3, 20, rng);
    for (auto& s : data) s.bits = s.label == "A" ? std::vector<std::uint8_t>{0, 0, 0}
                                                 : std::vector<std::uint8_t>{1, 1, 1};
    const auto model = train(data, 0.0, PriorsMode::Uniform);
    LabeledSample probe;
    probe.bits = {1, 0, 1};
    CHECK(log_likelihood(model, 0, probe) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("log_likelihood of a fully missing sample is 0") {
    std::mt19937_64 rng(17);
    const auto model = train(biased_training_data(5, 30, rng), 1.0, PriorsMode::Uniform);
    LabeledSample probe;
    probe.bits.assign(5, 0);
    probe.missing.assign(5, 1);
    CHECK(log_likelihood(model, 0, probe) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(log_likelihood(model, 1, probe) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("exp(log_likelihood) equals the encoded-state amplitude") {
    std::mt19937_64 rng(19);
    const auto model = train(biased_training_data(8, 60, rng), 1.0, PriorsMode::Uniform);
    for (int trial = 0; trial < 20; ++trial) {
        LabeledSample probe;
        probe.bits.resize(8);
        for (auto& b : probe.bits) b = rng() & 1;
        for (int c = 0; c < 2; ++c) {
            const auto enc = encode_network(model.networks[c]);
            EvidencePattern p;
            for (int v = 0; v < 8; ++v)
                p.pairs.emplace_back(enc.var_to_qubit[v], probe.bits[v]);
            CHECK(std::exp(log_likelihood(model, c, probe)) ==
                  doctest::Approx(measure_amplitude(enc.state, p)).epsilon(1e-10));
        }
    }
}

TEST_CASE("classify finds the generating class of biased samples") {
    std::mt19937_64 rng(23);
    const auto model = train(biased_training_data(8, 100, rng), 1.0, PriorsMode::Uniform);
    LabeledSample zeros, ones;
    zeros.bits.assign(8, 0);
    ones.bits.assign(8, 1);
    CHECK(classify(model, zeros).label == "A");
    CHECK(classify(model, ones).label == "B");
}

TEST_CASE("classify breaks exact ties by class-name order") {
    std::mt19937_64 rng(29);
    auto data = biased_training_data(4, 30, rng);
    // Give both labels identical sample sets so the networks coincide.
    std::vector<LabeledSample> mirrored;
    for (const auto& s : data) {
        LabeledSample t = s;
        t.label = s.label == "A" ? "B" : "A";
        mirrored.push_back(s);
        mirrored.push_back(t);
    }
    const auto model = train(mirrored, 1.0, PriorsMode::Uniform);
    LabeledSample probe;
    probe.bits.assign(4, 1);
    CHECK(classify(model, probe).label == "A");
}

TEST_CASE("quantum backend agrees with the exact backend") {
    std::mt19937_64 rng(31);
    const auto model = train(biased_training_data(8, 100, rng), 1.0, PriorsMode::Uniform);
    QaeConfig cfg;
    cfg.epsilon = 0.1;
    cfg.delta = 0.05;
    cfg.a_min = 1e-6;
    int agree = 0;
    const int trials = 40;
    for (int t = 0; t < trials; ++t) {
        LabeledSample probe;
        probe.bits.resize(8);
        for (auto& b : probe.bits) b = rng() & 1;
        const auto exact = classify(model, probe, Backend::Exact);
        const auto quantum = classify(model, probe, Backend::Quantum, cfg, 1000 + t);
        if (exact.label == quantum.label) ++agree;
    }
    CHECK(agree >= trials * 95 / 100);
}

TEST_CASE("quantum backend refuses feature counts beyond the cap") {
    std::mt19937_64 rng(37);
    const auto model = train(biased_training_data(8, 40, rng), 1.0, PriorsMode::Uniform);
    QaeConfig cfg;
    cfg.qubit_cap = 6;
    LabeledSample probe;
    probe.bits.assign(8, 0);
    CHECK_THROWS_AS(classify(model, probe, Backend::Quantum, cfg), TooManyQubits);
}

TEST_CASE("classification with a mask matches explicit marginalization") {
    std::mt19937_64 rng(41);
    const auto model = train(biased_training_data(6, 80, rng), 1.0, PriorsMode::Uniform);
    for (int trial = 0; trial < 50; ++trial) {
        LabeledSample probe;
        probe.bits.resize(6);
        probe.missing.resize(6);
        for (int i = 0; i < 6; ++i) {
            probe.bits[i] = rng() & 1;
            probe.missing[i] = rng() % 3 == 0 ? 1 : 0;
        }
        const auto masked = classify(model, probe);

        // Oracle: marginalize the missing bits by explicit enumeration.
        std::string best;
        double best_score = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < model.class_names.size(); ++c) {
            double p = 0.0;
            for (std::size_t comp = 0; comp < 64; ++comp) {
                std::vector<int> bits(6);
                bool ok = true;
                for (int i = 0; i < 6; ++i) {
                    bits[i] = static_cast<int>((comp >> i) & 1);
                    if (!probe.missing[i] && bits[i] != probe.bits[i]) ok = false;
                }
                if (ok) p += testutil::oracle_joint(model.networks[c], bits);
            }
            const double score = std::log(model.priors[c]) + std::log(p);
            // Strictly-greater keeps the first class on ulp-level ties, matching
            // the classifier's deterministic tie-break.
            if (score > best_score + 1e-12) {
                best_score = score;
                best = model.class_names[c];
            }
        }
        CHECK(masked.label == best);
    }
}

TEST_CASE("evaluate produces a diagonal confusion matrix on easy data") {
    std::mt19937_64 rng(43);
    const auto model = train(biased_training_data(8, 100, rng), 1.0, PriorsMode::Uniform);
    std::vector<LabeledSample> easy;
    LabeledSample zeros, ones;
    zeros.bits.assign(8, 0);
    zeros.label = "A";
    ones.bits.assign(8, 1);
    ones.label = "B";
    for (int i = 0; i < 5; ++i) {
        easy.push_back(zeros);
        easy.push_back(ones);
    }
    const auto report = evaluate(model, easy);
    CHECK(report.accuracy == 1.0);
    CHECK(report.confusion.counts[0][0] == 5);
    CHECK(report.confusion.counts[1][1] == 5);
    CHECK(report.confusion.counts[0][1] == 0);
    CHECK(report.confusion.counts[1][0] == 0);
    CHECK(report.precision == std::vector<double>{1.0, 1.0});
    CHECK(report.recall == std::vector<double>{1.0, 1.0});
}

TEST_CASE("evaluate on a single correct sample scores accuracy 1") {
    std::mt19937_64 rng(47);
    const auto model = train(biased_training_data(6, 50, rng), 1.0, PriorsMode::Uniform);
    LabeledSample zeros;
    zeros.bits.assign(6, 0);
    zeros.label = "A";
    CHECK(evaluate(model, {zeros}).accuracy == 1.0);
}

TEST_CASE("evaluate is identical across thread counts") {
    std::mt19937_64 rng(53);
    const auto model = train(biased_training_data(6, 60, rng), 1.0, PriorsMode::Uniform);
    std::vector<LabeledSample> data;
    for (int i = 0; i < 40; ++i) {
        LabeledSample s;
        s.bits.resize(6);
        for (auto& b : s.bits) b = rng() & 1;
        s.label = i % 2 ? "A" : "B";
        data.push_back(s);
    }
    const auto one = evaluate(model, data, Backend::Exact, {}, 0, 1);
    const auto four = evaluate(model, data, Backend::Exact, {}, 0, 4);
    CHECK(one.accuracy == four.accuracy);
    CHECK(one.confusion.counts == four.confusion.counts);
}

TEST_CASE("MODEL-JSON round trip preserves the model") {
    std::mt19937_64 rng(59);
    const auto model = train(biased_training_data(5, 40, rng), 1.0, PriorsMode::Uniform);
    const auto back = from_model_json(to_model_json(model));
    CHECK(back.class_names == model.class_names);
    CHECK(back.priors == model.priors);
    CHECK(back.n_features == model.n_features);
    CHECK(back.sample_counts == model.sample_counts);
    for (std::size_t c = 0; c < model.networks.size(); ++c)
        CHECK(to_bn_json(back.networks[c]) == to_bn_json(model.networks[c]));

    const std::string path = "/tmp/qwbm_test_model.json";
    save_model(model, path);
    const auto loaded = load_model(path);
    CHECK(to_model_json(loaded) == to_model_json(model));
    std::remove(path.c_str());
}
