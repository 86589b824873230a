// qwbm command-line tool: dataset ingestion, training, classification,
// posterior inference, evaluation, estimation benchmarking, and encoder
// verification. Exit codes: 0 success, 2 validation error, 3 runtime fault.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qwbm/bayesnet.hpp"
#include "qwbm/chowliu.hpp"
#include "qwbm/classifier.hpp"
#include "qwbm/errors.hpp"
#include "qwbm/qae.hpp"
#include "qwbm/qbi.hpp"
#include "qwbm/qsim.hpp"
#include "qwbm/wbm.hpp"

using nlohmann::json;
using namespace qwbm;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 0;
    int threads = 1;
    int qubit_cap = kDefaultQubitCap;
    std::string output_dir = ".";
};

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    return dir.back() == '/' ? dir + name : dir + "/" + name;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    out << text;
}

// Report envelope: config and seeds embedded for reproducibility, the
// timestamp kept in its own field so content can be hashed without it.
void emit_report(const std::string& command, const GlobalOpts& g, json config,
                 json results) {
    config["seed"] = g.seed;
    config["threads"] = g.threads;
    config["qubit_cap"] = g.qubit_cap;
    config["output_dir"] = g.output_dir;
    json report;
    report["command"] = command;
    report["config"] = config;
    report["results"] = std::move(results);
    report["timestamp"] = timestamp_now();
    std::cout << report.dump(2) << '\n';
}

std::vector<std::pair<NodeId, int>> parse_evidence_spec(const std::string& text) {
    std::vector<std::pair<NodeId, int>> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw InvalidConfig("evidence entry '" + item + "' is not idx=bit");
        try {
            const int idx = std::stoi(item.substr(0, eq));
            const int bit = std::stoi(item.substr(eq + 1));
            if (bit != 0 && bit != 1) throw InvalidConfig("evidence bit must be 0 or 1");
            out.emplace_back(idx, bit);
        } catch (const std::logic_error&) {
            throw InvalidConfig("bad evidence entry '" + item + "'");
        }
    }
    return out;
}

std::vector<NodeId> parse_index_list(const std::string& text) {
    std::vector<NodeId> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::logic_error&) {
            throw InvalidConfig("bad index '" + item + "'");
        }
    }
    return out;
}

std::vector<LabeledSample> to_labeled(const std::vector<FlatSample>& flats,
                                      bool require_labels) {
    std::vector<LabeledSample> out;
    out.reserve(flats.size());
    for (const FlatSample& f : flats) {
        if (require_labels && !f.label)
            throw ValidationError("sample without a label where one is required");
        out.push_back({f.bits, {}, f.label ? label_name(*f.label) : std::string()});
    }
    return out;
}

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// A single-variable network with P(X=1)=a, used as the benchmark plant.
BayesianNetwork bench_network(double a) {
    BayesianNetwork net;
    net.n_vars = 1;
    net.cpts.resize(1);
    net.cpts[0].rows = {{1.0 - a, a}};
    return net;
}

int cmd_ingest(const GlobalOpts& g, const std::vector<std::string>& inputs,
               const std::string& format, const std::string& output) {
    std::vector<FlatSample> rows;
    BivalueStats stats;
    for (const std::string& path : inputs) {
        if (format == "wbm") {
            for (const RawWaferMap& raw : parse_wbm_txt(path))
                rows.push_back(flatten(compress(bivalue(raw, &stats)), raw.label));
        } else if (format == "flat") {
            const auto extra = parse_flat_csv(path);
            rows.insert(rows.end(), extra.begin(), extra.end());
        } else {
            throw InvalidConfig("format must be wbm or flat");
        }
    }
    const std::string out_path = join_path(g.output_dir, output);
    write_flat_csv(out_path, rows);

    std::map<std::string, long long> counts;
    for (const FlatSample& r : rows)
        if (r.label) ++counts[label_name(*r.label)];
    json results;
    results["rows"] = rows.size();
    results["output"] = out_path;
    results["per_class_counts"] = counts;
    results["maps_without_defects"] = stats.maps_without_defects;
    emit_report("ingest", g, json{{"inputs", inputs}, {"format", format}}, results);
    return 0;
}

int cmd_train(const GlobalOpts& g, const std::string& data_path, double alpha,
              const std::string& priors, const std::vector<double>& explicit_priors,
              double split, std::uint64_t split_seed, const std::string& model_out,
              const std::string& holdout_out) {
    if (split <= 0.0 || split > 1.0) throw InvalidConfig("split must be in (0, 1]");
    const auto all = to_labeled(parse_flat_csv(data_path), true);
    if (all.empty()) throw EmptySampleSet("no samples in " + data_path);

    // Stratified split: per class, shuffle row indices with split_seed and
    // take the first round(n * split) rows for training.
    std::map<std::string, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < all.size(); ++i) by_class[all[i].label].push_back(i);
    std::vector<LabeledSample> train_fold, held_out;
    json manifest;
    manifest["split"] = split;
    manifest["split_seed"] = split_seed;
    for (auto& [name, idx] : by_class) {
        std::mt19937_64 rng(split_seed ^ std::hash<std::string>{}(name));
        std::shuffle(idx.begin(), idx.end(), rng);
        const std::size_t n_train =
            static_cast<std::size_t>(std::llround(split * static_cast<double>(idx.size())));
        std::vector<std::size_t> tr(idx.begin(), idx.begin() + n_train);
        std::vector<std::size_t> ho(idx.begin() + n_train, idx.end());
        std::sort(tr.begin(), tr.end());
        std::sort(ho.begin(), ho.end());
        for (std::size_t i : tr) train_fold.push_back(all[i]);
        for (std::size_t i : ho) held_out.push_back(all[i]);
        manifest["classes"][name] = {{"train_rows", tr}, {"held_out_rows", ho}};
    }

    PriorsMode mode;
    if (priors == "uniform") mode = PriorsMode::Uniform;
    else if (priors == "empirical") mode = PriorsMode::Empirical;
    else if (priors == "explicit") mode = PriorsMode::Explicit;
    else throw InvalidConfig("priors must be uniform, empirical, or explicit");

    ClassifierModel model = train(train_fold, alpha, mode, explicit_priors);
    const std::string model_path = join_path(g.output_dir, model_out);
    save_model(model, model_path);
    const std::string manifest_path = join_path(g.output_dir, "split_manifest.json");
    write_text(manifest_path, manifest.dump(2) + "\n");

    json results;
    results["model"] = model_path;
    results["manifest"] = manifest_path;
    results["classes"] = model.class_names;
    results["train_rows"] = train_fold.size();
    results["held_out_rows"] = held_out.size();
    if (!held_out.empty()) {
        std::vector<FlatSample> ho_flat;
        for (const LabeledSample& s : held_out)
            ho_flat.push_back({s.bits, label_from_name(s.label)});
        const std::string ho_path = join_path(g.output_dir, holdout_out);
        write_flat_csv(ho_path, ho_flat);
        results["held_out_file"] = ho_path;
    }
    emit_report("train", g,
                json{{"data", data_path},
                     {"alpha", alpha},
                     {"priors", priors},
                     {"split", split},
                     {"split_seed", split_seed}},
                results);
    return 0;
}

QaeConfig quantum_config(const GlobalOpts& g, double epsilon, double delta,
                         double a_min, const std::string& path) {
    QaeConfig cfg;
    cfg.epsilon = epsilon;
    cfg.delta = delta;
    cfg.a_min = a_min;
    cfg.qubit_cap = g.qubit_cap;
    if (path == "auto") cfg.path = QpePath::Auto;
    else if (path == "repeated") cfg.path = QpePath::Repeated;
    else if (path == "spectral") cfg.path = QpePath::Spectral;
    else throw InvalidConfig("path must be auto, repeated, or spectral");
    return cfg;
}

int cmd_classify(const GlobalOpts& g, const std::string& model_path,
                 const std::string& input, const std::string& backend, double epsilon,
                 double delta, double a_min, const std::string& path) {
    const ClassifierModel model = load_model(model_path);
    const auto samples = to_labeled(parse_flat_csv(input), false);
    const Backend be = backend == "quantum" ? Backend::Quantum : Backend::Exact;
    std::optional<QaeConfig> qcfg;
    if (be == Backend::Quantum) qcfg = quantum_config(g, epsilon, delta, a_min, path);

    json preds = json::array();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const Prediction p = classify(model, samples[i], be, qcfg, g.seed + i);
        preds.push_back({{"row", i}, {"label", p.label}, {"scores", p.scores}});
    }
    json results;
    results["classes"] = model.class_names;
    results["predictions"] = preds;
    emit_report("classify", g,
                json{{"model", model_path},
                     {"input", input},
                     {"backend", backend},
                     {"epsilon", epsilon},
                     {"delta", delta},
                     {"a_min", a_min}},
                results);
    return 0;
}

int cmd_infer(const GlobalOpts& g, const std::string& network_path,
              const std::string& evidence_spec, const std::string& targets_spec,
              double epsilon, double delta, double a_min, const std::string& backend,
              const std::string& path) {
    const BayesianNetwork net = load_network(network_path);
    const auto evidence_pairs = parse_evidence_spec(evidence_spec);
    const auto targets = parse_index_list(targets_spec);

    json results;
    if (backend == "exact") {
        Assignment evidence = Assignment::all_missing(net.n_vars);
        for (const auto& [var, bit] : evidence_pairs) evidence.set(var, bit);
        const Posterior post = exact_posterior(net, evidence, targets);
        results["targets"] = post.targets;
        results["probs"] = post.probs;
    } else if (backend == "quantum") {
        const EncodedNetwork enc = encode_network(net, g.qubit_cap);
        InferenceRequest req;
        req.evidence = evidence_pairs;
        req.targets = targets;
        req.epsilon = epsilon;
        req.delta = delta;
        req.a_min_evidence = a_min;
        req.seed = g.seed;
        req.qubit_cap = g.qubit_cap;
        if (path == "repeated") req.path = QpePath::Repeated;
        else if (path == "spectral") req.path = QpePath::Spectral;
        else if (path == "auto") req.path = QpePath::Auto;
        else throw InvalidConfig("path must be auto, repeated, or spectral");
        const EstimatedPosterior post = infer_posterior(enc, req);
        results["targets"] = post.targets;
        results["probs"] = post.probs;
        results["normalized"] = post.normalized();
        results["total_grover_calls"] = post.total_grover_calls;
        json diags = json::array();
        for (const EntryDiagnostics& d : post.diagnostics)
            diags.push_back({{"numerator", d.numerator},
                             {"denominator", d.denominator},
                             {"grover_calls", d.grover_calls}});
        results["diagnostics"] = diags;
    } else {
        throw InvalidConfig("backend must be exact or quantum");
    }
    emit_report("infer", g,
                json{{"network", network_path},
                     {"evidence", evidence_spec},
                     {"targets", targets_spec},
                     {"epsilon", epsilon},
                     {"delta", delta},
                     {"a_min", a_min},
                     {"backend", backend}},
                results);
    return 0;
}

int cmd_evaluate(const GlobalOpts& g, const std::string& model_path,
                 const std::string& data_path, const std::string& backend,
                 double epsilon, double delta, double a_min, const std::string& path) {
    const ClassifierModel model = load_model(model_path);
    const auto samples = to_labeled(parse_flat_csv(data_path), true);
    const Backend be = backend == "quantum" ? Backend::Quantum : Backend::Exact;
    std::optional<QaeConfig> qcfg;
    if (be == Backend::Quantum) qcfg = quantum_config(g, epsilon, delta, a_min, path);

    const EvaluationReport rep = evaluate(model, samples, be, qcfg, g.seed, g.threads);

    std::ostringstream csv;
    csv << "true\\pred";
    for (const std::string& n : rep.confusion.class_names) csv << ',' << n;
    csv << '\n';
    for (std::size_t i = 0; i < rep.confusion.class_names.size(); ++i) {
        csv << rep.confusion.class_names[i];
        for (long long c : rep.confusion.counts[i]) csv << ',' << c;
        csv << '\n';
    }
    const std::string csv_path = join_path(g.output_dir, "confusion.csv");
    write_text(csv_path, csv.str());

    json results;
    results["accuracy"] = rep.accuracy;
    results["total"] = rep.total;
    results["precision"] = rep.precision;
    results["recall"] = rep.recall;
    results["classes"] = rep.confusion.class_names;
    results["confusion_csv"] = csv_path;
    emit_report("evaluate", g,
                json{{"model", model_path},
                     {"data", data_path},
                     {"backend", backend},
                     {"epsilon", epsilon},
                     {"delta", delta},
                     {"a_min", a_min}},
                results);
    return 0;
}

int cmd_qae_bench(const GlobalOpts& g, std::vector<double> a_grid,
                  std::vector<double> eps_grid, double delta,
                  const std::string& output) {
    for (double a : a_grid)
        if (a <= 0.0 || a > 1.0) throw InvalidConfig("a values must be in (0, 1]");
    for (double e : eps_grid)
        if (e <= 0.0 || e >= 1.0 / 3.0) throw InvalidConfig("epsilon values must be in (0, 1/3)");

    std::ostringstream csv;
    csv << "a_true,epsilon,delta,m,T,J,a_hat,rel_err,grover_calls,"
           "classical_attempts_baseline,priorwork_calls\n";
    struct Row {
        double a, eps;
        long long grover, classical, priorwork;
    };
    std::vector<Row> measured;
    for (double a : a_grid) {
        const BayesianNetwork net = bench_network(a);
        const EncodedNetwork enc = encode_network(net, g.qubit_cap);
        const EvidencePattern pattern{{{0, 1}}};
        for (double eps : eps_grid) {
            QaeConfig cfg;
            cfg.epsilon = eps;
            cfg.delta = delta;
            cfg.a_min = a;
            cfg.qubit_cap = g.qubit_cap;
            const AmplitudeEstimate est = estimate_amplitude(enc, pattern, cfg, g.seed);
            const double rel_err = std::abs(est.a_hat - a) / a;

            // Classical baseline: rejection sampling until the Hoeffding
            // sample count for (eps, delta) is accepted, attempts counted.
            const long long n_accepted = static_cast<long long>(
                std::ceil(std::log(2.0 / delta) / (2.0 * eps * eps)));
            const auto [post, stats] = forward_sample_posterior(
                net, Assignment::observed({1}), {0}, n_accepted, g.seed);
            (void)post;

            // Prior-work schedule: one amplified preparation per sample at
            // ceil(pi / (4 sqrt(a))) Grover applications each.
            const long long k_amp =
                static_cast<long long>(std::ceil(M_PI / (4.0 * std::sqrt(a))));
            const long long priorwork = n_accepted * k_amp;

            csv << a << ',' << eps << ',' << delta << ',' << est.grover_power << ','
                << est.t_ancillas << ',' << est.runs << ',' << est.a_hat << ','
                << rel_err << ',' << est.total_grover_calls << ',' << stats.attempts
                << ',' << priorwork << '\n';
            measured.push_back({a, eps, est.total_grover_calls, stats.attempts, priorwork});
        }
    }
    const std::string csv_path = join_path(g.output_dir, output);
    write_text(csv_path, csv.str());

    json results;
    results["csv"] = csv_path;
    results["rows"] = measured.size();
    if (a_grid.size() >= 2) {
        std::vector<double> xs, q, c, p;
        for (const Row& r : measured)
            if (r.eps == eps_grid.front()) {
                xs.push_back(r.a);
                q.push_back(static_cast<double>(r.grover));
                c.push_back(static_cast<double>(r.classical));
                p.push_back(static_cast<double>(r.priorwork));
            }
        results["slope_vs_a"] = {{"quantum", loglog_slope(xs, q)},
                                 {"classical", loglog_slope(xs, c)},
                                 {"priorwork", loglog_slope(xs, p)}};
    }
    if (eps_grid.size() >= 2) {
        std::vector<double> xs, q, c;
        for (const Row& r : measured)
            if (r.a == a_grid.front()) {
                xs.push_back(1.0 / r.eps);
                q.push_back(static_cast<double>(r.grover));
                c.push_back(static_cast<double>(r.classical));
            }
        results["slope_vs_inv_epsilon"] = {{"quantum", loglog_slope(xs, q)},
                                           {"classical", loglog_slope(xs, c)}};
    }
    emit_report("qae-bench", g,
                json{{"a_grid", a_grid}, {"epsilon_grid", eps_grid}, {"delta", delta}},
                results);
    return 0;
}

int cmd_encode_verify(const GlobalOpts& g, const std::string& network_path, int max_n) {
    const BayesianNetwork net = load_network(network_path);
    if (max_n > g.qubit_cap) max_n = g.qubit_cap;
    if (net.n_vars > max_n)
        throw TooManyQubits("network has " + std::to_string(net.n_vars) +
                            " variables, limit " + std::to_string(max_n));
    const EncodedNetwork enc = encode_network(net, g.qubit_cap);

    double max_diff = 0.0;
    const std::size_t dim = enc.state.amps.size();
    Assignment a = Assignment::all_missing(net.n_vars);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        for (int q = 0; q < net.n_vars; ++q)
            a.set(enc.order[q], static_cast<int>((idx >> q) & 1));
        const double amp_sq = std::norm(enc.state.amps[idx]);
        max_diff = std::max(max_diff, std::abs(amp_sq - joint_probability(net, a)));
    }
    const bool pass = max_diff <= 1e-10;
    json results;
    results["max_abs_diff"] = max_diff;
    results["pass"] = pass;
    results["n_vars"] = net.n_vars;
    emit_report("encode-verify", g, json{{"network", network_path}, {"max_n", max_n}},
                results);
    return pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tree Bayesian network wafer-map toolkit"};
    app.require_subcommand(1);

    GlobalOpts g;
    if (const char* env = std::getenv("QWBM_THREADS")) g.threads = std::atoi(env);
    if (g.threads < 1) g.threads = 1;
    app.add_option("--seed", g.seed, "base RNG seed");
    app.add_option("--threads", g.threads, "worker thread count (env QWBM_THREADS)");
    app.add_option("--qubit-cap", g.qubit_cap, "statevector qubit limit");
    app.add_option("--output-dir", g.output_dir, "directory for emitted files");

    auto* ingest = app.add_subcommand("ingest", "raw maps to FLAT-CSV");
    std::vector<std::string> in_paths;
    std::string in_format = "wbm", in_output = "flat.csv";
    ingest->add_option("inputs", in_paths, "input files")->required();
    ingest->add_option("--format", in_format, "wbm or flat");
    ingest->add_option("--output", in_output, "output FLAT-CSV name");

    auto* tr = app.add_subcommand("train", "fit per-class tree networks");
    std::string tr_data, tr_priors = "uniform", tr_model = "model.json",
                tr_holdout = "holdout.csv";
    double tr_alpha = 1.0, tr_split = 0.8;
    std::uint64_t tr_split_seed = 0;
    std::vector<double> tr_explicit;
    tr->add_option("--data", tr_data, "FLAT-CSV training file")->required();
    tr->add_option("--alpha", tr_alpha, "smoothing pseudo-count");
    tr->add_option("--priors", tr_priors, "uniform, empirical, or explicit");
    tr->add_option("--prior", tr_explicit, "explicit per-class priors (sorted by name)");
    tr->add_option("--split", tr_split, "training fraction, stratified");
    tr->add_option("--split-seed", tr_split_seed, "shuffle seed for the split");
    tr->add_option("--model", tr_model, "output MODEL-JSON name");
    tr->add_option("--holdout", tr_holdout, "output held-out FLAT-CSV name");

    auto* cl = app.add_subcommand("classify", "predict labels for samples");
    std::string cl_model, cl_input, cl_backend = "exact", cl_path = "auto";
    double cl_eps = 0.1, cl_delta = 0.1, cl_amin = 1e-6;
    cl->add_option("--model", cl_model)->required();
    cl->add_option("--input", cl_input, "FLAT-CSV samples")->required();
    cl->add_option("--backend", cl_backend, "exact or quantum");
    cl->add_option("--epsilon", cl_eps);
    cl->add_option("--delta", cl_delta);
    cl->add_option("--a-min", cl_amin);
    cl->add_option("--path", cl_path, "auto, repeated, or spectral");

    auto* inf = app.add_subcommand("infer", "posterior over target variables");
    std::string inf_net, inf_ev, inf_tg, inf_backend = "exact", inf_path = "auto";
    double inf_eps = 0.1, inf_delta = 0.1, inf_amin = 0.1;
    inf->add_option("--network", inf_net, "BN-JSON file")->required();
    inf->add_option("--evidence", inf_ev, "idx=bit,... pairs");
    inf->add_option("--targets", inf_tg, "idx,... list")->required();
    inf->add_option("--epsilon", inf_eps);
    inf->add_option("--delta", inf_delta);
    inf->add_option("--a-min", inf_amin, "lower bound on the evidence probability");
    inf->add_option("--backend", inf_backend, "exact or quantum");
    inf->add_option("--path", inf_path, "auto, repeated, or spectral");

    auto* ev = app.add_subcommand("evaluate", "confusion matrix and accuracy");
    std::string ev_model, ev_data, ev_backend = "exact", ev_path = "auto";
    double ev_eps = 0.1, ev_delta = 0.1, ev_amin = 1e-6;
    ev->add_option("--model", ev_model)->required();
    ev->add_option("--data", ev_data, "labeled FLAT-CSV")->required();
    ev->add_option("--backend", ev_backend, "exact or quantum");
    ev->add_option("--epsilon", ev_eps);
    ev->add_option("--delta", ev_delta);
    ev->add_option("--a-min", ev_amin);
    ev->add_option("--path", ev_path, "auto, repeated, or spectral");

    auto* qb = app.add_subcommand("qae-bench", "estimation cost benchmark");
    std::vector<double> qb_a{0.25, 0.0625, 0.015625};
    std::vector<double> qb_eps{0.15};
    double qb_delta = 0.1;
    std::string qb_output = "qae_bench.csv";
    qb->add_option("--a-grid", qb_a, "true amplitudes to sweep");
    qb->add_option("--epsilon-grid", qb_eps, "error targets to sweep");
    qb->add_option("--delta", qb_delta);
    qb->add_option("--output", qb_output, "output CSV name");

    auto* evf = app.add_subcommand("encode-verify", "amp^2 vs joint probability");
    std::string evf_net;
    int evf_max_n = kDefaultQubitCap;
    evf->add_option("--network", evf_net, "BN-JSON file")->required();
    evf->add_option("--max-n", evf_max_n, "largest network size to accept");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*ingest) return cmd_ingest(g, in_paths, in_format, in_output);
        if (*tr)
            return cmd_train(g, tr_data, tr_alpha, tr_priors, tr_explicit, tr_split,
                             tr_split_seed, tr_model, tr_holdout);
        if (*cl)
            return cmd_classify(g, cl_model, cl_input, cl_backend, cl_eps, cl_delta,
                                cl_amin, cl_path);
        if (*inf)
            return cmd_infer(g, inf_net, inf_ev, inf_tg, inf_eps, inf_delta, inf_amin,
                             inf_backend, inf_path);
        if (*ev)
            return cmd_evaluate(g, ev_model, ev_data, ev_backend, ev_eps, ev_delta,
                                ev_amin, ev_path);
        if (*qb) return cmd_qae_bench(g, qb_a, qb_eps, qb_delta, qb_output);
        if (*evf) return cmd_encode_verify(g, evf_net, evf_max_n);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const RuntimeFault& e) {
        std::cerr << "runtime fault: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
