#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qwbm/bayesnet.hpp"
#include "qwbm/chowliu.hpp"
#include "qwbm/classifier.hpp"
#include "qwbm/qae.hpp"
#include "qwbm/qbi.hpp"
#include "qwbm/qsim.hpp"
#include "qwbm/wbm.hpp"

namespace py = pybind11;
using namespace qwbm;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Tree Bayesian networks, amplitude-estimation inference, and "
              "wafer-map classification.";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<RuntimeFault>(m, "RuntimeFault", PyExc_RuntimeError);

    // bayesnet
    py::class_<Cpt>(m, "Cpt")
        .def(py::init<>())
        .def_readwrite("parents", &Cpt::parents)
        .def_readwrite("rows", &Cpt::rows);
    py::class_<BayesianNetwork>(m, "BayesianNetwork")
        .def(py::init<>())
        .def_readwrite("n_vars", &BayesianNetwork::n_vars)
        .def_readwrite("cpts", &BayesianNetwork::cpts)
        .def("edges", &BayesianNetwork::edges)
        .def("max_indegree", &BayesianNetwork::max_indegree);
    py::class_<Assignment>(m, "Assignment")
        .def(py::init<>())
        .def_readwrite("values", &Assignment::values)
        .def_readwrite("missing", &Assignment::missing)
        .def_static("observed", &Assignment::observed)
        .def_static("all_missing", &Assignment::all_missing)
        .def("set", &Assignment::set)
        .def("clear", &Assignment::clear)
        .def("fully_observed", &Assignment::fully_observed);
    py::class_<Posterior>(m, "Posterior")
        .def_readonly("targets", &Posterior::targets)
        .def_readonly("probs", &Posterior::probs)
        .def("prob_of", &Posterior::prob_of);
    py::class_<SampleStats>(m, "SampleStats")
        .def_readonly("attempts", &SampleStats::attempts)
        .def_readonly("accepted", &SampleStats::accepted);

    m.def("validate_dag", &validate_dag);
    m.def("topological_sort", &topological_sort);
    m.def("joint_probability", &joint_probability);
    m.def("evidence_probability", &evidence_probability);
    m.def("exact_posterior", &exact_posterior);
    m.def("forward_sample_posterior", &forward_sample_posterior, py::arg("net"),
          py::arg("evidence"), py::arg("targets"), py::arg("n_accepted"),
          py::arg("seed"), py::arg("max_attempts") = 100'000'000LL);
    m.def("to_bn_json", &to_bn_json);
    m.def("from_bn_json", &from_bn_json);
    m.def("save_network", &save_network);
    m.def("load_network", &load_network);

    // chowliu
    py::class_<SampleSet>(m, "SampleSet")
        .def(py::init<>())
        .def_readwrite("samples", &SampleSet::samples)
        .def_readwrite("n_vars", &SampleSet::n_vars);
    m.def("correlation", &correlation);
    m.def("mutual_information_matrix", &mutual_information_matrix);
    m.def("chow_liu", &chow_liu, py::arg("samples"), py::arg("alpha") = 1.0,
          py::arg("root") = 0);
    m.def("kl_gap_terms", &kl_gap_terms);

    // qsim
    py::enum_<QpePath>(m, "QpePath")
        .value("Auto", QpePath::Auto)
        .value("Repeated", QpePath::Repeated)
        .value("Spectral", QpePath::Spectral);
    py::class_<StateVector>(m, "StateVector")
        .def_readonly("amps", &StateVector::amps)
        .def_readonly("n_qubits", &StateVector::n_qubits)
        .def("norm_sq", &StateVector::norm_sq);
    py::class_<Circuit>(m, "Circuit")
        .def_readonly("n_qubits", &Circuit::n_qubits)
        .def("gate_count", &Circuit::gate_count);
    py::class_<EvidencePattern>(m, "EvidencePattern")
        .def(py::init<>())
        .def_readwrite("pairs", &EvidencePattern::pairs);
    py::class_<EncodedNetwork>(m, "EncodedNetwork")
        .def_readonly("circuit", &EncodedNetwork::circuit)
        .def_readonly("state", &EncodedNetwork::state)
        .def_readonly("order", &EncodedNetwork::order)
        .def_readonly("var_to_qubit", &EncodedNetwork::var_to_qubit);
    m.def("encode_network", &encode_network, py::arg("net"),
          py::arg("qubit_cap") = kDefaultQubitCap);
    m.def("pattern_for", &pattern_for);
    m.def("measure_amplitude", &measure_amplitude);
    m.def("qpe_estimate", &qpe_estimate, py::arg("enc"), py::arg("pattern"),
          py::arg("t_ancillas"), py::arg("seed"), py::arg("path") = QpePath::Auto,
          py::arg("qubit_cap") = kDefaultQubitCap);
    m.def("to_qc_json", &to_qc_json);
    m.def("state_to_csv", &state_to_csv);

    // qae
    py::class_<QaeConfig>(m, "QaeConfig")
        .def(py::init<>())
        .def_readwrite("epsilon", &QaeConfig::epsilon)
        .def_readwrite("delta", &QaeConfig::delta)
        .def_readwrite("a_min", &QaeConfig::a_min)
        .def_readwrite("t_override", &QaeConfig::t_override)
        .def_readwrite("path", &QaeConfig::path)
        .def_readwrite("qubit_cap", &QaeConfig::qubit_cap);
    py::class_<AmplitudeEstimate>(m, "AmplitudeEstimate")
        .def_readonly("a_hat", &AmplitudeEstimate::a_hat)
        .def_readonly("runs", &AmplitudeEstimate::runs)
        .def_readonly("grover_power", &AmplitudeEstimate::grover_power)
        .def_readonly("t_ancillas", &AmplitudeEstimate::t_ancillas)
        .def_readonly("total_grover_calls", &AmplitudeEstimate::total_grover_calls);
    m.def("erf_inverse", &erf_inverse);
    m.def("grover_power", &grover_power);
    m.def("repetitions", &repetitions);
    m.def("ancilla_count", &ancilla_count);
    m.def("estimate_amplitude", &estimate_amplitude);
    m.def("query_count", &query_count);
    m.def("predicted_query_count", &predicted_query_count);

    // qbi
    py::class_<InferenceRequest>(m, "InferenceRequest")
        .def(py::init<>())
        .def_readwrite("evidence", &InferenceRequest::evidence)
        .def_readwrite("targets", &InferenceRequest::targets)
        .def_readwrite("epsilon", &InferenceRequest::epsilon)
        .def_readwrite("delta", &InferenceRequest::delta)
        .def_readwrite("a_min_evidence", &InferenceRequest::a_min_evidence)
        .def_readwrite("seed", &InferenceRequest::seed)
        .def_readwrite("path", &InferenceRequest::path)
        .def_readwrite("qubit_cap", &InferenceRequest::qubit_cap)
        .def_readwrite("a_min_numerator", &InferenceRequest::a_min_numerator);
    py::class_<EntryDiagnostics>(m, "EntryDiagnostics")
        .def_readonly("numerator", &EntryDiagnostics::numerator)
        .def_readonly("denominator", &EntryDiagnostics::denominator)
        .def_readonly("grover_calls", &EntryDiagnostics::grover_calls);
    py::class_<EstimatedPosterior>(m, "EstimatedPosterior")
        .def_readonly("targets", &EstimatedPosterior::targets)
        .def_readonly("probs", &EstimatedPosterior::probs)
        .def_readonly("diagnostics", &EstimatedPosterior::diagnostics)
        .def_readonly("total_grover_calls", &EstimatedPosterior::total_grover_calls)
        .def("normalized", &EstimatedPosterior::normalized);
    m.def("infer_posterior", &infer_posterior);
    m.def("restrict_missing", &restrict_missing);
    m.def("posterior_cost", &posterior_cost);

    // wbm
    py::enum_<DefectLabel>(m, "DefectLabel")
        .value("Normal", DefectLabel::Normal)
        .value("Center", DefectLabel::Center)
        .value("Doughnut", DefectLabel::Doughnut)
        .value("EdgeLoc", DefectLabel::EdgeLoc)
        .value("EdgeRing", DefectLabel::EdgeRing)
        .value("Loc", DefectLabel::Loc)
        .value("NearFull", DefectLabel::NearFull)
        .value("Scratch", DefectLabel::Scratch)
        .value("Random", DefectLabel::Random);
    m.def("label_name", &label_name, py::return_value_policy::copy);
    m.def("label_from_name", &label_from_name);
    py::class_<RawWaferMap>(m, "RawWaferMap")
        .def(py::init<>())
        .def_readwrite("grid", &RawWaferMap::grid)
        .def_readwrite("label", &RawWaferMap::label);
    py::class_<BinaryWaferMap>(m, "BinaryWaferMap")
        .def(py::init<>())
        .def_readwrite("grid", &BinaryWaferMap::grid);
    py::class_<CompressedMap>(m, "CompressedMap")
        .def(py::init<>())
        .def_readwrite("grid", &CompressedMap::grid);
    py::class_<FlatSample>(m, "FlatSample")
        .def(py::init<>())
        .def_readwrite("bits", &FlatSample::bits)
        .def_readwrite("label", &FlatSample::label);
    m.def("bivalue", [](const RawWaferMap& raw) { return bivalue(raw); });
    m.def("compress", &compress);
    m.def("flatten", &flatten, py::arg("compressed"),
          py::arg("label") = std::optional<DefectLabel>{});
    m.def("unflatten", &unflatten);
    m.def("parse_wbm_txt", &parse_wbm_txt);
    m.def("parse_flat_csv", &parse_flat_csv);
    m.def("write_flat_csv", &write_flat_csv);

    // classifier
    py::enum_<PriorsMode>(m, "PriorsMode")
        .value("Uniform", PriorsMode::Uniform)
        .value("Empirical", PriorsMode::Empirical)
        .value("Explicit", PriorsMode::Explicit);
    py::enum_<Backend>(m, "Backend")
        .value("Exact", Backend::Exact)
        .value("Quantum", Backend::Quantum);
    py::class_<LabeledSample>(m, "LabeledSample")
        .def(py::init<>())
        .def_readwrite("bits", &LabeledSample::bits)
        .def_readwrite("missing", &LabeledSample::missing)
        .def_readwrite("label", &LabeledSample::label);
    py::class_<ClassifierModel>(m, "ClassifierModel")
        .def_readonly("class_names", &ClassifierModel::class_names)
        .def_readonly("networks", &ClassifierModel::networks)
        .def_readonly("priors", &ClassifierModel::priors)
        .def_readonly("alpha", &ClassifierModel::alpha)
        .def_readonly("sample_counts", &ClassifierModel::sample_counts)
        .def_readonly("n_features", &ClassifierModel::n_features)
        .def("class_index", &ClassifierModel::class_index);
    py::class_<Prediction>(m, "Prediction")
        .def_readonly("label", &Prediction::label)
        .def_readonly("scores", &Prediction::scores);
    py::class_<ConfusionMatrix>(m, "ConfusionMatrix")
        .def_readonly("class_names", &ConfusionMatrix::class_names)
        .def_readonly("counts", &ConfusionMatrix::counts);
    py::class_<EvaluationReport>(m, "EvaluationReport")
        .def_readonly("confusion", &EvaluationReport::confusion)
        .def_readonly("accuracy", &EvaluationReport::accuracy)
        .def_readonly("precision", &EvaluationReport::precision)
        .def_readonly("recall", &EvaluationReport::recall)
        .def_readonly("total", &EvaluationReport::total);
    m.def("train", &train, py::arg("data"), py::arg("alpha"), py::arg("priors_mode"),
          py::arg("explicit_priors") = std::vector<double>{},
          py::arg("required_classes") = std::vector<std::string>{});
    m.def("log_likelihood", &log_likelihood);
    m.def("classify", &classify, py::arg("model"), py::arg("sample"),
          py::arg("backend") = Backend::Exact,
          py::arg("qae_config") = std::optional<QaeConfig>{}, py::arg("seed") = 0);
    m.def("evaluate", &evaluate, py::arg("model"), py::arg("data"),
          py::arg("backend") = Backend::Exact,
          py::arg("qae_config") = std::optional<QaeConfig>{}, py::arg("seed") = 0,
          py::arg("threads") = 1);
    m.def("to_model_json", &to_model_json);
    m.def("from_model_json", &from_model_json);
    m.def("save_model", &save_model);
    m.def("load_model", &load_model);
}
