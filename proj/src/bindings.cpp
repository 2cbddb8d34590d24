#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qmlkit/experiment.hpp"
#include "qmlkit/feature_map.hpp"
#include "qmlkit/kernel.hpp"
#include "qmlkit/preprocess.hpp"
#include "qmlkit/qnn.hpp"
#include "qmlkit/simulator.hpp"
#include "qmlkit/svm.hpp"

namespace py = pybind11;
using namespace qmlkit;

namespace {

std::vector<double> as_vector(const py::sequence& seq) {
    std::vector<double> out;
    out.reserve(seq.size());
    for (const auto& item : seq) {
        out.push_back(item.cast<double>());
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Statevector simulator, quantum-kernel SVMs, and a variational QNN classifier";
    m.attr("__version__") = kToolkitVersion;

    py::register_exception<ValidationError>(m, "ConfigValidationError", PyExc_ValueError);
    py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_IOError);

    // simulator
    py::enum_<GateKind>(m, "GateKind")
        .value("Hadamard", GateKind::Hadamard)
        .value("RX", GateKind::RX)
        .value("RY", GateKind::RY)
        .value("RZ", GateKind::RZ)
        .value("PauliRotX", GateKind::PauliRotX)
        .value("PauliRotY", GateKind::PauliRotY)
        .value("PauliRotZ", GateKind::PauliRotZ)
        .value("ZZ", GateKind::ZZ)
        .value("Cnot", GateKind::Cnot)
        .value("InputPrep", GateKind::InputPrep);

    py::class_<Gate>(m, "Gate")
        .def_readonly("kind", &Gate::kind)
        .def_readonly("angle", &Gate::angle)
        .def_readonly("q0", &Gate::q0)
        .def_readonly("q1", &Gate::q1)
        .def_static("hadamard", &Gate::hadamard, py::arg("q"))
        .def_static("rx", &Gate::rx, py::arg("theta"), py::arg("q"))
        .def_static("ry", &Gate::ry, py::arg("theta"), py::arg("q"))
        .def_static("rz", &Gate::rz, py::arg("theta"), py::arg("q"))
        .def_static("pauli_rot_x", &Gate::pauli_rot_x, py::arg("phi"), py::arg("q"))
        .def_static("pauli_rot_y", &Gate::pauli_rot_y, py::arg("phi"), py::arg("q"))
        .def_static("pauli_rot_z", &Gate::pauli_rot_z, py::arg("phi"), py::arg("q"))
        .def_static("zz", &Gate::zz, py::arg("phi"), py::arg("a"), py::arg("b"))
        .def_static("cnot", &Gate::cnot, py::arg("control"), py::arg("target"))
        .def_static("input_prep", &Gate::input_prep, py::arg("x"), py::arg("q"));

    py::class_<Circuit>(m, "Circuit")
        .def(py::init<int>(), py::arg("n_qubits"))
        .def_readonly("n_qubits", &Circuit::n_qubits)
        .def_readonly("gates", &Circuit::gates)
        .def("add", &Circuit::add, py::arg("gate"));

    py::class_<StateVector>(m, "StateVector")
        .def(py::init<int>(), py::arg("n_qubits"))
        .def_property_readonly("n_qubits", &StateVector::n_qubits)
        .def_property_readonly("amplitudes",
                               [](const StateVector& s) { return s.amplitudes(); })
        .def("norm", &StateVector::norm)
        .def("apply", py::overload_cast<const Gate&>(&StateVector::apply), py::arg("gate"))
        .def("apply", py::overload_cast<const Circuit&>(&StateVector::apply),
             py::arg("circuit"));

    m.def("zero_state", &zero_state, py::arg("n_qubits"));
    m.def("apply_gate", &apply_gate, py::arg("state"), py::arg("gate"));
    m.def("expectation_z", &expectation_z, py::arg("state"), py::arg("qubit"));
    m.def("overlap_probability", &overlap_probability, py::arg("a"), py::arg("b"));
    m.def("sample_measurements", &sample_measurements, py::arg("state"), py::arg("shots"),
          py::arg("seed"));

    // feature maps
    py::enum_<DataMapping>(m, "DataMapping")
        .value("Default", DataMapping::Default)
        .value("Sin", DataMapping::Sin);
    py::enum_<FeatureMapKind>(m, "FeatureMapKind")
        .value("ZZFeature", FeatureMapKind::ZZFeature)
        .value("PauliFeature", FeatureMapKind::PauliFeature)
        .value("ZZphiFeature", FeatureMapKind::ZZphiFeature)
        .value("ZFeature", FeatureMapKind::ZFeature);
    py::enum_<Entanglement>(m, "Entanglement")
        .value("Linear", Entanglement::Linear)
        .value("Full", Entanglement::Full);

    py::class_<FeatureMapConfig>(m, "FeatureMapConfig")
        .def(py::init([](FeatureMapKind kind, int depth, int n_features,
                         Entanglement entanglement) {
                 return FeatureMapConfig{kind, depth, n_features, entanglement};
             }),
             py::arg("kind") = FeatureMapKind::ZZFeature, py::arg("depth") = 2,
             py::arg("n_features") = 0, py::arg("entanglement") = Entanglement::Linear)
        .def_readwrite("kind", &FeatureMapConfig::kind)
        .def_readwrite("depth", &FeatureMapConfig::depth)
        .def_readwrite("n_features", &FeatureMapConfig::n_features)
        .def_readwrite("entanglement", &FeatureMapConfig::entanglement)
        .def("mapping", &FeatureMapConfig::mapping);

    m.def("phi_value",
          [](DataMapping mapping, const std::vector<int>& subset, const py::sequence& x) {
              return phi_value(mapping, subset, as_vector(x));
          },
          py::arg("mapping"), py::arg("subset"), py::arg("x"));
    m.def("build_encoding_circuit",
          [](const FeatureMapConfig& config, const py::sequence& x) {
              return build_encoding_circuit(config, as_vector(x));
          },
          py::arg("config"), py::arg("x"));
    m.def("encode_state",
          [](const FeatureMapConfig& config, const py::sequence& x) {
              return encode_state(config, as_vector(x));
          },
          py::arg("config"), py::arg("x"));

    // kernels + svm
    py::class_<KernelMatrix>(m, "KernelMatrix")
        .def_readonly("n_rows", &KernelMatrix::n_rows)
        .def_readonly("n_cols", &KernelMatrix::n_cols)
        .def_readonly("values", &KernelMatrix::values)
        .def_readonly("row_ids", &KernelMatrix::row_ids)
        .def_readonly("col_ids", &KernelMatrix::col_ids)
        .def("at", py::overload_cast<std::size_t, std::size_t>(&KernelMatrix::at, py::const_),
             py::arg("i"), py::arg("j"));

    py::enum_<ClassicalKernelKind>(m, "ClassicalKernelKind")
        .value("Linear", ClassicalKernelKind::Linear)
        .value("Poly", ClassicalKernelKind::Poly)
        .value("Rbf", ClassicalKernelKind::Rbf)
        .value("Sigmoid", ClassicalKernelKind::Sigmoid);

    py::class_<ClassicalKernelSpec>(m, "ClassicalKernelSpec")
        .def(py::init([](ClassicalKernelKind kind, int degree, double gamma, double coef0) {
                 return ClassicalKernelSpec{kind, degree, gamma, coef0};
             }),
             py::arg("kind") = ClassicalKernelKind::Rbf, py::arg("degree") = 3,
             py::arg("gamma") = 1.0, py::arg("coef0") = 0.0)
        .def_static("defaults", &ClassicalKernelSpec::defaults, py::arg("kind"),
                    py::arg("n_features"))
        .def_readwrite("kind", &ClassicalKernelSpec::kind)
        .def_readwrite("degree", &ClassicalKernelSpec::degree)
        .def_readwrite("gamma", &ClassicalKernelSpec::gamma)
        .def_readwrite("coef0", &ClassicalKernelSpec::coef0);

    m.def("quantum_kernel",
          [](const FeatureMapConfig& config, const py::sequence& x, const py::sequence& y) {
              return quantum_kernel(config, as_vector(x), as_vector(y));
          },
          py::arg("config"), py::arg("x"), py::arg("y"));
    m.def("quantum_kernel_sampled",
          [](const FeatureMapConfig& config, const py::sequence& x, const py::sequence& y,
             std::int64_t shots, std::uint64_t seed) {
              return quantum_kernel_sampled(config, as_vector(x), as_vector(y), shots, seed);
          },
          py::arg("config"), py::arg("x"), py::arg("y"), py::arg("shots"), py::arg("seed"));
    m.def("classical_kernel",
          [](const ClassicalKernelSpec& spec, const py::sequence& x, const py::sequence& y) {
              return classical_kernel(spec, as_vector(x), as_vector(y));
          },
          py::arg("spec"), py::arg("x"), py::arg("y"));
    m.def("gram_matrix",
          [](const FeatureMapConfig& config, const Samples& samples,
             std::vector<std::string> ids, int n_threads) {
              return gram_matrix(config, samples, std::move(ids), n_threads);
          },
          py::arg("config"), py::arg("samples"), py::arg("ids") = std::vector<std::string>{},
          py::arg("n_threads") = 1, py::call_guard<py::gil_scoped_release>());
    m.def("classical_gram_matrix",
          [](const ClassicalKernelSpec& spec, const Samples& samples,
             std::vector<std::string> ids, int n_threads) {
              return gram_matrix(spec, samples, std::move(ids), n_threads);
          },
          py::arg("spec"), py::arg("samples"), py::arg("ids") = std::vector<std::string>{},
          py::arg("n_threads") = 1, py::call_guard<py::gil_scoped_release>());
    m.def("cross_gram",
          [](const FeatureMapConfig& config, const Samples& test, const Samples& train,
             int n_threads) { return cross_gram(config, test, train, {}, {}, n_threads); },
          py::arg("config"), py::arg("test"), py::arg("train"), py::arg("n_threads") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("write_gram_csv", &write_gram_csv, py::arg("matrix"), py::arg("path"));

    py::class_<SvmModel>(m, "SvmModel")
        .def_readonly("alphas", &SvmModel::alphas)
        .def_readonly("bias", &SvmModel::bias)
        .def_readonly("labels", &SvmModel::labels)
        .def_readonly("C", &SvmModel::C)
        .def_readonly("support_indices", &SvmModel::support_indices)
        .def_readonly("objective_history", &SvmModel::objective_history);

    m.def("svm_fit",
          [](const KernelMatrix& gram, const std::vector<int>& labels, double C, double tol,
             int max_passes) { return svm_fit(gram, labels, C, tol, max_passes); },
          py::arg("gram"), py::arg("labels"), py::arg("C") = 1.0, py::arg("tol") = 1e-3,
          py::arg("max_passes") = 50);
    m.def("svm_predict",
          [](const SvmModel& model, const py::sequence& kernel_row) {
              return svm_predict(model, as_vector(kernel_row));
          },
          py::arg("model"), py::arg("kernel_row"));

    py::class_<Metrics>(m, "Metrics")
        .def_readonly("accuracy", &Metrics::accuracy)
        .def_readonly("f1", &Metrics::f1);
    m.def("evaluate_metrics",
          [](const std::vector<int>& predictions, const std::vector<int>& labels) {
              return evaluate_metrics(predictions, labels);
          },
          py::arg("predictions"), py::arg("labels"));

    // qnn
    py::enum_<GradientMethod>(m, "GradientMethod")
        .value("ParameterShift", GradientMethod::ParameterShift)
        .value("Spsb", GradientMethod::Spsb);

    py::class_<QnnConfig>(m, "QnnConfig")
        .def(py::init([](int n_data_qubits, int n_layers, bool reupload,
                         std::optional<std::vector<std::pair<int, int>>> entangle) {
                 QnnConfig config;
                 config.n_data_qubits = n_data_qubits;
                 config.n_layers = n_layers;
                 config.reupload = reupload;
                 config.entangle_pattern =
                     entangle ? *entangle : QnnConfig::chain_pattern(n_data_qubits);
                 return config;
             }),
             py::arg("n_data_qubits"), py::arg("n_layers") = 1, py::arg("reupload") = false,
             py::arg("entangle") = py::none())
        .def_readwrite("n_data_qubits", &QnnConfig::n_data_qubits)
        .def_readwrite("n_layers", &QnnConfig::n_layers)
        .def_readwrite("reupload", &QnnConfig::reupload)
        .def_readwrite("entangle_pattern", &QnnConfig::entangle_pattern)
        .def_static("chain_pattern", &QnnConfig::chain_pattern, py::arg("n_data_qubits"))
        .def("total_qubits", &QnnConfig::total_qubits)
        .def("parameter_count", &QnnConfig::parameter_count);

    py::class_<QnnParams>(m, "QnnParams")
        .def(py::init<const QnnConfig&>(), py::arg("config"))
        .def_static("random_init", &QnnParams::random_init, py::arg("config"), py::arg("seed"))
        .def("data_angle",
             [](const QnnParams& p, int layer, int qubit) { return p.data_angle(layer, qubit); },
             py::arg("layer"), py::arg("qubit"))
        .def("ancilla_angle",
             [](const QnnParams& p, int ancilla, int layer, int rot) {
                 return p.ancilla_angle(ancilla, layer, rot);
             },
             py::arg("ancilla"), py::arg("layer"), py::arg("rot"))
        .def("flat", [](const QnnParams& p) {
            return std::vector<double>(p.flat().begin(), p.flat().end());
        })
        .def("set_flat",
             [](QnnParams& p, const std::vector<double>& theta) {
                 if (theta.size() != p.size()) {
                     throw std::invalid_argument("theta length mismatch");
                 }
                 std::copy(theta.begin(), theta.end(), p.flat().begin());
             },
             py::arg("theta"))
        .def("__len__", &QnnParams::size);

    py::class_<TrainConfig>(m, "TrainConfig")
        .def(py::init([](double learning_rate, int epochs, int batch_size,
                         GradientMethod gradient_method, double spsb_epsilon,
                         std::uint64_t seed) {
                 return TrainConfig{learning_rate, epochs,       batch_size,
                                    gradient_method, spsb_epsilon, seed};
             }),
             py::arg("learning_rate") = 0.1, py::arg("epochs") = 1, py::arg("batch_size") = 1,
             py::arg("gradient_method") = GradientMethod::ParameterShift,
             py::arg("spsb_epsilon") = 0.01, py::arg("seed") = 0)
        .def_readwrite("learning_rate", &TrainConfig::learning_rate)
        .def_readwrite("epochs", &TrainConfig::epochs)
        .def_readwrite("batch_size", &TrainConfig::batch_size)
        .def_readwrite("gradient_method", &TrainConfig::gradient_method)
        .def_readwrite("spsb_epsilon", &TrainConfig::spsb_epsilon)
        .def_readwrite("seed", &TrainConfig::seed);

    m.def("prepare_input_state",
          [](const py::sequence& x, int total_qubits) {
              return prepare_input_state(as_vector(x), total_qubits);
          },
          py::arg("x"), py::arg("total_qubits"));
    m.def("build_qnn_circuit",
          [](const QnnConfig& config, const QnnParams& params, const py::sequence& x) {
              return build_qnn_circuit(config, params, as_vector(x));
          },
          py::arg("config"), py::arg("params"), py::arg("x"));
    m.def("qnn_forward",
          [](const QnnConfig& config, const QnnParams& params, const py::sequence& x) {
              return qnn_forward(config, params, as_vector(x));
          },
          py::arg("config"), py::arg("params"), py::arg("x"));
    m.def("class_probabilities", &class_probabilities, py::arg("z0"), py::arg("z1"));
    m.def("cross_entropy", &cross_entropy, py::arg("probs"), py::arg("label"));
    m.def("qnn_loss",
          [](const QnnConfig& config, const QnnParams& params, const py::sequence& x, int label) {
              return qnn_loss(config, params, as_vector(x), label);
          },
          py::arg("config"), py::arg("params"), py::arg("x"), py::arg("label"));
    m.def("qnn_predict",
          [](const QnnConfig& config, const QnnParams& params, const py::sequence& x) {
              return qnn_predict(config, params, as_vector(x));
          },
          py::arg("config"), py::arg("params"), py::arg("x"));
    m.def("gradient_parameter_shift",
          [](const QnnConfig& config, const QnnParams& params, const Samples& xs,
             const std::vector<int>& labels) {
              return gradient_parameter_shift(config, params, xs, labels);
          },
          py::arg("config"), py::arg("params"), py::arg("xs"), py::arg("labels"),
          py::call_guard<py::gil_scoped_release>());
    m.def("gradient_spsb",
          [](const QnnConfig& config, const QnnParams& params, const Samples& xs,
             const std::vector<int>& labels, double epsilon, std::uint64_t seed) {
              return gradient_spsb(config, params, xs, labels, epsilon, seed);
          },
          py::arg("config"), py::arg("params"), py::arg("xs"), py::arg("labels"),
          py::arg("epsilon") = 0.01, py::arg("seed") = 0,
          py::call_guard<py::gil_scoped_release>());
    m.def("spsb_estimate",
          [](const std::function<double(std::vector<double>)>& f,
             const std::vector<double>& theta, double epsilon, const std::vector<int>& delta) {
              return spsb_estimate(
                  [&f](std::span<const double> t) {
                      return f(std::vector<double>(t.begin(), t.end()));
                  },
                  theta, epsilon, delta);
          },
          py::arg("f"), py::arg("theta"), py::arg("epsilon"), py::arg("delta"));

    py::class_<EpochStats>(m, "EpochStats")
        .def_readonly("loss", &EpochStats::loss)
        .def_readonly("accuracy", &EpochStats::accuracy);
    py::class_<TrainResult>(m, "TrainResult")
        .def_readonly("params", &TrainResult::params)
        .def_readonly("history", &TrainResult::history);
    m.def("train",
          [](const QnnConfig& config, const TrainConfig& train_config, const Samples& xs,
             const std::vector<int>& labels) { return train(config, train_config, xs, labels); },
          py::arg("config"), py::arg("train_config"), py::arg("xs"), py::arg("labels"),
          py::call_guard<py::gil_scoped_release>());

    // preprocessing
    py::class_<GrayImage>(m, "GrayImage")
        .def_readonly("pixels", &GrayImage::pixels)
        .def("at", &GrayImage::at, py::arg("row"), py::arg("col"));
    m.def("binary_to_image",
          [](const py::bytes& data) {
              const std::string view = data;
              return binary_to_image(std::span<const std::uint8_t>(
                  reinterpret_cast<const std::uint8_t*>(view.data()), view.size()));
          },
          py::arg("data"));

    py::class_<PcaModel>(m, "PcaModel")
        .def_readonly("mean", &PcaModel::mean)
        .def_readonly("components", &PcaModel::components)
        .def_readonly("explained_variance", &PcaModel::explained_variance);
    m.def("pca_fit", &pca_fit, py::arg("X"), py::arg("k"));
    m.def("pca_transform", &pca_transform, py::arg("model"), py::arg("X"));

    py::class_<ScalerModel>(m, "ScalerModel")
        .def_readonly("feature_min", &ScalerModel::feature_min)
        .def_readonly("feature_max", &ScalerModel::feature_max)
        .def_readonly("lo", &ScalerModel::lo)
        .def_readonly("hi", &ScalerModel::hi);
    m.def("scale_fit", &scale_fit, py::arg("X"), py::arg("lo"), py::arg("hi"));
    m.def("scale_transform", &scale_transform, py::arg("model"), py::arg("X"));

    py::class_<Dataset>(m, "Dataset")
        .def(py::init<>())
        .def_readwrite("samples", &Dataset::samples)
        .def_readwrite("labels", &Dataset::labels)
        .def_readwrite("ids", &Dataset::ids)
        .def("__len__", &Dataset::size)
        .def_property_readonly("n_features", &Dataset::n_features);
    m.def("load_csv", &load_csv, py::arg("path"), py::arg("label_column") = "label");
    m.def("write_csv", &write_csv, py::arg("dataset"), py::arg("path"),
          py::arg("label_column") = "label");
    m.def("load_binaries_dir", &load_binaries_dir, py::arg("dir"));

    py::enum_<SyntheticKind>(m, "SyntheticKind")
        .value("AngularBlobs", SyntheticKind::AngularBlobs)
        .value("NoisyXor", SyntheticKind::NoisyXor);
    m.def("generate_synthetic", &generate_synthetic, py::arg("kind"), py::arg("n"),
          py::arg("seed"), py::arg("n_features") = 2);

    // experiment harness
    py::class_<RunRow>(m, "RunRow")
        .def_readonly("fingerprint", &RunRow::fingerprint)
        .def_readonly("model", &RunRow::model)
        .def_readonly("detail", &RunRow::detail)
        .def_readonly("n_features", &RunRow::n_features)
        .def_readonly("train_size", &RunRow::train_size)
        .def_readonly("test_size", &RunRow::test_size)
        .def_readonly("layers", &RunRow::layers)
        .def_readonly("epochs", &RunRow::epochs)
        .def_readonly("learning_rate", &RunRow::learning_rate)
        .def_readonly("gradient_method", &RunRow::gradient_method)
        .def_readonly("reupload", &RunRow::reupload)
        .def_readonly("seed", &RunRow::seed)
        .def_readonly("train_accuracy", &RunRow::train_accuracy)
        .def_readonly("test_accuracy", &RunRow::test_accuracy)
        .def_readonly("f1", &RunRow::f1)
        .def_readonly("epoch_loss", &RunRow::epoch_loss)
        .def_readonly("epoch_accuracy", &RunRow::epoch_accuracy)
        .def_readonly("wall_time_s", &RunRow::wall_time_s);
    py::class_<RunReport>(m, "RunReport")
        .def_readonly("toolkit_version", &RunReport::toolkit_version)
        .def_readonly("rows", &RunReport::rows);

    py::class_<RunConfig>(m, "RunConfig")
        .def_readonly("seed", &RunConfig::seed)
        .def_readonly("fingerprint", &RunConfig::fingerprint)
        .def_readonly("canonical_json", &RunConfig::canonical_json);
    m.def("parse_experiment_config",
          [](const std::string& json_text) { return parse_experiment_config(json_text); },
          py::arg("json_text"));
    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def_readonly("version", &ExperimentConfig::version)
        .def_readonly("output", &ExperimentConfig::output)
        .def_readonly("base", &ExperimentConfig::base)
        .def_readonly("runs", &ExperimentConfig::runs);
    m.def("load_experiment_config", &load_experiment_config, py::arg("path"));
    m.def("run_experiment", &run_experiment, py::arg("config"), py::arg("n_threads") = 1,
          py::call_guard<py::gil_scoped_release>());

    py::class_<TrainedModel>(m, "TrainedModel")
        .def_property_readonly("family",
                               [](const TrainedModel& model) {
                                   switch (model.family) {
                                   case ModelFamily::Qsvm: return "qsvm";
                                   case ModelFamily::ClassicalSvm: return "classical_svm";
                                   case ModelFamily::Qnn: return "qnn";
                                   }
                                   return "qsvm";
                               })
        .def_readonly("history", &TrainedModel::history)
        .def_readonly("seed", &TrainedModel::seed);
    m.def("train_model", &train_model, py::arg("config"), py::arg("n_threads") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("predict",
          [](const TrainedModel& model, const py::sequence& raw_features) {
              return predict(model, as_vector(raw_features));
          },
          py::arg("model"), py::arg("raw_features"));
    m.def("trained_model_to_json", &trained_model_to_json, py::arg("model"));
    m.def("trained_model_from_json", &trained_model_from_json, py::arg("json_text"));
    m.def("report_to_json", &report_to_json, py::arg("report"));
    m.def("report_to_csv", &report_to_csv, py::arg("report"));
    m.def("report_from_json", &report_from_json, py::arg("json_text"));
}
