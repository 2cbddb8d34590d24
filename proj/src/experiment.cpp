#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qmlkit/experiment.hpp"
#include "qmlkit/rng.hpp"

namespace qmlkit {

using nlohmann::json;

namespace {

std::string shortest(double value) {
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

int to_pm(int label01) { return label01 == 1 ? 1 : -1; }

std::string family_name(ModelFamily family) {
    switch (family) {
    case ModelFamily::Qsvm: return "qsvm";
    case ModelFamily::ClassicalSvm: return "classical_svm";
    case ModelFamily::Qnn: return "qnn";
    }
    return "qsvm";
}

std::string map_name(FeatureMapKind kind) {
    switch (kind) {
    case FeatureMapKind::ZZFeature: return "zz";
    case FeatureMapKind::PauliFeature: return "pauli";
    case FeatureMapKind::ZZphiFeature: return "zzphi";
    case FeatureMapKind::ZFeature: return "z";
    }
    return "zz";
}

std::string kernel_name(ClassicalKernelKind kind) {
    switch (kind) {
    case ClassicalKernelKind::Linear: return "linear";
    case ClassicalKernelKind::Poly: return "poly";
    case ClassicalKernelKind::Rbf: return "rbf";
    case ClassicalKernelKind::Sigmoid: return "sigmoid";
    }
    return "rbf";
}

Dataset load_dataset(const DatasetSpec& spec) {
    switch (spec.source) {
    case DatasetSpec::Source::Csv:
        return load_csv(spec.csv_path, spec.label_column);
    case DatasetSpec::Source::Binaries:
        return load_binaries_dir(spec.binaries_dir);
    case DatasetSpec::Source::Synthetic:
        return generate_synthetic(spec.synthetic.kind, spec.synthetic.n, spec.synthetic.seed,
                                  spec.synthetic.n_features);
    }
    throw std::logic_error("unknown dataset source");
}

struct FittedPipeline {
    std::optional<PcaModel> pca;
    ScalerModel scaler;
};

FittedPipeline fit_pipeline(const RunConfig& run, const Samples& train) {
    FittedPipeline fitted;
    const Samples* stage = &train;
    Samples reduced;
    if (run.preprocessing.pca > 0) {
        const int max_k = static_cast<int>(std::min(train.size(), train.front().size()));
        if (run.preprocessing.pca > max_k) {
            throw ValidationError({"preprocessing.pca: k = " +
                                   std::to_string(run.preprocessing.pca) +
                                   " exceeds min(train size, feature count) = " +
                                   std::to_string(max_k)});
        }
        fitted.pca = pca_fit(train, run.preprocessing.pca);
        reduced = pca_transform(*fitted.pca, train);
        stage = &reduced;
    }
    fitted.scaler = scale_fit(*stage, run.preprocessing.scale_lo, run.preprocessing.scale_hi);
    return fitted;
}

Samples apply_pipeline(const FittedPipeline& fitted, const Samples& raw) {
    Samples stage = fitted.pca ? pca_transform(*fitted.pca, raw) : raw;
    return scale_transform(fitted.scaler, stage);
}

struct PreparedData {
    Samples train_x, test_x;
    std::vector<int> train_y, test_y;
    std::vector<std::string> train_ids, test_ids;
    FittedPipeline pipeline;
};

PreparedData prepare_data(const RunConfig& run) {
    const Dataset dataset = load_dataset(run.dataset);
    if (static_cast<std::size_t>(run.split.train) + static_cast<std::size_t>(run.split.test) >
        dataset.size()) {
        throw ValidationError({"split: train + test = " +
                               std::to_string(run.split.train + run.split.test) +
                               " exceeds dataset size " + std::to_string(dataset.size())});
    }
    const SplitIndices split =
        stratified_split(dataset.labels, run.split.train, run.split.test, run.split.seed);

    PreparedData data;
    Samples train_raw, test_raw;
    for (std::size_t i : split.train) {
        train_raw.push_back(dataset.samples[i]);
        data.train_y.push_back(dataset.labels[i]);
        data.train_ids.push_back(dataset.ids[i]);
    }
    for (std::size_t i : split.test) {
        test_raw.push_back(dataset.samples[i]);
        data.test_y.push_back(dataset.labels[i]);
        data.test_ids.push_back(dataset.ids[i]);
    }
    data.pipeline = fit_pipeline(run, train_raw);
    data.train_x = apply_pipeline(data.pipeline, train_raw);
    data.test_x = apply_pipeline(data.pipeline, test_raw);
    return data;
}

FeatureMapConfig resolve_feature_map(const QsvmModelSpec& spec, int n_features) {
    FeatureMapConfig config;
    config.kind = spec.map_kind;
    config.depth = spec.depth;
    config.n_features = n_features;
    config.entanglement = spec.entanglement;
    return config;
}

ClassicalKernelSpec resolve_kernel(const ClassicalSvmModelSpec& spec, int n_features) {
    ClassicalKernelSpec kernel;
    kernel.kind = spec.kernel_kind;
    kernel.degree = spec.degree;
    kernel.gamma = spec.gamma > 0.0 ? spec.gamma : 1.0 / std::max(1, n_features);
    kernel.coef0 = spec.coef0;
    return kernel;
}

QnnConfig resolve_qnn(const QnnModelSpec& spec, int n_features) {
    QnnConfig config;
    config.n_data_qubits = n_features;
    config.n_layers = spec.layers;
    config.reupload = spec.reupload;
    config.entangle_pattern = spec.entangle ? *spec.entangle
                                            : QnnConfig::chain_pattern(n_features);
    return config;
}

template <typename KernelLike>
void run_svm_family(const KernelLike& kernel_spec, double C, const PreparedData& data,
                    int n_threads, RunRow& row) {
    std::vector<int> train_pm, test_pm;
    for (int y : data.train_y) {
        train_pm.push_back(to_pm(y));
    }
    for (int y : data.test_y) {
        test_pm.push_back(to_pm(y));
    }
    const KernelMatrix gram = gram_matrix(kernel_spec, data.train_x, data.train_ids, n_threads);
    const SvmModel model = svm_fit(gram, train_pm, C);

    std::vector<int> train_pred(data.train_x.size());
    for (std::size_t i = 0; i < data.train_x.size(); ++i) {
        std::vector<double> k_row(gram.n_cols);
        for (std::size_t j = 0; j < gram.n_cols; ++j) {
            k_row[j] = gram.at(i, j);
        }
        train_pred[i] = svm_predict(model, k_row).first;
    }
    const KernelMatrix cross = cross_gram(kernel_spec, data.test_x, data.train_x, data.test_ids,
                                          data.train_ids, n_threads);
    std::vector<int> test_pred(data.test_x.size());
    for (std::size_t i = 0; i < data.test_x.size(); ++i) {
        std::vector<double> k_row(cross.n_cols);
        for (std::size_t j = 0; j < cross.n_cols; ++j) {
            k_row[j] = cross.at(i, j);
        }
        test_pred[i] = svm_predict(model, k_row).first;
    }
    row.train_accuracy = evaluate_metrics(train_pred, train_pm).accuracy;
    const Metrics test_metrics = evaluate_metrics(test_pred, test_pm);
    row.test_accuracy = test_metrics.accuracy;
    row.f1 = test_metrics.f1;
}

RunRow execute_run(const RunConfig& run, int n_threads) {
    const auto started = std::chrono::steady_clock::now();
    RunRow row;
    row.fingerprint = run.fingerprint;
    row.model = family_name(run.family);
    row.train_size = run.split.train;
    row.test_size = run.split.test;
    row.seed = run.seed;

    const PreparedData data = prepare_data(run);
    const int n_features = static_cast<int>(data.train_x.front().size());
    row.n_features = n_features;

    try {
        switch (run.family) {
        case ModelFamily::Qsvm: {
            row.detail = map_name(run.qsvm.map_kind);
            run_svm_family(resolve_feature_map(run.qsvm, n_features), run.qsvm.C, data, n_threads,
                           row);
            break;
        }
        case ModelFamily::ClassicalSvm: {
            row.detail = kernel_name(run.classical_svm.kernel_kind);
            run_svm_family(resolve_kernel(run.classical_svm, n_features), run.classical_svm.C,
                           data, n_threads, row);
            break;
        }
        case ModelFamily::Qnn: {
            const QnnConfig config = resolve_qnn(run.qnn, n_features);
            row.detail = run.qnn.reupload ? "qnn+reupload" : "qnn";
            row.layers = config.n_layers;
            row.epochs = run.qnn.train.epochs;
            row.learning_rate = run.qnn.train.learning_rate;
            row.gradient_method = run.qnn.train.gradient_method == GradientMethod::Spsb
                                      ? "spsb"
                                      : "parameter_shift";
            row.reupload = run.qnn.reupload;
            const TrainResult result = train(config, run.qnn.train, data.train_x, data.train_y);
            for (const EpochStats& stats : result.history) {
                row.epoch_loss.push_back(stats.loss);
                row.epoch_accuracy.push_back(stats.accuracy);
            }
            row.train_accuracy = result.history.back().accuracy;
            std::vector<int> test_pred, test_pm;
            for (std::size_t i = 0; i < data.test_x.size(); ++i) {
                test_pred.push_back(to_pm(qnn_predict(config, result.params, data.test_x[i])));
                test_pm.push_back(to_pm(data.test_y[i]));
            }
            const Metrics metrics = evaluate_metrics(test_pred, test_pm);
            row.test_accuracy = metrics.accuracy;
            row.f1 = metrics.f1;
            break;
        }
        }
    } catch (const std::invalid_argument& error) {
        throw ValidationError({std::string("model: ") + error.what()});
    }

    row.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return row;
}

json row_to_json(const RunRow& row) {
    return json{{"fingerprint", row.fingerprint},
                {"model", row.model},
                {"detail", row.detail},
                {"n_features", row.n_features},
                {"train_size", row.train_size},
                {"test_size", row.test_size},
                {"layers", row.layers},
                {"epochs", row.epochs},
                {"learning_rate", row.learning_rate},
                {"gradient_method", row.gradient_method},
                {"reupload", row.reupload},
                {"seed", row.seed},
                {"train_accuracy", row.train_accuracy},
                {"test_accuracy", row.test_accuracy},
                {"f1", row.f1},
                {"epoch_loss", row.epoch_loss},
                {"epoch_accuracy", row.epoch_accuracy}};
}

RunRow row_from_json(const json& doc) {
    RunRow row;
    row.fingerprint = doc.at("fingerprint").get<std::string>();
    row.model = doc.at("model").get<std::string>();
    row.detail = doc.at("detail").get<std::string>();
    row.n_features = doc.at("n_features").get<int>();
    row.train_size = doc.at("train_size").get<int>();
    row.test_size = doc.at("test_size").get<int>();
    row.layers = doc.at("layers").get<int>();
    row.epochs = doc.at("epochs").get<int>();
    row.learning_rate = doc.at("learning_rate").get<double>();
    row.gradient_method = doc.at("gradient_method").get<std::string>();
    row.reupload = doc.at("reupload").get<bool>();
    row.seed = doc.at("seed").get<std::uint64_t>();
    row.train_accuracy = doc.at("train_accuracy").get<double>();
    row.test_accuracy = doc.at("test_accuracy").get<double>();
    row.f1 = doc.at("f1").get<double>();
    row.epoch_loss = doc.at("epoch_loss").get<std::vector<double>>();
    row.epoch_accuracy = doc.at("epoch_accuracy").get<std::vector<double>>();
    return row;
}

} // namespace

bool operator==(const RunRow& a, const RunRow& b) {
    return row_to_json(a) == row_to_json(b);
}

bool operator==(const RunReport& a, const RunReport& b) {
    return a.toolkit_version == b.toolkit_version && a.rows == b.rows;
}

SplitIndices stratified_split(std::span<const int> labels, int n_train, int n_test,
                              std::uint64_t seed) {
    const std::size_t total = labels.size();
    if (n_train < 2 || n_test < 0) {
        throw std::invalid_argument("split requires train >= 2 and test >= 0");
    }
    if (static_cast<std::size_t>(n_train) + static_cast<std::size_t>(n_test) > total) {
        throw std::invalid_argument("split sizes exceed dataset size");
    }
    std::vector<std::size_t> pools[2];
    for (std::size_t i = 0; i < total; ++i) {
        if (labels[i] != 0 && labels[i] != 1) {
            throw std::invalid_argument("labels must be 0 or 1");
        }
        pools[labels[i]].push_back(i);
    }
    if (pools[0].empty() || pools[1].empty()) {
        throw std::invalid_argument("both classes are required for a stratified split");
    }
    for (int c = 0; c < 2; ++c) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
        rng.shuffle(pools[c]);
    }

    // Largest-remainder allocation per class, then force one training sample
    // of each class.
    auto allocate = [&](int want, const std::size_t avail[2]) {
        double share[2];
        int counts[2];
        for (int c = 0; c < 2; ++c) {
            share[c] = static_cast<double>(want) * static_cast<double>(pools[c].size()) /
                       static_cast<double>(total);
            counts[c] = static_cast<int>(std::floor(share[c]));
        }
        int remaining = want - counts[0] - counts[1];
        while (remaining > 0) {
            const int pick = (share[0] - counts[0]) >= (share[1] - counts[1]) ? 0 : 1;
            ++counts[pick];
            --remaining;
        }
        for (int c = 0; c < 2; ++c) {
            const int other = 1 - c;
            while (counts[c] > static_cast<int>(avail[c])) {
                --counts[c];
                ++counts[other];
            }
        }
        return std::make_pair(counts[0], counts[1]);
    };

    const std::size_t full[2] = {pools[0].size(), pools[1].size()};
    auto [train0, train1] = allocate(n_train, full);
    if (train0 == 0 && train1 >= 2) {
        ++train0;
        --train1;
    } else if (train1 == 0 && train0 >= 2) {
        ++train1;
        --train0;
    }
    if (train0 == 0 || train1 == 0) {
        throw std::invalid_argument("training split needs at least one sample per class");
    }
    const std::size_t rest[2] = {pools[0].size() - static_cast<std::size_t>(train0),
                                 pools[1].size() - static_cast<std::size_t>(train1)};
    auto [test0, test1] = allocate(n_test, rest);

    SplitIndices split;
    for (int i = 0; i < train0; ++i) {
        split.train.push_back(pools[0][static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < train1; ++i) {
        split.train.push_back(pools[1][static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < test0; ++i) {
        split.test.push_back(pools[0][static_cast<std::size_t>(train0 + i)]);
    }
    for (int i = 0; i < test1; ++i) {
        split.test.push_back(pools[1][static_cast<std::size_t>(train1 + i)]);
    }
    Rng train_rng(derive_seed(seed, 2));
    train_rng.shuffle(split.train);
    Rng test_rng(derive_seed(seed, 3));
    test_rng.shuffle(split.test);
    return split;
}

RunReport run_experiment(const ExperimentConfig& config, int n_threads) {
    RunReport report;
    for (const RunConfig& run : config.runs) {
        report.rows.push_back(execute_run(run, n_threads));
    }
    if (!config.output.empty()) {
        const bool csv = config.output.size() >= 4 &&
                         config.output.compare(config.output.size() - 4, 4, ".csv") == 0;
        emit_report(report, csv ? ReportFormat::Csv : ReportFormat::Json, config.output);
    }
    return report;
}

std::string report_to_json(const RunReport& report) {
    json doc;
    doc["format"] = "qmlkit-report";
    doc["version"] = 1;
    doc["toolkit_version"] = report.toolkit_version;
    doc["rows"] = json::array();
    for (const RunRow& row : report.rows) {
        doc["rows"].push_back(row_to_json(row));
    }
    return doc.dump(2) + "\n";
}

std::string report_to_csv(const RunReport& report) {
    std::ostringstream out;
    out << "fingerprint,model,detail,n_features,train_size,test_size,layers,epochs,"
           "learning_rate,gradient_method,reupload,seed,train_accuracy,test_accuracy,f1,"
           "epoch_loss,epoch_accuracy\n";
    auto join = [](const std::vector<double>& values) {
        std::string joined;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i > 0) {
                joined += ';';
            }
            joined += shortest(values[i]);
        }
        return joined;
    };
    for (const RunRow& row : report.rows) {
        out << row.fingerprint << ',' << row.model << ',' << row.detail << ',' << row.n_features
            << ',' << row.train_size << ',' << row.test_size << ',' << row.layers << ','
            << row.epochs << ',' << shortest(row.learning_rate) << ',' << row.gradient_method
            << ',' << (row.reupload ? "true" : "false") << ',' << row.seed << ','
            << shortest(row.train_accuracy) << ',' << shortest(row.test_accuracy) << ','
            << shortest(row.f1) << ',' << join(row.epoch_loss) << ',' << join(row.epoch_accuracy)
            << '\n';
    }
    return out.str();
}

RunReport report_from_json(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& error) {
        throw SchemaError(std::string("report is not valid JSON: ") + error.what());
    }
    if (!doc.is_object() || doc.value("format", "") != "qmlkit-report") {
        throw SchemaError("not a qmlkit-report document");
    }
    RunReport report;
    report.toolkit_version = doc.value("toolkit_version", "");
    for (const json& row : doc.at("rows")) {
        report.rows.push_back(row_from_json(row));
    }
    return report;
}

void emit_report(const RunReport& report, ReportFormat format, const std::string& path) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) {
        std::error_code ignored;
        std::filesystem::create_directories(parent, ignored);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    out << (format == ReportFormat::Csv ? report_to_csv(report) : report_to_json(report));
    if (!out) {
        throw IoError("failed while writing " + path);
    }
}

TrainedModel train_model(const RunConfig& run, int n_threads) {
    const PreparedData data = prepare_data(run);
    const int n_features = static_cast<int>(data.train_x.front().size());

    TrainedModel model;
    model.family = run.family;
    model.seed = run.seed;
    model.pca = data.pipeline.pca;
    model.scaler = data.pipeline.scaler;

    std::vector<int> train_pm;
    for (int y : data.train_y) {
        train_pm.push_back(to_pm(y));
    }
    switch (run.family) {
    case ModelFamily::Qsvm: {
        model.feature_map = resolve_feature_map(run.qsvm, n_features);
        model.C = run.qsvm.C;
        const KernelMatrix gram =
            gram_matrix(*model.feature_map, data.train_x, data.train_ids, n_threads);
        model.svm = svm_fit(gram, train_pm, model.C);
        model.train_features = data.train_x;
        model.train_ids = data.train_ids;
        break;
    }
    case ModelFamily::ClassicalSvm: {
        model.kernel = resolve_kernel(run.classical_svm, n_features);
        model.C = run.classical_svm.C;
        const KernelMatrix gram =
            gram_matrix(*model.kernel, data.train_x, data.train_ids, n_threads);
        model.svm = svm_fit(gram, train_pm, model.C);
        model.train_features = data.train_x;
        model.train_ids = data.train_ids;
        break;
    }
    case ModelFamily::Qnn: {
        model.qnn_config = resolve_qnn(run.qnn, n_features);
        TrainResult result = train(*model.qnn_config, run.qnn.train, data.train_x, data.train_y);
        model.qnn_params = std::move(result.params);
        model.history = std::move(result.history);
        model.seed = run.qnn.train.seed;
        break;
    }
    }
    return model;
}

int predict(const TrainedModel& model, std::span<const double> raw_features) {
    Samples one{std::vector<double>(raw_features.begin(), raw_features.end())};
    if (model.pca) {
        one = pca_transform(*model.pca, one);
    }
    one = scale_transform(model.scaler, one);
    const std::vector<double>& x = one.front();

    if (model.family == ModelFamily::Qnn) {
        return qnn_predict(*model.qnn_config, *model.qnn_params, x);
    }
    std::vector<double> k_row(model.train_features.size());
    for (std::size_t j = 0; j < model.train_features.size(); ++j) {
        k_row[j] = model.family == ModelFamily::Qsvm
                       ? quantum_kernel(*model.feature_map, x, model.train_features[j])
                       : classical_kernel(*model.kernel, x, model.train_features[j]);
    }
    return svm_predict(*model.svm, k_row).first == 1 ? 1 : 0;
}

std::string trained_model_to_json(const TrainedModel& model) {
    json doc;
    doc["format"] = "qmlkit-model";
    doc["version"] = 1;
    doc["family"] = family_name(model.family);
    doc["seed"] = model.seed;
    if (model.pca) {
        doc["pca"] = {{"mean", model.pca->mean},
                      {"components", model.pca->components},
                      {"explained_variance", model.pca->explained_variance}};
    }
    doc["scaler"] = {{"min", model.scaler.feature_min},
                     {"max", model.scaler.feature_max},
                     {"lo", model.scaler.lo},
                     {"hi", model.scaler.hi}};
    if (model.family == ModelFamily::Qnn) {
        const QnnConfig& config = *model.qnn_config;
        json pairs = json::array();
        for (const auto& [control, target] : config.entangle_pattern) {
            pairs.push_back(json::array({control, target}));
        }
        json data_angles = json::array();
        json ancilla_angles = json::array();
        for (int a = 0; a < 2; ++a) {
            json per_layer = json::array();
            for (int l = 0; l < config.n_layers; ++l) {
                per_layer.push_back(json::array({model.qnn_params->ancilla_angle(a, l, 0),
                                                 model.qnn_params->ancilla_angle(a, l, 1),
                                                 model.qnn_params->ancilla_angle(a, l, 2)}));
            }
            ancilla_angles.push_back(per_layer);
        }
        for (int l = 0; l < config.n_layers; ++l) {
            json layer = json::array();
            for (int q = 0; q < config.n_data_qubits; ++q) {
                layer.push_back(model.qnn_params->data_angle(l, q));
            }
            data_angles.push_back(layer);
        }
        json history = json::array();
        for (const EpochStats& stats : model.history) {
            history.push_back({{"loss", stats.loss}, {"accuracy", stats.accuracy}});
        }
        doc["qnn"] = {{"config",
                       {{"n_data_qubits", config.n_data_qubits},
                        {"layers", config.n_layers},
                        {"reupload", config.reupload},
                        {"entangle", pairs}}},
                      {"data_angles", data_angles},
                      {"ancilla_angles", ancilla_angles},
                      {"history", history}};
    } else {
        doc["C"] = model.C;
        if (model.feature_map) {
            doc["feature_map"] = {{"kind", map_name(model.feature_map->kind)},
                                  {"depth", model.feature_map->depth},
                                  {"n_features", model.feature_map->n_features},
                                  {"entanglement",
                                   model.feature_map->entanglement == Entanglement::Linear
                                       ? "linear"
                                       : "full"}};
        }
        if (model.kernel) {
            doc["kernel"] = {{"kind", kernel_name(model.kernel->kind)},
                             {"degree", model.kernel->degree},
                             {"gamma", model.kernel->gamma},
                             {"coef0", model.kernel->coef0}};
        }
        doc["svm"] = {{"alphas", model.svm->alphas},
                      {"bias", model.svm->bias},
                      {"labels", model.svm->labels},
                      {"C", model.svm->C},
                      {"support_indices", model.svm->support_indices},
                      {"objective_history", model.svm->objective_history}};
        doc["train_features"] = model.train_features;
        doc["train_ids"] = model.train_ids;
    }
    return doc.dump(2) + "\n";
}

TrainedModel trained_model_from_json(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& error) {
        throw SchemaError(std::string("model is not valid JSON: ") + error.what());
    }
    if (!doc.is_object() || doc.value("format", "") != "qmlkit-model") {
        throw SchemaError("not a qmlkit-model document");
    }
    TrainedModel model;
    const std::string family = doc.at("family").get<std::string>();
    model.seed = doc.value("seed", 0ULL);
    if (doc.contains("pca")) {
        PcaModel pca;
        pca.mean = doc["pca"].at("mean").get<std::vector<double>>();
        pca.components = doc["pca"].at("components").get<std::vector<std::vector<double>>>();
        pca.explained_variance = doc["pca"].at("explained_variance").get<std::vector<double>>();
        model.pca = std::move(pca);
    }
    model.scaler.feature_min = doc.at("scaler").at("min").get<std::vector<double>>();
    model.scaler.feature_max = doc.at("scaler").at("max").get<std::vector<double>>();
    model.scaler.lo = doc.at("scaler").at("lo").get<double>();
    model.scaler.hi = doc.at("scaler").at("hi").get<double>();

    if (family == "qnn") {
        model.family = ModelFamily::Qnn;
        const json& q = doc.at("qnn");
        QnnConfig config;
        config.n_data_qubits = q.at("config").at("n_data_qubits").get<int>();
        config.n_layers = q.at("config").at("layers").get<int>();
        config.reupload = q.at("config").at("reupload").get<bool>();
        for (const json& pair : q.at("config").at("entangle")) {
            config.entangle_pattern.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
        }
        model.qnn_config = config;
        QnnParams params(config);
        const json& data_angles = q.at("data_angles");
        for (int l = 0; l < config.n_layers; ++l) {
            for (int qb = 0; qb < config.n_data_qubits; ++qb) {
                params.data_angle(l, qb) = data_angles.at(l).at(qb).get<double>();
            }
        }
        const json& ancilla_angles = q.at("ancilla_angles");
        for (int a = 0; a < 2; ++a) {
            for (int l = 0; l < config.n_layers; ++l) {
                for (int r = 0; r < 3; ++r) {
                    params.ancilla_angle(a, l, r) =
                        ancilla_angles.at(a).at(l).at(r).get<double>();
                }
            }
        }
        model.qnn_params = std::move(params);
        for (const json& stats : q.at("history")) {
            model.history.push_back(
                {stats.at("loss").get<double>(), stats.at("accuracy").get<double>()});
        }
        return model;
    }

    model.family = family == "qsvm" ? ModelFamily::Qsvm : ModelFamily::ClassicalSvm;
    model.C = doc.at("C").get<double>();
    if (doc.contains("feature_map")) {
        FeatureMapConfig config;
        const std::string kind = doc["feature_map"].at("kind").get<std::string>();
        config.kind = kind == "zz"      ? FeatureMapKind::ZZFeature
                      : kind == "pauli" ? FeatureMapKind::PauliFeature
                      : kind == "zzphi" ? FeatureMapKind::ZZphiFeature
                                        : FeatureMapKind::ZFeature;
        config.depth = doc["feature_map"].at("depth").get<int>();
        config.n_features = doc["feature_map"].at("n_features").get<int>();
        config.entanglement = doc["feature_map"].at("entanglement").get<std::string>() == "full"
                                  ? Entanglement::Full
                                  : Entanglement::Linear;
        model.feature_map = config;
    }
    if (doc.contains("kernel")) {
        ClassicalKernelSpec kernel;
        const std::string kind = doc["kernel"].at("kind").get<std::string>();
        kernel.kind = kind == "linear" ? ClassicalKernelKind::Linear
                      : kind == "poly" ? ClassicalKernelKind::Poly
                      : kind == "rbf"  ? ClassicalKernelKind::Rbf
                                       : ClassicalKernelKind::Sigmoid;
        kernel.degree = doc["kernel"].at("degree").get<int>();
        kernel.gamma = doc["kernel"].at("gamma").get<double>();
        kernel.coef0 = doc["kernel"].at("coef0").get<double>();
        model.kernel = kernel;
    }
    SvmModel svm;
    svm.alphas = doc.at("svm").at("alphas").get<std::vector<double>>();
    svm.bias = doc.at("svm").at("bias").get<double>();
    svm.labels = doc.at("svm").at("labels").get<std::vector<int>>();
    svm.C = doc.at("svm").at("C").get<double>();
    svm.support_indices = doc.at("svm").at("support_indices").get<std::vector<std::size_t>>();
    svm.objective_history = doc.at("svm").at("objective_history").get<std::vector<double>>();
    model.svm = std::move(svm);
    model.train_features = doc.at("train_features").get<Samples>();
    model.train_ids = doc.at("train_ids").get<std::vector<std::string>>();
    return model;
}

} // namespace qmlkit
