#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmlkit/kernel.hpp"
#include "qmlkit/preprocess.hpp"
#include "qmlkit/qnn.hpp"
#include "qmlkit/svm.hpp"

namespace qmlkit {

inline constexpr const char* kToolkitVersion = "0.1.0";

/// Carries every violation found while validating a config document.
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

  private:
    std::vector<std::string> violations_;
};

enum class ModelFamily { Qsvm, ClassicalSvm, Qnn };

struct SyntheticSpec {
    SyntheticKind kind = SyntheticKind::AngularBlobs;
    int n = 0;
    int n_features = 2;
    std::uint64_t seed = 0;
};

struct DatasetSpec {
    enum class Source { Csv, Binaries, Synthetic };
    Source source = Source::Synthetic;
    std::string csv_path;
    std::string label_column = "label";
    std::string binaries_dir;
    SyntheticSpec synthetic;
};

struct SplitSpec {
    int train = 0;
    int test = 0;
    std::uint64_t seed = 0;
};

struct PreprocessSpec {
    bool image = false; // implied by a binaries dataset
    int pca = 0;        // 0 = off
    double scale_lo = 0.0;
    double scale_hi = 0.0;
    bool scale_explicit = false; // false = family default ([0,pi] svm, [0,pi/2] qnn)
};

struct QsvmModelSpec {
    FeatureMapKind map_kind = FeatureMapKind::ZZFeature;
    int depth = 2;
    Entanglement entanglement = Entanglement::Linear;
    double C = 1.0;
};

struct ClassicalSvmModelSpec {
    ClassicalKernelKind kernel_kind = ClassicalKernelKind::Rbf;
    int degree = 3;
    double gamma = 0.0; // 0 = resolve to 1/n_features
    double coef0 = 0.0;
    double C = 1.0;
};

struct QnnModelSpec {
    int layers = 1;
    bool reupload = false;
    std::optional<std::vector<std::pair<int, int>>> entangle; // absent = chain
    TrainConfig train;
    bool train_seed_explicit = false;
    bool batch_size_explicit = false;
};

/// One fully-resolved run (a sweep point, or the base config when there is
/// no sweep). Feature counts are resolved against the dataset at run time.
struct RunConfig {
    std::uint64_t seed = 0;
    DatasetSpec dataset;
    SplitSpec split;
    PreprocessSpec preprocessing;
    ModelFamily family = ModelFamily::Qsvm;
    QsvmModelSpec qsvm;
    ClassicalSvmModelSpec classical_svm;
    QnnModelSpec qnn;
    std::string fingerprint;    // FNV-1a of canonical_json
    std::string canonical_json; // resolved config, sorted keys
};

struct ExperimentConfig {
    int version = 1;
    std::string output; // report path; empty = return only
    RunConfig base;
    std::vector<RunConfig> runs; // sweep points, or {base}
};

ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

struct RunRow {
    std::string fingerprint;
    std::string model;  // qsvm | classical_svm | qnn
    std::string detail; // feature map or kernel name
    int n_features = 0;
    int train_size = 0;
    int test_size = 0;
    int layers = 0;
    int epochs = 0;
    double learning_rate = 0.0;
    std::string gradient_method;
    bool reupload = false;
    std::uint64_t seed = 0;
    double train_accuracy = 0.0;
    double test_accuracy = 0.0;
    double f1 = 0.0;
    std::vector<double> epoch_loss;     // qnn only
    std::vector<double> epoch_accuracy; // qnn only
    double wall_time_s = 0.0;           // displayed, never serialized
};

/// Equality over the serialized fields (wall_time_s is excluded, it never
/// reaches the report file).
bool operator==(const RunRow& a, const RunRow& b);

struct RunReport {
    std::string toolkit_version = kToolkitVersion;
    std::vector<RunRow> rows;
};

bool operator==(const RunReport& a, const RunReport& b);

enum class ReportFormat { Csv, Json };

/// Executes every run in the config and, when config.output is set, writes
/// the report there (format from the file extension). Identical configs give
/// byte-identical reports for any thread count.
RunReport run_experiment(const ExperimentConfig& config, int n_threads = 1);

std::string report_to_json(const RunReport& report);
std::string report_to_csv(const RunReport& report);
RunReport report_from_json(const std::string& json_text);
void emit_report(const RunReport& report, ReportFormat format, const std::string& path);

/// Seeded, stratified shuffle-then-prefix split.
struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};
SplitIndices stratified_split(std::span<const int> labels, int n_train, int n_test,
                              std::uint64_t seed);

/// Self-contained trained model: the fitted preprocessing chain plus either
/// an SVM (with its support features) or trained QNN parameters.
struct TrainedModel {
    ModelFamily family = ModelFamily::Qsvm;
    std::optional<FeatureMapConfig> feature_map;
    std::optional<ClassicalKernelSpec> kernel;
    double C = 1.0;
    std::optional<SvmModel> svm;
    Samples train_features; // kernel rows are evaluated against these
    std::vector<std::string> train_ids;
    std::optional<QnnConfig> qnn_config;
    std::optional<QnnParams> qnn_params;
    std::vector<EpochStats> history;
    std::uint64_t seed = 0;
    std::optional<PcaModel> pca;
    ScalerModel scaler;
};

/// Trains on the config's training split and returns the bundled model.
TrainedModel train_model(const RunConfig& config, int n_threads = 1);

/// Applies the stored preprocessing chain and model to one raw sample.
/// Returns 0 (benign) or 1 (malicious).
int predict(const TrainedModel& model, std::span<const double> raw_features);

std::string trained_model_to_json(const TrainedModel& model);
TrainedModel trained_model_from_json(const std::string& json_text);

} // namespace qmlkit
