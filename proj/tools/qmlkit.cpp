#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qmlkit/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct CommonOptions {
    std::string config_path;
    std::string out;
    std::string format = "json";
    bool format_set = false;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
};

int env_threads() {
    if (const char* value = std::getenv("QMLKIT_THREADS")) {
        const int parsed = std::atoi(value);
        if (parsed >= 1) {
            return parsed;
        }
    }
    return 1;
}

void add_common(CLI::App* cmd, CommonOptions& options, bool with_config = true) {
    if (with_config) {
        cmd->add_option("--config", options.config_path, "Experiment config JSON")->required();
    }
    cmd->add_option("--out", options.out, "Output file path");
    cmd->add_option("--format", options.format,
                    "Report format: csv or json (default: from the output extension)")
        ->check(CLI::IsMember({"csv", "json"}))
        ->each([&options](const std::string&) { options.format_set = true; });
    cmd->add_option("--seed", options.seed, "Override the config's top-level seed")
        ->each([&options](const std::string&) { options.seed_set = true; });
    cmd->add_option("--threads", options.threads,
                    "Worker threads (default: QMLKIT_THREADS env var, else 1)");
}

qmlkit::ExperimentConfig load_config(const CommonOptions& options) {
    std::ifstream in(options.config_path);
    if (!in) {
        throw qmlkit::IoError("cannot open config file: " + options.config_path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    if (options.seed_set) {
        // Patch the document so every seed default derives from the override.
        auto doc = nlohmann::json::parse(text, nullptr, false);
        if (!doc.is_discarded() && doc.is_object()) {
            doc["seed"] = options.seed;
            text = doc.dump();
        }
    }
    return qmlkit::parse_experiment_config(text);
}

int resolve_threads(const CommonOptions& options) {
    return options.threads >= 1 ? options.threads : env_threads();
}

qmlkit::ReportFormat to_format(const std::string& name) {
    return name == "csv" ? qmlkit::ReportFormat::Csv : qmlkit::ReportFormat::Json;
}

void write_report(const qmlkit::RunReport& report, const CommonOptions& options,
                  const std::string& config_output) {
    const std::string path = !options.out.empty() ? options.out : config_output;
    if (path.empty()) {
        std::cout << (options.format == "csv" ? qmlkit::report_to_csv(report)
                                              : qmlkit::report_to_json(report));
        return;
    }
    qmlkit::ReportFormat format;
    if (options.format_set) {
        format = to_format(options.format);
    } else {
        const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
        format = csv ? qmlkit::ReportFormat::Csv : qmlkit::ReportFormat::Json;
    }
    qmlkit::emit_report(report, format, path);
    std::cerr << "report written to " << path << "\n";
}

void print_summary(const qmlkit::RunReport& report) {
    for (const auto& row : report.rows) {
        std::cerr << row.model << '/' << row.detail << " [" << row.fingerprint
                  << "] train_acc=" << row.train_accuracy << " test_acc=" << row.test_accuracy
                  << " f1=" << row.f1 << " (" << row.wall_time_s << " s)\n";
    }
}

int run_preprocess(const CommonOptions& options) {
    const auto config = load_config(options);
    const auto& run = config.base;
    qmlkit::Dataset dataset;
    switch (run.dataset.source) {
    case qmlkit::DatasetSpec::Source::Csv:
        dataset = qmlkit::load_csv(run.dataset.csv_path, run.dataset.label_column);
        break;
    case qmlkit::DatasetSpec::Source::Binaries:
        dataset = qmlkit::load_binaries_dir(run.dataset.binaries_dir);
        break;
    case qmlkit::DatasetSpec::Source::Synthetic:
        dataset = qmlkit::generate_synthetic(run.dataset.synthetic.kind, run.dataset.synthetic.n,
                                             run.dataset.synthetic.seed,
                                             run.dataset.synthetic.n_features);
        break;
    }
    // Standalone export: the pipeline is fitted on the whole dataset.
    qmlkit::Samples features = dataset.samples;
    if (run.preprocessing.pca > 0) {
        const auto pca = qmlkit::pca_fit(features, run.preprocessing.pca);
        features = qmlkit::pca_transform(pca, features);
    }
    const auto scaler =
        qmlkit::scale_fit(features, run.preprocessing.scale_lo, run.preprocessing.scale_hi);
    features = qmlkit::scale_transform(scaler, features);
    qmlkit::Dataset out{std::move(features), dataset.labels, dataset.ids};
    if (options.out.empty()) {
        throw qmlkit::ValidationError({"preprocess requires --out <features.csv>"});
    }
    qmlkit::write_csv(out, options.out);
    std::cerr << "features written to " << options.out << "\n";
    return kExitOk;
}

int run_kernel(const CommonOptions& options) {
    const auto config = load_config(options);
    if (options.out.empty()) {
        throw qmlkit::ValidationError({"kernel requires --out <gram.csv>"});
    }
    if (config.base.family == qmlkit::ModelFamily::Qnn) {
        throw qmlkit::ValidationError({"kernel requires an svm model family"});
    }
    const auto model = qmlkit::train_model(config.base, resolve_threads(options));
    qmlkit::KernelMatrix gram;
    if (model.feature_map) {
        gram = qmlkit::gram_matrix(*model.feature_map, model.train_features, model.train_ids,
                                   resolve_threads(options));
    } else {
        gram = qmlkit::gram_matrix(*model.kernel, model.train_features, model.train_ids,
                                   resolve_threads(options));
    }
    qmlkit::write_gram_csv(gram, options.out);
    std::cerr << "gram matrix (" << gram.n_rows << "x" << gram.n_cols << ") written to "
              << options.out << "\n";
    return kExitOk;
}

int run_train(const CommonOptions& options) {
    const auto config = load_config(options);
    if (options.out.empty()) {
        throw qmlkit::ValidationError({"train requires --out <model.json>"});
    }
    const auto model = qmlkit::train_model(config.base, resolve_threads(options));
    std::ofstream out(options.out, std::ios::binary);
    if (!out) {
        throw qmlkit::IoError("cannot open " + options.out + " for writing");
    }
    out << qmlkit::trained_model_to_json(model);
    std::cerr << "model written to " << options.out << "\n";
    return kExitOk;
}

int run_evaluate(const CommonOptions& options, bool full_sweep) {
    auto config = load_config(options);
    if (!full_sweep) {
        config.runs = {config.base};
    }
    // The CLI controls where the report goes: --out wins, then the config's
    // output path, then stdout.
    const std::string config_output = config.output;
    config.output.clear();
    const auto report = qmlkit::run_experiment(config, resolve_threads(options));
    print_summary(report);
    write_report(report, options, config_output);
    return kExitOk;
}

int run_report(const CommonOptions& options, const std::string& in_path) {
    std::ifstream in(in_path);
    if (!in) {
        throw qmlkit::IoError("cannot open report file: " + in_path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const auto report = qmlkit::report_from_json(buffer.str());
    write_report(report, options, "");
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum-kernel SVM and variational QNN experiment toolkit"};
    app.set_version_flag("--version", qmlkit::kToolkitVersion);
    app.require_subcommand(1);

    CommonOptions preprocess_opts, kernel_opts, train_opts, evaluate_opts, sweep_opts,
        report_opts;
    std::string report_in;

    add_common(app.add_subcommand("preprocess", "Export the preprocessed feature table"),
               preprocess_opts);
    add_common(app.add_subcommand("kernel", "Dump the training Gram matrix as CSV"), kernel_opts);
    add_common(app.add_subcommand("train", "Train the configured model and save it"), train_opts);
    add_common(app.add_subcommand("evaluate", "Run the base config and report metrics"),
               evaluate_opts);
    add_common(app.add_subcommand("sweep", "Run every sweep point and report metrics"),
               sweep_opts);
    auto* report_cmd =
        app.add_subcommand("report", "Re-emit a saved JSON report as csv or json");
    report_cmd->add_option("--in", report_in, "Saved report JSON")->required();
    add_common(report_cmd, report_opts, /*with_config=*/false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("preprocess")) {
            return run_preprocess(preprocess_opts);
        }
        if (app.got_subcommand("kernel")) {
            return run_kernel(kernel_opts);
        }
        if (app.got_subcommand("train")) {
            return run_train(train_opts);
        }
        if (app.got_subcommand("evaluate")) {
            return run_evaluate(evaluate_opts, false);
        }
        if (app.got_subcommand("sweep")) {
            return run_evaluate(sweep_opts, true);
        }
        if (app.got_subcommand("report")) {
            return run_report(report_opts, report_in);
        }
    } catch (const qmlkit::ValidationError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitValidation;
    } catch (const qmlkit::SchemaError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
