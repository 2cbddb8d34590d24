#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qmlkit/experiment.hpp"

namespace qmlkit {

using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = kPi / 2.0;

std::string fnv1a64_hex(const std::string& text) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string hex(16, '0');
    for (int i = 15; i >= 0; --i) {
        hex[static_cast<std::size_t>(i)] = digits[hash & 0xF];
        hash >>= 4;
    }
    return hex;
}

struct Validator {
    std::vector<std::string> errors;

    void fail(const std::string& path, const std::string& message) {
        errors.push_back(path + ": " + message);
    }

    void check_keys(const json& node, const std::string& path,
                    std::initializer_list<const char*> allowed) {
        for (const auto& [key, value] : node.items()) {
            if (std::find_if(allowed.begin(), allowed.end(),
                             [&](const char* k) { return key == k; }) == allowed.end()) {
                fail(path, "unknown key '" + key + "'");
            }
        }
    }

    bool require_object(const json& node, const std::string& path) {
        if (!node.is_object()) {
            fail(path, "must be an object");
            return false;
        }
        return true;
    }

    std::int64_t get_int(const json& node, const std::string& path, const char* key,
                         std::int64_t fallback, bool required = false) {
        if (!node.contains(key)) {
            if (required) {
                fail(path, std::string("missing required key '") + key + "'");
            }
            return fallback;
        }
        if (!node[key].is_number_integer()) {
            fail(path + "." + key, "must be an integer");
            return fallback;
        }
        return node[key].get<std::int64_t>();
    }

    double get_double(const json& node, const std::string& path, const char* key, double fallback,
                      bool required = false) {
        if (!node.contains(key)) {
            if (required) {
                fail(path, std::string("missing required key '") + key + "'");
            }
            return fallback;
        }
        if (!node[key].is_number()) {
            fail(path + "." + key, "must be a number");
            return fallback;
        }
        return node[key].get<double>();
    }

    bool get_bool(const json& node, const std::string& path, const char* key, bool fallback) {
        if (!node.contains(key)) {
            return fallback;
        }
        if (!node[key].is_boolean()) {
            fail(path + "." + key, "must be a boolean");
            return fallback;
        }
        return node[key].get<bool>();
    }

    std::string get_string(const json& node, const std::string& path, const char* key,
                           const std::string& fallback, bool required = false) {
        if (!node.contains(key)) {
            if (required) {
                fail(path, std::string("missing required key '") + key + "'");
            }
            return fallback;
        }
        if (!node[key].is_string()) {
            fail(path + "." + key, "must be a string");
            return fallback;
        }
        return node[key].get<std::string>();
    }
};

FeatureMapKind parse_map_kind(const std::string& text, const std::string& path, Validator& v) {
    if (text == "zz") return FeatureMapKind::ZZFeature;
    if (text == "pauli") return FeatureMapKind::PauliFeature;
    if (text == "zzphi") return FeatureMapKind::ZZphiFeature;
    if (text == "z") return FeatureMapKind::ZFeature;
    v.fail(path, "feature map kind must be one of zz|pauli|zzphi|z");
    return FeatureMapKind::ZZFeature;
}

std::string map_kind_name(FeatureMapKind kind) {
    switch (kind) {
    case FeatureMapKind::ZZFeature: return "zz";
    case FeatureMapKind::PauliFeature: return "pauli";
    case FeatureMapKind::ZZphiFeature: return "zzphi";
    case FeatureMapKind::ZFeature: return "z";
    }
    return "zz";
}

ClassicalKernelKind parse_kernel_kind(const std::string& text, const std::string& path,
                                      Validator& v) {
    if (text == "linear") return ClassicalKernelKind::Linear;
    if (text == "poly") return ClassicalKernelKind::Poly;
    if (text == "rbf") return ClassicalKernelKind::Rbf;
    if (text == "sigmoid") return ClassicalKernelKind::Sigmoid;
    v.fail(path, "kernel kind must be one of linear|poly|rbf|sigmoid");
    return ClassicalKernelKind::Rbf;
}

std::string kernel_kind_name(ClassicalKernelKind kind) {
    switch (kind) {
    case ClassicalKernelKind::Linear: return "linear";
    case ClassicalKernelKind::Poly: return "poly";
    case ClassicalKernelKind::Rbf: return "rbf";
    case ClassicalKernelKind::Sigmoid: return "sigmoid";
    }
    return "rbf";
}

RunConfig parse_run(const json& doc, Validator& v) {
    RunConfig run;
    v.check_keys(doc, "config",
                 {"version", "seed", "dataset", "split", "preprocessing", "model", "sweep",
                  "output"});

    const std::int64_t version = v.get_int(doc, "config", "version", 1, true);
    if (version != 1) {
        v.fail("config.version", "unsupported config version " + std::to_string(version));
    }
    run.seed = static_cast<std::uint64_t>(v.get_int(doc, "config", "seed", 0));

    // dataset
    if (!doc.contains("dataset")) {
        v.fail("config", "missing required key 'dataset'");
    } else if (v.require_object(doc["dataset"], "dataset")) {
        const json& ds = doc["dataset"];
        v.check_keys(ds, "dataset", {"csv", "binaries", "synthetic"});
        const int present = static_cast<int>(ds.contains("csv")) +
                            static_cast<int>(ds.contains("binaries")) +
                            static_cast<int>(ds.contains("synthetic"));
        if (present != 1) {
            v.fail("dataset", "exactly one of csv|binaries|synthetic is required");
        } else if (ds.contains("csv") && v.require_object(ds["csv"], "dataset.csv")) {
            run.dataset.source = DatasetSpec::Source::Csv;
            v.check_keys(ds["csv"], "dataset.csv", {"path", "label_column"});
            run.dataset.csv_path = v.get_string(ds["csv"], "dataset.csv", "path", "", true);
            run.dataset.label_column =
                v.get_string(ds["csv"], "dataset.csv", "label_column", "label");
        } else if (ds.contains("binaries") &&
                   v.require_object(ds["binaries"], "dataset.binaries")) {
            run.dataset.source = DatasetSpec::Source::Binaries;
            v.check_keys(ds["binaries"], "dataset.binaries", {"dir"});
            run.dataset.binaries_dir =
                v.get_string(ds["binaries"], "dataset.binaries", "dir", "", true);
        } else if (ds.contains("synthetic") &&
                   v.require_object(ds["synthetic"], "dataset.synthetic")) {
            run.dataset.source = DatasetSpec::Source::Synthetic;
            const json& syn = ds["synthetic"];
            v.check_keys(syn, "dataset.synthetic", {"kind", "n", "features", "seed"});
            const std::string kind =
                v.get_string(syn, "dataset.synthetic", "kind", "angular_blobs", true);
            if (kind == "angular_blobs") {
                run.dataset.synthetic.kind = SyntheticKind::AngularBlobs;
            } else if (kind == "noisy_xor") {
                run.dataset.synthetic.kind = SyntheticKind::NoisyXor;
            } else {
                v.fail("dataset.synthetic.kind", "must be angular_blobs or noisy_xor");
            }
            run.dataset.synthetic.n =
                static_cast<int>(v.get_int(syn, "dataset.synthetic", "n", 0, true));
            if (run.dataset.synthetic.n < 4) {
                v.fail("dataset.synthetic.n", "must be >= 4");
            }
            run.dataset.synthetic.n_features =
                static_cast<int>(v.get_int(syn, "dataset.synthetic", "features", 2));
            if (run.dataset.synthetic.n_features < 1) {
                v.fail("dataset.synthetic.features", "must be >= 1");
            }
            run.dataset.synthetic.seed = static_cast<std::uint64_t>(
                v.get_int(syn, "dataset.synthetic", "seed",
                          static_cast<std::int64_t>(run.seed)));
        }
    }

    // split
    if (!doc.contains("split")) {
        v.fail("config", "missing required key 'split'");
    } else if (v.require_object(doc["split"], "split")) {
        const json& sp = doc["split"];
        v.check_keys(sp, "split", {"train", "test", "seed"});
        run.split.train = static_cast<int>(v.get_int(sp, "split", "train", 0, true));
        run.split.test = static_cast<int>(v.get_int(sp, "split", "test", 0, true));
        if (run.split.train < 2) {
            v.fail("split.train", "must be >= 2 (one sample per class)");
        }
        if (run.split.test < 1) {
            v.fail("split.test", "must be >= 1");
        }
        run.split.seed = static_cast<std::uint64_t>(
            v.get_int(sp, "split", "seed", static_cast<std::int64_t>(run.seed)));
    }

    // preprocessing
    run.preprocessing.image = run.dataset.source == DatasetSpec::Source::Binaries;
    if (doc.contains("preprocessing") && v.require_object(doc["preprocessing"], "preprocessing")) {
        const json& pre = doc["preprocessing"];
        v.check_keys(pre, "preprocessing", {"image", "pca", "scale"});
        const bool image = v.get_bool(pre, "preprocessing", "image", run.preprocessing.image);
        if (image != (run.dataset.source == DatasetSpec::Source::Binaries)) {
            v.fail("preprocessing.image",
                   "grayscale conversion applies exactly when the dataset is a binaries dir");
        }
        run.preprocessing.image = image;
        run.preprocessing.pca = static_cast<int>(v.get_int(pre, "preprocessing", "pca", 0));
        if (run.preprocessing.pca < 0) {
            v.fail("preprocessing.pca", "must be >= 0 (0 disables PCA)");
        }
        if (pre.contains("scale") && v.require_object(pre["scale"], "preprocessing.scale")) {
            v.check_keys(pre["scale"], "preprocessing.scale", {"lo", "hi"});
            run.preprocessing.scale_lo =
                v.get_double(pre["scale"], "preprocessing.scale", "lo", 0.0, true);
            run.preprocessing.scale_hi =
                v.get_double(pre["scale"], "preprocessing.scale", "hi", 0.0, true);
            run.preprocessing.scale_explicit = true;
            if (run.preprocessing.scale_hi <= run.preprocessing.scale_lo) {
                v.fail("preprocessing.scale", "requires hi > lo");
            }
        }
    }

    // model
    if (!doc.contains("model")) {
        v.fail("config", "missing required key 'model'");
    } else if (v.require_object(doc["model"], "model")) {
        const json& model = doc["model"];
        v.check_keys(model, "model", {"qsvm", "classical_svm", "qnn"});
        const int present = static_cast<int>(model.contains("qsvm")) +
                            static_cast<int>(model.contains("classical_svm")) +
                            static_cast<int>(model.contains("qnn"));
        if (present != 1) {
            v.fail("model", "exactly one of qsvm|classical_svm|qnn is required");
        } else if (model.contains("qsvm") && v.require_object(model["qsvm"], "model.qsvm")) {
            run.family = ModelFamily::Qsvm;
            const json& q = model["qsvm"];
            v.check_keys(q, "model.qsvm", {"feature_map", "C"});
            run.qsvm.C = v.get_double(q, "model.qsvm", "C", 1.0);
            if (run.qsvm.C <= 0.0) {
                v.fail("model.qsvm.C", "must be > 0");
            }
            if (q.contains("feature_map") &&
                v.require_object(q["feature_map"], "model.qsvm.feature_map")) {
                const json& fm = q["feature_map"];
                v.check_keys(fm, "model.qsvm.feature_map", {"kind", "depth", "entanglement"});
                run.qsvm.map_kind = parse_map_kind(
                    v.get_string(fm, "model.qsvm.feature_map", "kind", "zz"),
                    "model.qsvm.feature_map.kind", v);
                run.qsvm.depth =
                    static_cast<int>(v.get_int(fm, "model.qsvm.feature_map", "depth", 2));
                if (run.qsvm.depth < 1) {
                    v.fail("model.qsvm.feature_map.depth", "must be >= 1");
                }
                const std::string ent =
                    v.get_string(fm, "model.qsvm.feature_map", "entanglement", "linear");
                if (ent == "linear") {
                    run.qsvm.entanglement = Entanglement::Linear;
                } else if (ent == "full") {
                    run.qsvm.entanglement = Entanglement::Full;
                } else {
                    v.fail("model.qsvm.feature_map.entanglement", "must be linear or full");
                }
            }
        } else if (model.contains("classical_svm") &&
                   v.require_object(model["classical_svm"], "model.classical_svm")) {
            run.family = ModelFamily::ClassicalSvm;
            const json& c = model["classical_svm"];
            v.check_keys(c, "model.classical_svm", {"kernel", "C"});
            run.classical_svm.C = v.get_double(c, "model.classical_svm", "C", 1.0);
            if (run.classical_svm.C <= 0.0) {
                v.fail("model.classical_svm.C", "must be > 0");
            }
            if (c.contains("kernel") &&
                v.require_object(c["kernel"], "model.classical_svm.kernel")) {
                const json& k = c["kernel"];
                v.check_keys(k, "model.classical_svm.kernel",
                             {"kind", "degree", "gamma", "coef0"});
                run.classical_svm.kernel_kind = parse_kernel_kind(
                    v.get_string(k, "model.classical_svm.kernel", "kind", "rbf"),
                    "model.classical_svm.kernel.kind", v);
                run.classical_svm.degree =
                    static_cast<int>(v.get_int(k, "model.classical_svm.kernel", "degree", 3));
                if (run.classical_svm.degree < 1) {
                    v.fail("model.classical_svm.kernel.degree", "must be >= 1");
                }
                run.classical_svm.gamma =
                    v.get_double(k, "model.classical_svm.kernel", "gamma", 0.0);
                if (k.contains("gamma") && run.classical_svm.gamma <= 0.0) {
                    v.fail("model.classical_svm.kernel.gamma", "must be > 0");
                }
                run.classical_svm.coef0 =
                    v.get_double(k, "model.classical_svm.kernel", "coef0", 0.0);
            }
        } else if (model.contains("qnn") && v.require_object(model["qnn"], "model.qnn")) {
            run.family = ModelFamily::Qnn;
            const json& q = model["qnn"];
            v.check_keys(q, "model.qnn", {"layers", "reupload", "entangle", "train"});
            run.qnn.layers = static_cast<int>(v.get_int(q, "model.qnn", "layers", 1));
            if (run.qnn.layers < 1) {
                v.fail("model.qnn.layers", "must be >= 1");
            }
            run.qnn.reupload = v.get_bool(q, "model.qnn", "reupload", false);
            if (q.contains("entangle")) {
                if (!q["entangle"].is_array()) {
                    v.fail("model.qnn.entangle", "must be an array of [control, target] pairs");
                } else {
                    std::vector<std::pair<int, int>> pairs;
                    for (std::size_t i = 0; i < q["entangle"].size(); ++i) {
                        const json& pair = q["entangle"][i];
                        if (!pair.is_array() || pair.size() != 2 ||
                            !pair[0].is_number_integer() || !pair[1].is_number_integer()) {
                            v.fail("model.qnn.entangle[" + std::to_string(i) + "]",
                                   "must be a [control, target] integer pair");
                            continue;
                        }
                        pairs.emplace_back(pair[0].get<int>(), pair[1].get<int>());
                    }
                    run.qnn.entangle = std::move(pairs);
                }
            }
            run.qnn.train.gradient_method = GradientMethod::ParameterShift;
            if (q.contains("train") && v.require_object(q["train"], "model.qnn.train")) {
                const json& t = q["train"];
                v.check_keys(t, "model.qnn.train",
                             {"learning_rate", "epochs", "batch_size", "gradient",
                              "spsb_epsilon", "seed"});
                run.qnn.train.learning_rate =
                    v.get_double(t, "model.qnn.train", "learning_rate", 0.1);
                if (run.qnn.train.learning_rate < 0.0) {
                    v.fail("model.qnn.train.learning_rate", "must be >= 0");
                }
                run.qnn.train.epochs =
                    static_cast<int>(v.get_int(t, "model.qnn.train", "epochs", 1));
                if (run.qnn.train.epochs < 1) {
                    v.fail("model.qnn.train.epochs", "must be >= 1");
                }
                const std::string gradient =
                    v.get_string(t, "model.qnn.train", "gradient", "parameter_shift");
                if (gradient == "parameter_shift") {
                    run.qnn.train.gradient_method = GradientMethod::ParameterShift;
                } else if (gradient == "spsb") {
                    run.qnn.train.gradient_method = GradientMethod::Spsb;
                } else {
                    v.fail("model.qnn.train.gradient", "must be parameter_shift or spsb");
                }
                if (t.contains("batch_size")) {
                    run.qnn.batch_size_explicit = true;
                    run.qnn.train.batch_size =
                        static_cast<int>(v.get_int(t, "model.qnn.train", "batch_size", 1));
                    if (run.qnn.train.batch_size < 1) {
                        v.fail("model.qnn.train.batch_size", "must be >= 1");
                    }
                }
                run.qnn.train.spsb_epsilon =
                    v.get_double(t, "model.qnn.train", "spsb_epsilon", 0.01);
                if (run.qnn.train.spsb_epsilon <= 0.0) {
                    v.fail("model.qnn.train.spsb_epsilon", "must be > 0");
                }
                if (t.contains("seed")) {
                    run.qnn.train_seed_explicit = true;
                    run.qnn.train.seed =
                        static_cast<std::uint64_t>(v.get_int(t, "model.qnn.train", "seed", 0));
                }
            }
            if (!run.qnn.batch_size_explicit) {
                run.qnn.train.batch_size =
                    run.qnn.train.gradient_method == GradientMethod::Spsb ? 32 : 1;
            }
            if (!run.qnn.train_seed_explicit) {
                run.qnn.train.seed = run.seed;
            }
        }
    }

    if (run.dataset.source == DatasetSpec::Source::Synthetic && run.dataset.synthetic.n > 0 &&
        run.split.train + run.split.test > run.dataset.synthetic.n) {
        v.fail("split", "train + test exceeds the synthetic dataset size " +
                            std::to_string(run.dataset.synthetic.n));
    }

    // family-dependent defaults
    if (!run.preprocessing.scale_explicit) {
        run.preprocessing.scale_lo = 0.0;
        run.preprocessing.scale_hi = run.family == ModelFamily::Qnn ? kHalfPi : kPi;
    }
    if (run.family == ModelFamily::Qnn &&
        (run.preprocessing.scale_lo < 0.0 || run.preprocessing.scale_hi > kHalfPi)) {
        v.fail("preprocessing.scale", "qnn inputs must stay within [0, pi/2]");
    }

    if (doc.contains("output") && !doc["output"].is_string()) {
        v.fail("config.output", "must be a string path");
    }
    return run;
}

json canonical_json_of(const RunConfig& run) {
    json doc;
    doc["seed"] = run.seed;
    switch (run.dataset.source) {
    case DatasetSpec::Source::Csv:
        doc["dataset"]["csv"] = {{"path", run.dataset.csv_path},
                                 {"label_column", run.dataset.label_column}};
        break;
    case DatasetSpec::Source::Binaries:
        doc["dataset"]["binaries"] = {{"dir", run.dataset.binaries_dir}};
        break;
    case DatasetSpec::Source::Synthetic:
        doc["dataset"]["synthetic"] = {
            {"kind",
             run.dataset.synthetic.kind == SyntheticKind::AngularBlobs ? "angular_blobs"
                                                                       : "noisy_xor"},
            {"n", run.dataset.synthetic.n},
            {"features", run.dataset.synthetic.n_features},
            {"seed", run.dataset.synthetic.seed}};
        break;
    }
    doc["split"] = {{"train", run.split.train},
                    {"test", run.split.test},
                    {"seed", run.split.seed}};
    doc["preprocessing"] = {{"image", run.preprocessing.image},
                            {"pca", run.preprocessing.pca},
                            {"scale", {{"lo", run.preprocessing.scale_lo},
                                       {"hi", run.preprocessing.scale_hi}}}};
    switch (run.family) {
    case ModelFamily::Qsvm:
        doc["model"]["qsvm"] = {
            {"feature_map",
             {{"kind", map_kind_name(run.qsvm.map_kind)},
              {"depth", run.qsvm.depth},
              {"entanglement",
               run.qsvm.entanglement == Entanglement::Linear ? "linear" : "full"}}},
            {"C", run.qsvm.C}};
        break;
    case ModelFamily::ClassicalSvm:
        doc["model"]["classical_svm"] = {
            {"kernel",
             {{"kind", kernel_kind_name(run.classical_svm.kernel_kind)},
              {"degree", run.classical_svm.degree},
              {"gamma", run.classical_svm.gamma}, // 0 = 1/n_features at run time
              {"coef0", run.classical_svm.coef0}}},
            {"C", run.classical_svm.C}};
        break;
    case ModelFamily::Qnn: {
        json qnn = {{"layers", run.qnn.layers},
                    {"reupload", run.qnn.reupload},
                    {"train",
                     {{"learning_rate", run.qnn.train.learning_rate},
                      {"epochs", run.qnn.train.epochs},
                      {"batch_size", run.qnn.train.batch_size},
                      {"gradient",
                       run.qnn.train.gradient_method == GradientMethod::Spsb ? "spsb"
                                                                             : "parameter_shift"},
                      {"spsb_epsilon", run.qnn.train.spsb_epsilon},
                      {"seed", run.qnn.train.seed}}}};
        if (run.qnn.entangle) {
            json pairs = json::array();
            for (const auto& [control, target] : *run.qnn.entangle) {
                pairs.push_back(json::array({control, target}));
            }
            qnn["entangle"] = pairs;
        } else {
            qnn["entangle"] = "chain";
        }
        doc["model"]["qnn"] = qnn;
        break;
    }
    }
    return doc;
}

void finalize_run(RunConfig& run) {
    run.canonical_json = canonical_json_of(run).dump();
    run.fingerprint = fnv1a64_hex(run.canonical_json);
}

/// Navigates a dotted path inside `doc`; returns nullptr when any segment is
/// missing. The final segment must already exist (overrides never create
/// keys).
json* navigate(json& doc, const std::string& dotted) {
    json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = dotted.find('.', start);
        const std::string key = dotted.substr(start, dot == std::string::npos
                                                         ? std::string::npos
                                                         : dot - start);
        if (!node->is_object() || !node->contains(key)) {
            return nullptr;
        }
        node = &(*node)[key];
        if (dot == std::string::npos) {
            return node;
        }
        start = dot + 1;
    }
}

bool same_category(const json& a, const json& b) {
    if (a.is_number() && b.is_number()) {
        return true;
    }
    return a.type() == b.type();
}

} // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error([&violations] {
          std::ostringstream message;
          message << "invalid config (" << violations.size() << " violation"
                  << (violations.size() == 1 ? "" : "s") << "):";
          for (const auto& violation : violations) {
              message << "\n  - " << violation;
          }
          return message.str();
      }()),
      violations_(std::move(violations)) {}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& error) {
        throw ValidationError({std::string("config is not valid JSON: ") + error.what()});
    }
    Validator v;
    if (!doc.is_object()) {
        throw ValidationError({"config: top level must be a JSON object"});
    }

    ExperimentConfig config;
    config.base = parse_run(doc, v);
    config.output = doc.contains("output") && doc["output"].is_string()
                        ? doc["output"].get<std::string>()
                        : "";

    std::vector<json> sweep_docs;
    if (doc.contains("sweep")) {
        if (!doc["sweep"].is_array()) {
            v.fail("sweep", "must be an array of override objects");
        } else {
            for (std::size_t i = 0; i < doc["sweep"].size(); ++i) {
                const json& point = doc["sweep"][i];
                const std::string path = "sweep[" + std::to_string(i) + "]";
                if (!point.is_object() || point.empty()) {
                    v.fail(path, "must be a nonempty object of dotted-key overrides");
                    continue;
                }
                json resolved = doc;
                resolved.erase("sweep");
                for (const auto& [key, value] : point.items()) {
                    json* target = navigate(resolved, key);
                    if (target == nullptr) {
                        v.fail(path, "override key '" + key + "' does not exist in the config");
                        continue;
                    }
                    if (!same_category(*target, value)) {
                        v.fail(path, "override '" + key + "' changes the value type");
                        continue;
                    }
                    *target = value;
                }
                sweep_docs.push_back(std::move(resolved));
            }
        }
    }

    if (!v.errors.empty()) {
        throw ValidationError(std::move(v.errors));
    }

    finalize_run(config.base);
    if (sweep_docs.empty()) {
        config.runs.push_back(config.base);
    } else {
        for (std::size_t i = 0; i < sweep_docs.size(); ++i) {
            Validator sweep_validator;
            RunConfig run = parse_run(sweep_docs[i], sweep_validator);
            if (!sweep_validator.errors.empty()) {
                for (auto& error : sweep_validator.errors) {
                    error = "sweep[" + std::to_string(i) + "] -> " + error;
                }
                throw ValidationError(std::move(sweep_validator.errors));
            }
            finalize_run(run);
            config.runs.push_back(std::move(run));
        }
    }
    return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file: " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment_config(buffer.str());
}

} // namespace qmlkit
