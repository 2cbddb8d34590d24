#include "qmlkit/preprocess.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "qmlkit/rng.hpp"

namespace qmlkit {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream stream(line);
    while (std::getline(stream, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) {
            cell.pop_back();
        }
        std::size_t first = 0;
        while (first < cell.size() && cell[first] == ' ') {
            ++first;
        }
        cells.push_back(cell.substr(first));
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

Eigen::MatrixXd to_matrix(const Samples& X) {
    const Eigen::Index rows = static_cast<Eigen::Index>(X.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(X.front().size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (static_cast<Eigen::Index>(X[static_cast<std::size_t>(i)].size()) != cols) {
            throw std::invalid_argument("samples have inconsistent feature counts");
        }
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = X[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    return m;
}

} // namespace

GrayImage binary_to_image(std::span<const std::uint8_t> bytes) {
    if (bytes.empty()) {
        throw std::invalid_argument("binary_to_image requires at least one byte");
    }
    const std::size_t width =
        static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(bytes.size()))));
    const std::size_t height = (bytes.size() + width - 1) / width;

    auto source = [&](std::size_t r, std::size_t c) -> double {
        const std::size_t index = r * width + c;
        return index < bytes.size() ? static_cast<double>(bytes[index]) : 0.0;
    };

    // Exact box filter: output cell (r, c) integrates the source over
    // [r*H/64, (r+1)*H/64) x [c*W/64, (c+1)*W/64).
    GrayImage image;
    image.pixels.assign(GrayImage::kSize * GrayImage::kSize, 0.0);
    const double row_scale = static_cast<double>(height) / GrayImage::kSize;
    const double col_scale = static_cast<double>(width) / GrayImage::kSize;
    for (int out_r = 0; out_r < GrayImage::kSize; ++out_r) {
        const double r0 = out_r * row_scale;
        const double r1 = (out_r + 1) * row_scale;
        const std::size_t r_begin = static_cast<std::size_t>(std::floor(r0));
        const std::size_t r_end = std::min<std::size_t>(
            height, static_cast<std::size_t>(std::ceil(r1)));
        for (int out_c = 0; out_c < GrayImage::kSize; ++out_c) {
            const double c0 = out_c * col_scale;
            const double c1 = (out_c + 1) * col_scale;
            const std::size_t c_begin = static_cast<std::size_t>(std::floor(c0));
            const std::size_t c_end = std::min<std::size_t>(
                width, static_cast<std::size_t>(std::ceil(c1)));
            double total = 0.0;
            for (std::size_t r = r_begin; r < r_end; ++r) {
                const double r_overlap =
                    std::min(r1, static_cast<double>(r + 1)) - std::max(r0, static_cast<double>(r));
                if (r_overlap <= 0.0) {
                    continue;
                }
                for (std::size_t c = c_begin; c < c_end; ++c) {
                    const double c_overlap = std::min(c1, static_cast<double>(c + 1)) -
                                             std::max(c0, static_cast<double>(c));
                    if (c_overlap > 0.0) {
                        total += r_overlap * c_overlap * source(r, c);
                    }
                }
            }
            image.pixels[static_cast<std::size_t>(out_r) * GrayImage::kSize + out_c] =
                total / (row_scale * col_scale);
        }
    }
    return image;
}

PcaModel pca_fit(const Samples& X, int k) {
    if (X.size() < 2) {
        throw std::invalid_argument("pca_fit requires at least 2 samples");
    }
    Eigen::MatrixXd data = to_matrix(X);
    if (k < 1 || k > std::min(data.rows(), data.cols())) {
        throw std::invalid_argument("pca component count k out of range");
    }
    const Eigen::RowVectorXd mean = data.colwise().mean();
    data.rowwise() -= mean;

    Eigen::BDCSVD<Eigen::MatrixXd> svd(data, Eigen::ComputeThinV);
    const Eigen::MatrixXd v = svd.matrixV();
    const Eigen::VectorXd sigma = svd.singularValues();

    PcaModel model;
    model.mean.assign(mean.data(), mean.data() + mean.size());
    model.components.resize(static_cast<std::size_t>(k));
    model.explained_variance.resize(static_cast<std::size_t>(k));
    const double denom = static_cast<double>(data.rows() - 1);
    for (int c = 0; c < k; ++c) {
        Eigen::VectorXd component = v.col(c);
        // Sign convention: the largest-magnitude entry is positive.
        Eigen::Index pivot = 0;
        component.cwiseAbs().maxCoeff(&pivot);
        if (component(pivot) < 0.0) {
            component = -component;
        }
        model.components[static_cast<std::size_t>(c)].assign(component.data(),
                                                             component.data() + component.size());
        model.explained_variance[static_cast<std::size_t>(c)] = sigma(c) * sigma(c) / denom;
    }
    return model;
}

Samples pca_transform(const PcaModel& model, const Samples& X) {
    Samples out;
    out.reserve(X.size());
    for (const auto& sample : X) {
        if (sample.size() != model.mean.size()) {
            throw std::invalid_argument("sample width does not match the fitted PCA");
        }
        std::vector<double> reduced(model.components.size(), 0.0);
        for (std::size_t c = 0; c < model.components.size(); ++c) {
            double acc = 0.0;
            for (std::size_t j = 0; j < sample.size(); ++j) {
                acc += (sample[j] - model.mean[j]) * model.components[c][j];
            }
            reduced[c] = acc;
        }
        out.push_back(std::move(reduced));
    }
    return out;
}

ScalerModel scale_fit(const Samples& X, double lo, double hi) {
    if (hi <= lo) {
        throw std::invalid_argument("scaler requires hi > lo");
    }
    if (X.empty()) {
        throw std::invalid_argument("scale_fit requires at least one sample");
    }
    const std::size_t width = X.front().size();
    ScalerModel model;
    model.lo = lo;
    model.hi = hi;
    model.feature_min.assign(width, std::numeric_limits<double>::infinity());
    model.feature_max.assign(width, -std::numeric_limits<double>::infinity());
    for (const auto& sample : X) {
        if (sample.size() != width) {
            throw std::invalid_argument("samples have inconsistent feature counts");
        }
        for (std::size_t j = 0; j < width; ++j) {
            model.feature_min[j] = std::min(model.feature_min[j], sample[j]);
            model.feature_max[j] = std::max(model.feature_max[j], sample[j]);
        }
    }
    return model;
}

Samples scale_transform(const ScalerModel& model, const Samples& X) {
    Samples out;
    out.reserve(X.size());
    const double mid = (model.lo + model.hi) / 2.0;
    for (const auto& sample : X) {
        if (sample.size() != model.feature_min.size()) {
            throw std::invalid_argument("sample width does not match the fitted scaler");
        }
        std::vector<double> scaled(sample.size());
        for (std::size_t j = 0; j < sample.size(); ++j) {
            const double span = model.feature_max[j] - model.feature_min[j];
            if (span == 0.0) {
                scaled[j] = mid;
            } else {
                const double t = (sample[j] - model.feature_min[j]) / span;
                scaled[j] = std::clamp(model.lo + t * (model.hi - model.lo), model.lo, model.hi);
            }
        }
        out.push_back(std::move(scaled));
    }
    return out;
}

Dataset load_csv(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open csv file: " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw SchemaError("csv file is empty: " + path);
    }
    const auto header = split_line(line);
    std::size_t label_index = header.size();
    std::size_t id_index = header.size();
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == label_column) {
            label_index = j;
        } else if (header[j] == "id") {
            id_index = j;
        }
    }
    if (label_index == header.size()) {
        throw SchemaError("csv is missing the label column '" + label_column + "'");
    }

    Dataset dataset;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto cells = split_line(line);
        if (cells.size() != header.size()) {
            throw SchemaError("csv row " + std::to_string(row) + " has " +
                              std::to_string(cells.size()) + " cells, expected " +
                              std::to_string(header.size()));
        }
        std::vector<double> features;
        features.reserve(header.size() - 1);
        std::string id = std::to_string(dataset.samples.size());
        int label = -1;
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (j == label_index) {
                if (cells[j] == "0") {
                    label = 0;
                } else if (cells[j] == "1") {
                    label = 1;
                } else {
                    throw SchemaError("csv row " + std::to_string(row) + " has label '" +
                                      cells[j] + "', expected 0 or 1");
                }
            } else if (j == id_index) {
                id = cells[j];
            } else {
                try {
                    std::size_t consumed = 0;
                    const double value = std::stod(cells[j], &consumed);
                    if (consumed != cells[j].size()) {
                        throw std::invalid_argument("trailing characters");
                    }
                    features.push_back(value);
                } catch (const std::exception&) {
                    throw SchemaError("csv row " + std::to_string(row) + " column '" + header[j] +
                                      "' is not numeric: '" + cells[j] + "'");
                }
            }
        }
        dataset.samples.push_back(std::move(features));
        dataset.labels.push_back(label);
        dataset.ids.push_back(std::move(id));
    }
    if (dataset.samples.empty()) {
        throw SchemaError("csv has a header but no data rows: " + path);
    }
    return dataset;
}

void write_csv(const Dataset& dataset, const std::string& path, const std::string& label_column) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    out.precision(17);
    out << "id";
    for (std::size_t j = 0; j < dataset.n_features(); ++j) {
        out << ",f" << j;
    }
    out << ',' << label_column << '\n';
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        out << dataset.ids[i];
        for (double value : dataset.samples[i]) {
            out << ',' << value;
        }
        out << ',' << dataset.labels[i] << '\n';
    }
}

Dataset load_binaries_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    Dataset dataset;
    for (const auto& [subdir, label] : {std::pair<const char*, int>{"benign", 0},
                                        std::pair<const char*, int>{"malicious", 1}}) {
        const fs::path root = fs::path(dir) / subdir;
        if (!fs::is_directory(root)) {
            throw IoError("missing directory: " + root.string());
        }
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(root)) {
            if (entry.is_regular_file()) {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        for (const auto& file : files) {
            std::ifstream in(file, std::ios::binary);
            if (!in) {
                throw IoError("cannot read file: " + file.string());
            }
            std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                            std::istreambuf_iterator<char>());
            const GrayImage image = binary_to_image(bytes);
            dataset.samples.push_back(image.pixels);
            dataset.labels.push_back(label);
            dataset.ids.push_back(file.filename().string());
        }
    }
    if (dataset.samples.empty()) {
        throw IoError("no files found under " + dir);
    }
    return dataset;
}

Dataset generate_synthetic(SyntheticKind kind, int n, std::uint64_t seed, int n_features) {
    if (n < 4) {
        throw std::invalid_argument("synthetic datasets require n >= 4");
    }
    if (n_features < 1 || (kind == SyntheticKind::NoisyXor && n_features != 2)) {
        throw std::invalid_argument("invalid feature count for synthetic dataset");
    }
    Rng rng(seed);
    Dataset dataset;
    const int n_class0 = (n + 1) / 2;

    if (kind == SyntheticKind::AngularBlobs) {
        // Class 0 below 0.60 rad on every axis, class 1 above 0.95 rad.
        const double centers[2] = {0.35, 1.25};
        const double lo_bound[2] = {0.05, 0.95};
        const double hi_bound[2] = {0.60, 1.52};
        for (int i = 0; i < n; ++i) {
            const int label = i < n_class0 ? 0 : 1;
            std::vector<double> x(static_cast<std::size_t>(n_features));
            for (double& value : x) {
                value = std::clamp(centers[label] + 0.12 * rng.gaussian(), lo_bound[label],
                                   hi_bound[label]);
            }
            dataset.samples.push_back(std::move(x));
            dataset.labels.push_back(label);
        }
    } else {
        // XOR quadrants around (0.35, 0.35) and (1.25, 1.25).
        const double level[2] = {0.35, 1.25};
        int made[2] = {0, 0};
        for (int i = 0; i < n; ++i) {
            const int label = i < n_class0 ? 0 : 1;
            // label 0 -> equal quadrant bits, label 1 -> differing bits.
            const int first = made[label] % 2;
            const int second = label == 0 ? first : 1 - first;
            ++made[label];
            std::vector<double> x = {
                std::clamp(level[first] + 0.10 * rng.gaussian(), 0.0, 1.5707963267948966),
                std::clamp(level[second] + 0.10 * rng.gaussian(), 0.0, 1.5707963267948966)};
            dataset.samples.push_back(std::move(x));
            dataset.labels.push_back(label);
        }
        // Flip exactly round(5% of n) labels, split between the classes to
        // keep the balance within one sample.
        const int flips = static_cast<int>(std::lround(0.05 * n));
        std::vector<std::size_t> zeros, ones;
        for (std::size_t i = 0; i < dataset.labels.size(); ++i) {
            (dataset.labels[i] == 0 ? zeros : ones).push_back(i);
        }
        rng.shuffle(zeros);
        rng.shuffle(ones);
        for (int f = 0; f < flips; ++f) {
            auto& pool = (f % 2 == 0) ? zeros : ones;
            if (pool.empty()) {
                continue;
            }
            const std::size_t index = pool.back();
            pool.pop_back();
            dataset.labels[index] = 1 - dataset.labels[index];
        }
    }

    dataset.ids.resize(dataset.samples.size());
    for (std::size_t i = 0; i < dataset.ids.size(); ++i) {
        dataset.ids[i] = "s" + std::to_string(i);
    }
    return dataset;
}

} // namespace qmlkit
