#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmlkit {

using Samples = std::vector<std::vector<double>>;

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// 64x64 grayscale image, row-major, values in [0, 255].
struct GrayImage {
    static constexpr int kSize = 64;
    std::vector<double> pixels; // kSize * kSize values

    double at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * kSize + col]; }
};

/// Reshapes the bytes into a ceil(sqrt(n))-wide grid (rows first, zero-padded
/// tail) and resizes it to 64x64 by exact area averaging.
GrayImage binary_to_image(std::span<const std::uint8_t> bytes);

struct PcaModel {
    std::vector<double> mean;
    std::vector<std::vector<double>> components; // k orthonormal rows
    std::vector<double> explained_variance;      // non-increasing, >= 0
};

/// Mean-centered SVD; components are the top-k right singular vectors with a
/// deterministic sign convention (largest-magnitude entry positive).
PcaModel pca_fit(const Samples& X, int k);
Samples pca_transform(const PcaModel& model, const Samples& X);

struct ScalerModel {
    std::vector<double> feature_min;
    std::vector<double> feature_max;
    double lo = 0.0;
    double hi = 1.0;
};

/// Per-feature affine map of the fitted [min, max] onto [lo, hi]. Transforms
/// clamp to [lo, hi]; constant features map to the midpoint.
ScalerModel scale_fit(const Samples& X, double lo, double hi);
Samples scale_transform(const ScalerModel& model, const Samples& X);

struct Dataset {
    Samples samples;
    std::vector<int> labels; // 0 = benign, 1 = malicious
    std::vector<std::string> ids;

    std::size_t size() const { return samples.size(); }
    std::size_t n_features() const { return samples.empty() ? 0 : samples.front().size(); }
};

/// Headered CSV of numeric feature columns plus one {0,1} label column. A
/// column named "id" supplies sample ids; otherwise the row index is used.
Dataset load_csv(const std::string& path, const std::string& label_column = "label");

/// Writes a dataset in the same format load_csv reads (id,features...,label).
void write_csv(const Dataset& dataset, const std::string& path,
               const std::string& label_column = "label");

/// Reads every file under dir/benign and dir/malicious (sorted by name) as
/// raw bytes, converts each to a 64x64 grayscale image, and flattens it to a
/// 4096-feature sample.
Dataset load_binaries_dir(const std::string& dir);

enum class SyntheticKind { AngularBlobs, NoisyXor };

/// Desk-scale datasets in [0, pi/2]^n_features with balanced classes.
/// AngularBlobs: two truncated Gaussian clusters with every coordinate of
/// class 0 below 0.60 and of class 1 above 0.95 (margin 0.35 rad), so a
/// threshold on any single feature separates them. NoisyXor: the two-feature
/// XOR pattern with exactly round(5%) of labels flipped, balanced between
/// the classes.
Dataset generate_synthetic(SyntheticKind kind, int n, std::uint64_t seed, int n_features = 2);

} // namespace qmlkit
