#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qmlkit/feature_map.hpp"

namespace qmlkit {

using Samples = std::vector<std::vector<double>>;

struct KernelMatrix {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<double> values; // row-major
    std::vector<std::string> row_ids;
    std::vector<std::string> col_ids;

    double at(std::size_t i, std::size_t j) const { return values[i * n_cols + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * n_cols + j]; }
};

/// Fidelity kernel |<phi(x)|phi(y)>|^2 from exact statevector overlap.
double quantum_kernel(const FeatureMapConfig& config, std::span<const double> x,
                      std::span<const double> y);

/// Shot-based estimate: runs U(x) followed by U(y)^dagger and counts the
/// all-zeros outcome over `shots` seeded measurements.
double quantum_kernel_sampled(const FeatureMapConfig& config, std::span<const double> x,
                              std::span<const double> y, std::int64_t shots, std::uint64_t seed);

enum class ClassicalKernelKind { Linear, Poly, Rbf, Sigmoid };

struct ClassicalKernelSpec {
    ClassicalKernelKind kind = ClassicalKernelKind::Rbf;
    int degree = 3;     // Poly only
    double gamma = 1.0; // Poly/Rbf/Sigmoid
    double coef0 = 0.0; // Poly/Sigmoid

    /// Pinned defaults with gamma = 1 / n_features.
    static ClassicalKernelSpec defaults(ClassicalKernelKind kind, int n_features);

    void validate() const;
};

double classical_kernel(const ClassicalKernelSpec& spec, std::span<const double> x,
                        std::span<const double> y);

/// Symmetric training Gram matrix; the upper triangle plus diagonal is
/// evaluated (in parallel when n_threads > 1) and mirrored, so the result is
/// bit-identical for any worker count.
KernelMatrix gram_matrix(const FeatureMapConfig& config, const Samples& samples,
                         std::vector<std::string> ids = {}, int n_threads = 1);
KernelMatrix gram_matrix(const ClassicalKernelSpec& spec, const Samples& samples,
                         std::vector<std::string> ids = {}, int n_threads = 1);

/// Rectangular kernel block between test rows and training columns.
KernelMatrix cross_gram(const FeatureMapConfig& config, const Samples& test,
                        const Samples& train, std::vector<std::string> row_ids = {},
                        std::vector<std::string> col_ids = {}, int n_threads = 1);
KernelMatrix cross_gram(const ClassicalKernelSpec& spec, const Samples& test,
                        const Samples& train, std::vector<std::string> row_ids = {},
                        std::vector<std::string> col_ids = {}, int n_threads = 1);

/// CSV export with row/col ids in the headers.
void write_gram_csv(const KernelMatrix& matrix, const std::string& path);

} // namespace qmlkit
