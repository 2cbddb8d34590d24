#include "qmlkit/kernel.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "parallel.hpp"

namespace qmlkit {

namespace {

using KernelFn = std::function<double(std::span<const double>, std::span<const double>)>;

std::vector<std::string> default_ids(std::size_t n) {
    std::vector<std::string> ids(n);
    for (std::size_t i = 0; i < n; ++i) {
        ids[i] = std::to_string(i);
    }
    return ids;
}

KernelMatrix symmetric_gram(const KernelFn& kernel, const Samples& samples,
                            std::vector<std::string> ids, int n_threads) {
    if (samples.empty()) {
        throw std::invalid_argument("gram_matrix requires at least one sample");
    }
    const std::size_t n = samples.size();
    KernelMatrix gram;
    gram.n_rows = n;
    gram.n_cols = n;
    gram.values.assign(n * n, 0.0);
    gram.row_ids = ids.empty() ? default_ids(n) : ids;
    gram.col_ids = gram.row_ids;

    // Upper triangle including the diagonal, flattened for even chunking.
    std::vector<std::pair<std::size_t, std::size_t>> entries;
    entries.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            entries.emplace_back(i, j);
        }
    }
    detail::parallel_for(entries.size(), n_threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t e = begin; e < end; ++e) {
            const auto [i, j] = entries[e];
            const double value = kernel(samples[i], samples[j]);
            gram.at(i, j) = value;
            gram.at(j, i) = value;
        }
    });
    return gram;
}

KernelMatrix rectangular_gram(const KernelFn& kernel, const Samples& rows, const Samples& cols,
                              std::vector<std::string> row_ids, std::vector<std::string> col_ids,
                              int n_threads) {
    if (rows.empty() || cols.empty()) {
        throw std::invalid_argument("cross_gram requires nonempty sample lists");
    }
    KernelMatrix gram;
    gram.n_rows = rows.size();
    gram.n_cols = cols.size();
    gram.values.assign(gram.n_rows * gram.n_cols, 0.0);
    gram.row_ids = row_ids.empty() ? default_ids(gram.n_rows) : row_ids;
    gram.col_ids = col_ids.empty() ? default_ids(gram.n_cols) : col_ids;
    detail::parallel_for(gram.values.size(), n_threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t e = begin; e < end; ++e) {
            const std::size_t i = e / gram.n_cols;
            const std::size_t j = e % gram.n_cols;
            gram.values[e] = kernel(rows[i], cols[j]);
        }
    });
    return gram;
}

double dot(std::span<const double> x, std::span<const double> y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += x[i] * y[i];
    }
    return sum;
}

} // namespace

double quantum_kernel(const FeatureMapConfig& config, std::span<const double> x,
                      std::span<const double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("kernel arguments must have equal length");
    }
    return overlap_probability(encode_state(config, x), encode_state(config, y));
}

double quantum_kernel_sampled(const FeatureMapConfig& config, std::span<const double> x,
                              std::span<const double> y, std::int64_t shots,
                              std::uint64_t seed) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("kernel arguments must have equal length");
    }
    StateVector state = zero_state(config.n_features);
    state.apply(build_encoding_circuit(config, x));
    state.apply(inverse(build_encoding_circuit(config, y)));
    const auto histogram = sample_measurements(state, shots, seed);
    const std::string zeros(static_cast<std::size_t>(config.n_features), '0');
    const auto it = histogram.find(zeros);
    const std::int64_t hits = it == histogram.end() ? 0 : it->second;
    return static_cast<double>(hits) / static_cast<double>(shots);
}

ClassicalKernelSpec ClassicalKernelSpec::defaults(ClassicalKernelKind kind, int n_features) {
    ClassicalKernelSpec spec;
    spec.kind = kind;
    spec.degree = 3;
    spec.gamma = n_features > 0 ? 1.0 / n_features : 1.0;
    spec.coef0 = 0.0;
    return spec;
}

void ClassicalKernelSpec::validate() const {
    if (kind != ClassicalKernelKind::Linear && gamma <= 0.0) {
        throw std::invalid_argument("kernel gamma must be > 0");
    }
    if (kind == ClassicalKernelKind::Poly && degree < 1) {
        throw std::invalid_argument("polynomial kernel degree must be >= 1");
    }
}

double classical_kernel(const ClassicalKernelSpec& spec, std::span<const double> x,
                        std::span<const double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("kernel arguments must have equal length");
    }
    spec.validate();
    switch (spec.kind) {
    case ClassicalKernelKind::Linear:
        return dot(x, y);
    case ClassicalKernelKind::Poly:
        return std::pow(spec.gamma * dot(x, y) + spec.coef0, spec.degree);
    case ClassicalKernelKind::Rbf: {
        double sq = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = x[i] - y[i];
            sq += d * d;
        }
        return std::exp(-spec.gamma * sq);
    }
    case ClassicalKernelKind::Sigmoid:
        return std::tanh(spec.gamma * dot(x, y) + spec.coef0);
    }
    throw std::logic_error("unknown classical kernel kind");
}

KernelMatrix gram_matrix(const FeatureMapConfig& config, const Samples& samples,
                         std::vector<std::string> ids, int n_threads) {
    return symmetric_gram(
        [&config](std::span<const double> a, std::span<const double> b) {
            return quantum_kernel(config, a, b);
        },
        samples, std::move(ids), n_threads);
}

KernelMatrix gram_matrix(const ClassicalKernelSpec& spec, const Samples& samples,
                         std::vector<std::string> ids, int n_threads) {
    return symmetric_gram(
        [&spec](std::span<const double> a, std::span<const double> b) {
            return classical_kernel(spec, a, b);
        },
        samples, std::move(ids), n_threads);
}

KernelMatrix cross_gram(const FeatureMapConfig& config, const Samples& test, const Samples& train,
                        std::vector<std::string> row_ids, std::vector<std::string> col_ids,
                        int n_threads) {
    return rectangular_gram(
        [&config](std::span<const double> a, std::span<const double> b) {
            return quantum_kernel(config, a, b);
        },
        test, train, std::move(row_ids), std::move(col_ids), n_threads);
}

KernelMatrix cross_gram(const ClassicalKernelSpec& spec, const Samples& test, const Samples& train,
                        std::vector<std::string> row_ids, std::vector<std::string> col_ids,
                        int n_threads) {
    return rectangular_gram(
        [&spec](std::span<const double> a, std::span<const double> b) {
            return classical_kernel(spec, a, b);
        },
        test, train, std::move(row_ids), std::move(col_ids), n_threads);
}

void write_gram_csv(const KernelMatrix& matrix, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out.precision(17);
    out << "id";
    for (const auto& id : matrix.col_ids) {
        out << ',' << id;
    }
    out << '\n';
    for (std::size_t i = 0; i < matrix.n_rows; ++i) {
        out << matrix.row_ids[i];
        for (std::size_t j = 0; j < matrix.n_cols; ++j) {
            out << ',' << matrix.at(i, j);
        }
        out << '\n';
    }
}

} // namespace qmlkit
