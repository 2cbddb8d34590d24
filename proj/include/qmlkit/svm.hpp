#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qmlkit/kernel.hpp"

namespace qmlkit {

struct SvmModel {
    std::vector<double> alphas;                // one per training sample, in [0, C]
    double bias = 0.0;
    std::vector<int> labels;                   // +/-1 per training sample
    double C = 1.0;
    std::vector<std::size_t> support_indices;  // samples with alpha > 0
    std::vector<double> objective_history;     // dual objective after each outer pass
};

/// Sequential minimal optimization on the dual problem. The partner index for
/// each violating sample is chosen deterministically (largest |E_i - E_j|,
/// lowest index on ties), so identical inputs give identical models.
/// Throws std::invalid_argument when all labels agree.
SvmModel svm_fit(const KernelMatrix& gram, std::span<const int> labels, double C = 1.0,
                 double tol = 1e-3, int max_passes = 50);

/// Decision value sum_i alpha_i y_i k_i + b and its sign; a value of exactly
/// zero maps to +1.
std::pair<int, double> svm_predict(const SvmModel& model, std::span<const double> kernel_row);

struct Metrics {
    double accuracy = 0.0;
    double f1 = 0.0;
};

/// Accuracy plus F1 on the positive (+1) class; F1 is 0 when precision and
/// recall are both zero.
Metrics evaluate_metrics(std::span<const int> predictions, std::span<const int> labels);

} // namespace qmlkit
