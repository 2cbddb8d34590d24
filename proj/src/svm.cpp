#include "qmlkit/svm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmlkit {

namespace {

double decision_value(const KernelMatrix& gram, const std::vector<double>& alphas,
                      std::span<const int> labels, double bias, std::size_t i) {
    double value = bias;
    for (std::size_t j = 0; j < alphas.size(); ++j) {
        if (alphas[j] != 0.0) {
            value += alphas[j] * labels[j] * gram.at(i, j);
        }
    }
    return value;
}

double dual_objective(const KernelMatrix& gram, const std::vector<double>& alphas,
                      std::span<const int> labels) {
    double linear = 0.0;
    double quad = 0.0;
    const std::size_t n = alphas.size();
    for (std::size_t i = 0; i < n; ++i) {
        linear += alphas[i];
        if (alphas[i] == 0.0) {
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (alphas[j] != 0.0) {
                quad += alphas[i] * alphas[j] * labels[i] * labels[j] * gram.at(i, j);
            }
        }
    }
    return linear - 0.5 * quad;
}

} // namespace

SvmModel svm_fit(const KernelMatrix& gram, std::span<const int> labels, double C, double tol,
                 int max_passes) {
    if (gram.n_rows != gram.n_cols) {
        throw std::invalid_argument("svm_fit requires a square Gram matrix");
    }
    const std::size_t n = gram.n_rows;
    if (labels.size() != n) {
        throw std::invalid_argument("label count does not match Gram size");
    }
    if (C <= 0.0) {
        throw std::invalid_argument("box constraint C must be > 0");
    }
    bool has_pos = false;
    bool has_neg = false;
    for (int y : labels) {
        if (y == 1) {
            has_pos = true;
        } else if (y == -1) {
            has_neg = true;
        } else {
            throw std::invalid_argument("labels must be +1 or -1");
        }
    }
    if (!has_pos || !has_neg) {
        throw std::invalid_argument("degenerate labels: both classes required");
    }

    SvmModel model;
    model.alphas.assign(n, 0.0);
    model.labels.assign(labels.begin(), labels.end());
    model.C = C;

    double bias = 0.0;
    auto& alphas = model.alphas;
    std::vector<double> errors(n, 0.0);
    auto refresh_errors = [&]() {
        for (std::size_t i = 0; i < n; ++i) {
            errors[i] = decision_value(gram, alphas, labels, bias, i) - labels[i];
        }
    };
    refresh_errors();

    int passes = 0;
    int outer_iterations = 0;
    const int outer_cap = std::max(100 * max_passes, 1000);
    while (passes < max_passes && outer_iterations < outer_cap) {
        int changed = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double ri = errors[i] * labels[i];
            const bool violates = (ri < -tol && alphas[i] < C) || (ri > tol && alphas[i] > 0.0);
            if (!violates) {
                continue;
            }
            // Deterministic partner choice: maximize |E_i - E_j|.
            std::size_t j = n;
            double best_gap = -1.0;
            for (std::size_t cand = 0; cand < n; ++cand) {
                if (cand == i) {
                    continue;
                }
                const double gap = std::abs(errors[i] - errors[cand]);
                if (gap > best_gap) {
                    best_gap = gap;
                    j = cand;
                }
            }
            if (j == n) {
                continue;
            }

            const double alpha_i_old = alphas[i];
            const double alpha_j_old = alphas[j];
            double lo, hi;
            if (labels[i] != labels[j]) {
                lo = std::max(0.0, alpha_j_old - alpha_i_old);
                hi = std::min(C, C + alpha_j_old - alpha_i_old);
            } else {
                lo = std::max(0.0, alpha_i_old + alpha_j_old - C);
                hi = std::min(C, alpha_i_old + alpha_j_old);
            }
            if (lo >= hi) {
                continue;
            }
            const double eta = 2.0 * gram.at(i, j) - gram.at(i, i) - gram.at(j, j);
            if (eta >= 0.0) {
                continue;
            }
            double alpha_j_new = alpha_j_old - labels[j] * (errors[i] - errors[j]) / eta;
            alpha_j_new = std::clamp(alpha_j_new, lo, hi);
            if (std::abs(alpha_j_new - alpha_j_old) < 1e-7) {
                continue;
            }
            const double alpha_i_new =
                alpha_i_old + labels[i] * labels[j] * (alpha_j_old - alpha_j_new);

            const double di = labels[i] * (alpha_i_new - alpha_i_old);
            const double dj = labels[j] * (alpha_j_new - alpha_j_old);
            const double b1 = bias - errors[i] - di * gram.at(i, i) - dj * gram.at(i, j);
            const double b2 = bias - errors[j] - di * gram.at(i, j) - dj * gram.at(j, j);
            double new_bias;
            if (alpha_i_new > 0.0 && alpha_i_new < C) {
                new_bias = b1;
            } else if (alpha_j_new > 0.0 && alpha_j_new < C) {
                new_bias = b2;
            } else {
                new_bias = 0.5 * (b1 + b2);
            }

            const double bias_delta = new_bias - bias;
            alphas[i] = alpha_i_new;
            alphas[j] = alpha_j_new;
            bias = new_bias;
            for (std::size_t k = 0; k < n; ++k) {
                errors[k] += di * gram.at(i, k) + dj * gram.at(j, k) + bias_delta;
            }
            ++changed;
        }
        model.objective_history.push_back(dual_objective(gram, alphas, labels));
        passes = changed == 0 ? passes + 1 : 0;
        ++outer_iterations;
    }

    // Bias from the support-vector average: prefer free vectors (0 < alpha < C),
    // fall back to all support vectors.
    std::vector<std::size_t> free_vectors;
    for (std::size_t i = 0; i < n; ++i) {
        if (alphas[i] > 0.0) {
            model.support_indices.push_back(i);
            if (alphas[i] < C) {
                free_vectors.push_back(i);
            }
        }
    }
    const auto& anchors = free_vectors.empty() ? model.support_indices : free_vectors;
    if (!anchors.empty()) {
        double sum = 0.0;
        for (std::size_t i : anchors) {
            sum += labels[i] - (decision_value(gram, alphas, labels, 0.0, i));
        }
        bias = sum / static_cast<double>(anchors.size());
    }
    model.bias = bias;
    return model;
}

std::pair<int, double> svm_predict(const SvmModel& model, std::span<const double> kernel_row) {
    if (kernel_row.size() != model.alphas.size()) {
        throw std::invalid_argument("kernel row length does not match training size");
    }
    double value = model.bias;
    for (std::size_t i = 0; i < kernel_row.size(); ++i) {
        if (model.alphas[i] != 0.0) {
            value += model.alphas[i] * model.labels[i] * kernel_row[i];
        }
    }
    const int label = value < 0.0 ? -1 : 1; // exact zero breaks toward +1
    return {label, value};
}

Metrics evaluate_metrics(std::span<const int> predictions, std::span<const int> labels) {
    if (predictions.empty() || predictions.size() != labels.size()) {
        throw std::invalid_argument("predictions and labels must be nonempty and equal length");
    }
    std::size_t correct = 0;
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        if (predictions[i] == labels[i]) {
            ++correct;
        }
        if (predictions[i] == 1 && labels[i] == 1) {
            ++tp;
        } else if (predictions[i] == 1 && labels[i] != 1) {
            ++fp;
        } else if (predictions[i] != 1 && labels[i] == 1) {
            ++fn;
        }
    }
    Metrics metrics;
    metrics.accuracy = static_cast<double>(correct) / static_cast<double>(predictions.size());
    const double precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / (tp + fp);
    const double recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / (tp + fn);
    metrics.f1 = precision + recall == 0.0 ? 0.0 : 2.0 * precision * recall / (precision + recall);
    return metrics;
}

} // namespace qmlkit
