#include "qmlkit/qnn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qmlkit/rng.hpp"

namespace qmlkit {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = kPi / 2.0;
constexpr double kProbFloor = 1e-12;

void append_encoding_block(Circuit& circuit, std::span<const double> x) {
    for (std::size_t j = 0; j < x.size(); ++j) {
        circuit.add(Gate::hadamard(static_cast<int>(j)));
        circuit.add(Gate::input_prep(x[j], static_cast<int>(j)));
    }
}

/// d(loss)/d(z0), d(loss)/d(z1) at the given expectations; zero inside the
/// clamped/degenerate regions where the loss is flat.
std::pair<double, double> loss_gradient_wrt_z(double z0, double z1, int label) {
    const double q0 = (1.0 + z0) / 2.0;
    const double q1 = (1.0 + z1) / 2.0;
    const double s = q0 + q1;
    if (s < kProbFloor) {
        return {0.0, 0.0};
    }
    const double q_label = label == 0 ? q0 : q1;
    const double q_other = label == 0 ? q1 : q0;
    if (q_label / s <= kProbFloor) {
        return {0.0, 0.0};
    }
    const double d_label = -q_other / (2.0 * q_label * s);
    const double d_other = 1.0 / (2.0 * s);
    return label == 0 ? std::make_pair(d_label, d_other) : std::make_pair(d_other, d_label);
}

void check_batch(const Samples& xs, std::span<const int> labels) {
    if (xs.empty()) {
        throw std::invalid_argument("batch must be nonempty");
    }
    if (xs.size() != labels.size()) {
        throw std::invalid_argument("batch features and labels differ in length");
    }
}

} // namespace

std::vector<std::pair<int, int>> QnnConfig::chain_pattern(int n_data_qubits) {
    std::vector<std::pair<int, int>> pattern;
    for (int q = 0; q < n_data_qubits + 1; ++q) {
        pattern.emplace_back(q, q + 1);
    }
    return pattern;
}

void QnnConfig::validate() const {
    if (n_data_qubits < 1) {
        throw std::invalid_argument("qnn requires n_data_qubits >= 1");
    }
    if (n_layers < 1) {
        throw std::invalid_argument("qnn requires n_layers >= 1");
    }
    for (const auto& [control, target] : entangle_pattern) {
        if (control < 0 || control >= total_qubits() || target < 0 || target >= total_qubits()) {
            throw std::invalid_argument("entangle pair references an invalid qubit");
        }
        if (control == target) {
            throw std::invalid_argument("entangle pair must use distinct qubits");
        }
    }
}

QnnParams::QnnParams(const QnnConfig& config)
    : n_data_qubits_(config.n_data_qubits), n_layers_(config.n_layers) {
    config.validate();
    theta_.assign(static_cast<std::size_t>(config.parameter_count()), 0.0);
}

QnnParams QnnParams::random_init(const QnnConfig& config, std::uint64_t seed) {
    QnnParams params(config);
    Rng rng(seed);
    for (double& angle : params.theta_) {
        angle = rng.uniform(-0.1, 0.1);
    }
    return params;
}

void TrainConfig::validate() const {
    if (learning_rate < 0.0) {
        throw std::invalid_argument("learning rate must be >= 0");
    }
    if (epochs < 1) {
        throw std::invalid_argument("epochs must be >= 1");
    }
    if (batch_size < 1) {
        throw std::invalid_argument("batch size must be >= 1");
    }
    if (gradient_method == GradientMethod::Spsb && spsb_epsilon <= 0.0) {
        throw std::invalid_argument("spsb epsilon must be > 0");
    }
}

StateVector prepare_input_state(std::span<const double> x, int total_qubits) {
    if (static_cast<std::size_t>(total_qubits) != x.size() + 2) {
        throw std::invalid_argument("total_qubits must equal data qubits plus two ancillas");
    }
    for (double xj : x) {
        if (xj < 0.0 || xj > kHalfPi) {
            throw std::domain_error("input features must lie in [0, pi/2]");
        }
    }
    StateVector state = zero_state(total_qubits);
    Circuit prep(total_qubits);
    append_encoding_block(prep, x);
    state.apply(prep);
    return state;
}

Circuit build_qnn_circuit(const QnnConfig& config, const QnnParams& params,
                          std::span<const double> x) {
    config.validate();
    if (x.size() != static_cast<std::size_t>(config.n_data_qubits)) {
        throw std::invalid_argument("feature vector length does not match n_data_qubits");
    }
    if (params.n_data_qubits() != config.n_data_qubits || params.n_layers() != config.n_layers) {
        throw std::invalid_argument("parameter shape does not match config");
    }
    for (double xj : x) {
        if (xj < 0.0 || xj > kHalfPi) {
            throw std::domain_error("input features must lie in [0, pi/2]");
        }
    }

    const int n = config.n_data_qubits;
    Circuit circuit(config.total_qubits());
    if (!config.reupload) {
        append_encoding_block(circuit, x);
    }
    for (int layer = 0; layer < config.n_layers; ++layer) {
        if (config.reupload) {
            append_encoding_block(circuit, x);
        }
        for (int q = 0; q < n; ++q) {
            circuit.add(Gate::ry(params.data_angle(layer, q), q));
        }
        for (const auto& [control, target] : config.entangle_pattern) {
            circuit.add(Gate::cnot(control, target));
        }
        for (int a = 0; a < 2; ++a) {
            const int q = n + a;
            circuit.add(Gate::ry(params.ancilla_angle(a, layer, 0), q));
            circuit.add(Gate::rz(params.ancilla_angle(a, layer, 1), q));
            circuit.add(Gate::ry(params.ancilla_angle(a, layer, 2), q));
        }
    }
    return circuit;
}

std::pair<double, double> qnn_forward(const QnnConfig& config, const QnnParams& params,
                                      std::span<const double> x) {
    StateVector state = zero_state(config.total_qubits());
    state.apply(build_qnn_circuit(config, params, x));
    return {expectation_z(state, config.n_data_qubits),
            expectation_z(state, config.n_data_qubits + 1)};
}

std::pair<double, double> class_probabilities(double z0, double z1) {
    if (std::abs(z0) > 1.0 + 1e-9 || std::abs(z1) > 1.0 + 1e-9) {
        throw std::domain_error("ancilla expectations must lie in [-1, 1]");
    }
    const double q0 = (1.0 + std::clamp(z0, -1.0, 1.0)) / 2.0;
    const double q1 = (1.0 + std::clamp(z1, -1.0, 1.0)) / 2.0;
    const double s = q0 + q1;
    if (s < kProbFloor) {
        return {0.5, 0.5};
    }
    return {q0 / s, q1 / s};
}

double cross_entropy(std::pair<double, double> probs, int label) {
    if (label != 0 && label != 1) {
        throw std::invalid_argument("label must be 0 or 1");
    }
    const double p = label == 0 ? probs.first : probs.second;
    return -std::log(std::max(p, kProbFloor));
}

double qnn_loss(const QnnConfig& config, const QnnParams& params, std::span<const double> x,
                int label) {
    const auto [z0, z1] = qnn_forward(config, params, x);
    return cross_entropy(class_probabilities(z0, z1), label);
}

int qnn_predict(const QnnConfig& config, const QnnParams& params, std::span<const double> x) {
    const auto [z0, z1] = qnn_forward(config, params, x);
    const auto [p0, p1] = class_probabilities(z0, z1);
    return p1 > p0 ? 1 : 0;
}

std::vector<double> gradient_parameter_shift(const QnnConfig& config, const QnnParams& params,
                                             const Samples& xs, std::span<const int> labels) {
    check_batch(xs, labels);
    const std::size_t n_params = params.size();
    std::vector<double> gradient(n_params, 0.0);
    QnnParams shifted = params;
    for (std::size_t s = 0; s < xs.size(); ++s) {
        const auto [z0, z1] = qnn_forward(config, params, xs[s]);
        const auto [dz0, dz1] = loss_gradient_wrt_z(z0, z1, labels[s]);
        for (std::size_t p = 0; p < n_params; ++p) {
            const double original = shifted.flat()[p];
            shifted.flat()[p] = original + kHalfPi;
            const auto [z0_plus, z1_plus] = qnn_forward(config, shifted, xs[s]);
            shifted.flat()[p] = original - kHalfPi;
            const auto [z0_minus, z1_minus] = qnn_forward(config, shifted, xs[s]);
            shifted.flat()[p] = original;
            const double dz0_dp = (z0_plus - z0_minus) / 2.0;
            const double dz1_dp = (z1_plus - z1_minus) / 2.0;
            gradient[p] += dz0 * dz0_dp + dz1 * dz1_dp;
        }
    }
    for (double& g : gradient) {
        g /= static_cast<double>(xs.size());
    }
    return gradient;
}

std::vector<double> spsb_estimate(const std::function<double(std::span<const double>)>& f,
                                  std::span<const double> theta, double epsilon,
                                  std::span<const int> delta) {
    if (epsilon <= 0.0) {
        throw std::invalid_argument("spsb epsilon must be > 0");
    }
    if (theta.size() != delta.size()) {
        throw std::invalid_argument("direction length does not match parameter count");
    }
    std::vector<double> plus(theta.begin(), theta.end());
    std::vector<double> minus(theta.begin(), theta.end());
    for (std::size_t p = 0; p < theta.size(); ++p) {
        plus[p] += epsilon * delta[p];
        minus[p] -= epsilon * delta[p];
    }
    const double slope = (f(plus) - f(minus)) / (2.0 * epsilon);
    std::vector<double> estimate(theta.size());
    for (std::size_t p = 0; p < theta.size(); ++p) {
        estimate[p] = slope * delta[p];
    }
    return estimate;
}

std::vector<double> gradient_spsb(const QnnConfig& config, const QnnParams& params,
                                  const Samples& xs, std::span<const int> labels, double epsilon,
                                  std::uint64_t seed) {
    if (epsilon <= 0.0) {
        throw std::invalid_argument("spsb epsilon must be > 0");
    }
    check_batch(xs, labels);
    const std::size_t n_params = params.size();
    std::vector<double> gradient(n_params, 0.0);
    std::vector<int> delta(n_params);
    QnnParams scratch = params;
    for (std::size_t s = 0; s < xs.size(); ++s) {
        Rng rng(derive_seed(seed, s));
        for (int& d : delta) {
            d = rng.rademacher();
        }
        auto loss_at = [&](std::span<const double> theta) {
            std::copy(theta.begin(), theta.end(), scratch.flat().begin());
            return qnn_loss(config, scratch, xs[s], labels[s]);
        };
        const auto estimate = spsb_estimate(loss_at, params.flat(), epsilon, delta);
        for (std::size_t p = 0; p < n_params; ++p) {
            gradient[p] += estimate[p];
        }
    }
    for (double& g : gradient) {
        g /= static_cast<double>(xs.size());
    }
    return gradient;
}

TrainResult train(const QnnConfig& config, const TrainConfig& train_config, const Samples& xs,
                  std::span<const int> labels) {
    config.validate();
    train_config.validate();
    check_batch(xs, labels);
    for (int label : labels) {
        if (label != 0 && label != 1) {
            throw std::invalid_argument("training labels must be 0 or 1");
        }
    }

    TrainResult result{QnnParams::random_init(config, train_config.seed), {}};
    QnnParams& params = result.params;
    const std::size_t n = xs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    std::uint64_t spsb_stream = derive_seed(train_config.seed, 0x5053'4253ULL);
    for (int epoch = 0; epoch < train_config.epochs; ++epoch) {
        Rng shuffler(derive_seed(train_config.seed, 1000 + static_cast<std::uint64_t>(epoch)));
        shuffler.shuffle(order);
        for (std::size_t start = 0; start < n; start += train_config.batch_size) {
            const std::size_t stop = std::min(n, start + train_config.batch_size);
            Samples batch_x;
            std::vector<int> batch_y;
            batch_x.reserve(stop - start);
            batch_y.reserve(stop - start);
            for (std::size_t k = start; k < stop; ++k) {
                batch_x.push_back(xs[order[k]]);
                batch_y.push_back(labels[order[k]]);
            }
            std::vector<double> gradient;
            if (train_config.gradient_method == GradientMethod::ParameterShift) {
                gradient = gradient_parameter_shift(config, params, batch_x, batch_y);
            } else {
                gradient = gradient_spsb(config, params, batch_x, batch_y,
                                         train_config.spsb_epsilon, spsb_stream);
                spsb_stream = derive_seed(spsb_stream, stop);
            }
            for (std::size_t p = 0; p < params.size(); ++p) {
                params.flat()[p] -= train_config.learning_rate * gradient[p];
            }
        }

        EpochStats stats;
        std::size_t correct = 0;
        for (std::size_t s = 0; s < n; ++s) {
            const auto [z0, z1] = qnn_forward(config, params, xs[s]);
            const auto probs = class_probabilities(z0, z1);
            stats.loss += cross_entropy(probs, labels[s]);
            const int predicted = probs.second > probs.first ? 1 : 0;
            if (predicted == labels[s]) {
                ++correct;
            }
        }
        stats.loss /= static_cast<double>(n);
        stats.accuracy = static_cast<double>(correct) / static_cast<double>(n);
        result.history.push_back(stats);
    }
    return result;
}

} // namespace qmlkit
