#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "qmlkit/simulator.hpp"

namespace qmlkit {

using Samples = std::vector<std::vector<double>>;

enum class GradientMethod { ParameterShift, Spsb };

/// Variational classifier layout: N data qubits (indices 0..N-1) plus two
/// ancilla readout qubits (indices N and N+1).
struct QnnConfig {
    int n_data_qubits = 2;
    int n_layers = 1;
    bool reupload = false;
    /// CNOT (control, target) pairs applied in every layer. Indices range
    /// over all N+2 qubits.
    std::vector<std::pair<int, int>> entangle_pattern;

    /// Chain data0 -> data1 -> ... -> ancilla0 -> ancilla1.
    static std::vector<std::pair<int, int>> chain_pattern(int n_data_qubits);

    int total_qubits() const { return n_data_qubits + 2; }
    int parameter_count() const { return n_layers * (n_data_qubits + 6); }

    void validate() const;
};

/// Trainable angles: N x L data-qubit RY angles plus a Y-Z-Y triple per
/// ancilla per layer, stored flat with stride N+6 per layer.
class QnnParams {
  public:
    explicit QnnParams(const QnnConfig& config);

    /// Angles drawn uniformly from [-0.1, 0.1].
    static QnnParams random_init(const QnnConfig& config, std::uint64_t seed);

    double data_angle(int layer, int qubit) const { return theta_[data_index(layer, qubit)]; }
    double& data_angle(int layer, int qubit) { return theta_[data_index(layer, qubit)]; }
    double ancilla_angle(int ancilla, int layer, int rot) const {
        return theta_[ancilla_index(ancilla, layer, rot)];
    }
    double& ancilla_angle(int ancilla, int layer, int rot) {
        return theta_[ancilla_index(ancilla, layer, rot)];
    }

    std::span<const double> flat() const { return theta_; }
    std::span<double> flat() { return theta_; }
    std::size_t size() const { return theta_.size(); }

    int n_data_qubits() const { return n_data_qubits_; }
    int n_layers() const { return n_layers_; }

  private:
    std::size_t data_index(int layer, int qubit) const {
        return static_cast<std::size_t>(layer) * stride() + static_cast<std::size_t>(qubit);
    }
    std::size_t ancilla_index(int ancilla, int layer, int rot) const {
        return static_cast<std::size_t>(layer) * stride() +
               static_cast<std::size_t>(n_data_qubits_ + ancilla * 3 + rot);
    }
    std::size_t stride() const { return static_cast<std::size_t>(n_data_qubits_ + 6); }

    int n_data_qubits_;
    int n_layers_;
    std::vector<double> theta_;
};

struct TrainConfig {
    double learning_rate = 0.1;
    int epochs = 1;
    int batch_size = 32;
    GradientMethod gradient_method = GradientMethod::ParameterShift;
    double spsb_epsilon = 0.01; // ignored by ParameterShift
    std::uint64_t seed = 0;

    void validate() const;
};

/// Encodes x in [0, pi/2]^N as cos(x_j)|0> + sin(x_j)|1> on each data qubit
/// (Hadamard followed by InputPrep); ancillas stay |0>.
StateVector prepare_input_state(std::span<const double> x, int total_qubits);

/// Full circuit: encoding block (once, or per layer when reuploading), then
/// per layer the data RY rotations, the CNOT pattern, and the ancilla Y-Z-Y
/// rotations.
Circuit build_qnn_circuit(const QnnConfig& config, const QnnParams& params,
                          std::span<const double> x);

/// Z expectations of the two ancillas after the full circuit.
std::pair<double, double> qnn_forward(const QnnConfig& config, const QnnParams& params,
                                      std::span<const double> x);

/// (p_benign, p_malicious) from ancilla Z expectations: q_c = (1 + z_c) / 2
/// renormalized, with a uniform fallback when both q vanish.
std::pair<double, double> class_probabilities(double z0, double z1);

/// -ln(max(p_label, 1e-12)) for label in {0, 1}.
double cross_entropy(std::pair<double, double> probs, int label);

double qnn_loss(const QnnConfig& config, const QnnParams& params, std::span<const double> x,
                int label);

/// Argmax class; exact ties go to class 0.
int qnn_predict(const QnnConfig& config, const QnnParams& params, std::span<const double> x);

/// Batch-averaged gradient via the two-point rotation shift rule on the
/// circuit expectations, chained analytically through class_probabilities
/// and cross_entropy. Encoding gates carry no parameters and contribute no
/// entries.
std::vector<double> gradient_parameter_shift(const QnnConfig& config, const QnnParams& params,
                                             const Samples& xs, std::span<const int> labels);

/// Single-direction simultaneous-perturbation estimate
/// [f(theta + eps*delta) - f(theta - eps*delta)] / (2 eps) * delta.
std::vector<double> spsb_estimate(const std::function<double(std::span<const double>)>& f,
                                  std::span<const double> theta, double epsilon,
                                  std::span<const int> delta);

/// Batch-averaged SPSB gradient: each batch element draws its own Rademacher
/// direction from a stream derived from `seed` and the element index, and
/// costs exactly two loss evaluations.
std::vector<double> gradient_spsb(const QnnConfig& config, const QnnParams& params,
                                  const Samples& xs, std::span<const int> labels, double epsilon,
                                  std::uint64_t seed);

struct EpochStats {
    double loss = 0.0;
    double accuracy = 0.0;
};

struct TrainResult {
    QnnParams params;
    std::vector<EpochStats> history; // one entry per epoch
};

/// Plain SGD: theta <- theta - eta * gradient, one update per batch, with a
/// seeded shuffle each epoch. Labels must be 0 (benign) or 1 (malicious).
TrainResult train(const QnnConfig& config, const TrainConfig& train_config, const Samples& xs,
                  std::span<const int> labels);

} // namespace qmlkit
