#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qmlkit/simulator.hpp"

namespace qmlkit {

/// Data-to-phase mapping for the encoding circuits.
///   Default:  phi_j(x) = x_j,  phi_jk(x) = (pi - x_j)(pi - x_k)
///   Sin:      phi_j(x) = x_j,  phi_jk(x) = sin(pi - x_j) sin(pi - x_k)
enum class DataMapping { Default, Sin };

enum class FeatureMapKind { ZZFeature, PauliFeature, ZZphiFeature, ZFeature };

enum class Entanglement { Linear, Full };

struct FeatureMapConfig {
    FeatureMapKind kind = FeatureMapKind::ZZFeature;
    int depth = 2;
    int n_features = 0;
    Entanglement entanglement = Entanglement::Linear;

    /// ZZphiFeature is the ZZ map with the Sin mapping; the others use Default.
    DataMapping mapping() const {
        return kind == FeatureMapKind::ZZphiFeature ? DataMapping::Sin : DataMapping::Default;
    }

    void validate() const;
};

/// Value of phi_S(x) for a singleton or pair subset of feature indices.
double phi_value(DataMapping mapping, std::span<const int> subset, std::span<const double> x);

/// Qubit pairs visited by the two-qubit phase terms, in application order.
std::vector<std::pair<int, int>> entangling_pairs(Entanglement pattern, int n_qubits);

/// One encoding layer repeated `depth` times: Hadamards on every qubit,
/// then the map's single-qubit phase rotations, then ZZ phases over the
/// entanglement pattern (none for ZFeature; X then Y singles for PauliFeature).
Circuit build_encoding_circuit(const FeatureMapConfig& config, std::span<const double> x);

/// |0...0> advanced through build_encoding_circuit(config, x).
StateVector encode_state(const FeatureMapConfig& config, std::span<const double> x);

} // namespace qmlkit
