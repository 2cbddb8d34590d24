#include "qmlkit/feature_map.hpp"

#include <cmath>
#include <stdexcept>

namespace qmlkit {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void FeatureMapConfig::validate() const {
    if (n_features < 1) {
        throw std::invalid_argument("feature map requires n_features >= 1");
    }
    if (depth < 1) {
        throw std::invalid_argument("feature map requires depth >= 1");
    }
}

double phi_value(DataMapping mapping, std::span<const int> subset, std::span<const double> x) {
    if (subset.size() != 1 && subset.size() != 2) {
        throw std::invalid_argument("phi subset must have 1 or 2 indices");
    }
    for (int idx : subset) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= x.size()) {
            throw std::out_of_range("phi subset index out of range");
        }
    }
    if (subset.size() == 1) {
        return x[static_cast<std::size_t>(subset[0])];
    }
    const double xj = x[static_cast<std::size_t>(subset[0])];
    const double xk = x[static_cast<std::size_t>(subset[1])];
    switch (mapping) {
    case DataMapping::Default:
        return (kPi - xj) * (kPi - xk);
    case DataMapping::Sin:
        return std::sin(kPi - xj) * std::sin(kPi - xk);
    }
    throw std::logic_error("unknown data mapping");
}

std::vector<std::pair<int, int>> entangling_pairs(Entanglement pattern, int n_qubits) {
    std::vector<std::pair<int, int>> pairs;
    if (pattern == Entanglement::Linear) {
        for (int j = 0; j + 1 < n_qubits; ++j) {
            pairs.emplace_back(j, j + 1);
        }
    } else {
        for (int j = 0; j < n_qubits; ++j) {
            for (int k = j + 1; k < n_qubits; ++k) {
                pairs.emplace_back(j, k);
            }
        }
    }
    return pairs;
}

Circuit build_encoding_circuit(const FeatureMapConfig& config, std::span<const double> x) {
    config.validate();
    if (x.size() != static_cast<std::size_t>(config.n_features)) {
        throw std::invalid_argument("feature vector length does not match n_features");
    }
    const int n = config.n_features;
    const DataMapping mapping = config.mapping();
    Circuit circuit(n);

    auto phi1 = [&](int j) {
        const int subset[1] = {j};
        return phi_value(mapping, subset, x);
    };
    auto phi2 = [&](int j, int k) {
        const int subset[2] = {j, k};
        return phi_value(mapping, subset, x);
    };

    const auto pairs = config.kind == FeatureMapKind::ZFeature
                           ? std::vector<std::pair<int, int>>{}
                           : entangling_pairs(config.entanglement, n);

    for (int layer = 0; layer < config.depth; ++layer) {
        for (int q = 0; q < n; ++q) {
            circuit.add(Gate::hadamard(q));
        }
        switch (config.kind) {
        case FeatureMapKind::ZZFeature:
        case FeatureMapKind::ZZphiFeature:
        case FeatureMapKind::ZFeature:
            for (int q = 0; q < n; ++q) {
                circuit.add(Gate::pauli_rot_z(phi1(q), q));
            }
            break;
        case FeatureMapKind::PauliFeature:
            for (int q = 0; q < n; ++q) {
                circuit.add(Gate::pauli_rot_x(phi1(q), q));
            }
            for (int q = 0; q < n; ++q) {
                circuit.add(Gate::pauli_rot_y(phi1(q), q));
            }
            break;
        }
        for (const auto& [j, k] : pairs) {
            circuit.add(Gate::zz(phi2(j, k), j, k));
        }
    }
    return circuit;
}

StateVector encode_state(const FeatureMapConfig& config, std::span<const double> x) {
    StateVector state = zero_state(config.n_features);
    state.apply(build_encoding_circuit(config, x));
    return state;
}

} // namespace qmlkit
