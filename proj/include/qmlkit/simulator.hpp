#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qmlkit {

using Complex = std::complex<double>;

/// Gate vocabulary of the simulator. RX/RY/RZ are the usual half-angle
/// rotations exp(-i theta P / 2); PauliRotX/Y/Z are the phase-convention
/// gates exp(+i phi P) used by the encoding circuits; ZZ is exp(+i phi Z(x)Z);
/// InputPrep is the real 2x2 rotation with entries
/// [cos(pi/4 - x), sin(pi/4 - x); -sin(pi/4 - x), cos(pi/4 - x)].
enum class GateKind {
    Hadamard,
    RX,
    RY,
    RZ,
    PauliRotX,
    PauliRotY,
    PauliRotZ,
    ZZ,
    Cnot,
    InputPrep,
};

struct Gate {
    GateKind kind = GateKind::Hadamard;
    double angle = 0.0; // radians; the encoded value x for InputPrep
    int q0 = 0;         // target qubit; control for Cnot, first qubit for ZZ
    int q1 = -1;        // Cnot target / second ZZ qubit; -1 for 1-qubit gates

    static Gate hadamard(int q) { return {GateKind::Hadamard, 0.0, q, -1}; }
    static Gate rx(double theta, int q) { return {GateKind::RX, theta, q, -1}; }
    static Gate ry(double theta, int q) { return {GateKind::RY, theta, q, -1}; }
    static Gate rz(double theta, int q) { return {GateKind::RZ, theta, q, -1}; }
    static Gate pauli_rot_x(double phi, int q) { return {GateKind::PauliRotX, phi, q, -1}; }
    static Gate pauli_rot_y(double phi, int q) { return {GateKind::PauliRotY, phi, q, -1}; }
    static Gate pauli_rot_z(double phi, int q) { return {GateKind::PauliRotZ, phi, q, -1}; }
    static Gate zz(double phi, int a, int b) { return {GateKind::ZZ, phi, a, b}; }
    static Gate cnot(int control, int target) { return {GateKind::Cnot, 0.0, control, target}; }
    static Gate input_prep(double x, int q) { return {GateKind::InputPrep, x, q, -1}; }

    bool two_qubit() const { return kind == GateKind::ZZ || kind == GateKind::Cnot; }

    /// Row-major 2x2 matrix of a single-qubit gate. Throws std::logic_error
    /// for two-qubit kinds.
    std::array<Complex, 4> unitary2() const;

    Gate inverse() const;
};

struct Circuit {
    int n_qubits = 0;
    std::vector<Gate> gates;

    explicit Circuit(int n = 0) : n_qubits(n) {}

    /// Appends a gate after validating its qubit indices against n_qubits.
    void add(const Gate& gate);
};

/// Reversed circuit with every gate inverted.
Circuit inverse(const Circuit& circuit);

/// Dense 2^n-amplitude state. Qubit 0 is the least-significant bit of the
/// amplitude index. Gate application mutates the owned amplitude array with
/// stride arithmetic; no full gate matrix is ever materialized.
class StateVector {
  public:
    static constexpr int kMaxQubits = 24;

    explicit StateVector(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<Complex>& amplitudes() const { return amps_; }
    double norm() const;

    void apply(const Gate& gate);
    void apply(const Circuit& circuit);

  private:
    void apply_single(const std::array<Complex, 4>& u, int target);
    void apply_cnot(int control, int target);
    void apply_zz(double phi, int a, int b);
    void check_qubit(int q) const;

    int n_qubits_;
    std::vector<Complex> amps_;
};

/// |0...0> on n_qubits qubits; 1 <= n_qubits <= 24 or std::length_error.
StateVector zero_state(int n_qubits);

/// Value-returning counterpart of StateVector::apply.
StateVector apply_gate(const StateVector& state, const Gate& gate);

/// <Z> on one qubit: sum of |amp|^2 * (+1 for bit 0, -1 for bit 1).
double expectation_z(const StateVector& state, int qubit);

/// Fidelity |<a|b>|^2 of two states of equal width.
double overlap_probability(const StateVector& a, const StateVector& b);

/// Seeded measurement sampling in the computational basis. Keys are
/// bitstrings of length n_qubits with qubit n-1 leftmost. Counts sum to
/// shots; identical seeds give identical histograms.
std::map<std::string, std::int64_t> sample_measurements(const StateVector& state,
                                                        std::int64_t shots,
                                                        std::uint64_t seed);

} // namespace qmlkit
