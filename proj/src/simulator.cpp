#include "qmlkit/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qmlkit/rng.hpp"

namespace qmlkit {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2 = 0.70710678118654752440;

std::string bitstring(std::size_t index, int n_qubits) {
    std::string s(static_cast<std::size_t>(n_qubits), '0');
    for (int q = 0; q < n_qubits; ++q) {
        if ((index >> q) & 1ULL) {
            s[static_cast<std::size_t>(n_qubits - 1 - q)] = '1';
        }
    }
    return s;
}

} // namespace

std::array<Complex, 4> Gate::unitary2() const {
    const Complex i(0.0, 1.0);
    switch (kind) {
    case GateKind::Hadamard:
        return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
    case GateKind::RX: {
        const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
        return {c, -i * s, -i * s, c};
    }
    case GateKind::RY: {
        const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
        return {c, -s, s, c};
    }
    case GateKind::RZ:
        return {std::exp(-i * (angle / 2.0)), 0.0, 0.0, std::exp(i * (angle / 2.0))};
    case GateKind::PauliRotX: {
        // exp(+i phi X) = cos(phi) I + i sin(phi) X
        const double c = std::cos(angle), s = std::sin(angle);
        return {c, i * s, i * s, c};
    }
    case GateKind::PauliRotY: {
        // exp(+i phi Y) = cos(phi) I + i sin(phi) Y
        const double c = std::cos(angle), s = std::sin(angle);
        return {c, s, -s, c};
    }
    case GateKind::PauliRotZ:
        return {std::exp(i * angle), 0.0, 0.0, std::exp(-i * angle)};
    case GateKind::InputPrep: {
        const double c = std::cos(kPi / 4.0 - angle), s = std::sin(kPi / 4.0 - angle);
        return {c, s, -s, c};
    }
    case GateKind::ZZ:
    case GateKind::Cnot:
        break;
    }
    throw std::logic_error("unitary2() called on a two-qubit gate");
}

Gate Gate::inverse() const {
    switch (kind) {
    case GateKind::Hadamard:
    case GateKind::Cnot:
        return *this;
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::PauliRotX:
    case GateKind::PauliRotY:
    case GateKind::PauliRotZ:
    case GateKind::ZZ:
        return {kind, -angle, q0, q1};
    case GateKind::InputPrep:
        // InputPrep(x) rotates by pi/4 - x; the inverse rotates by x - pi/4.
        return {kind, kPi / 2.0 - angle, q0, q1};
    }
    throw std::logic_error("unknown gate kind");
}

void Circuit::add(const Gate& gate) {
    if (gate.q0 < 0 || gate.q0 >= n_qubits) {
        throw std::out_of_range("gate qubit index out of range");
    }
    if (gate.two_qubit()) {
        if (gate.q1 < 0 || gate.q1 >= n_qubits) {
            throw std::out_of_range("gate qubit index out of range");
        }
        if (gate.q1 == gate.q0) {
            throw std::invalid_argument("two-qubit gate requires distinct qubits");
        }
    }
    gates.push_back(gate);
}

Circuit inverse(const Circuit& circuit) {
    Circuit inv(circuit.n_qubits);
    inv.gates.reserve(circuit.gates.size());
    for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
        inv.gates.push_back(it->inverse());
    }
    return inv;
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::length_error("n_qubits must be between 1 and 24");
    }
    amps_.assign(std::size_t{1} << n_qubits, Complex(0.0, 0.0));
    amps_[0] = Complex(1.0, 0.0);
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const Complex& a : amps_) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

void StateVector::check_qubit(int q) const {
    if (q < 0 || q >= n_qubits_) {
        throw std::out_of_range("qubit index out of range");
    }
}

void StateVector::apply_single(const std::array<Complex, 4>& u, int target) {
    const std::size_t mask = std::size_t{1} << target;
    const std::size_t dim = amps_.size();
    for (std::size_t base = 0; base < dim; base += 2 * mask) {
        for (std::size_t low = base; low < base + mask; ++low) {
            const Complex a0 = amps_[low];
            const Complex a1 = amps_[low | mask];
            amps_[low] = u[0] * a0 + u[1] * a1;
            amps_[low | mask] = u[2] * a0 + u[3] * a1;
        }
    }
}

void StateVector::apply_cnot(int control, int target) {
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    const std::size_t dim = amps_.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(amps_[i], amps_[i | tmask]);
        }
    }
}

void StateVector::apply_zz(double phi, int a, int b) {
    const Complex same = std::exp(Complex(0.0, phi));
    const Complex diff = std::exp(Complex(0.0, -phi));
    const std::size_t amask = std::size_t{1} << a;
    const std::size_t bmask = std::size_t{1} << b;
    const std::size_t dim = amps_.size();
    for (std::size_t i = 0; i < dim; ++i) {
        const bool ba = (i & amask) != 0;
        const bool bb = (i & bmask) != 0;
        amps_[i] *= (ba == bb) ? same : diff;
    }
}

void StateVector::apply(const Gate& gate) {
    check_qubit(gate.q0);
    if (gate.two_qubit()) {
        check_qubit(gate.q1);
        if (gate.q0 == gate.q1) {
            throw std::invalid_argument("two-qubit gate requires distinct qubits");
        }
        if (gate.kind == GateKind::Cnot) {
            apply_cnot(gate.q0, gate.q1);
        } else {
            apply_zz(gate.angle, gate.q0, gate.q1);
        }
        return;
    }
    apply_single(gate.unitary2(), gate.q0);
}

void StateVector::apply(const Circuit& circuit) {
    if (circuit.n_qubits != n_qubits_) {
        throw std::invalid_argument("circuit width does not match state width");
    }
    for (const Gate& g : circuit.gates) {
        apply(g);
    }
}

StateVector zero_state(int n_qubits) { return StateVector(n_qubits); }

StateVector apply_gate(const StateVector& state, const Gate& gate) {
    StateVector out = state;
    out.apply(gate);
    return out;
}

double expectation_z(const StateVector& state, int qubit) {
    if (qubit < 0 || qubit >= state.n_qubits()) {
        throw std::out_of_range("qubit index out of range");
    }
    const std::size_t mask = std::size_t{1} << qubit;
    const auto& amps = state.amplitudes();
    double value = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        value += (i & mask) ? -p : p;
    }
    return value;
}

double overlap_probability(const StateVector& a, const StateVector& b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw std::invalid_argument("states have different qubit counts");
    }
    Complex inner(0.0, 0.0);
    const auto& va = a.amplitudes();
    const auto& vb = b.amplitudes();
    for (std::size_t i = 0; i < va.size(); ++i) {
        inner += std::conj(va[i]) * vb[i];
    }
    return std::norm(inner);
}

std::map<std::string, std::int64_t> sample_measurements(const StateVector& state,
                                                        std::int64_t shots,
                                                        std::uint64_t seed) {
    if (shots < 1) {
        throw std::invalid_argument("shots must be >= 1");
    }
    const auto& amps = state.amplitudes();
    std::vector<double> cdf(amps.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        acc += std::norm(amps[i]);
        cdf[i] = acc;
    }
    Rng rng(seed);
    std::map<std::string, std::int64_t> histogram;
    for (std::int64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform() * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t index = static_cast<std::size_t>(it - cdf.begin());
        if (index >= amps.size()) {
            index = amps.size() - 1;
        }
        histogram[bitstring(index, state.n_qubits())] += 1;
    }
    return histogram;
}

} // namespace qmlkit
