#include <cmath>

#include "doctest.h"
#include "oracle.hpp"
#include "qmlkit/rng.hpp"
#include "qmlkit/simulator.hpp"

using namespace qmlkit;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2 = 0.70710678118654752440;
} // namespace

TEST_SUITE("simulator") {

TEST_CASE("zero_state basis definition") {
    const StateVector one = zero_state(1);
    REQUIRE(one.amplitudes().size() == 2);
    CHECK(one.amplitudes()[0] == Complex(1.0, 0.0));
    CHECK(one.amplitudes()[1] == Complex(0.0, 0.0));

    const StateVector three = zero_state(3);
    REQUIRE(three.amplitudes().size() == 8);
    CHECK(three.amplitudes()[0] == Complex(1.0, 0.0));
    for (std::size_t i = 1; i < 8; ++i) {
        CHECK(three.amplitudes()[i] == Complex(0.0, 0.0));
    }
}

TEST_CASE("zero_state capacity guard") {
    CHECK_THROWS_AS(zero_state(25), std::length_error);
    CHECK_THROWS_AS(zero_state(0), std::length_error);
    CHECK_THROWS_AS(zero_state(-3), std::length_error);
}

TEST_CASE("Hadamard on |0>") {
    const StateVector state = apply_gate(zero_state(1), Gate::hadamard(0));
    CHECK(std::abs(state.amplitudes()[0] - Complex(kInvSqrt2, 0.0)) < 1e-15);
    CHECK(std::abs(state.amplitudes()[1] - Complex(kInvSqrt2, 0.0)) < 1e-15);
}

TEST_CASE("InputPrep(pi/4) is the identity") {
    const StateVector state = apply_gate(zero_state(1), Gate::input_prep(kPi / 4, 0));
    CHECK(std::abs(state.amplitudes()[0] - Complex(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(state.amplitudes()[1]) < 1e-15);
}

TEST_CASE("ZZ phase convention is exp(+i phi) on equal bits") {
    const double phi = 0.3;
    for (std::size_t basis = 0; basis < 4; ++basis) {
        std::vector<Complex> amps(4, Complex(0.0, 0.0));
        amps[basis] = Complex(1.0, 0.0);
        Circuit zz(2);
        zz.add(Gate::zz(phi, 0, 1));
        const auto reference = oracle::apply_circuit(zz, amps);
        const bool equal_bits = ((basis & 1) != 0) == ((basis & 2) != 0);
        const Complex expected =
            std::exp(Complex(0.0, equal_bits ? phi : -phi));
        CHECK(std::abs(reference[basis] - expected) < 1e-15);
    }
    // And the stride implementation agrees with the dense result on a
    // superposition.
    StateVector state = zero_state(2);
    state.apply(Gate::hadamard(0));
    state.apply(Gate::hadamard(1));
    std::vector<Complex> dense = oracle::simulate([] {
        Circuit c(2);
        c.add(Gate::hadamard(0));
        c.add(Gate::hadamard(1));
        c.add(Gate::zz(0.3, 0, 1));
        return c;
    }());
    state.apply(Gate::zz(0.3, 0, 1));
    CHECK(oracle::max_amplitude_error(state.amplitudes(), dense) < 1e-14);
}

TEST_CASE("every gate matches the dense Kronecker oracle on a random 3-qubit state") {
    // Build one random state, then check each gate kind against the oracle.
    const Circuit prep = oracle::random_circuit(3, 12, /*seed=*/91);
    StateVector state = zero_state(3);
    state.apply(prep);
    const std::vector<Complex> dense_state = oracle::simulate(prep);
    REQUIRE(oracle::max_amplitude_error(state.amplitudes(), dense_state) < 1e-12);

    const Gate gates[] = {
        Gate::hadamard(1),        Gate::rx(0.37, 2),          Gate::ry(-1.2, 0),
        Gate::rz(2.1, 1),         Gate::pauli_rot_x(0.81, 0), Gate::pauli_rot_y(-0.4, 2),
        Gate::pauli_rot_z(1.7, 1), Gate::zz(0.9, 0, 2),        Gate::cnot(2, 0),
        Gate::input_prep(0.6, 1),
    };
    for (const Gate& gate : gates) {
        StateVector updated = apply_gate(state, gate);
        const auto reference =
            oracle::apply_dense(oracle::embed_gate(gate, 3), dense_state);
        CHECK(oracle::max_amplitude_error(updated.amplitudes(), reference) < 1e-10);
        CHECK(updated.norm() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("gate application validates indices") {
    StateVector state = zero_state(2);
    CHECK_THROWS_AS(state.apply(Gate::hadamard(2)), std::out_of_range);
    CHECK_THROWS_AS(state.apply(Gate::hadamard(-1)), std::out_of_range);
    CHECK_THROWS_AS(state.apply(Gate::cnot(0, 0)), std::invalid_argument);
    Circuit c(2);
    CHECK_THROWS_AS(c.add(Gate::zz(0.1, 1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(c.add(Gate::ry(0.1, 5)), std::out_of_range);
}

TEST_CASE("expectation_z basics") {
    CHECK(expectation_z(zero_state(2), 0) == doctest::Approx(1.0));
    const StateVector plus = apply_gate(zero_state(1), Gate::hadamard(0));
    CHECK(std::abs(expectation_z(plus, 0)) < 1e-12);

    const double theta = 0.7;
    const StateVector rotated = apply_gate(zero_state(1), Gate::ry(theta, 0));
    CHECK(expectation_z(rotated, 0) == doctest::Approx(std::cos(theta)).epsilon(1e-12));
    // Cross-check against the dense oracle.
    Circuit c(1);
    c.add(Gate::ry(theta, 0));
    CHECK(oracle::expectation_z(oracle::simulate(c), 0) ==
          doctest::Approx(std::cos(theta)).epsilon(1e-12));

    CHECK_THROWS_AS(expectation_z(zero_state(2), 2), std::out_of_range);
}

TEST_CASE("expectation_z stays in [-1, 1] on random states") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Circuit circuit = oracle::random_circuit(4, 25, seed);
        StateVector state = zero_state(4);
        state.apply(circuit);
        for (int q = 0; q < 4; ++q) {
            const double z = expectation_z(state, q);
            CHECK(z >= -1.0 - 1e-12);
            CHECK(z <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("overlap_probability") {
    const Circuit circuit = oracle::random_circuit(3, 15, 7);
    StateVector s = zero_state(3);
    s.apply(circuit);
    CHECK(overlap_probability(s, s) == doctest::Approx(1.0).epsilon(1e-12));

    StateVector zero = zero_state(1);
    StateVector one = apply_gate(apply_gate(zero_state(1), Gate::hadamard(0)),
                                 Gate::rz(kPi, 0)); // H then RZ(pi): |-> up to phase
    one = apply_gate(one, Gate::hadamard(0));       // = |1> up to global phase
    CHECK(overlap_probability(zero, one) < 1e-20);

    CHECK_THROWS_AS(overlap_probability(zero_state(1), zero_state(2)), std::invalid_argument);
}

TEST_CASE("overlap of e^{ixZ}H|0> and e^{iyZ}H|0> is cos^2(x - y)") {
    auto phased = [](double x) {
        StateVector s = zero_state(1);
        s.apply(Gate::hadamard(0));
        s.apply(Gate::pauli_rot_z(x, 0));
        return s;
    };
    CHECK(overlap_probability(phased(kPi / 2), phased(0.0)) < 1e-12);
    Rng rng(123);
    for (int rep = 0; rep < 10; ++rep) {
        const double x = rng.uniform(-kPi, kPi);
        const double y = rng.uniform(-kPi, kPi);
        const double expected = std::cos(x - y) * std::cos(x - y);
        CHECK(overlap_probability(phased(x), phased(y)) ==
              doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("involutions return to the start") {
    const Circuit prep = oracle::random_circuit(3, 20, 5);
    StateVector state = zero_state(3);
    state.apply(prep);
    const auto original = state.amplitudes();

    StateVector hh = state;
    hh.apply(Gate::hadamard(1));
    hh.apply(Gate::hadamard(1));
    CHECK(oracle::max_amplitude_error(hh.amplitudes(), original) < 1e-12);

    StateVector cc = state;
    cc.apply(Gate::cnot(0, 2));
    cc.apply(Gate::cnot(0, 2));
    CHECK(oracle::max_amplitude_error(cc.amplitudes(), original) < 1e-12);

    StateVector ry = state;
    ry.apply(Gate::ry(0.83, 2));
    ry.apply(Gate::ry(-0.83, 2));
    CHECK(oracle::max_amplitude_error(ry.amplitudes(), original) < 1e-12);
}

TEST_CASE("norm is preserved across random circuits") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int n_qubits = 2 + static_cast<int>(seed % 5); // up to 6
        const Circuit circuit = oracle::random_circuit(n_qubits, 50, 500 + seed);
        StateVector state = zero_state(n_qubits);
        state.apply(circuit);
        CHECK(std::abs(state.norm() - 1.0) < 1e-9);
    }
}

TEST_CASE("stride implementation equals the dense oracle on random circuits") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const int n_qubits = 1 + static_cast<int>(seed % 4);
        const int n_gates = 1 + static_cast<int>((seed * 7) % 30);
        const Circuit circuit = oracle::random_circuit(n_qubits, n_gates, 9000 + seed);
        StateVector state = zero_state(n_qubits);
        state.apply(circuit);
        const auto dense = oracle::simulate(circuit);
        CHECK(oracle::max_amplitude_error(state.amplitudes(), dense) < 1e-10);
    }
}

TEST_CASE("circuit inverse undoes the circuit") {
    const Circuit circuit = oracle::random_circuit(3, 25, 321);
    StateVector state = zero_state(3);
    state.apply(circuit);
    state.apply(inverse(circuit));
    const auto& amps = state.amplitudes();
    CHECK(std::abs(amps[0] - Complex(1.0, 0.0)) < 1e-10);
    for (std::size_t i = 1; i < amps.size(); ++i) {
        CHECK(std::abs(amps[i]) < 1e-10);
    }
}

TEST_CASE("sampling a deterministic state") {
    const auto histogram = sample_measurements(zero_state(1), 100, 7);
    REQUIRE(histogram.size() == 1);
    CHECK(histogram.at("0") == 100);
}

TEST_CASE("sampling H|0> converges to half/half") {
    const StateVector plus = apply_gate(zero_state(1), Gate::hadamard(0));
    const auto histogram = sample_measurements(plus, 100000, 42);
    std::int64_t total = 0;
    for (const auto& [bits, count] : histogram) {
        total += count;
    }
    CHECK(total == 100000);
    // 4 sigma of a fair binomial at 1e5 shots is ~0.0063; 0.02 leaves headroom.
    const double freq0 = static_cast<double>(histogram.at("0")) / 100000.0;
    CHECK(freq0 > 0.48);
    CHECK(freq0 < 0.52);
}

TEST_CASE("sampling is deterministic per seed") {
    const Circuit circuit = oracle::random_circuit(3, 18, 77);
    StateVector state = zero_state(3);
    state.apply(circuit);
    const auto a = sample_measurements(state, 5000, 1234);
    const auto b = sample_measurements(state, 5000, 1234);
    CHECK(a == b);
    const auto c = sample_measurements(state, 5000, 1235);
    CHECK(a != c);
}

TEST_CASE("sampling rejects zero shots") {
    CHECK_THROWS_AS(sample_measurements(zero_state(1), 0, 1), std::invalid_argument);
}

TEST_CASE("bitstring keys put qubit n-1 leftmost") {
    // Prepare |q1=1, q0=0> = index 2 on two qubits.
    StateVector state = zero_state(2);
    state.apply(Gate::input_prep(kPi / 2 + kPi / 4, 1)); // rotation by -pi/2: |0> -> |1>
    // InputPrep(3pi/4) has cos(pi/4 - 3pi/4) = cos(-pi/2) = 0, so |0> maps to
    // -|1> up to sign; probability lands on bit 1.
    const auto histogram = sample_measurements(state, 50, 3);
    REQUIRE(histogram.size() == 1);
    CHECK(histogram.begin()->first == "10");
}

} // TEST_SUITE
