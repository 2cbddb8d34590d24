#pragma once

// Brute-force references used by the test suites. Everything here is built
// from first principles (dense embedded matrices, covariance eigensolver,
// central differences) and never calls the library's gate-application,
// PCA, or gradient paths it is checking.

#include <complex>
#include <functional>
#include <vector>

#include "qmlkit/simulator.hpp"

namespace oracle {

using Complex = std::complex<double>;
using DenseMatrix = std::vector<std::vector<Complex>>;

/// Full 2^n x 2^n matrix of a gate embedded at its qubit indices
/// (qubit 0 = least-significant bit, matching the library convention).
DenseMatrix embed_gate(const qmlkit::Gate& gate, int n_qubits);

/// Dense matrix-vector product.
std::vector<Complex> apply_dense(const DenseMatrix& matrix, const std::vector<Complex>& state);

/// |0...0> advanced through the circuit by dense multiplication.
std::vector<Complex> simulate(const qmlkit::Circuit& circuit);

std::vector<Complex> apply_circuit(const qmlkit::Circuit& circuit,
                                   const std::vector<Complex>& state);

double expectation_z(const std::vector<Complex>& state, int qubit);

double overlap_probability(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// Largest |implementation - reference| amplitude difference.
double max_amplitude_error(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> matrix);

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns {eigenvalues descending, matching eigenvectors as rows}.
std::pair<std::vector<double>, std::vector<std::vector<double>>> jacobi_eigensystem(
    std::vector<std::vector<double>> matrix);

/// Central finite-difference gradient of f at theta.
std::vector<double> finite_difference_gradient(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> theta,
    double h);

/// Random circuit over all ten gate kinds with angles in [-pi, pi].
qmlkit::Circuit random_circuit(int n_qubits, int n_gates, std::uint64_t seed);

} // namespace oracle
