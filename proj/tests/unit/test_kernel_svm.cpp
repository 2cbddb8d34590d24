#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "oracle.hpp"
#include "qmlkit/kernel.hpp"
#include "qmlkit/rng.hpp"
#include "qmlkit/svm.hpp"

using namespace qmlkit;

namespace {

constexpr double kPi = 3.14159265358979323846;

Samples random_samples(int n, int dim, std::uint64_t seed, double lo = 0.0, double hi = kPi) {
    Rng rng(seed);
    Samples samples(n, std::vector<double>(dim));
    for (auto& sample : samples) {
        for (double& value : sample) {
            value = rng.uniform(lo, hi);
        }
    }
    return samples;
}

KernelMatrix identity_kernel(std::size_t n) {
    KernelMatrix gram;
    gram.n_rows = n;
    gram.n_cols = n;
    gram.values.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        gram.at(i, i) = 1.0;
    }
    return gram;
}

} // namespace

TEST_SUITE("kernel") {

TEST_CASE("quantum kernel of a point with itself is 1") {
    FeatureMapConfig config{FeatureMapKind::PauliFeature, 2, 2, Entanglement::Linear};
    const std::vector<double> x = {0.4, 2.0};
    CHECK(quantum_kernel(config, x, x) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("1-qubit ZFeature kernel closed form cos^2(a-b)") {
    FeatureMapConfig config{FeatureMapKind::ZFeature, 1, 1, Entanglement::Linear};
    CHECK(quantum_kernel(config, std::vector<double>{0.9}, std::vector<double>{0.9}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    Rng rng(5);
    for (int rep = 0; rep < 10; ++rep) {
        const double a = rng.uniform(0.0, kPi);
        const double b = rng.uniform(0.0, kPi);
        const double expected = std::cos(a - b) * std::cos(a - b);
        CHECK(quantum_kernel(config, std::vector<double>{a}, std::vector<double>{b}) ==
              doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("ZZFeature kernel equals the dense-state computation") {
    FeatureMapConfig config{FeatureMapKind::ZZFeature, 2, 2, Entanglement::Linear};
    Rng rng(17);
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<double> x = {rng.uniform(0.0, kPi), rng.uniform(0.0, kPi)};
        std::vector<double> y = {rng.uniform(0.0, kPi), rng.uniform(0.0, kPi)};
        const double dense = oracle::overlap_probability(
            oracle::simulate(build_encoding_circuit(config, x)),
            oracle::simulate(build_encoding_circuit(config, y)));
        CHECK(quantum_kernel(config, x, y) == doctest::Approx(dense).epsilon(1e-10));
    }
}

TEST_CASE("quantum kernel is symmetric") {
    for (const FeatureMapKind kind :
         {FeatureMapKind::ZZFeature, FeatureMapKind::PauliFeature, FeatureMapKind::ZZphiFeature,
          FeatureMapKind::ZFeature}) {
        FeatureMapConfig config{kind, 2, 3, Entanglement::Linear};
        Rng rng(31 + static_cast<std::uint64_t>(kind));
        std::vector<double> x(3), y(3);
        for (int j = 0; j < 3; ++j) {
            x[j] = rng.uniform(0.0, kPi);
            y[j] = rng.uniform(0.0, kPi);
        }
        CHECK(quantum_kernel(config, x, y) ==
              doctest::Approx(quantum_kernel(config, y, x)).epsilon(1e-12));
    }
}

TEST_CASE("kernel length mismatch is rejected") {
    FeatureMapConfig config{FeatureMapKind::ZFeature, 1, 2, Entanglement::Linear};
    CHECK_THROWS_AS(quantum_kernel(config, std::vector<double>{0.1},
                                   std::vector<double>{0.1, 0.2}),
                    std::invalid_argument);
}

TEST_CASE("sampled kernel estimator approaches the exact overlap") {
    FeatureMapConfig config{FeatureMapKind::ZZFeature, 1, 2, Entanglement::Linear};
    const std::vector<double> x = {0.7, 1.9};
    const std::vector<double> y = {1.2, 0.4};
    const double exact = quantum_kernel(config, x, y);
    const double sampled = quantum_kernel_sampled(config, x, y, 200000, 11);
    CHECK(std::abs(sampled - exact) < 0.01);
    CHECK(quantum_kernel_sampled(config, x, y, 1000, 5) ==
          quantum_kernel_sampled(config, x, y, 1000, 5));
}

TEST_CASE("single-sample Gram and Gram properties") {
    FeatureMapConfig config{FeatureMapKind::ZZFeature, 2, 2, Entanglement::Linear};
    const KernelMatrix one = gram_matrix(config, random_samples(1, 2, 3));
    REQUIRE(one.n_rows == 1);
    CHECK(one.at(0, 0) == doctest::Approx(1.0).epsilon(1e-10));

    CHECK_THROWS_AS(gram_matrix(config, Samples{}), std::invalid_argument);

    for (const FeatureMapKind kind :
         {FeatureMapKind::ZZFeature, FeatureMapKind::PauliFeature, FeatureMapKind::ZZphiFeature,
          FeatureMapKind::ZFeature}) {
        FeatureMapConfig map{kind, 2, 3, Entanglement::Linear};
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const KernelMatrix gram = gram_matrix(map, random_samples(6, 3, 100 + seed));
            std::vector<std::vector<double>> dense(6, std::vector<double>(6));
            for (std::size_t i = 0; i < 6; ++i) {
                CHECK(gram.at(i, i) == doctest::Approx(1.0).epsilon(1e-10));
                for (std::size_t j = 0; j < 6; ++j) {
                    CHECK(gram.at(i, j) == doctest::Approx(gram.at(j, i)).epsilon(1e-10));
                    dense[i][j] = gram.at(i, j);
                }
            }
            const auto eigenvalues = oracle::jacobi_eigenvalues(dense);
            CHECK(eigenvalues.front() >= -1e-8);
        }
    }
}

TEST_CASE("Gram is bit-identical across thread counts") {
    FeatureMapConfig config{FeatureMapKind::PauliFeature, 2, 3, Entanglement::Full};
    const Samples samples = random_samples(8, 3, 55);
    const KernelMatrix serial = gram_matrix(config, samples, {}, 1);
    const KernelMatrix parallel = gram_matrix(config, samples, {}, 4);
    CHECK(serial.values == parallel.values);

    const Samples test = random_samples(5, 3, 56);
    const KernelMatrix cross1 = cross_gram(config, test, samples, {}, {}, 1);
    const KernelMatrix cross3 = cross_gram(config, test, samples, {}, {}, 3);
    CHECK(cross1.values == cross3.values);
}

TEST_CASE("3-sample ZFeature Gram equals the cos^2 product closed form") {
    FeatureMapConfig config{FeatureMapKind::ZFeature, 1, 2, Entanglement::Linear};
    const Samples samples = random_samples(3, 2, 9);
    const KernelMatrix gram = gram_matrix(config, samples);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            double expected = 1.0;
            for (std::size_t f = 0; f < 2; ++f) {
                const double d = samples[i][f] - samples[j][f];
                expected *= std::cos(d) * std::cos(d);
            }
            CHECK(gram.at(i, j) == doctest::Approx(expected).epsilon(1e-10));
        }
    }
}

TEST_CASE("gram csv export carries the sample ids") {
    FeatureMapConfig config{FeatureMapKind::ZFeature, 1, 2, Entanglement::Linear};
    const Samples samples = random_samples(3, 2, 12);
    const KernelMatrix gram =
        gram_matrix(config, samples, std::vector<std::string>{"s0", "s1", "s2"});
    const auto path = std::filesystem::temp_directory_path() / "qmlkit_gram_test.csv";
    write_gram_csv(gram, path.string());
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "id,s0,s1,s2");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.rfind("s" + std::to_string(rows - 1) + ",", 0) == 0);
    }
    CHECK(rows == 3);
    std::filesystem::remove(path);
}

TEST_CASE("classical kernels") {
    ClassicalKernelSpec rbf{ClassicalKernelKind::Rbf, 3, 0.7, 0.0};
    const std::vector<double> x = {1.0, 2.0};
    CHECK(classical_kernel(rbf, x, x) == doctest::Approx(1.0));

    ClassicalKernelSpec linear{ClassicalKernelKind::Linear, 3, 1.0, 0.0};
    CHECK(classical_kernel(linear, std::vector<double>{1.0, 2.0},
                           std::vector<double>{3.0, 4.0}) == doctest::Approx(11.0));

    ClassicalKernelSpec poly{ClassicalKernelKind::Poly, 2, 1.0, 0.0};
    CHECK(classical_kernel(poly, std::vector<double>{1.0, 0.0},
                           std::vector<double>{1.0, 0.0}) == doctest::Approx(1.0));

    ClassicalKernelSpec sigmoid{ClassicalKernelKind::Sigmoid, 3, 0.5, 0.25};
    CHECK(classical_kernel(sigmoid, std::vector<double>{1.0, 1.0},
                           std::vector<double>{2.0, 0.0}) ==
          doctest::Approx(std::tanh(0.5 * 2.0 + 0.25)));

    ClassicalKernelSpec bad{ClassicalKernelKind::Rbf, 3, -1.0, 0.0};
    CHECK_THROWS_AS(classical_kernel(bad, x, x), std::invalid_argument);

    CHECK(ClassicalKernelSpec::defaults(ClassicalKernelKind::Rbf, 4).gamma ==
          doctest::Approx(0.25));
}

} // TEST_SUITE

TEST_SUITE("svm") {

TEST_CASE("two-sample identity kernel solves to alpha = [1, 1], bias 0") {
    // Dual by hand: maximize a1 + a2 - (a1^2 + a2^2)/2 with a1 = a2 gives
    // alpha = 1 at the box bound.
    const KernelMatrix gram = identity_kernel(2);
    const std::vector<int> labels = {1, -1};
    const SvmModel model = svm_fit(gram, labels, 1.0);
    CHECK(model.alphas[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(model.alphas[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(model.bias == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(model.support_indices == std::vector<std::size_t>{0, 1});

    CHECK(svm_predict(model, std::vector<double>{1.0, 0.0}).first == 1);
    CHECK(svm_predict(model, std::vector<double>{1.0, 0.0}).second ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(svm_predict(model, std::vector<double>{0.0, 1.0}).first == -1);
    CHECK(svm_predict(model, std::vector<double>{0.0, 1.0}).second ==
          doctest::Approx(-1.0).epsilon(1e-9));
    // Exact tie breaks toward +1.
    CHECK(svm_predict(model, std::vector<double>{0.5, 0.5}).first == 1);
}

TEST_CASE("separable 2D blobs reach training accuracy 1 with a linear kernel") {
    Rng rng(70);
    Samples samples;
    std::vector<int> labels;
    for (int i = 0; i < 10; ++i) {
        samples.push_back({rng.uniform(-1.0, 0.0) - 1.0, rng.uniform(-1.0, 0.0) - 1.0});
        labels.push_back(-1);
        samples.push_back({rng.uniform(0.0, 1.0) + 1.0, rng.uniform(0.0, 1.0) + 1.0});
        labels.push_back(1);
    }
    // Threshold oracle: the classes are split by x0 = 0 with margin 2.
    for (std::size_t i = 0; i < samples.size(); ++i) {
        CHECK((labels[i] == 1) == (samples[i][0] > 0.0));
    }
    ClassicalKernelSpec linear{ClassicalKernelKind::Linear, 3, 1.0, 0.0};
    const KernelMatrix gram = gram_matrix(linear, samples);
    const SvmModel model = svm_fit(gram, labels, 1.0);
    int correct = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        std::vector<double> row(samples.size());
        for (std::size_t j = 0; j < samples.size(); ++j) {
            row[j] = gram.at(i, j);
        }
        correct += svm_predict(model, row).first == labels[i];
    }
    CHECK(correct == static_cast<int>(samples.size()));
}

TEST_CASE("degenerate labels are rejected") {
    const KernelMatrix gram = identity_kernel(3);
    CHECK_THROWS_AS(svm_fit(gram, std::vector<int>{1, 1, 1}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(svm_fit(gram, std::vector<int>{1, 0, -1}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(svm_fit(gram, std::vector<int>{1, -1, 1}, -2.0), std::invalid_argument);
}

TEST_CASE("KKT invariants and monotone dual objective") {
    FeatureMapConfig config{FeatureMapKind::ZZFeature, 2, 2, Entanglement::Linear};
    const Samples samples = random_samples(12, 2, 90);
    std::vector<int> labels;
    for (int i = 0; i < 12; ++i) {
        labels.push_back(i % 2 == 0 ? 1 : -1);
    }
    const KernelMatrix gram = gram_matrix(config, samples);
    const SvmModel model = svm_fit(gram, labels, 1.0);

    double balance = 0.0;
    for (std::size_t i = 0; i < model.alphas.size(); ++i) {
        CHECK(model.alphas[i] >= -1e-12);
        CHECK(model.alphas[i] <= 1.0 + 1e-12);
        balance += model.alphas[i] * labels[i];
    }
    CHECK(std::abs(balance) < 1e-8);

    REQUIRE(!model.objective_history.empty());
    for (std::size_t i = 1; i < model.objective_history.size(); ++i) {
        CHECK(model.objective_history[i] >= model.objective_history[i - 1] - 1e-9);
    }
}

TEST_CASE("kernel scaling with inverse C scaling keeps the labels") {
    ClassicalKernelSpec rbf{ClassicalKernelKind::Rbf, 3, 0.8, 0.0};
    const Samples samples = random_samples(14, 2, 41, -2.0, 2.0);
    std::vector<int> labels;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        labels.push_back(samples[i][0] + samples[i][1] > 0 ? 1 : -1);
    }
    bool both = false, any_pos = false, any_neg = false;
    for (int y : labels) {
        (y == 1 ? any_pos : any_neg) = true;
    }
    both = any_pos && any_neg;
    REQUIRE(both);

    KernelMatrix gram = gram_matrix(rbf, samples);
    const SvmModel base = svm_fit(gram, labels, 1.0);
    const double c = 2.5;
    KernelMatrix scaled = gram;
    for (double& value : scaled.values) {
        value *= c;
    }
    const SvmModel rescaled = svm_fit(scaled, labels, 1.0 / c);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        std::vector<double> row(samples.size()), scaled_row(samples.size());
        for (std::size_t j = 0; j < samples.size(); ++j) {
            row[j] = gram.at(i, j);
            scaled_row[j] = scaled.at(i, j);
        }
        CHECK(svm_predict(base, row).first == svm_predict(rescaled, scaled_row).first);
    }
}

TEST_CASE("prediction validates the kernel row length") {
    const SvmModel model = svm_fit(identity_kernel(2), std::vector<int>{1, -1}, 1.0);
    CHECK_THROWS_AS(svm_predict(model, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("metrics hand-computed cases") {
    CHECK(evaluate_metrics(std::vector<int>{1, 1, -1}, std::vector<int>{1, 1, -1}).accuracy ==
          doctest::Approx(1.0));
    CHECK(evaluate_metrics(std::vector<int>{1, 1, -1}, std::vector<int>{1, 1, -1}).f1 ==
          doctest::Approx(1.0));

    const Metrics mixed =
        evaluate_metrics(std::vector<int>{1, 1, -1, -1}, std::vector<int>{1, -1, -1, -1});
    CHECK(mixed.accuracy == doctest::Approx(0.75));
    CHECK(mixed.f1 == doctest::Approx(2.0 / 3.0));

    const Metrics zero_recall =
        evaluate_metrics(std::vector<int>{-1, -1, -1}, std::vector<int>{1, -1, -1});
    CHECK(zero_recall.f1 == doctest::Approx(0.0));

    CHECK_THROWS_AS(evaluate_metrics(std::vector<int>{}, std::vector<int>{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(evaluate_metrics(std::vector<int>{1}, std::vector<int>{1, -1}),
                    std::invalid_argument);
}

} // TEST_SUITE
