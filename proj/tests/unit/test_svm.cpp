#include <doctest.h>

#include <cmath>

#include "hullknn/dataset.hpp"
#include "hullknn/svm.hpp"
#include "oracles/fixtures.hpp"

using namespace hullknn;

namespace {

/// Two tight blobs 10 units apart (spread 0.5), 20 points each.
Dataset blobs(std::uint32_t seed, std::size_t per_class = 20) {
    Mt19937 rng(seed);
    std::vector<double> f;
    std::vector<Label> l;
    for (std::size_t i = 0; i < per_class; ++i) {
        f.push_back(uniform(rng, -0.5, 0.5));
        f.push_back(uniform(rng, -0.5, 0.5));
        l.push_back(0);
        f.push_back(10 + uniform(rng, -0.5, 0.5));
        f.push_back(10 + uniform(rng, -0.5, 0.5));
        l.push_back(1);
    }
    return Dataset("blobs", std::move(f), 2, std::move(l));
}

double train_accuracy(const SvmModel& m, const Dataset& ds) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) hits += predict_svm(m, ds.row(i)) == ds.label(i);
    return static_cast<double>(hits) / static_cast<double>(ds.size());
}

}  // namespace

TEST_CASE("rbf kernel") {
    CHECK(rbf_kernel(std::vector<double>{1, 2}, std::vector<double>{1, 2}, 3.0) == 1.0);
    CHECK(rbf_kernel(std::vector<double>{1, 2}, std::vector<double>{-5, 7}, 0.0) == 1.0);
    CHECK(rbf_kernel(std::vector<double>{0, 0}, std::vector<double>{1, 0}, 1.0) == doctest::Approx(0.367879).epsilon(1e-6));
    CHECK_THROWS_AS(rbf_kernel(std::vector<double>{0}, std::vector<double>{1, 0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(rbf_kernel(std::vector<double>{0}, std::vector<double>{1}, -1.0), std::invalid_argument);
}

TEST_CASE("separable blobs reach 100% training accuracy") {
    const Dataset ds = blobs(1);
    const SvmModel m = train_svm(ds, {.gamma = 0.05, .C = 1.0});
    CHECK(train_accuracy(m, ds) == 1.0);
    CHECK(predict_svm(m, std::vector<double>{0.1, -0.1}) == 0);
    CHECK(predict_svm(m, std::vector<double>{9.9, 10.2}) == 1);
    const auto audit = kkt_audit(m, ds, 1e-3);
    CHECK(audit.ok());
    CHECK(audit.max_equality_error <= 1e-6);
}

TEST_CASE("XOR is separated by the RBF kernel") {
    const Dataset xor4("xor", {0, 0, 1, 1, 0, 1, 1, 0}, 2, {0, 0, 1, 1});
    const SvmModel m = train_svm(xor4, {.gamma = 1.0, .C = 10.0});
    REQUIRE(m.pairwise.size() == 1);
    const BinaryModel& b = m.pairwise[0];
    // By symmetry every point is a support vector with the same weight and the bias is zero;
    // decision(x) = a (e^0 + e^-2 - 2 e^-1) at each training point, which is positive for class 0.
    for (std::size_t i = 0; i < 4; ++i) {
        const double f = b.decision(xor4.row(i), 1.0);
        CHECK((xor4.label(i) == 0 ? f > 0 : f < 0));
        CHECK(predict_svm(m, xor4.row(i)) == xor4.label(i));
    }
    CHECK(kkt_audit(m, xor4, 1e-3).ok());
}

TEST_CASE("dual constraints hold after training") {
    const Dataset iris = load_dataset(fixtures::data_dir() / "iris.data", DataFormat::iris);
    const SvmModel m = train_svm(iris, {.gamma = 0.25, .C = 1.0});
    CHECK(m.pairwise.size() == 3);
    for (const auto& b : m.pairwise) {
        double eq = 0.0;
        for (std::size_t i = 0; i < b.alpha.size(); ++i) {
            REQUIRE(b.alpha[i] >= 0.0);
            REQUIRE(b.alpha[i] <= m.C);
            eq += b.alpha[i] * b.y[i];
        }
        CHECK(std::abs(eq) <= 1e-6);
    }
    const auto audit = kkt_audit(m, iris, 1e-3);
    CHECK(audit.ok());
    CHECK(train_accuracy(m, iris) > 0.95);
}

TEST_CASE("interior support vectors sit on the margin") {
    const Dataset iris = load_dataset(fixtures::data_dir() / "iris.data", DataFormat::iris);
    const SvmModel m = train_svm(iris, {.gamma = 0.25, .C = 1.0});
    int interior = 0;
    for (const auto& b : m.pairwise) {
        for (std::size_t i = 0; i < b.alpha.size(); ++i) {
            if (b.alpha[i] <= 0.0 || b.alpha[i] >= m.C) continue;
            const auto x = iris.row(b.rows[i]);
            const double f = b.decision(x, m.gamma);
            CHECK(std::abs(std::abs(f) - 1.0) <= m.tol);
            CHECK((f > 0) == (b.y[i] > 0));
            ++interior;
        }
    }
    CHECK(interior > 0);
}

TEST_CASE("dual objective never decreases across SMO steps") {
    const Dataset ds = blobs(3, 15);
    const Dataset iris = load_dataset(fixtures::data_dir() / "iris.data", DataFormat::iris);
    for (const Dataset* d : {&ds, &iris}) {
        const SvmModel m = train_svm(*d, {.gamma = 0.25, .C = 1.0, .record_trajectory = true});
        for (const auto& b : m.pairwise) {
            REQUIRE(b.dual_trajectory.size() == b.steps);
            for (std::size_t i = 1; i < b.dual_trajectory.size(); ++i)
                REQUIRE(b.dual_trajectory[i] >= b.dual_trajectory[i - 1] - 1e-9);
            if (!b.dual_trajectory.empty())
                CHECK(b.dual_trajectory.back() == doctest::Approx(dual_objective(b, *d, m.gamma)));
        }
    }
}

TEST_CASE("one-vs-one ties go to the smallest label") {
    // Hand-built pairwise models that each vote for a different class: 0 beats 1, 1 beats 2, 2 beats 0.
    SvmModel m;
    m.gamma = 1.0;
    m.dim = 1;
    m.class_count = 3;
    auto constant = [](Label pos, Label neg, double bias) {
        BinaryModel b;
        b.positive = pos;
        b.negative = neg;
        b.dim = 1;
        b.bias = bias;
        return b;
    };
    m.pairwise = {constant(0, 1, 1.0), constant(0, 2, -1.0), constant(1, 2, 1.0)};
    CHECK(predict_svm(m, std::vector<double>{0.0}) == 0);
    m.pairwise = {constant(0, 1, -1.0), constant(0, 2, -1.0), constant(1, 2, -1.0)};
    CHECK(predict_svm(m, std::vector<double>{0.0}) == 2);
}

TEST_CASE("training errors and determinism") {
    const Dataset one("one", {0, 1, 2}, 1, {0, 0, 0});
    CHECK_THROWS_AS(train_svm(one, {}), std::invalid_argument);
    const Dataset ds = blobs(4);
    CHECK_THROWS_AS(train_svm(ds, {.gamma = -1.0}), std::invalid_argument);
    const SvmModel a = train_svm(ds, {.gamma = 0.1});
    const SvmModel b = train_svm(ds, {.gamma = 0.1});
    CHECK(a.pairwise[0].alpha == b.pairwise[0].alpha);
    CHECK(a.pairwise[0].bias == b.pairwise[0].bias);
    CHECK_THROWS_AS(predict_svm(a, std::vector<double>{1.0}), std::invalid_argument);
}
