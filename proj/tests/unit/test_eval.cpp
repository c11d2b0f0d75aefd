#include <doctest.h>

#include <cmath>

#include "hullknn/eval.hpp"
#include "oracles/fixtures.hpp"

using namespace hullknn;

namespace {

Dataset iris() { return load_dataset(fixtures::data_dir() / "iris.data", DataFormat::iris); }

Dataset blobs(std::uint32_t seed, std::size_t per_class) {
    Mt19937 rng(seed);
    std::vector<double> f;
    std::vector<Label> l;
    for (std::size_t i = 0; i < per_class; ++i) {
        for (int c = 0; c < 2; ++c) {
            f.push_back(c * 6.0 + uniform(rng, -1, 1));
            f.push_back(c * 6.0 + uniform(rng, -1, 1));
            l.push_back(c);
        }
    }
    return Dataset("blobs", std::move(f), 2, std::move(l));
}

HullProvider enclosing(const Dataset& ds) {
    double lo = 0, hi = 0;
    for (double v : ds.features()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const auto corners = hypercube_corners(ds.dim(), lo - (hi - lo) - 1, hi + (hi - lo) + 1);
    const std::size_t dim = ds.dim();
    return [corners, dim](std::span<const double> x, std::uint64_t) { return fixed_hyperstructure(corners, dim, x); };
}

}  // namespace

TEST_CASE("accuracy") {
    const std::vector<Label> t{0, 1, 1, 0};
    CHECK(accuracy(t, t) == 1.0);
    std::vector<Label> truth(21, 1), pred(21, 1);
    for (int i = 0; i < 3; ++i) pred[i] = 0;
    CHECK(accuracy(pred, truth) == doctest::Approx(18.0 / 21.0));
    std::vector<Label> truth14(14, 0), pred14(14, 0);
    for (int i = 0; i < 5; ++i) pred14[i] = 1;
    CHECK(accuracy(pred14, truth14) == doctest::Approx(9.0 / 14.0));
    CHECK_THROWS_AS(accuracy(std::vector<Label>{}, std::vector<Label>{}), std::invalid_argument);
    CHECK_THROWS_AS(accuracy(std::vector<Label>{0}, std::vector<Label>{0, 1}), std::invalid_argument);
}

TEST_CASE("confusion matrix") {
    const auto m = confusion_matrix(std::vector<Label>{0, 1, 1, 2}, std::vector<Label>{0, 1, 2, 2}, 3);
    CHECK(m == std::vector<std::size_t>{1, 0, 0, 0, 1, 0, 0, 1, 1});
}

TEST_CASE("error rates") {
    const Dataset ds = iris();
    ClassifierSpec spec;
    spec.knn.k = 1;
    CHECK(error_rates(spec, ds, ds).train_error == 0.0);

    const Dataset b = blobs(1, 20);
    const auto e = error_rates(spec, b, blobs(2, 10));
    CHECK(e.train_error == 0.0);
    CHECK(e.validation_error == 0.0);
}

TEST_CASE("random labels give chance-level validation error") {
    // 20 seeds x 100 validation points: the pooled error has sd ~ 0.011 around 0.5.
    double total = 0.0;
    for (std::uint32_t seed = 0; seed < 20; ++seed) {
        Mt19937 rng(seed);
        auto make = [&](std::size_t n) {
            std::vector<double> f = sample_box(rng, 0, 1, 2, n);
            std::vector<Label> l;
            for (std::size_t i = 0; i < n; ++i) l.push_back(static_cast<Label>(i % 2));
            shuffle(rng, std::span<Label>(l));
            return Dataset("noise", std::move(f), 2, std::move(l));
        };
        const Dataset train = make(200), validation = make(100);
        ClassifierSpec spec;
        spec.knn.k = 1;
        total += error_rates(spec, train, validation).validation_error;
    }
    CHECK(std::abs(total / 20 - 0.5) <= 0.15);
}

TEST_CASE("grid search") {
    const Dataset train = blobs(3, 30), validation = blobs(4, 15);
    SUBCASE("1x1 grid") {
        const std::vector<std::size_t> ks{3};
        const std::vector<double> ts{2.0};
        const auto g = grid_search(train, validation, ks, ts, 7);
        CHECK(g.grid.size() == 1);
        CHECK(g.best_k == 3);
        CHECK(g.best_threshold == 2.0);
    }
    SUBCASE("best matches an exhaustive oracle over the same seeds") {
        const std::vector<std::size_t> ks{1, 5, 25};
        const std::vector<double> ts{0.05, 2.0, 8.0};
        const auto g = grid_search(train, validation, ks, ts, 11);
        double best_err = 2.0;
        std::size_t best_k = 0;
        double best_t = 0.0;
        for (std::size_t i = 0; i < ks.size(); ++i) {
            for (std::size_t j = 0; j < ts.size(); ++j) {
                ClassifierSpec spec;
                spec.kind = ClassifierKind::hull_knn;
                spec.knn.k = ks[i];
                spec.knn.threshold = ts[j];
                spec.knn.base_seed = child_seed(11, i * ts.size() + j);
                const auto pred = fit_predict(spec, train, validation).predictions;
                const double err = 1.0 - accuracy(pred, validation.labels());
                CHECK(g.grid[i * ts.size() + j].validation_error == err);
                if (err < best_err) {
                    best_err = err;
                    best_k = ks[i];
                    best_t = ts[j];
                }
            }
        }
        CHECK(g.best_k == best_k);
        CHECK(g.best_threshold == best_t);
    }
    SUBCASE("ties prefer smaller k then smaller threshold") {
        // Every cell scores zero error with an enclosing hull, so the first cell wins.
        ClassifierSpec base;
        base.hull_override = enclosing(train);
        const std::vector<std::size_t> ks{5, 3};
        const std::vector<double> ts{1.0, 0.5};
        const auto g = grid_search(train, validation, ks, ts, 1, base);
        for (const auto& c : g.grid) CHECK(c.validation_error == 0.0);
        CHECK(g.best_k == 3);
        CHECK(g.best_threshold == 0.5);
    }
    CHECK_THROWS_AS(grid_search(train, validation, std::vector<std::size_t>{}, std::vector<double>{1.0}, 1),
                    std::invalid_argument);
}

TEST_CASE("benchmark reports") {
    const Dataset ds = iris();
    ClassifierSpec hull;
    hull.kind = ClassifierKind::hull_knn;
    hull.knn.k = 10;
    hull.knn.threshold = 21;
    ClassifierSpec classic;
    classic.knn.k = 10;
    ClassifierSpec svm;
    svm.kind = ClassifierKind::svm;
    svm.svm.gamma = 0.25;
    const std::vector<ClassifierSpec> specs{hull, classic, svm};

    BenchmarkOptions opts;
    opts.trials = 3;
    opts.base_seed = 42;
    const auto a = run_benchmark(ds, specs, opts);
    REQUIRE(a.size() == 3);
    opts.threads = 3;
    const auto b = run_benchmark(ds, specs, opts);
    CHECK(a == b);

    for (const auto& r : a) {
        std::size_t sum = 0, trace = 0;
        for (std::size_t i = 0; i < r.confusion.size(); ++i) sum += r.confusion[i];
        for (std::size_t c = 0; c < r.class_count; ++c) trace += r.confusion[c * r.class_count + c];
        CHECK(sum == r.test_size);
        CHECK(r.test_size == 45);
        CHECK(r.accuracy == static_cast<double>(trace) / static_cast<double>(r.test_size));
        CHECK(r.trials.size() == 3);
        CHECK(r.min_accuracy <= r.mean_accuracy);
        CHECK(r.mean_accuracy <= r.max_accuracy);
        CHECK(r.seed == 42u);
    }
    CHECK(a[0].classifier_id == "hull-knn");
    CHECK(a[0].threshold == 21.0);
    CHECK(a[0].point_count == 15u);
    CHECK(a[0].in_hull_neighbor_deficit.has_value());
    CHECK_FALSE(a[1].threshold.has_value());
    CHECK_FALSE(a[1].gamma.has_value());
    CHECK(a[2].gamma == 0.25);
    CHECK_FALSE(a[2].k.has_value());
}

TEST_CASE("enclosing override makes hull and classic benchmarks identical") {
    const Dataset ds = iris();
    ClassifierSpec hull;
    hull.kind = ClassifierKind::hull_knn;
    hull.knn.k = 10;
    hull.knn.threshold = 1;
    hull.hull_override = enclosing(ds);
    ClassifierSpec classic;
    classic.knn.k = 10;
    const std::vector<ClassifierSpec> specs{hull, classic};
    const auto r = run_benchmark(ds, specs, {.trials = 1});
    CHECK(r[0].accuracy == r[1].accuracy);
    CHECK(r[0].confusion == r[1].confusion);
    CHECK(*r[0].in_hull_neighbor_deficit == 0.0);
}

TEST_CASE("classic k=10 on Iris averages at least 90% over 30 trials") {
    ClassifierSpec classic;
    classic.knn.k = 10;
    const std::vector<ClassifierSpec> specs{classic};
    const auto r = run_benchmark(iris(), specs, {.trials = 30, .base_seed = 5489, .threads = 0});
    CHECK(r[0].mean_accuracy >= 0.90);
}

TEST_CASE("shrinking the threshold does not shrink the in-hull deficit") {
    const Dataset ds = iris();
    auto deficit = [&](double threshold) {
        ClassifierSpec hull;
        hull.kind = ClassifierKind::hull_knn;
        hull.knn.k = 10;
        hull.knn.threshold = threshold;
        const std::vector<ClassifierSpec> specs{hull};
        return *run_benchmark(ds, specs, {.trials = 30, .base_seed = 1, .threads = 0})[0].in_hull_neighbor_deficit;
    };
    const double wide = deficit(21), narrow = deficit(2);
    CHECK(narrow >= wide);
    CHECK(narrow > 0.0);
}
