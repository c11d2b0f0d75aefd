#include "hullknn/eval.hpp"

#include <algorithm>
#include <stdexcept>

#include "hullknn/parallel.hpp"

namespace hullknn {

double accuracy(std::span<const Label> predicted, std::span<const Label> truth) {
    if (predicted.size() != truth.size()) throw std::invalid_argument("accuracy: length mismatch");
    if (truth.empty()) throw std::invalid_argument("accuracy: empty input");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i];
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

std::vector<std::size_t> confusion_matrix(std::span<const Label> predicted, std::span<const Label> truth,
                                          std::size_t class_count) {
    if (predicted.size() != truth.size()) throw std::invalid_argument("confusion_matrix: length mismatch");
    std::vector<std::size_t> m(class_count * class_count, 0);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const auto t = static_cast<std::size_t>(truth[i]);
        const auto p = static_cast<std::size_t>(predicted[i]);
        if (t >= class_count || p >= class_count) throw std::out_of_range("confusion_matrix: label out of range");
        ++m[t * class_count + p];
    }
    return m;
}

std::string_view classifier_id(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::hull_knn: return "hull-knn";
        case ClassifierKind::knn: return "knn";
        case ClassifierKind::svm: return "svm";
    }
    return "?";
}

FitResult fit_predict(const ClassifierSpec& spec, const Dataset& train, const Dataset& test) {
    const PointsView X(test.features(), test.dim());
    FitResult out;
    if (spec.kind == ClassifierKind::svm) {
        out.predictions = predict_svm(train_svm(train, spec.svm), X);
        return out;
    }
    KnnConfig cfg = spec.knn;
    cfg.mode = spec.kind == ClassifierKind::hull_knn ? KnnMode::hull : KnnMode::classic;
    KnnModel model(train, cfg);
    if (spec.hull_override) model.set_hull_provider(spec.hull_override);
    const auto detailed = predict_detailed(model, X);
    out.predictions.reserve(detailed.size());
    for (const Prediction& p : detailed) {
        out.predictions.push_back(p.label);
        if (cfg.mode == KnnMode::hull && p.reachable_count < cfg.k) ++out.deficit_count;
    }
    return out;
}

ErrorRates error_rates(const ClassifierSpec& spec, const Dataset& train, const Dataset& validation) {
    if (train.empty() || validation.empty()) throw std::invalid_argument("error_rates: empty set");
    if (train.dim() != validation.dim()) throw std::invalid_argument("error_rates: dimension mismatch");
    const auto on_train = fit_predict(spec, train, train);
    const auto on_validation = fit_predict(spec, train, validation);
    return {1.0 - accuracy(on_train.predictions, train.labels()),
            1.0 - accuracy(on_validation.predictions, validation.labels())};
}

GridResult grid_search(const Dataset& train, const Dataset& validation, std::span<const std::size_t> k_grid,
                       std::span<const double> t_grid, std::uint32_t base_seed, const ClassifierSpec& base) {
    if (k_grid.empty() || t_grid.empty()) throw std::invalid_argument("grid_search: empty grid");
    GridResult result;
    result.grid.resize(k_grid.size() * t_grid.size());
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        for (std::size_t j = 0; j < t_grid.size(); ++j) {
            const std::size_t cell = i * t_grid.size() + j;
            ClassifierSpec spec = base;
            spec.kind = ClassifierKind::hull_knn;
            spec.knn.k = k_grid[i];
            spec.knn.threshold = t_grid[j];
            spec.knn.base_seed = child_seed(base_seed, cell);
            const ErrorRates e = error_rates(spec, train, validation);
            result.grid[cell] = {k_grid[i], t_grid[j], e.train_error, e.validation_error, spec.knn.base_seed};
        }
    }
    const auto best = std::min_element(result.grid.begin(), result.grid.end(), [](const GridCell& a, const GridCell& b) {
        if (a.validation_error != b.validation_error) return a.validation_error < b.validation_error;
        if (a.k != b.k) return a.k < b.k;
        return a.threshold < b.threshold;
    });
    result.best_k = best->k;
    result.best_threshold = best->threshold;
    return result;
}

namespace {

struct TrialOutcome {
    std::vector<std::size_t> confusion;
    std::size_t test_size = 0;
    double accuracy = 0.0;
    double deficit_fraction = 0.0;
};

}  // namespace

std::vector<EvalReport> run_benchmark(const Dataset& ds, std::span<const ClassifierSpec> classifiers,
                                      const BenchmarkOptions& options) {
    if (options.trials < 1) throw std::invalid_argument("run_benchmark: at least one trial required");
    const std::size_t classes = ds.class_count();
    const std::size_t n_cls = classifiers.size();
    std::vector<TrialOutcome> outcomes(options.trials * n_cls);

    parallel_for(options.trials, options.threads, [&](std::size_t t) {
        const std::uint32_t trial_seed = child_seed(options.base_seed, t);
        Split s = split(ds, options.test_fraction, trial_seed, options.stratified);
        if (options.scale) s = scale_minmax(s);
        for (std::size_t c = 0; c < n_cls; ++c) {
            ClassifierSpec spec = classifiers[c];
            spec.knn.base_seed = trial_seed;
            spec.svm.seed = trial_seed;
            if (options.threads != 1) {
                spec.knn.threads = 1;
                spec.svm.threads = 1;
            }
            const FitResult fit = fit_predict(spec, s.train, s.test);
            TrialOutcome& o = outcomes[t * n_cls + c];
            o.confusion = confusion_matrix(fit.predictions, s.test.labels(), classes);
            o.test_size = s.test.size();
            o.accuracy = accuracy(fit.predictions, s.test.labels());
            o.deficit_fraction = static_cast<double>(fit.deficit_count) / static_cast<double>(s.test.size());
        }
    });

    std::vector<EvalReport> reports;
    for (std::size_t c = 0; c < n_cls; ++c) {
        const ClassifierSpec& spec = classifiers[c];
        EvalReport r;
        r.classifier_id = std::string(classifier_id(spec.kind));
        if (spec.kind == ClassifierKind::svm) {
            r.gamma = spec.svm.gamma;
            r.C = spec.svm.C;
        } else {
            r.k = spec.knn.k;
        }
        if (spec.kind == ClassifierKind::hull_knn) {
            r.threshold = spec.knn.threshold;
            r.point_count = spec.knn.hull.point_count == 0 ? default_point_count(ds.dim()) : spec.knn.hull.point_count;
        }
        r.class_count = classes;
        r.confusion.assign(classes * classes, 0);
        r.seed = options.base_seed;
        double deficit = 0.0;
        for (std::size_t t = 0; t < options.trials; ++t) {
            const TrialOutcome& o = outcomes[t * n_cls + c];
            for (std::size_t i = 0; i < o.confusion.size(); ++i) r.confusion[i] += o.confusion[i];
            r.test_size += o.test_size;
            r.trials.push_back(o.accuracy);
            deficit += o.deficit_fraction;
        }
        std::size_t trace = 0;
        for (std::size_t i = 0; i < classes; ++i) trace += r.confusion[i * classes + i];
        r.accuracy = static_cast<double>(trace) / static_cast<double>(r.test_size);
        double sum = 0.0;
        for (double a : r.trials) sum += a;
        r.mean_accuracy = sum / static_cast<double>(r.trials.size());
        r.min_accuracy = *std::min_element(r.trials.begin(), r.trials.end());
        r.max_accuracy = *std::max_element(r.trials.begin(), r.trials.end());
        if (spec.kind == ClassifierKind::hull_knn) r.in_hull_neighbor_deficit = deficit / static_cast<double>(options.trials);
        reports.push_back(std::move(r));
    }
    return reports;
}

}  // namespace hullknn
