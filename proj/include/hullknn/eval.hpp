#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hullknn/dataset.hpp"
#include "hullknn/knn.hpp"
#include "hullknn/svm.hpp"

namespace hullknn {

/// Fraction of positions where predicted == truth. Throws on empty or mismatched input.
double accuracy(std::span<const Label> predicted, std::span<const Label> truth);

/// counts[truth][predicted], class_count x class_count, row-major.
std::vector<std::size_t> confusion_matrix(std::span<const Label> predicted, std::span<const Label> truth,
                                          std::size_t class_count);

enum class ClassifierKind { hull_knn, knn, svm };

std::string_view classifier_id(ClassifierKind kind);

/// What to fit and how. `knn` is used by both k-NN kinds; `svm` by svm.
struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::knn;
    KnnConfig knn;
    SvmConfig svm;
    /// Test-only: fixed hyperstructures for hull mode (see KnnModel::set_hull_provider).
    HullProvider hull_override;
};

struct FitResult {
    std::vector<Label> predictions;
    /// Hull mode: instances whose hull holds fewer than k training points.
    std::size_t deficit_count = 0;
};

/// Fits `spec` on train and classifies `test`. Hull-mode instance i uses
/// child_seed(spec.knn.base_seed, i).
FitResult fit_predict(const ClassifierSpec& spec, const Dataset& train, const Dataset& test);

struct ErrorRates {
    double train_error = 0.0;
    double validation_error = 0.0;
};

/// 1 - accuracy on the training and validation sets for a model fit on train.
ErrorRates error_rates(const ClassifierSpec& spec, const Dataset& train, const Dataset& validation);

struct GridCell {
    std::size_t k = 0;
    double threshold = 0.0;
    double train_error = 0.0;
    double validation_error = 0.0;
    std::uint32_t seed = 0;
};

struct GridResult {
    std::vector<GridCell> grid;  ///< k-major order
    std::size_t best_k = 0;
    double best_threshold = 0.0;
};

/// Evaluates hull k-NN (settings from `base`) on every (k, threshold) cell.
/// Cell (i, j) uses base seed child_seed(base_seed, i * t_grid.size() + j).
/// Best = minimal validation error, ties to smaller k then smaller threshold.
GridResult grid_search(const Dataset& train, const Dataset& validation, std::span<const std::size_t> k_grid,
                       std::span<const double> t_grid, std::uint32_t base_seed, const ClassifierSpec& base = {});

struct EvalReport {
    std::string classifier_id;
    std::optional<std::size_t> k;
    std::optional<double> threshold;
    std::optional<double> gamma;
    std::optional<double> C;
    std::optional<std::size_t> point_count;
    /// trace(confusion) / test_size, pooled over trials.
    double accuracy = 0.0;
    std::size_t class_count = 0;
    std::vector<std::size_t> confusion;  ///< pooled, class_count x class_count
    std::size_t test_size = 0;           ///< pooled over trials
    std::uint32_t seed = 0;
    std::vector<double> trials;          ///< per-trial accuracy
    double mean_accuracy = 0.0;
    double min_accuracy = 0.0;
    double max_accuracy = 0.0;
    /// Hull mode: mean over trials of the fraction of test instances with < k in-hull neighbors.
    std::optional<double> in_hull_neighbor_deficit;

    friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

struct BenchmarkOptions {
    std::size_t trials = 1;
    double test_fraction = 0.1;
    std::uint32_t base_seed = Mt19937::kDefaultSeed;
    bool stratified = true;
    bool scale = false;
    /// Trials evaluated concurrently; 0 = hardware concurrency.
    unsigned threads = 1;
};

/// Trial t splits with child_seed(base_seed, t); every classifier in a trial
/// sees that split, and k-NN/SVM randomness is keyed to the same trial seed.
/// One report per classifier, in the order given.
std::vector<EvalReport> run_benchmark(const Dataset& ds, std::span<const ClassifierSpec> classifiers,
                                      const BenchmarkOptions& options);

}  // namespace hullknn
