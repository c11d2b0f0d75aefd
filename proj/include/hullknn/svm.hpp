#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hullknn/dataset.hpp"
#include "hullknn/points.hpp"
#include "hullknn/rng.hpp"

namespace hullknn {

/// exp(-gamma * |a - b|^2). Throws on dimension mismatch or negative gamma.
double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma);

struct SvmConfig {
    double gamma = 1e-3;
    double C = 1.0;
    double tol = 1e-3;          ///< KKT tolerance
    int max_passes = 100;       ///< budget of full sweeps over the training set
    std::uint32_t seed = Mt19937::kDefaultSeed;  ///< drives the random scan offsets
    bool record_trajectory = false;              ///< log the dual objective after every step
    unsigned threads = 1;       ///< pairwise models trained concurrently; 0 = hardware
};

/// One binary RBF machine for classes (positive, negative); positive gets y = +1.
struct BinaryModel {
    Label positive = 0;
    Label negative = 1;
    std::size_t dim = 0;
    std::vector<std::size_t> rows;   ///< training-set rows used for this pair
    std::vector<int> y;              ///< +1 / -1 per row
    std::vector<double> alpha;       ///< dual variables per row, 0 <= alpha <= C
    std::vector<double> sv_coords;   ///< support vectors (alpha > 0), row-major
    std::vector<double> sv_coef;     ///< alpha_i * y_i for each support vector
    double bias = 0.0;
    std::size_t steps = 0;           ///< successful SMO pair updates
    int passes = 0;                  ///< full sweeps used
    std::vector<double> dual_trajectory;

    /// sum(sv_coef * K(sv, x)) + bias.
    double decision(std::span<const double> x, double gamma) const;
};

struct SvmModel {
    double gamma = 0.0;
    double C = 0.0;
    double tol = 0.0;
    std::size_t dim = 0;
    std::size_t class_count = 0;
    std::vector<BinaryModel> pairwise;  ///< one-vs-one, ordered by (positive, negative)
};

/// SMO training (Platt's heuristics with random scan offsets); one-vs-one for
/// more than two classes. Throws std::invalid_argument for fewer than two classes.
SvmModel train_svm(const Dataset& train, const SvmConfig& config);

/// One-vs-one vote; decision >= 0 votes for the positive class; ties -> smallest label.
Label predict_svm(const SvmModel& model, std::span<const double> x);

std::vector<Label> predict_svm(const SvmModel& model, PointsView X);

struct KktReport {
    std::size_t checked = 0;
    std::size_t violations = 0;
    double worst = 0.0;            ///< largest violation magnitude
    double max_equality_error = 0.0;  ///< max over pairs of |sum alpha_i y_i|
    bool ok() const { return violations == 0; }
};

/// Checks every training row of every pairwise model against the KKT
/// condition for its alpha bucket (0, interior, C) at tolerance `tol`.
KktReport kkt_audit(const SvmModel& model, const Dataset& train, double tol);

/// sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij for a binary model.
double dual_objective(const BinaryModel& m, const Dataset& train, double gamma);

}  // namespace hullknn
