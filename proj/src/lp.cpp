#include "hullknn/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hullknn {

namespace {

constexpr double kPivotTolerance = 1e-11;
constexpr double kCostTolerance = 1e-12;
constexpr double kRatioTie = 1e-15;

// Dense phase-1 tableau. Columns [0, m) are the weights, [m, m + rows) the
// artificial variables; the right-hand side is stored separately.
class Phase1Tableau {
public:
    Phase1Tableau(std::size_t rows, std::size_t weights)
        : rows_(rows), weights_(weights), cols_(weights + rows), a_(rows * cols_, 0.0), rhs_(rows, 0.0),
          cost_(cols_, 0.0), basis_(rows) {
        for (std::size_t r = 0; r < rows_; ++r) {
            at(r, weights_ + r) = 1.0;
            basis_[r] = weights_ + r;
        }
    }

    double& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    double& rhs(std::size_t r) { return rhs_[r]; }

    void price_out() {
        // Reduced costs of the phase-1 objective (sum of artificials) with the artificial basis.
        for (std::size_t c = 0; c < weights_; ++c) {
            double s = 0.0;
            for (std::size_t r = 0; r < rows_; ++r) s += at(r, c);
            cost_[c] = -s;
        }
    }

    /// Runs Bland's rule to optimality; returns the pivot count.
    std::size_t solve() {
        const std::size_t limit = 50 * (rows_ + cols_) * (rows_ + 1);
        std::size_t pivots = 0;
        for (;;) {
            // Artificial columns never re-enter once they leave.
            std::size_t entering = weights_;
            for (std::size_t c = 0; c < weights_; ++c) {
                if (cost_[c] < -kCostTolerance) {
                    entering = c;
                    break;
                }
            }
            if (entering == weights_) return pivots;

            std::size_t leaving = rows_;
            double best = 0.0;
            for (std::size_t r = 0; r < rows_; ++r) {
                const double coef = at(r, entering);
                if (coef <= kPivotTolerance) continue;
                const double ratio = std::max(rhs_[r], 0.0) / coef;
                if (leaving == rows_ || ratio < best - kRatioTie) {
                    best = ratio;
                    leaving = r;
                } else if (ratio <= best + kRatioTie && basis_[r] < basis_[leaving]) {
                    leaving = r;
                }
            }
            // Phase 1 is bounded below by zero; an empty ratio test is numerical noise.
            if (leaving == rows_) return pivots;

            pivot(leaving, entering);
            if (++pivots > limit) throw std::runtime_error("phase-1 simplex exceeded its pivot limit");
        }
    }

    double objective() const {
        double s = 0.0;
        for (std::size_t r = 0; r < rows_; ++r)
            if (basis_[r] >= weights_) s += std::max(rhs_[r], 0.0);
        return s;
    }

    std::vector<double> weights() const {
        std::vector<double> w(weights_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r)
            if (basis_[r] < weights_) w[basis_[r]] = rhs_[r];
        return w;
    }

private:
    void pivot(std::size_t pr, std::size_t pc) {
        const double inv = 1.0 / at(pr, pc);
        for (std::size_t c = 0; c < cols_; ++c) at(pr, c) *= inv;
        rhs_[pr] *= inv;
        at(pr, pc) = 1.0;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == pr) continue;
            const double f = at(r, pc);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < cols_; ++c) at(r, c) -= f * at(pr, c);
            at(r, pc) = 0.0;
            rhs_[r] -= f * rhs_[pr];
        }
        const double f = cost_[pc];
        if (f != 0.0) {
            for (std::size_t c = 0; c < cols_; ++c) cost_[c] -= f * at(pr, c);
            cost_[pc] = 0.0;
        }
        basis_[pr] = pc;
    }

    std::size_t rows_;
    std::size_t weights_;
    std::size_t cols_;
    std::vector<double> a_;
    std::vector<double> rhs_;
    std::vector<double> cost_;
    std::vector<std::size_t> basis_;
};

void check_inputs(PointsView points, std::span<const double> q) {
    if (points.empty()) throw std::invalid_argument("convex hull membership needs at least one point");
    if (q.size() != points.dim()) throw std::invalid_argument("query dimension does not match point dimension");
    for (double v : q)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite query coordinate");
    for (double v : points.coords())
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite point coordinate");
}

double translated_scale(PointsView points, std::span<const double> q) {
    double s = 1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto p = points[i];
        for (std::size_t d = 0; d < q.size(); ++d) s = std::max(s, std::abs(p[d] - q[d]));
    }
    return s;
}

}  // namespace

MembershipResult feasible_convex_combination(PointsView points, std::span<const double> q, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("tolerance must be positive");
    check_inputs(points, q);

    const std::size_t m = points.size();
    const std::size_t n = points.dim();
    MembershipResult result;
    result.scale = translated_scale(points, q);

    // Rows 0..n-1: coordinate balance; row n: weights sum to one.
    Phase1Tableau t(n + 1, m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto p = points[i];
        for (std::size_t d = 0; d < n; ++d) t.at(d, i) = (p[d] - q[d]) / result.scale;
        t.at(n, i) = 1.0;
    }
    t.rhs(n) = 1.0;
    t.price_out();
    result.pivots = t.solve();
    result.residual = t.objective();
    result.inside = result.residual <= 2.0 * eps;
    if (result.inside) {
        auto w = t.weights();
        double sum = 0.0;
        for (double& v : w) {
            v = std::max(v, 0.0);
            sum += v;
        }
        if (sum > 0.0)
            for (double& v : w) v /= sum;
        result.alpha = std::move(w);
    }
    return result;
}

bool certificate_valid(PointsView points, std::span<const double> q, std::span<const double> alpha, double geo_tol,
                       double weight_tol) {
    if (alpha.size() != points.size() || q.size() != points.dim()) return false;
    double sum = 0.0;
    for (double a : alpha) {
        if (a < -weight_tol) return false;
        sum += a;
    }
    if (std::abs(sum - 1.0) > weight_tol) return false;
    const double scale = translated_scale(points, q);
    for (std::size_t d = 0; d < q.size(); ++d) {
        double acc = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) acc += alpha[i] * (points[i][d] - q[d]);
        if (std::abs(acc) > geo_tol * scale) return false;
    }
    return true;
}

}  // namespace hullknn
