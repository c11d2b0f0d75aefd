#include "hullknn/svm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hullknn/parallel.hpp"

namespace hullknn {

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) {
    if (a.size() != b.size()) throw std::invalid_argument("rbf_kernel: dimension mismatch");
    if (!(gamma >= 0.0)) throw std::invalid_argument("rbf_kernel: gamma must be non-negative");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::exp(-gamma * s);
}

double BinaryModel::decision(std::span<const double> x, double gamma) const {
    double f = bias;
    for (std::size_t i = 0; i < sv_coef.size(); ++i)
        f += sv_coef[i] * rbf_kernel(std::span<const double>(sv_coords).subspan(i * dim, dim), x, gamma);
    return f;
}

namespace {

// Platt's SMO on a precomputed kernel matrix. Uses u(x) = sum(alpha y K) - b.
class SmoSolver {
public:
    SmoSolver(const Dataset& train, std::vector<std::size_t> rows, std::vector<int> y, const SvmConfig& cfg)
        : n_(rows.size()), y_(std::move(y)), alpha_(n_, 0.0), error_(n_), kernel_(n_ * n_), cfg_(cfg),
          rng_(cfg.seed) {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i; j < n_; ++j)
                kernel_[i * n_ + j] = kernel_[j * n_ + i] =
                    rbf_kernel(train.row(rows[i]), train.row(rows[j]), cfg.gamma);
        // alpha = 0 and b = 0 give u = 0, so E_i = -y_i.
        for (std::size_t i = 0; i < n_; ++i) error_[i] = -y_[i];
    }

    void run() {
        std::size_t changed = 0;
        bool examine_all = true;
        while ((changed > 0 || examine_all) && passes_ < cfg_.max_passes) {
            changed = 0;
            if (examine_all) {
                ++passes_;
                for (std::size_t i = 0; i < n_; ++i) changed += examine(i);
            } else {
                for (std::size_t i = 0; i < n_; ++i)
                    if (interior(i)) changed += examine(i);
            }
            if (examine_all)
                examine_all = false;
            else if (changed == 0)
                examine_all = true;
        }
    }

    const std::vector<double>& alpha() const { return alpha_; }
    double bias() const { return -b_; }
    std::size_t steps() const { return steps_; }
    int passes() const { return passes_; }
    std::vector<double> take_trajectory() { return std::move(trajectory_); }

private:
    double k(std::size_t i, std::size_t j) const { return kernel_[i * n_ + j]; }
    bool interior(std::size_t i) const { return alpha_[i] > 0.0 && alpha_[i] < cfg_.C; }

    std::size_t examine(std::size_t i2) {
        const double r2 = error_[i2] * y_[i2];
        if (!((r2 < -cfg_.tol && alpha_[i2] < cfg_.C) || (r2 > cfg_.tol && alpha_[i2] > 0.0))) return 0;

        // Second choice: largest |E1 - E2| among interior points.
        std::size_t best = n_;
        double gap = -1.0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (!interior(i) || i == i2) continue;
            const double g = std::abs(error_[i] - error_[i2]);
            if (g > gap) {
                gap = g;
                best = i;
            }
        }
        if (best != n_ && step(best, i2)) return 1;

        // Then interior points, then everything, each from a random offset.
        const std::size_t start = rng_.next_below(static_cast<std::uint32_t>(n_));
        for (std::size_t o = 0; o < n_; ++o) {
            const std::size_t i1 = (start + o) % n_;
            if (interior(i1) && step(i1, i2)) return 1;
        }
        const std::size_t start2 = rng_.next_below(static_cast<std::uint32_t>(n_));
        for (std::size_t o = 0; o < n_; ++o) {
            const std::size_t i1 = (start2 + o) % n_;
            if (step(i1, i2)) return 1;
        }
        return 0;
    }

    bool step(std::size_t i1, std::size_t i2) {
        if (i1 == i2) return false;
        const double a1 = alpha_[i1], a2 = alpha_[i2];
        const int y1 = y_[i1], y2 = y_[i2];
        const double e1 = error_[i1], e2 = error_[i2];
        const double s = y1 * y2;
        const double C = cfg_.C;
        double lo, hi;
        if (y1 != y2) {
            lo = std::max(0.0, a2 - a1);
            hi = std::min(C, C + a2 - a1);
        } else {
            lo = std::max(0.0, a2 + a1 - C);
            hi = std::min(C, a2 + a1);
        }
        if (lo >= hi) return false;

        const double k11 = k(i1, i1), k12 = k(i1, i2), k22 = k(i2, i2);
        const double eta = k11 + k22 - 2.0 * k12;
        double new_a2;
        if (eta > 0.0) {
            new_a2 = std::clamp(a2 + y2 * (e1 - e2) / eta, lo, hi);
        } else {
            // Objective along the constraint line at both ends.
            const double f1 = y1 * (e1 + b_) - a1 * k11 - s * a2 * k12;
            const double f2 = y2 * (e2 + b_) - s * a1 * k12 - a2 * k22;
            const double l1 = a1 + s * (a2 - lo);
            const double h1 = a1 + s * (a2 - hi);
            const double obj_lo = l1 * f1 + lo * f2 + 0.5 * l1 * l1 * k11 + 0.5 * lo * lo * k22 + s * lo * l1 * k12;
            const double obj_hi = h1 * f1 + hi * f2 + 0.5 * h1 * h1 * k11 + 0.5 * hi * hi * k22 + s * hi * h1 * k12;
            if (obj_lo < obj_hi - kAlphaEps)
                new_a2 = lo;
            else if (obj_lo > obj_hi + kAlphaEps)
                new_a2 = hi;
            else
                new_a2 = a2;
        }
        if (std::abs(new_a2 - a2) < kAlphaEps * (new_a2 + a2 + kAlphaEps)) return false;

        double new_a1 = a1 + s * (a2 - new_a2);
        // Snap to the box so bound/interior classification stays exact.
        if (new_a1 < 1e-12) {
            new_a2 += s * new_a1;
            new_a1 = 0.0;
        } else if (new_a1 > C - 1e-12) {
            new_a2 += s * (new_a1 - C);
            new_a1 = C;
        }
        new_a2 = std::clamp(new_a2, 0.0, C);

        const double d1 = y1 * (new_a1 - a1);
        const double d2 = y2 * (new_a2 - a2);
        const double b1 = e1 + d1 * k11 + d2 * k12 + b_;
        const double b2 = e2 + d1 * k12 + d2 * k22 + b_;
        double new_b;
        if (new_a1 > 0.0 && new_a1 < C)
            new_b = b1;
        else if (new_a2 > 0.0 && new_a2 < C)
            new_b = b2;
        else
            new_b = 0.5 * (b1 + b2);

        const double db = new_b - b_;
        for (std::size_t i = 0; i < n_; ++i) error_[i] += d1 * k(i1, i) + d2 * k(i2, i) - db;
        alpha_[i1] = new_a1;
        alpha_[i2] = new_a2;
        b_ = new_b;
        ++steps_;
        if (cfg_.record_trajectory) trajectory_.push_back(dual());
        return true;
    }

    double dual() const {
        double lin = 0.0, quad = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (alpha_[i] == 0.0) continue;
            lin += alpha_[i];
            for (std::size_t j = 0; j < n_; ++j)
                if (alpha_[j] != 0.0) quad += alpha_[i] * alpha_[j] * y_[i] * y_[j] * k(i, j);
        }
        return lin - 0.5 * quad;
    }

    static constexpr double kAlphaEps = 1e-8;

    std::size_t n_;
    std::vector<int> y_;
    std::vector<double> alpha_;
    std::vector<double> error_;
    std::vector<double> kernel_;
    const SvmConfig& cfg_;
    Mt19937 rng_;
    double b_ = 0.0;
    std::size_t steps_ = 0;
    int passes_ = 0;
    std::vector<double> trajectory_;
};

BinaryModel train_pair(const Dataset& train, Label pos, Label neg, const SvmConfig& cfg) {
    BinaryModel m;
    m.positive = pos;
    m.negative = neg;
    m.dim = train.dim();
    for (std::size_t i = 0; i < train.size(); ++i) {
        const Label l = train.label(i);
        if (l == pos || l == neg) {
            m.rows.push_back(i);
            m.y.push_back(l == pos ? 1 : -1);
        }
    }
    SmoSolver solver(train, m.rows, m.y, cfg);
    solver.run();
    m.alpha = solver.alpha();
    m.bias = solver.bias();
    m.steps = solver.steps();
    m.passes = solver.passes();
    m.dual_trajectory = solver.take_trajectory();
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
        if (m.alpha[i] <= 0.0) continue;
        const auto x = train.row(m.rows[i]);
        m.sv_coords.insert(m.sv_coords.end(), x.begin(), x.end());
        m.sv_coef.push_back(m.alpha[i] * m.y[i]);
    }
    return m;
}

}  // namespace

SvmModel train_svm(const Dataset& train, const SvmConfig& config) {
    if (!(config.gamma >= 0.0)) throw std::invalid_argument("gamma must be non-negative");
    if (!(config.C > 0.0)) throw std::invalid_argument("C must be positive");
    std::vector<std::size_t> per_class(train.class_count(), 0);
    for (Label l : train.labels()) ++per_class[static_cast<std::size_t>(l)];
    std::vector<Label> present;
    for (std::size_t c = 0; c < per_class.size(); ++c)
        if (per_class[c] > 0) present.push_back(static_cast<Label>(c));
    if (present.size() < 2) throw std::invalid_argument("SVM training needs at least two classes");

    std::vector<std::pair<Label, Label>> pairs;
    for (std::size_t a = 0; a < present.size(); ++a)
        for (std::size_t b = a + 1; b < present.size(); ++b) pairs.emplace_back(present[a], present[b]);

    SvmModel model;
    model.gamma = config.gamma;
    model.C = config.C;
    model.tol = config.tol;
    model.dim = train.dim();
    model.class_count = train.class_count();
    model.pairwise.resize(pairs.size());
    parallel_for(pairs.size(), config.threads, [&](std::size_t p) {
        SvmConfig pair_cfg = config;
        pair_cfg.seed = child_seed(config.seed, p);
        model.pairwise[p] = train_pair(train, pairs[p].first, pairs[p].second, pair_cfg);
    });
    return model;
}

Label predict_svm(const SvmModel& model, std::span<const double> x) {
    if (x.size() != model.dim) throw std::invalid_argument("predict_svm: dimension mismatch");
    std::vector<std::size_t> votes(model.class_count, 0);
    for (const BinaryModel& m : model.pairwise)
        ++votes[static_cast<std::size_t>(m.decision(x, model.gamma) >= 0.0 ? m.positive : m.negative)];
    return static_cast<Label>(std::max_element(votes.begin(), votes.end()) - votes.begin());
}

std::vector<Label> predict_svm(const SvmModel& model, PointsView X) {
    std::vector<Label> out;
    out.reserve(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) out.push_back(predict_svm(model, X[i]));
    return out;
}

KktReport kkt_audit(const SvmModel& model, const Dataset& train, double tol) {
    KktReport r;
    for (const BinaryModel& m : model.pairwise) {
        double eq = 0.0;
        for (std::size_t i = 0; i < m.rows.size(); ++i) {
            eq += m.alpha[i] * m.y[i];
            const double margin = m.y[i] * m.decision(train.row(m.rows[i]), model.gamma);
            double violation = 0.0;
            if (m.alpha[i] <= 0.0)
                violation = std::max(0.0, 1.0 - margin);
            else if (m.alpha[i] >= model.C)
                violation = std::max(0.0, margin - 1.0);
            else
                violation = std::abs(margin - 1.0);
            ++r.checked;
            r.worst = std::max(r.worst, violation);
            if (violation > tol) ++r.violations;
        }
        r.max_equality_error = std::max(r.max_equality_error, std::abs(eq));
    }
    return r;
}

double dual_objective(const BinaryModel& m, const Dataset& train, double gamma) {
    double lin = 0.0, quad = 0.0;
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
        if (m.alpha[i] == 0.0) continue;
        lin += m.alpha[i];
        for (std::size_t j = 0; j < m.rows.size(); ++j) {
            if (m.alpha[j] == 0.0) continue;
            quad += m.alpha[i] * m.alpha[j] * m.y[i] * m.y[j] *
                    rbf_kernel(train.row(m.rows[i]), train.row(m.rows[j]), gamma);
        }
    }
    return lin - 0.5 * quad;
}

}  // namespace hullknn
