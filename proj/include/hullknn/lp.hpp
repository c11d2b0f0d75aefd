#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hullknn/points.hpp"

namespace hullknn {

/// Relative tolerance on geometric reconstruction (and the feasibility cut).
inline constexpr double kGeometricTolerance = 1e-9;
/// Absolute tolerance on the convex-combination weights.
inline constexpr double kWeightTolerance = 1e-7;

struct MembershipResult {
    bool inside = false;
    /// Convex-combination weights, one per point; filled only when inside.
    std::vector<double> alpha;
    /// Phase-1 optimum (sum of artificial variables) on the normalized problem.
    double residual = 0.0;
    /// max(1, largest |p_ij - q_j|): the unit that normalizes coordinates.
    double scale = 1.0;
    std::size_t pivots = 0;
};

/// Decides q in Conv(points) as LP feasibility of
///   alpha >= 0, sum(alpha) = 1, sum(alpha_i (p_i - q)) = 0
/// with a phase-1 simplex under Bland's rule. Coordinates are translated by -q
/// and divided by `scale` before solving. q counts as inside when the phase-1
/// optimum is at most 2 * eps (the boundary band is inclusive).
///
/// Throws std::invalid_argument on empty input, dimension mismatch, non-finite
/// coordinates, or eps <= 0.
MembershipResult feasible_convex_combination(PointsView points, std::span<const double> q,
                                             double eps = kGeometricTolerance);

/// Audits a certificate: weights >= -weight_tol, |sum - 1| <= weight_tol, and
/// |sum(alpha_i p_i) - q|_inf <= geo_tol * max(1, max |p_ij - q_j|).
bool certificate_valid(PointsView points, std::span<const double> q, std::span<const double> alpha,
                       double geo_tol = kGeometricTolerance, double weight_tol = kWeightTolerance);

}  // namespace hullknn
