#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "hullknn/lp.hpp"
#include "hullknn/points.hpp"
#include "hullknn/rng.hpp"

namespace hullknn {

/// Raised when a hyperstructure cannot be built (zero-volume box, failed enclosure).
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// [min(x) - threshold, max(x) + threshold], one scalar interval for every dimension.
Interval bounding_interval(std::span<const double> x, double threshold);

/// Default hyperstructure size for dimension n: 4n - 1.
constexpr std::size_t default_point_count(std::size_t dim) { return 4 * dim - 1; }

struct HyperstructureOptions {
    /// 0 selects default_point_count(dim).
    std::size_t point_count = 0;
    /// Resample (up to kMaxEnclosureAttempts) until the test instance lies in the hull.
    bool ensure_enclosure = false;
    /// Experimental: per-dimension box [x_d - threshold, x_d + threshold].
    bool per_dimension_box = false;
};

inline constexpr int kMaxEnclosureAttempts = 32;

/// Random point cloud sampled in a threshold-expanded box around a test instance.
struct Hyperstructure {
    std::vector<double> coords;       ///< point_count x dim, row-major
    std::size_t dim = 0;
    std::vector<double> box_lo;       ///< per-dimension lower bound (all equal in scalar mode)
    std::vector<double> box_hi;       ///< per-dimension upper bound
    double threshold = 0.0;
    std::vector<double> test_instance;
    std::uint32_t child_seed = 0;

    PointsView points() const { return {coords, dim}; }
    std::size_t point_count() const { return dim == 0 ? 0 : coords.size() / dim; }

    friend bool operator==(const Hyperstructure&, const Hyperstructure&) = default;
};

/// Samples the hyperstructure for `x` from `rng` (which must be freshly seeded
/// per instance; its seed is recorded as child_seed). Throws GeometryError for a
/// zero-volume box or when enclosure was requested and never achieved.
Hyperstructure build_hyperstructure(std::span<const double> x, double threshold, Mt19937& rng,
                                    const HyperstructureOptions& options = {});

/// Hyperstructure made from caller-supplied points (no sampling). The box is the
/// points' bounding box. Used to install fixed hulls, e.g. an all-enclosing one.
Hyperstructure fixed_hyperstructure(std::vector<double> coords, std::size_t dim, std::span<const double> x);

/// The 2^dim corners of [lo, hi]^dim.
std::vector<double> hypercube_corners(std::size_t dim, double lo, double hi);

/// q in Conv(h.points). Rejects points outside the sampling box before solving the LP.
bool contains(const Hyperstructure& h, std::span<const double> q, double eps = kGeometricTolerance);

using Point2 = std::array<double, 2>;

/// det [[1, a, b], [1, m, n], [1, x, y]] for A = (a, b), B = (m, n), C = (x, y),
/// by cofactor expansion along the first column.
double collinearity_determinant(const Point2& A, const Point2& B, const Point2& C);

/// (y - n)(m - a) - (n - b)(x - m); algebraically equal to the determinant.
double collinearity_slope_residual(const Point2& A, const Point2& B, const Point2& C);

/// |det| <= eps * max(1, max |coordinate|)^2. eps = 0 asks for an exact zero.
bool collinear3(const Point2& A, const Point2& B, const Point2& C, double eps = kGeometricTolerance);

}  // namespace hullknn
