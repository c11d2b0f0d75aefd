#include "hullknn/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace hullknn {

namespace {
void require_finite(std::span<const double> x) {
    for (double v : x)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite coordinate");
}
}  // namespace

Interval bounding_interval(std::span<const double> x, double threshold) {
    if (x.empty()) throw std::invalid_argument("bounding_interval: empty point");
    if (!(threshold >= 0.0) || !std::isfinite(threshold))
        throw std::invalid_argument("bounding_interval: threshold must be finite and non-negative");
    require_finite(x);
    const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
    return {*mn - threshold, *mx + threshold};
}

Hyperstructure build_hyperstructure(std::span<const double> x, double threshold, Mt19937& rng,
                                    const HyperstructureOptions& options) {
    const std::size_t dim = x.size();
    const Interval box = bounding_interval(x, threshold);
    const std::size_t count = options.point_count == 0 ? default_point_count(dim) : options.point_count;
    if (count < dim + 1) throw std::invalid_argument("hyperstructure needs at least dim + 1 points");

    Hyperstructure h;
    h.dim = dim;
    h.threshold = threshold;
    h.test_instance.assign(x.begin(), x.end());
    h.child_seed = rng.seed();
    if (options.per_dimension_box) {
        if (threshold == 0.0) throw GeometryError("zero-volume box");
        for (double v : x) {
            h.box_lo.push_back(v - threshold);
            h.box_hi.push_back(v + threshold);
        }
    } else {
        if (box.lo == box.hi) throw GeometryError("zero-volume box");
        h.box_lo.assign(dim, box.lo);
        h.box_hi.assign(dim, box.hi);
    }

    for (int attempt = 0;; ++attempt) {
        h.coords = options.per_dimension_box ? sample_box(rng, h.box_lo, h.box_hi, count)
                                             : sample_box(rng, box.lo, box.hi, dim, count);
        if (!options.ensure_enclosure || feasible_convex_combination(h.points(), x).inside) return h;
        if (attempt + 1 >= kMaxEnclosureAttempts)
            throw GeometryError("hyperstructure failed to enclose the test instance after " +
                                std::to_string(kMaxEnclosureAttempts) + " attempts");
    }
}

Hyperstructure fixed_hyperstructure(std::vector<double> coords, std::size_t dim, std::span<const double> x) {
    if (dim == 0 || coords.empty() || coords.size() % dim != 0)
        throw std::invalid_argument("fixed_hyperstructure: malformed coordinates");
    if (x.size() != dim) throw std::invalid_argument("fixed_hyperstructure: dimension mismatch");
    Hyperstructure h;
    h.dim = dim;
    h.box_lo.assign(dim, INFINITY);
    h.box_hi.assign(dim, -INFINITY);
    for (std::size_t i = 0; i < coords.size(); ++i) {
        h.box_lo[i % dim] = std::min(h.box_lo[i % dim], coords[i]);
        h.box_hi[i % dim] = std::max(h.box_hi[i % dim], coords[i]);
    }
    h.coords = std::move(coords);
    h.test_instance.assign(x.begin(), x.end());
    return h;
}

std::vector<double> hypercube_corners(std::size_t dim, double lo, double hi) {
    if (dim == 0 || dim >= 8 * sizeof(std::size_t)) throw std::invalid_argument("hypercube_corners: bad dimension");
    const std::size_t corners = std::size_t{1} << dim;
    std::vector<double> out;
    out.reserve(corners * dim);
    for (std::size_t c = 0; c < corners; ++c)
        for (std::size_t d = 0; d < dim; ++d) out.push_back((c >> d) & 1u ? hi : lo);
    return out;
}

bool contains(const Hyperstructure& h, std::span<const double> q, double eps) {
    if (q.size() != h.dim) throw std::invalid_argument("contains: dimension mismatch");
    // Hull is inside the points' box; allow the same relative slack the LP uses.
    for (std::size_t d = 0; d < h.dim; ++d) {
        const double slack = 2.0 * eps * std::max({1.0, std::abs(h.box_lo[d]), std::abs(h.box_hi[d])});
        if (q[d] < h.box_lo[d] - slack || q[d] > h.box_hi[d] + slack) return false;
    }
    return feasible_convex_combination(h.points(), q, eps).inside;
}

double collinearity_determinant(const Point2& A, const Point2& B, const Point2& C) {
    const auto [a, b] = A;
    const auto [m, n] = B;
    const auto [x, y] = C;
    // Expansion along the column of ones.
    return (m * y - n * x) - (a * y - b * x) + (a * n - b * m);
}

double collinearity_slope_residual(const Point2& A, const Point2& B, const Point2& C) {
    const auto [a, b] = A;
    const auto [m, n] = B;
    const auto [x, y] = C;
    return (y - n) * (m - a) - (n - b) * (x - m);
}

bool collinear3(const Point2& A, const Point2& B, const Point2& C, double eps) {
    for (const auto& p : {A, B, C}) require_finite(p);
    double mag = 1.0;
    for (const auto& p : {A, B, C}) mag = std::max({mag, std::abs(p[0]), std::abs(p[1])});
    return std::abs(collinearity_determinant(A, B, C)) <= eps * mag * mag;
}

}  // namespace hullknn
