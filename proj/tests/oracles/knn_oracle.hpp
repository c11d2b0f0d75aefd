#pragma once

// Brute-force neighbor ordering: materialize every (distance, index) pair and
// fully sort. Distances are recomputed here rather than via hullknn::euclidean.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace oracle {

inline std::vector<std::pair<double, std::size_t>> full_sort(std::span<const double> train, std::size_t dim,
                                                             std::span<const double> x,
                                                             const std::vector<bool>* reachable = nullptr) {
    const std::size_t n = train.size() / dim;
    std::vector<std::pair<double, std::size_t>> all;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t d = 0; d < dim; ++d) s += (train[i * dim + d] - x[d]) * (train[i * dim + d] - x[d]);
        const bool ok = reachable == nullptr || (*reachable)[i];
        all.emplace_back(ok ? std::sqrt(s) : std::numeric_limits<double>::infinity(), i);
    }
    std::sort(all.begin(), all.end());
    return all;
}

}  // namespace oracle
