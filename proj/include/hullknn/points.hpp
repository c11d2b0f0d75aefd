#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>

namespace hullknn {

/// Non-owning view of `size()` points in R^dim stored row-major.
class PointsView {
public:
    PointsView() = default;
    PointsView(std::span<const double> coords, std::size_t dim) : coords_(coords), dim_(dim) {
        if (dim_ == 0 || coords_.size() % dim_ != 0)
            throw std::invalid_argument("PointsView: coordinate count is not a multiple of the dimension");
    }

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    bool empty() const { return size() == 0; }
    std::span<const double> operator[](std::size_t i) const { return coords_.subspan(i * dim_, dim_); }
    std::span<const double> coords() const { return coords_; }

private:
    std::span<const double> coords_;
    std::size_t dim_ = 0;
};

}  // namespace hullknn
