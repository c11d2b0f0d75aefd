#include "hullknn/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace hullknn {

namespace {
constexpr std::uint32_t kMatrixA = 0x9908b0dfu;
constexpr std::uint32_t kUpperMask = 0x80000000u;
constexpr std::uint32_t kLowerMask = 0x7fffffffu;
constexpr std::size_t kShift = 397;
}  // namespace

void Mt19937::reseed(std::uint32_t seed) {
    seed_ = seed;
    words_[0] = seed;
    for (std::size_t i = 1; i < kStateSize; ++i) {
        const std::uint32_t prev = words_[i - 1];
        words_[i] = 1812433253u * (prev ^ (prev >> 30)) + static_cast<std::uint32_t>(i);
    }
    index_ = kStateSize;
}

void Mt19937::regenerate() {
    for (std::size_t i = 0; i < kStateSize; ++i) {
        const std::uint32_t y = (words_[i] & kUpperMask) | (words_[(i + 1) % kStateSize] & kLowerMask);
        std::uint32_t next = words_[(i + kShift) % kStateSize] ^ (y >> 1);
        if (y & 1u) next ^= kMatrixA;
        words_[i] = next;
    }
    index_ = 0;
}

std::uint32_t Mt19937::next_u32() {
    if (index_ == kStateSize) regenerate();
    std::uint32_t y = words_[index_++];
    y ^= y >> 11;
    y ^= (y << 7) & 0x9d2c5680u;
    y ^= (y << 15) & 0xefc60000u;
    y ^= y >> 18;
    return y;
}

double Mt19937::next_res53() {
    const std::uint32_t a = next_u32() >> 5;
    const std::uint32_t b = next_u32() >> 6;
    return (a * 67108864.0 + b) * (1.0 / 9007199254740992.0);
}

std::uint32_t Mt19937::next_below(std::uint32_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
    // Largest multiple of bound representable in 32 bits; draws at or above it are rejected.
    const std::uint64_t limit = (std::uint64_t{1} << 32) - ((std::uint64_t{1} << 32) % bound);
    for (;;) {
        const std::uint32_t v = next_u32();
        if (v < limit) return v % bound;
    }
}

double uniform(Mt19937& rng, double lo, double hi) {
    if (!(lo <= hi)) throw std::invalid_argument("uniform: lo must not exceed hi");
    // Always consumes two draws so stream position does not depend on the bounds.
    const double u = rng.next_res53();
    if (lo == hi) return lo;
    const double v = lo + u * (hi - lo);
    // Rounding can land exactly on hi for wide intervals; keep the half-open contract.
    return v < hi ? v : std::nextafter(hi, lo);
}

std::vector<double> sample_box(Mt19937& rng, double lo, double hi, std::size_t dim, std::size_t count) {
    if (!(lo <= hi)) throw std::invalid_argument("sample_box: lo must not exceed hi");
    std::vector<double> out;
    out.reserve(dim * count);
    for (std::size_t p = 0; p < count; ++p)
        for (std::size_t d = 0; d < dim; ++d) out.push_back(uniform(rng, lo, hi));
    return out;
}

std::vector<double> sample_box(Mt19937& rng, std::span<const double> lo, std::span<const double> hi,
                               std::size_t count) {
    if (lo.size() != hi.size()) throw std::invalid_argument("sample_box: bound dimension mismatch");
    const std::size_t dim = lo.size();
    std::vector<double> out;
    out.reserve(dim * count);
    for (std::size_t p = 0; p < count; ++p)
        for (std::size_t d = 0; d < dim; ++d) out.push_back(uniform(rng, lo[d], hi[d]));
    return out;
}

}  // namespace hullknn
