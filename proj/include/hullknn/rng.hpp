#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hullknn {

/// 32-bit Mersenne Twister (MT19937) with the standard init_genrand seeding.
///
/// Implemented here rather than taken from <random> so that the state layout
/// (word buffer + index) is inspectable and the real-valued draws follow a
/// fixed, portable construction.
class Mt19937 {
public:
    static constexpr std::size_t kStateSize = 624;
    static constexpr std::uint32_t kDefaultSeed = 5489u;

    explicit Mt19937(std::uint32_t seed = kDefaultSeed) { reseed(seed); }

    void reseed(std::uint32_t seed);

    /// Next tempered 32-bit output.
    std::uint32_t next_u32();

    /// Real in [0, 1) with 53-bit resolution built from two draws
    /// ((a >> 5) * 2^26 + (b >> 6)) / 2^53.
    double next_res53();

    /// Unbiased integer in [0, bound) by rejection on 32-bit draws. bound > 0.
    std::uint32_t next_below(std::uint32_t bound);

    std::uint32_t seed() const { return seed_; }
    std::size_t index() const { return index_; }
    const std::array<std::uint32_t, kStateSize>& words() const { return words_; }

    friend bool operator==(const Mt19937&, const Mt19937&) = default;

private:
    void regenerate();

    std::array<std::uint32_t, kStateSize> words_{};
    std::size_t index_ = kStateSize;
    std::uint32_t seed_ = kDefaultSeed;
};

/// lo + u * (hi - lo), u from next_res53(). Throws std::invalid_argument when lo > hi.
double uniform(Mt19937& rng, double lo, double hi);

/// `count` points in R^dim, flattened row-major. Coordinates are drawn point by
/// point, dimension by dimension, each via uniform(lo, hi).
std::vector<double> sample_box(Mt19937& rng, double lo, double hi, std::size_t dim, std::size_t count);

/// Per-dimension bounds variant; lo.size() == hi.size() is the dimension.
std::vector<double> sample_box(Mt19937& rng, std::span<const double> lo, std::span<const double> hi,
                               std::size_t count);

/// Substream seed for item `index` under `base_seed`:
/// lower 32 bits of base_seed * 2654435761 + index.
constexpr std::uint32_t child_seed(std::uint64_t base_seed, std::uint64_t index) {
    return static_cast<std::uint32_t>(base_seed * 2654435761ull + index);
}

/// In-place Fisher-Yates shuffle driven by next_below().
template <typename T>
void shuffle(Mt19937& rng, std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = rng.next_below(static_cast<std::uint32_t>(i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace hullknn
