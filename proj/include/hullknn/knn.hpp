#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "hullknn/dataset.hpp"
#include "hullknn/geometry.hpp"
#include "hullknn/rng.hpp"

namespace hullknn {

/// Distance given to training points outside the hull.
inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

double euclidean(std::span<const double> a, std::span<const double> b);

struct Neighbor {
    std::size_t train_index = 0;
    double distance = kUnreachable;

    bool reachable() const { return distance != kUnreachable; }
    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// First k entries of the distance ordering: ascending distance, unreachable
/// last, ties by ascending training index.
struct NeighborList {
    std::vector<Neighbor> entries;
    std::size_t k = 0;
    /// Training points inside the hull (hull mode); equals the training size in classic mode.
    std::size_t reachable_count = 0;

    friend bool operator==(const NeighborList&, const NeighborList&) = default;
};

enum class KnnMode { classic, hull };

struct KnnConfig {
    std::size_t k = 1;
    KnnMode mode = KnnMode::classic;
    double threshold = 0.0;
    HyperstructureOptions hull;  ///< point count, enclosure, per-dimension box
    std::uint32_t base_seed = Mt19937::kDefaultSeed;
    /// Vote only on in-hull neighbors; fall back to classic neighbors when none.
    bool hull_only = false;
    /// Worker threads for predict(); 0 = hardware concurrency, 1 = sequential.
    unsigned threads = 1;
};

/// Supplies the hyperstructure for a test point in place of random sampling.
using HullProvider = std::function<Hyperstructure(std::span<const double> x, std::uint64_t instance_id)>;

class KnnModel {
public:
    /// Throws std::invalid_argument unless 1 <= k <= train.size().
    KnnModel(Dataset train, KnnConfig config);

    const Dataset& train() const { return train_; }
    const KnnConfig& config() const { return config_; }

    /// Replaces random hyperstructures with caller-built ones (hull mode only).
    void set_hull_provider(HullProvider provider) { hull_provider_ = std::move(provider); }
    const HullProvider& hull_provider() const { return hull_provider_; }

private:
    Dataset train_;
    KnnConfig config_;
    HullProvider hull_provider_;
};

NeighborList neighbors_classic(const KnnModel& model, std::span<const double> x, std::size_t k);

/// Hull-gated neighbors for a prebuilt hyperstructure.
NeighborList neighbors_hull(const KnnModel& model, std::span<const double> x, std::size_t k, const Hyperstructure& h);

/// Builds one hyperstructure for x from rng, then gates.
NeighborList neighbors_hull(const KnnModel& model, std::span<const double> x, std::size_t k, double threshold,
                            const HyperstructureOptions& options, Mt19937& rng);

/// Most frequent label among all entries (unreachable entries vote too); ties
/// go to the smallest label. Throws std::invalid_argument on an empty list.
Label majority_vote(const NeighborList& neighbors, std::span<const Label> train_labels);

/// Vote restricted to reachable entries; returns false when there are none.
bool majority_vote_reachable(const NeighborList& neighbors, std::span<const Label> train_labels, Label& out);

struct Prediction {
    Label label = 0;
    /// Training points inside this instance's hull (training size in classic mode).
    std::size_t reachable_count = 0;
};

/// Classifies every row of X. In hull mode instance i draws its hyperstructure
/// from Mt19937(child_seed(base_seed, id_i)) where id_i = instance_ids[i] if
/// given, else i; results do not depend on evaluation order or thread count.
std::vector<Prediction> predict_detailed(const KnnModel& model, PointsView X,
                                         std::span<const std::uint64_t> instance_ids = {});

std::vector<Label> predict(const KnnModel& model, PointsView X, std::span<const std::uint64_t> instance_ids = {});

}  // namespace hullknn
