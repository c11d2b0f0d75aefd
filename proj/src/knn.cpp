#include "hullknn/knn.hpp"

#include <algorithm>
#include <stdexcept>

#include "hullknn/parallel.hpp"

namespace hullknn {

double euclidean(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("euclidean: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

KnnModel::KnnModel(Dataset train, KnnConfig config) : train_(std::move(train)), config_(std::move(config)) {
    if (config_.k < 1 || config_.k > train_.size())
        throw std::invalid_argument("k must lie in [1, training size]");
    if (config_.mode == KnnMode::hull && !(config_.threshold >= 0.0))
        throw std::invalid_argument("threshold must be non-negative");
}

namespace {

void check_k(const KnnModel& model, std::size_t k) {
    if (k < 1 || k > model.train().size()) throw std::invalid_argument("k must lie in [1, training size]");
}

bool before(const Neighbor& a, const Neighbor& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.train_index < b.train_index;
}

NeighborList first_k(std::vector<Neighbor> all, std::size_t k, std::size_t reachable) {
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), before);
    all.resize(k);
    return {std::move(all), k, reachable};
}

}  // namespace

NeighborList neighbors_classic(const KnnModel& model, std::span<const double> x, std::size_t k) {
    check_k(model, k);
    const Dataset& train = model.train();
    if (x.size() != train.dim()) throw std::invalid_argument("query dimension does not match training data");
    std::vector<Neighbor> all(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) all[i] = {i, euclidean(train.row(i), x)};
    return first_k(std::move(all), k, train.size());
}

NeighborList neighbors_hull(const KnnModel& model, std::span<const double> x, std::size_t k, const Hyperstructure& h) {
    check_k(model, k);
    const Dataset& train = model.train();
    if (x.size() != train.dim() || h.dim != train.dim())
        throw std::invalid_argument("query dimension does not match training data");
    std::vector<Neighbor> all(train.size());
    std::size_t reachable = 0;
    for (std::size_t i = 0; i < train.size(); ++i) {
        const auto p = train.row(i);
        if (contains(h, p)) {
            all[i] = {i, euclidean(p, x)};
            ++reachable;
        } else {
            all[i] = {i, kUnreachable};
        }
    }
    return first_k(std::move(all), k, reachable);
}

NeighborList neighbors_hull(const KnnModel& model, std::span<const double> x, std::size_t k, double threshold,
                            const HyperstructureOptions& options, Mt19937& rng) {
    const Hyperstructure h = build_hyperstructure(x, threshold, rng, options);
    return neighbors_hull(model, x, k, h);
}

namespace {

Label vote(const NeighborList& neighbors, std::span<const Label> labels, bool reachable_only, bool& any) {
    std::vector<std::size_t> counts;
    any = false;
    for (const Neighbor& n : neighbors.entries) {
        if (reachable_only && !n.reachable()) continue;
        if (n.train_index >= labels.size()) throw std::out_of_range("neighbor index outside training labels");
        const auto l = static_cast<std::size_t>(labels[n.train_index]);
        if (l >= counts.size()) counts.resize(l + 1, 0);
        ++counts[l];
        any = true;
    }
    // max_element returns the first maximum, i.e. the smallest label on ties.
    return static_cast<Label>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

}  // namespace

Label majority_vote(const NeighborList& neighbors, std::span<const Label> train_labels) {
    if (neighbors.entries.empty()) throw std::invalid_argument("majority_vote: empty neighbor list");
    bool any = false;
    return vote(neighbors, train_labels, false, any);
}

bool majority_vote_reachable(const NeighborList& neighbors, std::span<const Label> train_labels, Label& out) {
    bool any = false;
    const Label l = vote(neighbors, train_labels, true, any);
    if (any) out = l;
    return any;
}

namespace {

Prediction predict_one(const KnnModel& model, std::span<const double> x, std::uint64_t id) {
    const KnnConfig& cfg = model.config();
    const auto labels = model.train().labels();
    if (cfg.mode == KnnMode::classic) {
        const auto nl = neighbors_classic(model, x, cfg.k);
        return {majority_vote(nl, labels), nl.reachable_count};
    }
    NeighborList nl;
    if (model.hull_provider()) {
        nl = neighbors_hull(model, x, cfg.k, model.hull_provider()(x, id));
    } else {
        Mt19937 rng(child_seed(cfg.base_seed, id));
        nl = neighbors_hull(model, x, cfg.k, cfg.threshold, cfg.hull, rng);
    }
    Prediction p{0, nl.reachable_count};
    if (!cfg.hull_only) {
        p.label = majority_vote(nl, labels);
    } else if (!majority_vote_reachable(nl, labels, p.label)) {
        p.label = majority_vote(neighbors_classic(model, x, cfg.k), labels);
    }
    return p;
}

}  // namespace

std::vector<Prediction> predict_detailed(const KnnModel& model, PointsView X, std::span<const std::uint64_t> instance_ids) {
    if (!instance_ids.empty() && instance_ids.size() != X.size())
        throw std::invalid_argument("instance id count does not match query count");
    if (!X.empty() && X.dim() != model.train().dim())
        throw std::invalid_argument("query dimension does not match training data");
    std::vector<Prediction> out(X.size());
    parallel_for(X.size(), model.config().threads, [&](std::size_t i) {
        out[i] = predict_one(model, X[i], instance_ids.empty() ? i : instance_ids[i]);
    });
    return out;
}

std::vector<Label> predict(const KnnModel& model, PointsView X, std::span<const std::uint64_t> instance_ids) {
    const auto detailed = predict_detailed(model, X, instance_ids);
    std::vector<Label> out;
    out.reserve(detailed.size());
    for (const auto& p : detailed) out.push_back(p.label);
    return out;
}

}  // namespace hullknn
