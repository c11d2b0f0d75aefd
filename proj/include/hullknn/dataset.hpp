#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hullknn {

/// Raised for unreadable or malformed input data.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Label = int;

/// Labeled points in R^n. Features are stored row-major.
class Dataset {
public:
    Dataset() = default;

    /// Validates the invariants; throws DataError on violation.
    Dataset(std::string name, std::vector<double> features, std::size_t dim, std::vector<Label> labels,
            std::vector<std::string> label_names = {});

    const std::string& name() const { return name_; }
    std::size_t size() const { return labels_.size(); }
    std::size_t dim() const { return dim_; }
    bool empty() const { return labels_.empty(); }

    std::span<const double> row(std::size_t i) const { return {features_.data() + i * dim_, dim_}; }
    std::span<const double> features() const { return features_; }
    std::span<const Label> labels() const { return labels_; }
    Label label(std::size_t i) const { return labels_[i]; }

    /// Number of classes: label_names.size() if names were given, else max label + 1.
    std::size_t class_count() const { return class_count_; }
    const std::vector<std::string>& label_names() const { return label_names_; }

    /// New dataset with the given rows, in the given order. Keeps name and class table.
    Dataset subset(std::span<const std::size_t> rows) const;

    /// Copy with the feature matrix replaced; `features` must keep the shape.
    Dataset with_features(std::vector<double> features) const;

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    std::string name_;
    std::vector<double> features_;
    std::size_t dim_ = 0;
    std::vector<Label> labels_;
    std::vector<std::string> label_names_;
    std::size_t class_count_ = 0;
};

enum class DataFormat { haberman, banknote, iris, seeds, generic_csv };

/// Parses "haberman", "banknote", "iris", "seeds" or "generic-csv". Throws DataError.
DataFormat parse_data_format(std::string_view name);
std::string_view to_string(DataFormat format);

/// Loads a UCI file in its native layout (see README for column conventions).
Dataset load_dataset(const std::filesystem::path& path, DataFormat format);

/// Same as load_dataset but from in-memory text; `name` becomes the dataset name.
Dataset parse_dataset(std::string_view text, DataFormat format, std::string name);

struct Split {
    Dataset train;
    Dataset test;
    std::vector<std::size_t> train_rows;  ///< source row indices, ascending
    std::vector<std::size_t> test_rows;   ///< source row indices, ascending
    std::uint32_t seed = 0;
    double test_fraction = 0.0;
    bool stratified = true;
};

/// Seeded train/test partition. In stratified mode each class contributes
/// round(test_fraction * class_size) rows to the test set. Throws DataError when
/// either side would be empty or a class would vanish from the training side.
Split split(const Dataset& ds, double test_fraction, std::uint32_t seed, bool stratified = true);

/// Min-max scales both sides of a split to [0, 1] using training-set ranges.
/// Constant training columns map to 0.
Split scale_minmax(const Split& s);

}  // namespace hullknn
