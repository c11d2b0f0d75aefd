#include "hullknn/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "hullknn/rng.hpp"

namespace hullknn {

Dataset::Dataset(std::string name, std::vector<double> features, std::size_t dim, std::vector<Label> labels,
                 std::vector<std::string> label_names)
    : name_(std::move(name)),
      features_(std::move(features)),
      dim_(dim),
      labels_(std::move(labels)),
      label_names_(std::move(label_names)) {
    if (dim_ == 0) throw DataError("dataset '" + name_ + "': dimension must be at least 1");
    if (features_.size() != labels_.size() * dim_)
        throw DataError("dataset '" + name_ + "': feature count does not match label count");
    Label max_label = -1;
    for (Label l : labels_) {
        if (l < 0) throw DataError("dataset '" + name_ + "': negative label");
        max_label = std::max(max_label, l);
    }
    class_count_ = label_names_.empty() ? static_cast<std::size_t>(max_label + 1) : label_names_.size();
    if (max_label >= 0 && static_cast<std::size_t>(max_label) >= class_count_)
        throw DataError("dataset '" + name_ + "': label exceeds class table");
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
    std::vector<double> f;
    f.reserve(rows.size() * dim_);
    std::vector<Label> l;
    l.reserve(rows.size());
    for (std::size_t r : rows) {
        if (r >= size()) throw std::out_of_range("Dataset::subset: row out of range");
        const auto x = row(r);
        f.insert(f.end(), x.begin(), x.end());
        l.push_back(labels_[r]);
    }
    Dataset out;
    out.name_ = name_;
    out.features_ = std::move(f);
    out.dim_ = dim_;
    out.labels_ = std::move(l);
    out.label_names_ = label_names_;
    out.class_count_ = class_count_;
    return out;
}

Dataset Dataset::with_features(std::vector<double> features) const {
    if (features.size() != features_.size()) throw DataError("dataset '" + name_ + "': feature shape changed");
    Dataset out = *this;
    out.features_ = std::move(features);
    return out;
}

DataFormat parse_data_format(std::string_view name) {
    if (name == "haberman") return DataFormat::haberman;
    if (name == "banknote") return DataFormat::banknote;
    if (name == "iris") return DataFormat::iris;
    if (name == "seeds") return DataFormat::seeds;
    if (name == "generic-csv") return DataFormat::generic_csv;
    throw DataError("unknown dataset format '" + std::string(name) + "'");
}

std::string_view to_string(DataFormat format) {
    switch (format) {
        case DataFormat::haberman: return "haberman";
        case DataFormat::banknote: return "banknote";
        case DataFormat::iris: return "iris";
        case DataFormat::seeds: return "seeds";
        case DataFormat::generic_csv: return "generic-csv";
    }
    return "?";
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line, bool whitespace) {
    std::vector<std::string_view> out;
    if (whitespace) {
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            if (i == line.size()) break;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
            out.push_back(line.substr(i, j - i));
            i = j;
        }
    } else {
        std::size_t start = 0;
        for (;;) {
            const auto comma = line.find(',', start);
            out.push_back(trim(line.substr(start, comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
    }
    return out;
}

bool parse_real(std::string_view s, double& out) {
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

struct Layout {
    std::size_t dim;                        // 0 = inferred from the first row (generic)
    bool whitespace;
    std::vector<std::string> numeric_classes;  // fixed class table for numeric-label formats
};

Layout layout_for(DataFormat format) {
    switch (format) {
        case DataFormat::haberman: return {3, false, {"1", "2"}};
        case DataFormat::banknote: return {4, false, {"0", "1"}};
        case DataFormat::iris: return {4, false, {}};
        case DataFormat::seeds: return {7, true, {"1", "2", "3"}};
        case DataFormat::generic_csv: return {0, false, {}};
    }
    return {0, false, {}};
}

std::string where(const std::string& name, std::size_t line_no) {
    return name + ":" + std::to_string(line_no) + ": ";
}

}  // namespace

Dataset parse_dataset(std::string_view text, DataFormat format, std::string name) {
    const Layout layout = layout_for(format);
    std::size_t dim = layout.dim;
    std::vector<double> features;
    std::vector<Label> labels;
    std::vector<std::string> names = layout.numeric_classes;
    std::map<std::string, Label, std::less<>> index;
    for (std::size_t i = 0; i < names.size(); ++i) index.emplace(names[i], static_cast<Label>(i));

    std::size_t line_no = 0;
    bool first_row = true;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const std::string_view line = trim(text.substr(pos, nl - pos));
        pos = nl + 1;
        ++line_no;
        if (line.empty()) continue;

        const auto fields = split_fields(line, layout.whitespace);
        if (dim == 0) {
            if (fields.size() < 2) throw DataError(where(name, line_no) + "expected at least one feature and a label");
            dim = fields.size() - 1;
        }
        if (fields.size() != dim + 1)
            throw DataError(where(name, line_no) + "expected " + std::to_string(dim + 1) + " columns, found " +
                            std::to_string(fields.size()));

        std::vector<double> row(dim);
        bool numeric = true;
        for (std::size_t d = 0; d < dim && numeric; ++d) numeric = parse_real(fields[d], row[d]);
        if (!numeric) {
            // generic-csv tolerates one header line ahead of the data
            if (format == DataFormat::generic_csv && first_row) {
                first_row = false;
                continue;
            }
            throw DataError(where(name, line_no) + "non-numeric feature value");
        }
        first_row = false;

        const std::string_view label_text = fields[dim];
        if (label_text.empty()) throw DataError(where(name, line_no) + "missing label");
        Label label;
        if (!layout.numeric_classes.empty()) {
            // Numeric class columns: compare by value so "1.0" and "1" agree.
            double v;
            if (!parse_real(label_text, v)) throw DataError(where(name, line_no) + "non-numeric class value");
            auto it = std::find_if(names.begin(), names.end(), [&](const std::string& n) { return std::stod(n) == v; });
            if (it == names.end())
                throw DataError(where(name, line_no) + "unexpected class value '" + std::string(label_text) + "'");
            label = static_cast<Label>(it - names.begin());
        } else {
            auto it = index.find(label_text);
            if (it == index.end()) {
                it = index.emplace(std::string(label_text), static_cast<Label>(names.size())).first;
                names.emplace_back(label_text);
            }
            label = it->second;
        }
        features.insert(features.end(), row.begin(), row.end());
        labels.push_back(label);
    }
    if (labels.empty()) throw DataError(name + ": no instances");
    return Dataset(std::move(name), std::move(features), dim, std::move(labels), std::move(names));
}

Dataset load_dataset(const std::filesystem::path& path, DataFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open dataset file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dataset(buf.str(), format, path.stem().string());
}

Split split(const Dataset& ds, double test_fraction, std::uint32_t seed, bool stratified) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw DataError("test fraction must lie in (0, 1)");
    if (ds.empty()) throw DataError("cannot split an empty dataset");

    Mt19937 rng(seed);
    std::vector<std::size_t> test_rows;
    std::vector<std::size_t> train_rows;

    auto take = [&](std::vector<std::size_t>& rows, const std::string& what) {
        const auto n_test = static_cast<std::size_t>(std::floor(test_fraction * static_cast<double>(rows.size()) + 0.5));
        if (n_test >= rows.size()) throw DataError("test fraction leaves " + what + " without training rows");
        shuffle(rng, std::span<std::size_t>(rows));
        test_rows.insert(test_rows.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n_test));
        train_rows.insert(train_rows.end(), rows.begin() + static_cast<std::ptrdiff_t>(n_test), rows.end());
    };

    if (stratified) {
        std::vector<std::vector<std::size_t>> by_class(ds.class_count());
        for (std::size_t i = 0; i < ds.size(); ++i) by_class[static_cast<std::size_t>(ds.label(i))].push_back(i);
        for (std::size_t c = 0; c < by_class.size(); ++c) {
            if (by_class[c].empty()) continue;
            take(by_class[c], "class " + std::to_string(c));
        }
    } else {
        std::vector<std::size_t> all(ds.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        take(all, "the dataset");
    }
    if (test_rows.empty()) throw DataError("test fraction yields an empty test set");

    std::sort(test_rows.begin(), test_rows.end());
    std::sort(train_rows.begin(), train_rows.end());
    Split out{ds.subset(train_rows), ds.subset(test_rows), std::move(train_rows), std::move(test_rows), seed,
              test_fraction, stratified};
    return out;
}

Split scale_minmax(const Split& s) {
    const std::size_t dim = s.train.dim();
    std::vector<double> lo(dim, INFINITY), hi(dim, -INFINITY);
    for (std::size_t i = 0; i < s.train.size(); ++i) {
        const auto x = s.train.row(i);
        for (std::size_t d = 0; d < dim; ++d) {
            lo[d] = std::min(lo[d], x[d]);
            hi[d] = std::max(hi[d], x[d]);
        }
    }
    auto rescale = [&](const Dataset& ds) {
        std::vector<double> f(ds.features().begin(), ds.features().end());
        for (std::size_t i = 0; i < f.size(); ++i) {
            const std::size_t d = i % dim;
            const double width = hi[d] - lo[d];
            f[i] = width > 0.0 ? (f[i] - lo[d]) / width : 0.0;
        }
        return ds.with_features(std::move(f));
    };
    Split out = s;
    out.train = rescale(s.train);
    out.test = rescale(s.test);
    return out;
}

}  // namespace hullknn
