#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixtures {

inline std::filesystem::path fixture_dir() { return HULLKNN_FIXTURE_DIR; }

/// Data directory: $HULLKNN_DATA_DIR if set, else the configured default.
inline std::filesystem::path data_dir() {
    if (const char* env = std::getenv("HULLKNN_DATA_DIR"); env && *env) return env;
    return HULLKNN_DATA_DIR;
}

inline std::vector<std::uint32_t> read_u32(const std::string& name) {
    std::ifstream in(fixture_dir() / name);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::vector<std::uint32_t> out;
    std::uint64_t v;
    while (in >> v) out.push_back(static_cast<std::uint32_t>(v));
    return out;
}

inline std::vector<double> read_doubles(const std::string& name) {
    std::ifstream in(fixture_dir() / name);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::vector<double> out;
    double v;
    while (in >> v) out.push_back(v);
    return out;
}

struct DatasetFile {
    const char* name;
    const char* file;
    const char* format;
};

/// File names as distributed by the UCI repository.
inline constexpr DatasetFile kUciFiles[] = {
    {"haberman", "haberman.data", "haberman"},
    {"banknote", "data_banknote_authentication.txt", "banknote"},
    {"iris", "iris.data", "iris"},
    {"seeds", "seeds_dataset.txt", "seeds"},
};

}  // namespace fixtures
