#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace hullknn::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kRuntime = 3 };

/// Parameter bundle from the published parameter tables.
struct Preset {
    std::string_view name;
    std::string_view format;
    std::size_t k;
    double threshold;
    double gamma;
};

/// "<dataset>-optimal" and "<dataset>-poor" for haberman, banknote, iris, seeds.
std::optional<Preset> find_preset(std::string_view name);

/// Runs the command line (args excludes the program name). Reports go to `out`
/// unless --out is given; diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace hullknn::cli
