#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cq::cli {

enum class Format { Text, Json };

struct RunConfig {
    std::string command;  // series | check | table | convert | cache
    std::string kind;     // e.g. "quot", "hilb-vs-quot", "hikita", "status"
    long n = 0, d = 0, k = 1;
    std::optional<long> qmax;
    Format format = Format::Text;
    std::filesystem::path cache_path;
    unsigned parallelism = 0;  // 0 = hardware concurrency
    bool raw = false;          // series: print the t^2-graded form instead of Xbar
    std::string side = "hilb";
};

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckFailed = 2;

// Cache location: $CURVEQUOT_CACHE, else ./curvequot-cache/htilde.json.
std::filesystem::path default_cache_path();

// Parses argv (argv[0] is the program name) and runs the command.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace cq::cli
