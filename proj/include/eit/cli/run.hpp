#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "eit/cli/config.hpp"

namespace eit::cli {

inline constexpr const char* tool_version = "0.1.0";

enum class Format { csv, svg, both };
Format parse_format(const std::string& s);

struct RunRequest {
    RunConfig config;
    std::filesystem::path out_dir;
    Format format = Format::csv;
    int jobs = 1;
};

struct RunReport {
    std::filesystem::path manifest;
    std::vector<std::filesystem::path> files;
    std::vector<std::string> warnings;
};

// Resolve parameters, run every sweep point, write tables and manifest.json.
// Feeding the manifest back as a config reproduces the outputs byte for byte.
RunReport run(const RunRequest& req);

}  // namespace eit::cli
