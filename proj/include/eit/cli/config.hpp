#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "eit/errors.hpp"

namespace eit::cli {

using json = nlohmann::json;

// A bad configuration value, tagged with its dotted key path.
class ConfigError : public ValidationError {
public:
    ConfigError(const std::string& key, const std::string& what) : ValidationError(key + ": " + what), key_(key) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

// TOML (by extension .toml) or JSON (anything else) into a JSON document.
json load_document(const std::filesystem::path& path);
json parse_toml(const std::string& text, const std::string& source = "config");

struct Sweep {
    std::string key;  // dotted path into the parameters
    std::vector<json> values;
    bool empty() const { return key.empty() || values.empty(); }
};

struct RunConfig {
    std::string preset;
    std::string model;
    json parameters = json::object();  // section overrides
    Sweep sweep;
    std::string out_dir;
    std::string format;  // csv, svg or both; empty means unset
    int jobs = 0;        // 0 means unset
};

// Top-level keys: preset, model, sweep, output.dir, output.format, jobs,
// manifest (ignored, so a manifest can be fed back); every other key is a
// parameter, tables being sections.
RunConfig read_run_config(const json& doc);

// Overlay onto defaults. Every key must exist in the defaults with a
// compatible type.
json merge_checked(const json& defaults, const json& overrides, const std::string& prefix = "");

// Replace the value at a dotted key path, which must already exist.
void set_path(json& doc, const std::string& key, const json& value);
const json& at_path(const json& doc, const std::string& key);

// Typed parameter access with range checks, errors carry the key path.
double number(const json& params, const std::string& key);
double number_in(const json& params, const std::string& key, double lo, double hi);
int integer_in(const json& params, const std::string& key, int lo, int hi);
bool boolean(const json& params, const std::string& key);
std::string string_of(const json& params, const std::string& key, const std::vector<std::string>& allowed);
std::vector<double> numbers(const json& params, const std::string& key);

}  // namespace eit::cli
