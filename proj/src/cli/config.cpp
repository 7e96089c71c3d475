#include "eit/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <toml.hpp>

namespace eit::cli {

namespace {

json from_node(const toml::node& n, const std::string& key)
{
    if (auto t = n.as_table()) {
        json j = json::object();
        for (auto&& [k, v] : *t)
            j[std::string(k.str())] = from_node(v, key.empty() ? std::string(k.str()) : key + "." + std::string(k.str()));
        return j;
    }
    if (auto a = n.as_array()) {
        json j = json::array();
        for (size_t i = 0; i < a->size(); ++i)
            j.push_back(from_node((*a)[i], key + "[" + std::to_string(i) + "]"));
        return j;
    }
    if (auto v = n.as_string())
        return v->get();
    if (auto v = n.as_integer())
        return v->get();
    if (auto v = n.as_floating_point())
        return v->get();
    if (auto v = n.as_boolean())
        return v->get();
    throw ConfigError(key, "dates and times are not accepted");
}

bool compatible(const json& a, const json& b)
{
    if (a.is_number() && b.is_number())
        return true;
    return a.type() == b.type();
}

const char* type_name(const json& j)
{
    return j.is_number() ? "number" : j.type_name();
}

}  // namespace

json parse_toml(const std::string& text, const std::string& source)
{
    try {
        toml::table t = toml::parse(text, source);
        return from_node(t, "");
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << source << ":" << e.source().begin.line << ":" << e.source().begin.column;
        throw ConfigError(os.str(), std::string(e.description()));
    }
}

json load_document(const std::filesystem::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw ValidationError("cannot read config file " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    if (path.extension() == ".toml")
        return parse_toml(ss.str(), path.string());
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

RunConfig read_run_config(const json& doc)
{
    if (!doc.is_object())
        throw ConfigError("<root>", "expected a table");
    RunConfig c;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string& k = it.key();
        const json& v = it.value();
        if (k == "preset" || k == "model") {
            if (!v.is_string())
                throw ConfigError(k, "expected a string");
            (k == "preset" ? c.preset : c.model) = v.get<std::string>();
        } else if (k == "jobs") {
            if (!v.is_number_integer() || v.get<long>() < 1)
                throw ConfigError(k, "expected a positive integer");
            c.jobs = v.get<int>();
        } else if (k == "output") {
            if (!v.is_object())
                throw ConfigError(k, "expected a table");
            for (auto o = v.begin(); o != v.end(); ++o) {
                if (!o.value().is_string())
                    throw ConfigError("output." + o.key(), "expected a string");
                if (o.key() == "dir")
                    c.out_dir = o.value().get<std::string>();
                else if (o.key() == "format")
                    c.format = o.value().get<std::string>();
                else
                    throw ConfigError("output." + o.key(), "unknown key");
            }
        } else if (k == "sweep") {
            if (!v.is_object())
                throw ConfigError(k, "expected a table");
            for (auto o = v.begin(); o != v.end(); ++o) {
                if (o.key() == "key") {
                    if (!o.value().is_string())
                        throw ConfigError("sweep.key", "expected a string");
                    c.sweep.key = o.value().get<std::string>();
                } else if (o.key() == "values") {
                    if (!o.value().is_array())
                        throw ConfigError("sweep.values", "expected an array");
                    c.sweep.values.assign(o.value().begin(), o.value().end());
                } else {
                    throw ConfigError("sweep." + o.key(), "unknown key");
                }
            }
            if (c.sweep.key.empty() && !c.sweep.values.empty())
                throw ConfigError("sweep.key", "values given without a key");
        } else if (k == "manifest") {
            continue;
        } else {
            // checked against the model defaults by merge_checked
            c.parameters[k] = v;
        }
    }
    if (!c.preset.empty() && !c.model.empty())
        throw ConfigError("model", "give either a preset or a model, not both");
    return c;
}

json merge_checked(const json& defaults, const json& overrides, const std::string& prefix)
{
    json out = defaults;
    if (!overrides.is_object())
        throw ConfigError(prefix.empty() ? "<root>" : prefix, "expected a table");
    for (auto it = overrides.begin(); it != overrides.end(); ++it) {
        std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (!defaults.is_object() || !defaults.contains(it.key()))
            throw ConfigError(key, "unknown key");
        const json& d = defaults[it.key()];
        const json& v = it.value();
        if (d.is_object()) {
            out[it.key()] = merge_checked(d, v, key);
            continue;
        }
        if (!compatible(d, v))
            throw ConfigError(key, std::string("expected ") + type_name(d) + ", got " + type_name(v));
        if (d.is_array() && !d.empty())
            for (size_t i = 0; i < v.size(); ++i)
                if (!compatible(d[0], v[i]))
                    throw ConfigError(key + "[" + std::to_string(i) + "]",
                                      std::string("expected ") + type_name(d[0]) + ", got " + type_name(v[i]));
        out[it.key()] = v;
    }
    return out;
}

namespace {

std::vector<std::string> split(const std::string& key)
{
    std::vector<std::string> parts;
    std::stringstream ss(key);
    std::string p;
    while (std::getline(ss, p, '.'))
        parts.push_back(p);
    return parts;
}

}  // namespace

const json& at_path(const json& doc, const std::string& key)
{
    const json* cur = &doc;
    for (const std::string& p : split(key)) {
        if (!cur->is_object() || !cur->contains(p))
            throw ConfigError(key, "unknown key");
        cur = &(*cur)[p];
    }
    return *cur;
}

void set_path(json& doc, const std::string& key, const json& value)
{
    const json& old = at_path(doc, key);
    if (old.is_object() || !compatible(old, value))
        throw ConfigError(key, std::string("expected ") + type_name(old) + ", got " + type_name(value));
    json* cur = &doc;
    for (const std::string& p : split(key))
        cur = &(*cur)[p];
    *cur = value;
}

double number(const json& params, const std::string& key)
{
    const json& v = at_path(params, key);
    if (!v.is_number())
        throw ConfigError(key, std::string("expected number, got ") + type_name(v));
    double x = v.get<double>();
    if (!std::isfinite(x))
        throw ConfigError(key, "must be finite");
    return x;
}

double number_in(const json& params, const std::string& key, double lo, double hi)
{
    double x = number(params, key);
    if (x < lo || x > hi) {
        std::ostringstream os;
        os << "value " << x << " outside [" << lo << ", " << hi << "]";
        throw ConfigError(key, os.str());
    }
    return x;
}

int integer_in(const json& params, const std::string& key, int lo, int hi)
{
    const json& v = at_path(params, key);
    if (!v.is_number_integer())
        throw ConfigError(key, std::string("expected integer, got ") + type_name(v));
    long x = v.get<long>();
    if (x < lo || x > hi)
        throw ConfigError(key, "value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", "
                                   + std::to_string(hi) + "]");
    return int(x);
}

bool boolean(const json& params, const std::string& key)
{
    const json& v = at_path(params, key);
    if (!v.is_boolean())
        throw ConfigError(key, std::string("expected boolean, got ") + type_name(v));
    return v.get<bool>();
}

std::string string_of(const json& params, const std::string& key, const std::vector<std::string>& allowed)
{
    const json& v = at_path(params, key);
    if (!v.is_string())
        throw ConfigError(key, std::string("expected string, got ") + type_name(v));
    std::string s = v.get<std::string>();
    for (const std::string& a : allowed)
        if (a == s)
            return s;
    std::string list;
    for (const std::string& a : allowed)
        list += (list.empty() ? "" : ", ") + a;
    throw ConfigError(key, "'" + s + "' is not one of " + list);
}

std::vector<double> numbers(const json& params, const std::string& key)
{
    const json& v = at_path(params, key);
    if (!v.is_array())
        throw ConfigError(key, std::string("expected array, got ") + type_name(v));
    std::vector<double> out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number() || !std::isfinite(v[i].get<double>()))
            throw ConfigError(key + "[" + std::to_string(i) + "]", "expected a finite number");
        out.push_back(v[i].get<double>());
    }
    return out;
}

}  // namespace eit::cli
