#include "eit/cli/run.hpp"

#include <cstdio>

#include "eit/cli/output.hpp"
#include "eit/cli/presets.hpp"

namespace eit::cli {

Format parse_format(const std::string& s)
{
    if (s == "csv")
        return Format::csv;
    if (s == "svg")
        return Format::svg;
    if (s == "both")
        return Format::both;
    throw ConfigError("format", "'" + s + "' is not one of csv, svg, both");
}

namespace {

const char* format_name(Format f)
{
    return f == Format::csv ? "csv" : f == Format::svg ? "svg" : "both";
}

}  // namespace

RunReport run(const RunRequest& req)
{
    const RunConfig& cfg = req.config;
    if (cfg.preset.empty() && cfg.model.empty())
        throw ConfigError("preset", "a preset or a model is required");
    std::string stem, model_name;
    json base;
    if (!cfg.preset.empty()) {
        const Preset& p = find_preset(cfg.preset);
        stem = p.name;
        model_name = p.model;
        base = preset_parameters(p);
    } else {
        const Model& m = find_model(cfg.model);
        stem = m.name;
        model_name = m.name;
        base = m.defaults;
    }
    const Model& model = find_model(model_name);
    json params = merge_checked(base, cfg.parameters);

    std::vector<json> points;
    if (cfg.sweep.empty()) {
        points.push_back(params);
    } else {
        for (const json& v : cfg.sweep.values) {
            json p = params;
            set_path(p, cfg.sweep.key, v);
            points.push_back(std::move(p));
        }
    }

    std::vector<ModelOutput> outs(points.size());
    RunContext inner{points.size() > 1 ? 1 : req.jobs};
    parallel_for(points.size(), points.size() > 1 ? req.jobs : 1,
                 [&](size_t i) { outs[i] = model.run(points[i], inner); });

    RunReport report;
    json files = json::array();
    json results = json::array();
    for (size_t i = 0; i < points.size(); ++i) {
        std::string prefix = stem;
        if (!cfg.sweep.empty()) {
            char buf[16];
            std::snprintf(buf, sizeof buf, "_s%03zu", i);
            prefix += buf;
        }
        for (const Table& t : outs[i].tables) {
            auto emit = [&](const std::string& ext, const std::string& bytes) {
                std::filesystem::path path = req.out_dir / (prefix + "_" + t.name + "." + ext);
                write_file(path, bytes);
                files.push_back({{"file", path.filename().string()}, {"sha256", sha256_hex(bytes)}});
                report.files.push_back(path);
            };
            if (req.format != Format::svg)
                emit("csv", to_csv(t));
            if (req.format != Format::csv && t.plot)
                emit("svg", to_svg(t));
        }
        json r = {{"point", i}, {"summary", outs[i].summary}, {"warnings", outs[i].warnings}};
        if (!cfg.sweep.empty())
            r["value"] = cfg.sweep.values[i];
        results.push_back(r);
        for (const std::string& w : outs[i].warnings)
            report.warnings.push_back(w);
    }

    json manifest = params;
    if (!cfg.preset.empty())
        manifest["preset"] = cfg.preset;
    else
        manifest["model"] = cfg.model;
    manifest["sweep"] = {{"key", cfg.sweep.key}, {"values", cfg.sweep.values}};
    manifest["output"] = {{"format", format_name(req.format)}};
    manifest["manifest"] = {{"tool", "eitlab"},
                            {"version", tool_version},
                            {"model", model_name},
                            {"outputs", files},
                            {"results", results}};
    report.manifest = req.out_dir / "manifest.json";
    write_file(report.manifest, manifest.dump(2) + "\n");
    return report;
}

}  // namespace eit::cli
