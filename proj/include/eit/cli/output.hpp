#pragma once

#include <deque>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace eit::cli {

struct Column {
    std::string name;
    std::string unit;  // "1" for dimensionless
    std::vector<double> values;
};

struct PlotSpec {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    std::vector<std::string> y;  // column names; x is the first column
};

struct Table {
    std::string name;  // file stem
    std::deque<Column> columns;  // add() hands out references that must survive later adds
    std::optional<PlotSpec> plot;

    Column& add(const std::string& name, const std::string& unit);
    const Column& column(const std::string& name) const;
    size_t rows() const;
};

// Header "name[unit]", comma separated, every value as %.16e, LF endings.
std::string to_csv(const Table& t);

// Standalone line plot with axes, ticks and legend.
std::string to_svg(const Table& t);

std::string sha256_hex(const std::string& bytes);

// Writes are serialised per path, so concurrent producers never interleave.
void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace eit::cli
