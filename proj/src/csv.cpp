#include "ancsim/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ancsim/errors.hpp"

namespace ancsim {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw ConfigError("cannot open for writing: " + file.string());
    return out;
}

} // namespace

void write_column_csv(const std::filesystem::path& file,
                      std::span<const double> values) {
    auto out = open_out(file);
    for (double v : values) out << format_double(v) << '\n';
}

void write_table_csv(const std::filesystem::path& file,
                     std::span<const std::string> header,
                     std::span<const std::vector<double>> columns) {
    auto out = open_out(file);
    for (std::size_t c = 0; c < header.size(); ++c)
        out << (c ? "," : "") << header[c];
    out << '\n';
    const std::size_t rows = columns.empty() ? 0 : columns[0].size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c)
            out << (c ? "," : "") << format_double(columns[c][r]);
        out << '\n';
    }
}

void write_map_csv(const std::filesystem::path& file, const AttenuationMap& map) {
    auto out = open_out(file);
    for (std::size_t iy = 0; iy < map.grid_y.size(); ++iy) {
        for (std::size_t ix = 0; ix < map.grid_x.size(); ++ix)
            out << (ix ? "," : "") << format_double(map.values[map.index(ix, iy)]);
        out << '\n';
    }
}

void write_mask_csv(const std::filesystem::path& file, const AttenuationMap& map) {
    auto out = open_out(file);
    for (std::size_t iy = 0; iy < map.grid_y.size(); ++iy) {
        for (std::size_t ix = 0; ix < map.grid_x.size(); ++ix)
            out << (ix ? "," : "") << (map.mask[map.index(ix, iy)] ? 1 : 0);
        out << '\n';
    }
}

std::vector<double> read_column_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open for reading: " + file.string());
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        values.push_back(std::stod(line));
    }
    return values;
}

} // namespace ancsim
