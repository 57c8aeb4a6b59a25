#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ancsim/metrics.hpp"

namespace ancsim {

// Decimal text with 17 significant digits; round-trips a double exactly.
std::string format_double(double v);

void write_column_csv(const std::filesystem::path& file,
                      std::span<const double> values);

// Header row followed by one line per element of each column.
void write_table_csv(const std::filesystem::path& file,
                     std::span<const std::string> header,
                     std::span<const std::vector<double>> columns);

// Matrix layout for map exports: one row per y index, one column per x index.
void write_map_csv(const std::filesystem::path& file, const AttenuationMap& map);
void write_mask_csv(const std::filesystem::path& file, const AttenuationMap& map);

std::vector<double> read_column_csv(const std::filesystem::path& file);

} // namespace ancsim
