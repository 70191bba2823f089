#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace resonance::csv {

/// 9 significant digits, '.' decimal separator, "nan"/"inf" for non-finite.
std::string number(double x);

/// Tabular data with a mandatory header row.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::string to_string() const;
};

/// Writes content to path via a temporary sibling file and rename.
void write_atomically(const std::filesystem::path& path, std::string_view content);

}  // namespace resonance::csv
