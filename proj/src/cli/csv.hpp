#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace erk::cli {

// 12 significant digits, '.' decimal point, no locale surprises. Shared by the
// CSV writer and anything else that stamps numbers into text output.
std::string format_number(double v);

// Minimal numeric table: '#' comment lines, one header row, numeric body rows,
// comma separators, LF line endings. Geared for byte-stable golden files, not
// for parsing arbitrary CSV back in.
class CsvTable {
  public:
    void comment(const std::string& line);  // without the leading "# "
    void header(std::vector<std::string> names);
    void row(const std::vector<double>& values);  // size must match the header

    std::string str() const;
    void write(const std::filesystem::path& path) const;

  private:
    std::vector<std::string> comments_;
    std::vector<std::string> names_;
    std::vector<std::vector<double>> rows_;
};

}  // namespace erk::cli
