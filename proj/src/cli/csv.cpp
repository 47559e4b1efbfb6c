#include "cli/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace erk::cli {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void CsvTable::comment(const std::string& line) { comments_.push_back(line); }

void CsvTable::header(std::vector<std::string> names) {
    if (names.empty()) throw std::invalid_argument("csv header must not be empty");
    names_ = std::move(names);
}

void CsvTable::row(const std::vector<double>& values) {
    if (values.size() != names_.size())
        throw std::invalid_argument("csv row width does not match the header");
    rows_.push_back(values);
}

std::string CsvTable::str() const {
    std::string out;
    for (const auto& c : comments_) {
        out += "# ";
        out += c;
        out += '\n';
    }
    for (std::size_t j = 0; j < names_.size(); ++j) {
        if (j) out += ',';
        out += names_[j];
    }
    out += '\n';
    for (const auto& r : rows_) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (j) out += ',';
            out += format_number(r[j]);
        }
        out += '\n';
    }
    return out;
}

void CsvTable::write(const std::filesystem::path& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << str();
    if (!f) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace erk::cli
