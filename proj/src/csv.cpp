#include "horizon/csv.hpp"

#include <cstdio>

namespace horizon {

std::string CsvWriter::format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvWriter::banner() { out_ << "# horizon-approx schema v1\n"; }

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << "\n"; }

void CsvWriter::header(const std::vector<std::string>& columns) {
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) out_ << ',';
        out_ << columns[i];
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<CsvCell>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        if (const auto* d = std::get_if<double>(&cells[i]))
            out_ << format_double(*d);
        else if (const auto* n = std::get_if<std::int64_t>(&cells[i]))
            out_ << *n;
        else
            out_ << std::get<std::string>(cells[i]);
    }
    out_ << '\n';
}

}  // namespace horizon
