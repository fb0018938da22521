#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace horizon {

using CsvCell = std::variant<double, std::int64_t, std::string>;

// Deterministic CSV: fixed schema banner, '.' decimal separator, doubles at
// 17 significant digits so identical runs are byte-identical.
class CsvWriter {
  public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void banner();  // "# horizon-approx schema v1"
    void comment(const std::string& text);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<CsvCell>& cells);

    static std::string format_double(double v);

  private:
    std::ostream& out_;
};

}  // namespace horizon
