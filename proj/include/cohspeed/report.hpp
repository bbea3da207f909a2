#pragma once

// Tabular run reports in CSV or JSON.
//
// CSV: metadata as "# key: value" lines, then a header row and data rows.
// Reals are written with 17 significant digits; complex columns expand to
// <name>_re,<name>_im. JSON: {"metadata": {...}, "rows": [{...}, ...]} with
// complex values as [re, im]. Nothing time-dependent is written, so equal
// inputs give byte-identical reports.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cohspeed {

using Cell = std::variant<std::monostate, double, std::int64_t, bool, std::string, std::complex<double>>;

enum class ColumnKind { Scalar, Complex };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::Scalar;
};

enum class ReportFormat { Csv, Json };

struct Report {
  std::vector<std::pair<std::string, std::string>> metadata;  // insertion order is kept
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  void meta(std::string key, std::string value) { metadata.emplace_back(std::move(key), std::move(value)); }
  void meta(std::string key, double value);
  void add_row(std::vector<Cell> row);
};

/// %.17g with "nan"/"inf"/"-inf" spelled out.
std::string format_real(double x);

void write_csv(const Report& r, std::ostream& out);
void write_json(const Report& r, std::ostream& out);
void write_report(const Report& r, ReportFormat format, std::ostream& out);

}  // namespace cohspeed
