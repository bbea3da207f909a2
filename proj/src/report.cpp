#include "cohspeed/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "cohspeed/error.hpp"

namespace cohspeed {

void Report::meta(std::string key, double value) { metadata.emplace_back(std::move(key), format_real(value)); }

void Report::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw Error(ErrorCode::DimensionMismatch, "report row width differs from header");
  rows.push_back(std::move(row));
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_scalar(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double x) const { return format_real(x); }
    std::string operator()(std::int64_t x) const { return std::to_string(x); }
    std::string operator()(bool x) const { return x ? "true" : "false"; }
    std::string operator()(const std::string& s) const { return csv_escape(s); }
    std::string operator()(const std::complex<double>& z) const {
      return format_real(z.real()) + "+" + format_real(z.imag()) + "i";
    }
  } v;
  return std::visit(v, c);
}

std::pair<std::string, std::string> csv_complex(const Cell& c) {
  if (const auto* z = std::get_if<std::complex<double>>(&c)) return {format_real(z->real()), format_real(z->imag())};
  if (const auto* x = std::get_if<double>(&c)) return {format_real(*x), format_real(0.0)};
  return {csv_scalar(c), ""};
}

nlohmann::ordered_json json_real(double x) {
  if (std::isfinite(x)) return x;
  return format_real(x);
}

nlohmann::ordered_json json_cell(const Cell& c) {
  struct {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(double x) const { return json_real(x); }
    nlohmann::ordered_json operator()(std::int64_t x) const { return x; }
    nlohmann::ordered_json operator()(bool x) const { return x; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    nlohmann::ordered_json operator()(const std::complex<double>& z) const {
      return nlohmann::ordered_json::array({json_real(z.real()), json_real(z.imag())});
    }
  } v;
  return std::visit(v, c);
}

}  // namespace

void write_csv(const Report& r, std::ostream& out) {
  for (const auto& [k, v] : r.metadata) out << "# " << k << ": " << v << '\n';
  bool first = true;
  for (const auto& c : r.columns) {
    if (!first) out << ',';
    first = false;
    if (c.kind == ColumnKind::Complex)
      out << c.name << "_re," << c.name << "_im";
    else
      out << c.name;
  }
  out << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (r.columns[i].kind == ColumnKind::Complex) {
        const auto [re, im] = csv_complex(row[i]);
        out << re << ',' << im;
      } else {
        out << csv_scalar(row[i]);
      }
    }
    out << '\n';
  }
}

void write_json(const Report& r, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.metadata) doc["metadata"][k] = v;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[r.columns[i].name] = json_cell(row[i]);
    doc["rows"].push_back(std::move(obj));
  }
  // nlohmann prints doubles round-trip safe (max_digits10).
  out << doc.dump(2) << '\n';
}

void write_report(const Report& r, ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::Csv)
    write_csv(r, out);
  else
    write_json(r, out);
}

}  // namespace cohspeed
