#include "cohspeed/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cohspeed/error.hpp"
#include "config_schema.inc"

namespace cohspeed {

const Json& config_schema() {
  static const Json schema = Json::parse(kConfigSchemaText);
  return schema;
}

namespace {

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

std::string type_of(const Json& j) {
  if (j.is_null()) return "null";
  if (j.is_boolean()) return "boolean";
  if (j.is_number_integer() || j.is_number_unsigned()) return "integer";
  if (j.is_number()) return "number";
  if (j.is_string()) return "string";
  if (j.is_array()) return "array";
  return "object";
}

bool has_type(const Json& j, const std::string& t) {
  if (t == "number") return j.is_number();
  if (t == "integer") {
    if (j.is_number_integer() || j.is_number_unsigned()) return true;
    return j.is_number_float() && std::floor(j.get<double>()) == j.get<double>();
  }
  return type_of(j) == t;
}

class Validator {
 public:
  explicit Validator(const Json& root) : root_(root) {}

  void check(const Json& v, const Json& s, const std::string& path, std::vector<std::string>& out) const {
    if (s.contains("$ref")) {
      check(v, resolve(s["$ref"].get<std::string>()), path, out);
      return;
    }
    const std::string where = path.empty() ? "/" : path;
    if (s.contains("type")) {
      const auto t = s["type"].get<std::string>();
      if (!has_type(v, t)) {
        out.push_back(where + ": expected " + t + ", got " + type_of(v));
        return;
      }
    }
    if (s.contains("enum")) {
      bool found = false;
      for (const auto& e : s["enum"]) found = found || e == v;
      if (!found) out.push_back(where + ": value " + v.dump() + " is not one of " + s["enum"].dump());
    }
    if (s.contains("anyOf")) {
      bool any = false;
      for (const auto& alt : s["anyOf"]) {
        std::vector<std::string> sub;
        check(v, alt, path, sub);
        if (sub.empty()) {
          any = true;
          break;
        }
      }
      if (!any) out.push_back(where + ": does not match any allowed form");
    }
    if (v.is_number()) {
      const double x = v.get<double>();
      if (s.contains("minimum") && x < s["minimum"].get<double>())
        out.push_back(where + ": must be >= " + s["minimum"].dump());
      if (s.contains("maximum") && x > s["maximum"].get<double>())
        out.push_back(where + ": must be <= " + s["maximum"].dump());
      if (s.contains("exclusiveMinimum") && x <= s["exclusiveMinimum"].get<double>())
        out.push_back(where + ": must be > " + s["exclusiveMinimum"].dump());
    }
    if (v.is_array()) {
      if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>())
        out.push_back(where + ": needs at least " + s["minItems"].dump() + " items");
      if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>())
        out.push_back(where + ": allows at most " + s["maxItems"].dump() + " items");
      if (s.contains("items"))
        for (std::size_t i = 0; i < v.size(); ++i) check(v[i], s["items"], path + "/" + std::to_string(i), out);
    }
    if (v.is_object()) {
      if (s.contains("required"))
        for (const auto& key : s["required"])
          if (!v.contains(key.get<std::string>()))
            out.push_back(where + ": missing required field \"" + key.get<std::string>() + "\"");
      const Json props = s.value("properties", Json::object());
      for (const auto& [key, val] : v.items()) {
        if (props.contains(key))
          check(val, props[key], path + "/" + key, out);
        else if (s.contains("additionalProperties") && s["additionalProperties"] == false)
          out.push_back(path + "/" + key + ": unknown field");
      }
    }
  }

 private:
  const Json& resolve(const std::string& ref) const {
    if (ref.rfind("#/", 0) != 0) throw Error(ErrorCode::BadConfig, "unsupported schema reference " + ref);
    return root_.at(Json::json_pointer(ref.substr(1)));
  }

  const Json& root_;
};

}  // namespace

Json parse_config_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::string what = e.what();
    const auto pos = what.find("syntax error");
    throw Error(ErrorCode::BadConfig, source + ":" + line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                                          (pos == std::string::npos ? what : what.substr(pos)));
  }
}

std::vector<std::string> validate_against(const Json& doc, const Json& schema) {
  std::vector<std::string> out;
  Validator(schema).check(doc, schema, "", out);
  return out;
}

Json load_config_text(const std::string& text, const std::string& source) {
  Json doc = parse_config_text(text, source);
  const auto problems = validate_against(doc, config_schema());
  if (!problems.empty()) {
    std::string msg = source + ": schema violation";
    for (const auto& p : problems) msg += "\n  " + p;
    throw Error(ErrorCode::BadConfig, msg);
  }
  return doc;
}

Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadConfig, "cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_config_text(ss.str(), path);
}

Complex to_complex(const Json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw Error(ErrorCode::BadConfig, path + ": expected a number or [re, im]");
}

Vector to_vector(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::BadConfig, path + ": expected a non-empty array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = to_complex(j[i], path + "/" + std::to_string(i));
  return v;
}

Matrix to_matrix(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::BadConfig, path + ": expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::string rp = path + "/" + std::to_string(r);
    const Vector row = to_vector(j[static_cast<std::size_t>(r)], rp);
    if (row.size() != cols) throw Error(ErrorCode::BadConfig, rp + ": row length differs from row 0");
    m.row(r) = row.transpose();
  }
  return m;
}

std::vector<double> to_grid(const Json& j, const std::string& path, std::size_t default_steps) {
  const double t0 = j.value("t0", 0.0);
  const double t1 = j.at("t1").get<double>();
  const auto steps = j.value("steps", default_steps);
  if (!(t1 > t0)) throw Error(ErrorCode::BadConfig, path + ": t1 must exceed t0");
  std::vector<double> g(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k)
    g[k] = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(steps);
  return g;
}

DensityMatrix to_density(const Json& j, int d, std::uint64_t seed, const std::string& path) {
  const int given = static_cast<int>(j.contains("amplitudes")) + static_cast<int>(j.contains("density")) +
                    static_cast<int>(j.contains("random"));
  if (given != 1) throw Error(ErrorCode::BadConfig, path + ": give exactly one of amplitudes, density, random");
  try {
    if (j.contains("amplitudes")) {
      const Vector a = to_vector(j["amplitudes"], path + "/amplitudes");
      if (a.size() != d) throw Error(ErrorCode::BadConfig, path + "/amplitudes: dimension must be " + std::to_string(d));
      return PureState::normalized(a).density();
    }
    if (j.contains("density")) {
      const Matrix m = to_matrix(j["density"], path + "/density");
      if (m.rows() != d || m.cols() != d)
        throw Error(ErrorCode::BadConfig, path + "/density: must be " + std::to_string(d) + "x" + std::to_string(d));
      return DensityMatrix{m};
    }
    const Json& r = j["random"];
    const int rank = r.value("rank", d);
    if (rank > d) throw Error(ErrorCode::BadConfig, path + "/random/rank: exceeds dimension");
    return random_density(d, rank, r.value("seed", seed));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BadConfig) throw;
    throw Error(ErrorCode::BadConfig, path + ": " + e.what());
  }
}

PureState to_pure_state(const Json& j, int d, std::uint64_t seed, const std::string& path) {
  if (j.contains("amplitudes")) {
    const Vector a = to_vector(j["amplitudes"], path + "/amplitudes");
    if (a.size() != d) throw Error(ErrorCode::BadConfig, path + "/amplitudes: dimension must be " + std::to_string(d));
    try {
      return PureState::normalized(a);
    } catch (const Error& e) {
      throw Error(ErrorCode::BadConfig, path + "/amplitudes: " + e.what());
    }
  }
  if (j.contains("random")) return haar_random_state(d, j["random"].value("seed", seed));
  throw Error(ErrorCode::BadConfig, path + ": a pure state needs amplitudes or random");
}

}  // namespace cohspeed
