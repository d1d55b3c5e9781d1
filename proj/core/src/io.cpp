#include "uniformity_lab/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ulab {

namespace {

using json = nlohmann::json;

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("malformed JSON: ") + e.what());
  }
}

std::int64_t get_int(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw IoError(std::string("expected integer field \"") + key + "\"");
  }
  return j.at(key).get<std::int64_t>();
}

double get_real(const json& j, const char* key, bool required) {
  if (!j.contains(key)) {
    if (required) throw IoError(std::string("missing field \"") + key + "\"");
    return 0.0;
  }
  if (!j.at(key).is_number()) throw IoError(std::string("field \"") + key + "\" must be a number");
  return j.at(key).get<double>();
}

std::map<std::int64_t, cplx> read_points(const std::string& text) {
  const json doc = parse(text);
  if (!doc.is_array()) throw IoError("expected a JSON array of {x, re, im} records");
  std::map<std::int64_t, cplx> points;
  for (const json& rec : doc) {
    if (!rec.is_object()) throw IoError("expected a JSON object record");
    const std::int64_t x = get_int(rec, "x");
    const cplx v{get_real(rec, "re", true), get_real(rec, "im", false)};
    if (!points.emplace(x, v).second) throw IoError("duplicate point x = " + std::to_string(x));
  }
  return points;
}

json points_json(std::int64_t offset, std::span<const cplx> values) {
  json arr = json::array();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == cplx{}) continue;
    arr.push_back({{"x", offset + static_cast<std::int64_t>(i)},
                   {"re", values[i].real()},
                   {"im", values[i].imag()}});
  }
  return arr;
}

}  // namespace

FiniteFunction function_from_json(const std::string& text, bool one_bounded) {
  const auto points = read_points(text);
  if (points.empty()) return {};
  const std::int64_t lo = points.begin()->first;
  const std::int64_t hi = points.rbegin()->first + 1;
  std::vector<cplx> v(static_cast<std::size_t>(hi - lo));
  for (const auto& [x, z] : points) v[static_cast<std::size_t>(x - lo)] = z;
  try {
    return FiniteFunction(lo, std::move(v), one_bounded);
  } catch (const std::invalid_argument& e) {
    throw IoError(e.what());
  }
}

std::string function_to_json(const FiniteFunction& f) {
  return points_json(f.offset(), f.values()).dump();
}

ProbKernel kernel_from_json(const std::string& text) {
  const auto points = read_points(text);
  if (points.empty()) throw IoError("kernel file has no points");
  const std::int64_t lo = points.begin()->first;
  const std::int64_t hi = points.rbegin()->first + 1;
  std::vector<double> w(static_cast<std::size_t>(hi - lo));
  std::int64_t reach = 0;
  for (const auto& [x, z] : points) {
    if (z.imag() != 0.0) throw IoError("kernel weights must be real");
    w[static_cast<std::size_t>(x - lo)] = z.real();
    reach = std::max(reach, x < 0 ? -x : x);
  }
  try {
    return ProbKernel(lo, std::move(w), static_cast<double>(reach + 1));
  } catch (const std::invalid_argument& e) {
    throw IoError(e.what());
  }
}

std::string kernel_to_json(const ProbKernel& k) {
  json arr = json::array();
  for (std::int64_t h = k.offset(); h < k.end(); ++h) {
    if (k(h) == 0.0) continue;
    arr.push_back({{"x", h}, {"re", k(h)}, {"im", 0.0}});
  }
  return arr.dump();
}

std::vector<std::int64_t> set_from_json(const std::string& text) {
  const json doc = parse(text);
  if (!doc.is_array()) throw IoError("expected a JSON array of integers");
  std::set<std::int64_t> s;
  for (const json& v : doc) {
    if (!v.is_number_integer()) throw IoError("set elements must be integers");
    if (!s.insert(v.get<std::int64_t>()).second) {
      throw IoError("duplicate set element " + std::to_string(v.get<std::int64_t>()));
    }
  }
  return {s.begin(), s.end()};
}

std::string set_to_json(const std::vector<std::int64_t>& set) {
  std::vector<std::int64_t> sorted = set;
  std::sort(sorted.begin(), sorted.end());
  return json(sorted).dump();
}

LocalFunction local_from_json(const std::string& text) {
  const json doc = parse(text);
  if (!doc.is_object()) throw IoError("expected a local function object");
  const std::int64_t M = get_int(doc, "M");
  const std::int64_t q = get_int(doc, "q");
  const std::int64_t anchor = get_int(doc, "anchor");
  if (!doc.contains("entries") || !doc.at("entries").is_array()) throw IoError("missing \"entries\" array");
  std::map<LocalFunction::Key, cplx> table;
  bool bounded = true;
  for (const json& e : doc.at("entries")) {
    const LocalFunction::Key key{get_int(e, "cell"), get_int(e, "residue")};
    const cplx v{get_real(e, "re", true), get_real(e, "im", false)};
    bounded = bounded && std::abs(v) <= 1.0 + kOneBoundedSlack;
    if (!table.emplace(key, v).second) throw IoError("duplicate local function entry");
  }
  try {
    return LocalFunction(M, q, anchor, std::move(table), bounded);
  } catch (const std::invalid_argument& e) {
    throw IoError(e.what());
  }
}

std::string local_to_json(const LocalFunction& phi) {
  json entries = json::array();
  for (const auto& [key, v] : phi.table()) {
    entries.push_back({{"cell", key.first}, {"residue", key.second}, {"re", v.real()}, {"im", v.imag()}});
  }
  json doc = {{"M", phi.resolution()}, {"q", phi.modulus()}, {"anchor", phi.anchor()}, {"entries", entries}};
  return doc.dump();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("error writing " + path.string());
}

FiniteFunction load_function(const std::filesystem::path& path, bool one_bounded) {
  return function_from_json(read_text_file(path), one_bounded);
}

ProbKernel load_kernel(const std::filesystem::path& path) { return kernel_from_json(read_text_file(path)); }

std::vector<std::int64_t> load_set(const std::filesystem::path& path) {
  return set_from_json(read_text_file(path));
}

LocalFunction load_local(const std::filesystem::path& path) { return local_from_json(read_text_file(path)); }

}  // namespace ulab
