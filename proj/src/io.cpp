// Copyright 2026 The azfid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "azfid/io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "azfid/errors.hpp"

namespace azfid {

namespace {

using nlohmann::json;

CMatrix read_entries(const json& entries, Eigen::Index rows, Eigen::Index cols, const std::string& field) {
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != rows) {
    throw ConfigError(field + ".entries must be an array of " + std::to_string(rows) + " rows");
  }
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = entries[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ConfigError(field + ".entries[" + std::to_string(i) + "] must hold " + std::to_string(cols) + " entries");
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      const json& e = row[static_cast<std::size_t>(j)];
      const std::string where = field + ".entries[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      if (e.is_number()) {
        m(i, j) = Complex(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ConfigError(where + " must be a number or a [re, im] pair");
      }
    }
  }
  return m;
}

Eigen::Index read_positive(const json& j, const std::string& key, const std::string& field) {
  if (!j.contains(key)) throw ConfigError(field + "." + key + " is missing");
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > 4096) {
    throw ConfigError(field + "." + key + " must be a positive integer");
  }
  return static_cast<Eigen::Index>(v.get<long long>());
}

json parse_json_text(const std::string& text, const std::string& field) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(field + ": malformed JSON: " + e.what());
  }
}

struct Spec {
  std::string kind;
  std::string body;
  std::map<std::string, std::string> args;
};

std::optional<Spec> parse_spec(const std::string& source) {
  static const char* kKinds[] = {"ginibre", "diag", "mixed", "pure", "cptp", "mixed-unitary",
                                 "identity", "pinching", "coord", "random"};
  const auto colon = source.find(':');
  if (colon == std::string::npos) return std::nullopt;
  Spec s{source.substr(0, colon), source.substr(colon + 1), {}};
  bool known = false;
  for (const char* k : kKinds) known = known || s.kind == k;
  if (!known) return std::nullopt;
  if (s.kind == "diag") return s;
  std::stringstream ss(s.body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("generator spec '" + source + "': expected key=value, got '" + item + "'");
    s.args[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return s;
}

long long spec_int(const Spec& s, const std::string& key, std::optional<long long> fallback = std::nullopt) {
  const auto it = s.args.find(key);
  if (it == s.args.end()) {
    if (fallback) return *fallback;
    throw ConfigError("generator spec '" + s.kind + "': missing '" + key + "'");
  }
  try {
    std::size_t used = 0;
    const long long v = std::stoll(it->second, &used);
    if (used != it->second.size() || v < 0) throw std::invalid_argument("bad");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("generator spec '" + s.kind + "': '" + key + "' must be a non-negative integer");
  }
}

void reject_extra(const Spec& s, std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : s.args) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw ConfigError("generator spec '" + s.kind + "': unknown key '" + k + "'");
  }
}

Eigen::Index spec_dim(const Spec& s) {
  const long long d = spec_int(s, "d");
  if (d < 1 || d > 4096) throw ConfigError("generator spec '" + s.kind + "': d must be in [1, 4096]");
  return static_cast<Eigen::Index>(d);
}

std::uint64_t spec_seed(const Spec& s, std::uint64_t fallback) {
  const auto it = s.args.find("seed");
  if (it == s.args.end()) return fallback;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("bad");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("generator spec '" + s.kind + "': 'seed' must be an unsigned integer");
  }
}

json load_json_file(const std::string& path) { return parse_json_text(read_text_file(path), path); }

}  // namespace

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  json out;
  if (m.rows() == m.cols()) {
    out["dim"] = m.rows();
  } else {
    out["rows"] = m.rows();
    out["cols"] = m.cols();
  }
  out["entries"] = std::move(rows);
  return out;
}

CMatrix matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field + " must be an object with 'dim' and 'entries'");
  if (!j.contains("entries")) throw ConfigError(field + ".entries is missing");
  if (j.contains("dim")) {
    const Eigen::Index d = read_positive(j, "dim", field);
    return read_entries(j.at("entries"), d, d, field);
  }
  if (j.contains("rows") || j.contains("cols")) {
    return read_entries(j.at("entries"), read_positive(j, "rows", field), read_positive(j, "cols", field), field);
  }
  throw ConfigError(field + ".dim is missing");
}

json state_to_json(const DensityMatrix& rho) { return matrix_to_json(rho.raw()); }

DensityMatrix state_from_json(const json& j, const std::string& field) {
  const CMatrix m = matrix_from_json(j, field);
  try {
    return DensityMatrix(HermitianMatrix(m));
  } catch (const ValidationError& e) {
    throw ValidationError(field + ": " + e.what());
  }
}

json channel_to_json(const KrausChannel& channel) {
  json out;
  out["dim"] = channel.dim();
  json ops = json::array();
  for (const CMatrix& k : channel.kraus()) ops.push_back(matrix_to_json(k));
  out["kraus"] = std::move(ops);
  json tags = json::array();
  for (const ChannelTag t : channel.tags().list()) tags.push_back(std::string(tag_name(t)));
  out["tags"] = std::move(tags);
  return out;
}

KrausChannel channel_from_json(const json& j, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field + " must be an object with 'dim', 'kraus' and 'tags'");
  const Eigen::Index d = read_positive(j, "dim", field);
  if (!j.contains("kraus") || !j.at("kraus").is_array() || j.at("kraus").empty()) {
    throw ConfigError(field + ".kraus must be a nonempty array of matrices");
  }
  std::vector<CMatrix> ops;
  for (std::size_t i = 0; i < j.at("kraus").size(); ++i) {
    const std::string where = field + ".kraus[" + std::to_string(i) + "]";
    CMatrix k = matrix_from_json(j.at("kraus")[i], where);
    if (k.rows() != d || k.cols() != d) throw ConfigError(where + " must be " + std::to_string(d) + "x" + std::to_string(d));
    ops.push_back(std::move(k));
  }
  TagSet declared;
  if (j.contains("tags")) {
    if (!j.at("tags").is_array()) throw ConfigError(field + ".tags must be an array of strings");
    for (const json& t : j.at("tags")) {
      if (!t.is_string()) throw ConfigError(field + ".tags must be an array of strings");
      const auto tag = tag_from_name(t.get<std::string>());
      if (!tag) throw ConfigError(field + ".tags: unknown tag '" + t.get<std::string>() + "'");
      declared.add(*tag);
    }
  }
  return KrausChannel(std::move(ops), declared);
}

DensityMatrix load_state(const std::string& source, std::uint64_t default_seed) {
  const std::optional<Spec> spec = parse_spec(source);
  if (!spec) return state_from_json(load_json_file(source), source);
  const Spec& s = *spec;
  if (s.kind == "ginibre") {
    reject_extra(s, {"d", "rank", "seed"});
    const Eigen::Index d = spec_dim(s);
    const long long rank = spec_int(s, "rank", d);
    if (rank < 1 || rank > d) throw ConfigError("generator spec 'ginibre': rank must be in [1, d]");
    return random_density(d, static_cast<Eigen::Index>(rank), spec_seed(s, default_seed));
  }
  if (s.kind == "diag") {
    std::vector<double> values;
    std::stringstream ss(s.body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument("bad");
      } catch (const std::exception&) {
        throw ConfigError("generator spec 'diag': '" + item + "' is not a number");
      }
    }
    if (values.empty()) throw ConfigError("generator spec 'diag': no values");
    return diagonal_state(Eigen::Map<const RVector>(values.data(), static_cast<Eigen::Index>(values.size())));
  }
  if (s.kind == "mixed") {
    reject_extra(s, {"d"});
    return maximally_mixed(spec_dim(s));
  }
  if (s.kind == "pure") {
    reject_extra(s, {"d", "index", "seed"});
    const Eigen::Index d = spec_dim(s);
    if (s.args.count("index")) {
      const long long idx = spec_int(s, "index");
      if (idx >= d) throw ConfigError("generator spec 'pure': index must be < d");
      return pure_state(CVector::Unit(d, static_cast<Eigen::Index>(idx)));
    }
    Rng rng(spec_seed(s, default_seed));
    return pure_state(haar_unitary(d, rng).matrix().col(0));
  }
  throw ConfigError("'" + source + "' is not a state generator");
}

KrausChannel load_channel(const std::string& source, std::uint64_t default_seed) {
  const std::optional<Spec> spec = parse_spec(source);
  if (!spec) return channel_from_json(load_json_file(source), source);
  const Spec& s = *spec;
  if (s.kind == "cptp" || s.kind == "mixed-unitary") {
    reject_extra(s, {"d", "k", "seed"});
    const Eigen::Index d = spec_dim(s);
    const long long k = spec_int(s, "k", 1);
    if (k < 1) throw ConfigError("generator spec '" + s.kind + "': k must be >= 1");
    Rng rng(spec_seed(s, default_seed));
    return s.kind == "cptp" ? random_cptp(d, static_cast<Eigen::Index>(k), rng)
                            : random_mixed_unitary(d, static_cast<Eigen::Index>(k), rng);
  }
  if (s.kind == "identity") {
    reject_extra(s, {"d"});
    return identity_channel(spec_dim(s));
  }
  if (s.kind == "pinching") {
    reject_extra(s, {"d", "seed"});
    const Eigen::Index d = spec_dim(s);
    if (!s.args.count("seed")) return pinching(UnitaryMatrix::identity(d));
    return pinching(haar_unitary(d, spec_seed(s, default_seed)));
  }
  throw ConfigError("'" + source + "' is not a channel generator");
}

SubspaceProjector load_subspace(const std::string& source, std::uint64_t default_seed) {
  const std::optional<Spec> spec = parse_spec(source);
  if (!spec) {
    const json j = load_json_file(source);
    if (j.is_object() && j.contains("isometry")) {
      return SubspaceProjector::from_isometry(matrix_from_json(j.at("isometry"), source + ".isometry"));
    }
    return SubspaceProjector(HermitianMatrix(matrix_from_json(j, source)));
  }
  const Spec& s = *spec;
  if (s.kind == "coord") {
    reject_extra(s, {"d", "axes"});
    const Eigen::Index d = spec_dim(s);
    const auto it = s.args.find("axes");
    if (it == s.args.end()) throw ConfigError("generator spec 'coord': missing 'axes'");
    std::vector<Eigen::Index> axes;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, '|')) {
      try {
        std::size_t used = 0;
        const long long a = std::stoll(item, &used);
        if (used != item.size() || a < 0 || a >= d) throw std::invalid_argument("bad");
        axes.push_back(static_cast<Eigen::Index>(a));
      } catch (const std::exception&) {
        throw ConfigError("generator spec 'coord': axis '" + item + "' must be an integer in [0, d)");
      }
    }
    return coordinate_subspace(d, axes);
  }
  if (s.kind == "random") {
    reject_extra(s, {"d", "m", "seed"});
    const Eigen::Index d = spec_dim(s);
    const long long m = spec_int(s, "m");
    if (m < 1 || m > d) throw ConfigError("generator spec 'random': m must be in [1, d]");
    Rng rng(spec_seed(s, default_seed));
    return random_subspace(d, static_cast<Eigen::Index>(m), rng);
  }
  throw ConfigError("'" + source + "' is not a subspace generator");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
  out.flush();
  if (!out) throw ConfigError("cannot write '" + path + "'");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

}  // namespace azfid
