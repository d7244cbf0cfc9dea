// Copyright 2026 The orthodyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <array>
#include <cmath>
#include <map>
#include <sstream>

#include "config_text.hpp"
#include "json.hpp"
#include "orthodyn/harness.hpp"

namespace orthodyn {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::array<const char*, 6> kVectorFields = {"P", "V", "A",
                                                      "L", "Ldot", "Gamma"};

std::array<Vec3*, 6> vector_fields(TrajectorySample& s) {
  return {&s.P, &s.V, &s.A, &s.L, &s.Ldot, &s.Gamma};
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    std::string piece(line.substr(start, pos - start));
    while (!piece.empty() && (piece.back() == ' ' || piece.back() == '\r')) {
      piece.pop_back();
    }
    const std::size_t lead = piece.find_first_not_of(' ');
    out.push_back(lead == std::string::npos ? std::string() : piece.substr(lead));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

void check_order(const std::vector<TrajectorySample>& samples) {
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const TrajectorySample& s = samples[k];
    if (!std::isfinite(s.t) || !all_finite(s.P) || !all_finite(s.V) ||
        !all_finite(s.A) || !all_finite(s.L) || !all_finite(s.Ldot) ||
        !all_finite(s.Gamma)) {
      throw ValidationError("sample" + std::to_string(k), "non-finite value");
    }
    if (k > 0 && s.t < samples[k - 1].t) {
      throw ValidationError("t", "times must be non-decreasing");
    }
  }
}

}  // namespace

std::string trajectory_to_csv(const std::vector<TrajectorySample>& samples) {
  std::string out(kTrajectoryHeader);
  out += '\n';
  for (const TrajectorySample& s : samples) {
    out += format_double(s.t);
    for (const Vec3* v : {&s.P, &s.V, &s.A, &s.L, &s.Gamma}) {
      for (int k = 0; k < 3; ++k) {
        out += ',';
        out += format_double((*v)[k]);
      }
    }
    out += '\n';
  }
  return out;
}

std::string trajectory_to_json(const std::vector<TrajectorySample>& samples) {
  Json arr = Json::array();
  for (TrajectorySample s : samples) {
    Json j;
    j["t"] = s.t;
    const auto fields = vector_fields(s);
    for (std::size_t f = 0; f < fields.size(); ++f) {
      const Vec3& v = *fields[f];
      j[kVectorFields[f]] = {v.x(), v.y(), v.z()};
    }
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::vector<TrajectorySample> trajectory_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::map<std::string, int> column;
  std::vector<TrajectorySample> out;

  // Column name -> (sample member, component).
  auto slot = [](TrajectorySample& s, const std::string& name) -> double* {
    if (name == "t") return &s.t;
    static const std::map<char, int> kPrefix = {
        {'P', 0}, {'V', 1}, {'A', 2}, {'L', 3}, {'G', 5}};
    if (name.size() != 2) return nullptr;
    auto it = kPrefix.find(name[0]);
    if (it == kPrefix.end()) return nullptr;
    const auto fields = vector_fields(s);
    Vec3& v = *fields[it->second];
    if (it->second < 3) {
      const int k = name[1] - 'x';
      return k >= 0 && k < 3 ? &v[k] : nullptr;
    }
    const int k = name[1] - '1';
    return k >= 0 && k < 3 ? &v[k] : nullptr;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \r\t") == std::string::npos) continue;
    const std::vector<std::string> cells = split(line, ',');
    if (column.empty()) {
      TrajectorySample probe;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (!slot(probe, cells[c])) {
          throw ParseError("line " + std::to_string(line_no) +
                           ": unknown column '" + cells[c] + "'");
        }
        if (!column.emplace(cells[c], static_cast<int>(c)).second) {
          throw ParseError("line " + std::to_string(line_no) +
                           ": duplicate column '" + cells[c] + "'");
        }
      }
      for (const char* required : {"t", "Px", "Py", "Pz"}) {
        if (!column.count(required)) {
          throw ParseError(std::string("missing column '") + required + "'");
        }
      }
      continue;
    }
    if (cells.size() != column.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(column.size()) + " values, got " +
                       std::to_string(cells.size()));
    }
    TrajectorySample s;
    for (const auto& [name, c] : column) {
      *slot(s, name) = detail::parse_number(
          cells[c], "line " + std::to_string(line_no) + " " + name);
    }
    out.push_back(s);
  }
  if (column.empty()) throw ParseError("trajectory file has no header");
  check_order(out);
  return out;
}

std::vector<TrajectorySample> trajectory_from_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!doc.is_array()) throw ParseError("trajectory JSON must be an array");
  std::vector<TrajectorySample> out;
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const Json& j = doc[k];
    const std::string where = "sample " + std::to_string(k);
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    TrajectorySample s;
    for (const auto& [key, value] : j.items()) {
      bool known = key == "t";
      for (const char* f : kVectorFields) known = known || key == f;
      if (!known) throw ParseError(where + ": unknown field '" + key + "'");
    }
    if (!j.contains("t") || !j["t"].is_number()) {
      throw ParseError(where + ": missing numeric 't'");
    }
    s.t = j["t"].get<double>();
    const auto fields = vector_fields(s);
    for (std::size_t f = 0; f < fields.size(); ++f) {
      const char* name = kVectorFields[f];
      if (!j.contains(name)) {
        if (f == 0) throw ParseError(where + ": missing 'P'");
        continue;
      }
      const Json& v = j[name];
      if (!v.is_array() || v.size() != 3 || !v[0].is_number() ||
          !v[1].is_number() || !v[2].is_number()) {
        throw ParseError(where + ": '" + name + "' must be 3 numbers");
      }
      *fields[f] = Vec3(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
    }
    out.push_back(s);
  }
  check_order(out);
  return out;
}

std::vector<TrajectorySample> read_trajectory(std::string_view text) {
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '[') {
    return trajectory_from_json(text);
  }
  return trajectory_from_csv(text);
}

}  // namespace orthodyn
