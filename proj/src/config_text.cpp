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

#include "config_text.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "orthodyn/types.hpp"

namespace orthodyn::detail {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string where(int line) { return "line " + std::to_string(line); }

}  // namespace

ConfigDocument parse_config(std::string_view text) {
  ConfigDocument doc;
  std::string section;
  bool have_section = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ParseError(where(line_no) + ": malformed section header");
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (doc.count(section)) {
        throw ParseError(where(line_no) + ": duplicate section [" + section + "]");
      }
      doc[section];
      have_section = true;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(where(line_no) + ": expected 'key = value'");
    }
    if (!have_section) {
      throw ParseError(where(line_no) + ": key outside of any section");
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ParseError(where(line_no) + ": empty key");
    if (value.empty()) {
      throw ParseError(where(line_no) + ": empty value for '" + key + "'");
    }
    auto [it, inserted] = doc[section].emplace(key, ConfigEntry{value, line_no});
    if (!inserted) {
      throw ParseError(where(line_no) + ": duplicate key '" + section + "." +
                       key + "'");
    }
  }
  return doc;
}

double parse_number(const std::string& text, const std::string& field) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(field + ": not a number: '" + text + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(field + ": non-finite value");
  }
  return value;
}

std::vector<double> parse_numbers(const std::string& text,
                                  const std::string& field) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    // Allow "1, 2, 3" as well as "1 2 3".
    std::stringstream parts(token);
    std::string piece;
    while (std::getline(parts, piece, ',')) {
      if (!piece.empty()) out.push_back(parse_number(piece, field));
    }
  }
  return out;
}

SectionReader::SectionReader(const ConfigSection& section, std::string name)
    : section_(section), name_(std::move(name)) {}

bool SectionReader::has(const std::string& key) const {
  return section_.count(key) != 0;
}

const ConfigEntry& SectionReader::require(const std::string& key) {
  auto it = section_.find(key);
  if (it == section_.end()) {
    throw ValidationError(name_ + "." + key, "missing required key");
  }
  used_.insert(key);
  return it->second;
}

double SectionReader::number(const std::string& key) {
  return parse_number(require(key).value, name_ + "." + key);
}

std::vector<double> SectionReader::numbers(const std::string& key,
                                           std::size_t count) {
  const auto& entry = require(key);
  auto values = parse_numbers(entry.value, name_ + "." + key);
  if (values.size() != count) {
    throw ParseError(name_ + "." + key + ": expected " + std::to_string(count) +
                     " numbers, got " + std::to_string(values.size()));
  }
  return values;
}

void SectionReader::finish() const {
  for (const auto& [key, entry] : section_) {
    if (!used_.count(key)) {
      throw ParseError(where(entry.line) + ": unknown key '" + name_ + "." +
                       key + "'");
    }
  }
}

}  // namespace orthodyn::detail
