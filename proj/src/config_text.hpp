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

// Sectioned key/value text shared by the model and tolerance configs.
//
//   # comment            (also after a value)
//   [section]
//   key = value
//
// Keys are unique per section. Values are taken verbatim after trimming.

#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace orthodyn::detail {

struct ConfigEntry {
  std::string value;
  int line = 0;
};

using ConfigSection = std::map<std::string, ConfigEntry>;
using ConfigDocument = std::map<std::string, ConfigSection>;

ConfigDocument parse_config(std::string_view text);

double parse_number(const std::string& text, const std::string& field);
std::vector<double> parse_numbers(const std::string& text,
                                  const std::string& field);

// Tracks which keys of a section were consumed so leftovers can be reported.
class SectionReader {
 public:
  SectionReader(const ConfigSection& section, std::string name);

  double number(const std::string& key);
  std::vector<double> numbers(const std::string& key, std::size_t count);
  bool has(const std::string& key) const;

  // Throws ParseError on any key that was never read.
  void finish() const;

 private:
  const ConfigEntry& require(const std::string& key);

  const ConfigSection& section_;
  std::string name_;
  std::set<std::string> used_;
};

}  // namespace orthodyn::detail
