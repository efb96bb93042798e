/*
 * Copyright 2026 The morltune Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Line-oriented "key = value" text used by run configs, environment files
// and hyperparameter files.
//
//   # comment (only when '#' is in the first column)
//   key = value
//   layout =
//     indented continuation lines are appended to the previous key,
//     one per line, with surrounding whitespace removed
//
// Keys are unique within a file. Blank lines are ignored.

#ifndef MORLTUNE_KV_TEXT_H_
#define MORLTUNE_KV_TEXT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace morltune {

class KeyValueText {
 public:
  KeyValueText() = default;

  // Throws ConfigError with `source` and the line number on bad syntax.
  static KeyValueText Parse(std::string_view text,
                            const std::string& source = "<text>");
  static KeyValueText Load(const std::filesystem::path& path);

  bool Has(const std::string& key) const { return values_.count(key) > 0; }
  std::optional<std::string> Get(const std::string& key) const;
  // Throws ConfigError when missing.
  const std::string& Require(const std::string& key) const;
  // Inserts or overrides.
  void Set(const std::string& key, std::string value);
  // Keys starting with `prefix`, in sorted order.
  std::vector<std::string> KeysWithPrefix(const std::string& prefix) const;
  const std::map<std::string, std::string>& values() const { return values_; }
  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::map<std::string, std::string> values_;
};

// Value parsers; each throws ConfigError naming `what` on failure.
double ParseDouble(std::string_view text, std::string_view what);
int64_t ParseInt(std::string_view text, std::string_view what);
bool ParseBool(std::string_view text, std::string_view what);
// Comma separated numbers.
std::vector<double> ParseDoubleList(std::string_view text,
                                    std::string_view what);
// Comma separated integers or inclusive ranges "lo..hi", e.g. "0..4, 7".
std::vector<int64_t> ParseIntList(std::string_view text, std::string_view what);
// Lines of a multi-line value.
std::vector<std::string> SplitLines(std::string_view text);
std::string Trim(std::string_view text);

}  // namespace morltune

#endif  // MORLTUNE_KV_TEXT_H_
