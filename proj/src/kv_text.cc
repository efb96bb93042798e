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

#include "morltune/kv_text.h"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "morltune/errors.h"

namespace morltune {
namespace {

std::string Quote(std::string_view s) { return "'" + std::string(s) + "'"; }

std::vector<std::string> SplitComma(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    out.push_back(Trim(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string Trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return "";
  const auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(first, last - first + 1));
}

KeyValueText KeyValueText::Parse(std::string_view text,
                                 const std::string& source) {
  KeyValueText out;
  out.source_ = source;
  std::string current;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::string where = source + ":" + std::to_string(line_no);
    if (line[0] == ' ' || line[0] == '\t') {
      const std::string body = Trim(line);
      if (body.empty()) continue;
      if (current.empty()) {
        throw ConfigError(where + ": continuation line without a key");
      }
      std::string& value = out.values_[current];
      if (!value.empty()) value += '\n';
      value += body;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(where + ": expected 'key = value'");
    }
    const std::string key = Trim(std::string_view(line).substr(0, eq));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (out.values_.count(key)) {
      throw ConfigError(where + ": duplicate key " + Quote(key));
    }
    out.values_[key] = Trim(std::string_view(line).substr(eq + 1));
    current = key;
  }
  return out;
}

KeyValueText KeyValueText::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str(), path.string());
}

std::optional<std::string> KeyValueText::Get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

const std::string& KeyValueText::Require(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw ConfigError(source_ + ": missing required key " + Quote(key));
  }
  return it->second;
}

void KeyValueText::Set(const std::string& key, std::string value) {
  values_[key] = std::move(value);
}

std::vector<std::string> KeyValueText::KeysWithPrefix(
    const std::string& prefix) const {
  std::vector<std::string> out;
  for (auto it = values_.lower_bound(prefix);
       it != values_.end() && it->first.compare(0, prefix.size(), prefix) == 0;
       ++it) {
    out.push_back(it->first);
  }
  return out;
}

double ParseDouble(std::string_view text, std::string_view what) {
  const std::string s = Trim(text);
  if (s.empty()) throw ConfigError(std::string(what) + ": expected a number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError(std::string(what) + ": " + Quote(s) +
                      " is not a finite number");
  }
  return v;
}

int64_t ParseInt(std::string_view text, std::string_view what) {
  const std::string s = Trim(text);
  int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(std::string(what) + ": " + Quote(s) +
                      " is not an integer");
  }
  return v;
}

bool ParseBool(std::string_view text, std::string_view what) {
  const std::string s = Trim(text);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError(std::string(what) + ": " + Quote(s) + " is not a boolean");
}

std::vector<double> ParseDoubleList(std::string_view text,
                                    std::string_view what) {
  std::vector<double> out;
  for (const auto& item : SplitComma(text)) out.push_back(ParseDouble(item, what));
  return out;
}

std::vector<int64_t> ParseIntList(std::string_view text,
                                  std::string_view what) {
  std::vector<int64_t> out;
  for (const auto& item : SplitComma(text)) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(ParseInt(item, what));
      continue;
    }
    const int64_t lo = ParseInt(item.substr(0, dots), what);
    const int64_t hi = ParseInt(item.substr(dots + 2), what);
    if (hi < lo) {
      throw ConfigError(std::string(what) + ": empty range " + Quote(item));
    }
    for (int64_t v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

std::vector<std::string> SplitLines(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    line = Trim(line);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

}  // namespace morltune
