// Copyright 2026 The exsafe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "exsafe/config.h"

#include <charconv>
#include <cmath>

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "exsafe/error.h"

namespace exsafe {
namespace {

std::string Trim(std::string s) {
  boost::algorithm::trim(s);
  return s;
}

}  // namespace

std::uint64_t ParseCount(const std::string& key, const std::string& text) {
  const std::string t = Trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(key + ": not a nonnegative integer: '" + text + "'");
  }
  return value;
}

double ParseReal(const std::string& key, const std::string& text) {
  const std::string t = Trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() ||
      !std::isfinite(value)) {
    throw ConfigError(key + ": not a finite number: '" + text + "'");
  }
  return value;
}

std::pair<std::string, std::string> ParseAssignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("expected key=value, got '" + text + "'");
  }
  return {Trim(text.substr(0, eq)), Trim(text.substr(eq + 1))};
}

ParamSet::ParamSet(std::vector<ParamDef> defs) : defs_(std::move(defs)) {
  for (const ParamDef& d : defs_) values_.push_back(d.default_value);
}

void ParamSet::Override(const std::string& key, const std::string& value) {
  for (std::size_t i = 0; i < defs_.size(); ++i) {
    if (defs_[i].key == key) {
      values_[i] = value;
      return;
    }
  }
  throw ConfigError("unknown parameter '" + key + "'");
}

bool ParamSet::Has(const std::string& key) const {
  for (const ParamDef& d : defs_) {
    if (d.key == key) return true;
  }
  return false;
}

const std::string& ParamSet::Raw(const std::string& key) const {
  for (std::size_t i = 0; i < defs_.size(); ++i) {
    if (defs_[i].key == key) return values_[i];
  }
  throw ConfigError("scenario reads undeclared parameter '" + key + "'");
}

std::uint64_t ParamSet::Count(const std::string& key) const {
  return ParseCount(key, Raw(key));
}

double ParamSet::Real(const std::string& key) const {
  return ParseReal(key, Raw(key));
}

Ratio ParamSet::Fraction(const std::string& key) const {
  try {
    return Ratio::Parse(Trim(Raw(key)));
  } catch (const Error& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

std::vector<std::string> ParamSet::List(const std::string& key) const {
  std::vector<std::string> out;
  const std::string& raw = Raw(key);
  std::size_t start = 0;
  while (start <= raw.size()) {
    const auto comma = raw.find(',', start);
    const std::string item =
        Trim(raw.substr(start, comma == std::string::npos ? std::string::npos
                                                          : comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<double> ParamSet::RealList(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& item : List(key)) out.push_back(ParseReal(key, item));
  return out;
}

KeyValues ParamSet::Resolved() const {
  KeyValues out;
  for (std::size_t i = 0; i < defs_.size(); ++i) {
    out.emplace_back(defs_[i].key, values_[i]);
  }
  return out;
}

void LoadConfigFile(const std::filesystem::path& path, RunOptions& options) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    if (section == "run") {
      for (const auto& [key, node] : body) {
        const std::string value = Trim(node.data());
        if (key == "scenario") {
          options.scenario = value;
        } else if (key == "seed") {
          options.seed = ParseCount("seed", value);
        } else if (key == "workers") {
          options.workers = ParseCount("workers", value);
        } else if (key == "out_dir") {
          options.out_dir = value;
        } else if (key == "label") {
          options.label = value;
        } else if (key == "trials") {
          options.overrides.emplace_back("trials", value);
        } else {
          throw ConfigError("config: unknown [run] key '" + key + "'");
        }
      }
    } else if (section == "params") {
      for (const auto& [key, node] : body) {
        options.overrides.emplace_back(key, Trim(node.data()));
      }
    } else {
      throw ConfigError("config: unknown section or key '" + section + "'");
    }
  }
}

}  // namespace exsafe
