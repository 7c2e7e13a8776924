//
// Copyright 2026 The COCO Authors
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
//


#include "coco/client/config.hpp"

#include <fstream>
#include <sstream>

#include "coco/error.hpp"

namespace coco::client {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

net::Endpoint endpoint_of(std::string_view text, std::size_t line_no) {
  try {
    return net::Endpoint::parse(text);
  } catch (const Error& e) {
    throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
  }
}

}  // namespace

std::string_view to_string(Mode mode) {
  return mode == Mode::kManual ? "manual" : "auto";
}

Mode mode_from_string(std::string_view text) {
  if (text == "auto" || text == "automatic") return Mode::kAutomatic;
  if (text == "manual") return Mode::kManual;
  throw ConfigError("unknown lock mode '" + std::string(text) + "'");
}

void ClientConfig::validate() const {
  if (user.empty()) throw ConfigError("no user configured");
  if (device.empty()) throw ConfigError("no device configured");
}

ClientConfig ClientConfig::parse(std::string_view text) {
  ClientConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "user") {
      cfg.user = value;
    } else if (key == "device") {
      cfg.device = value;
    } else if (key == "server") {
      cfg.server = endpoint_of(value, line_no);
    } else if (key == "mode") {
      cfg.mode = mode_from_string(value);
    } else if (key == "peer") {
      cfg.peers.push_back(endpoint_of(value, line_no));
    } else if (key == "peers") {
      std::string_view rest = value;
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = trim(rest.substr(0, comma));
        if (!item.empty()) cfg.peers.push_back(endpoint_of(item, line_no));
        rest = comma == std::string_view::npos ? std::string_view{}
                                               : rest.substr(comma + 1);
      }
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" +
                        std::string(key) + "'");
    }
  }
  return cfg;
}

ClientConfig ClientConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

}  // namespace coco::client
