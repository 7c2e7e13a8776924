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


#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coco/net/transport.hpp"

namespace coco::client {

enum class Mode { kAutomatic, kManual };

std::string_view to_string(Mode mode);
Mode mode_from_string(std::string_view text);  // throws ConfigError

struct ClientConfig {
  std::string user;
  std::string device;
  std::optional<net::Endpoint> server;
  std::vector<net::Endpoint> peers;
  Mode mode = Mode::kAutomatic;

  // Throws ConfigError when the principal is incomplete.
  void validate() const;

  // key=value lines; '#' starts a comment. Keys: user, device, server,
  // mode, peer (repeatable) and peers (comma separated).
  static ClientConfig parse(std::string_view text);

  // A missing file is an empty config.
  static ClientConfig load(const std::filesystem::path& path);
};

}  // namespace coco::client
