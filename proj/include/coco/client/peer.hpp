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

#include <functional>
#include <string>

#include "coco/net/json_codec.hpp"
#include "coco/store/graph.hpp"

namespace coco::client {

// Answers pull, history and ping from a client's replica, so that other
// clients can fetch revisions without going through the server. Read-only.
class PeerService {
 public:
  using Snapshot = std::function<store::RevisionGraph()>;

  PeerService(std::string file, Snapshot snapshot)
      : file_(std::move(file)), snapshot_(std::move(snapshot)) {}

  net::Json handle(const net::Json& request) const;

 private:
  net::Json dispatch(const net::Json& request) const;

  std::string file_;
  Snapshot snapshot_;
};

}  // namespace coco::client
