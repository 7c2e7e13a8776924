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


#include "coco/client/peer.hpp"

#include <set>

#include "coco/error.hpp"

namespace coco::client {

using net::Json;

Json PeerService::handle(const Json& request) const {
  try {
    return dispatch(request);
  } catch (const Error& e) {
    return net::error_reply(e.name(), e.what());
  } catch (const Json::exception& e) {
    return net::error_reply(ProtocolError::kName, e.what());
  }
}

Json PeerService::dispatch(const Json& request) const {
  if (!request.is_object()) throw ProtocolError("request must be an object");
  const std::string op = net::require_string(request, "op");
  if (op == "ping") return Json{{"ok", true}};

  const std::string file = net::require_string(request, "file");
  if (file != file_) {
    throw ProtocolError("this peer serves '" + file_ + "', not '" + file + "'");
  }
  const store::RevisionGraph replica = snapshot_();

  if (op == "pull") {
    std::set<store::RevisionId> have;
    if (request.contains("have")) {
      for (const Json& id : request.at("have")) {
        have.insert(store::RevisionId::from_hex(id.get<std::string>()));
      }
    }
    Json revisions = Json::array();
    for (const auto& rev : replica.log()) {
      if (!have.count(rev.id)) revisions.push_back(net::to_json(rev));
    }
    return Json{{"ok", true},
                {"file", file_},
                {"head", net::id_or_null(replica.head())},
                {"revisions", std::move(revisions)}};
  }
  if (op == "history") {
    Json revisions = Json::array();
    for (const auto& rev : replica.log()) revisions.push_back(net::to_json(rev));
    return Json{{"ok", true}, {"revisions", std::move(revisions)}};
  }
  throw ProtocolError("peers only answer pull, history and ping, not '" + op + "'");
}

}  // namespace coco::client
