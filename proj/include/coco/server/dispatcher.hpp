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

#include "coco/net/json_codec.hpp"
#include "coco/net/line_server.hpp"
#include "coco/server/sync_service.hpp"

namespace coco::server {

// Maps wire requests onto a SyncService.
//
//   {"op": "ping"}                                     -> {"ok": true}
//   {"op": "checkout", "file", "user", "device", "mode"}
//                                 -> {"ok": true, "ticket": n, "head": id|null}
//   {"op": "checkin", "file", "user", "device", "mode", "base": id|null,
//    "ticket": n?, "merge_parent": id?, "changeset": {...}}
//        -> {"ok": true, "result": "FastForward"|"AutoMerged"|"ConflictRecorded",
//            "head", "revision", "merge"?, "regions"?}
//   {"op": "release", "file", "user", "device"}        -> {"ok": true}
//   {"op": "pull", "file", "have": [id...]}  -> {"ok": true, "head", "revisions"}
//   {"op": "history", "file"}                -> {"ok": true, "revisions"}
//   {"op": "put", "file", "content", "user"?, "device"?} -> {"ok": true, "head"}
//   {"op": "get", "file"}                    -> {"ok": true, "content"}
//   {"op": "stats", "file"}                  -> counters for test harnesses
//
// A ping that names a file and principal also renews that holder's lease.
// Errors come back as {"ok": false, "error": "<Name>", "message": "..."}.
class Dispatcher {
 public:
  explicit Dispatcher(SyncService& service) : service_(service) {}

  net::Json handle(const net::Json& request);

  // GET /files/<name> and PUT /files/<name>.
  net::HttpResponse handle_http(const net::HttpRequest& request);

 private:
  net::Json dispatch(const net::Json& request);

  SyncService& service_;
};

// Shared between the server and the lab harness.
net::Json to_json(const CheckInResult& result);
CheckInResult check_in_result_from_json(const net::Json& reply);

}  // namespace coco::server
