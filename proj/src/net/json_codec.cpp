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


#include "coco/net/json_codec.hpp"

#include "coco/error.hpp"

namespace coco::net {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object()) throw ProtocolError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) {
    throw ProtocolError(std::string("missing field '") + key + "'");
  }
  return *it;
}

std::size_t as_index(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ProtocolError(std::string("field '") + key +
                        "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::vector<std::string> as_lines(const Json& v, const char* key) {
  if (!v.is_array()) {
    throw ProtocolError(std::string("field '") + key + "' must be an array");
  }
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const Json& line : v) {
    if (!line.is_string()) {
      throw ProtocolError(std::string("field '") + key +
                          "' must hold strings");
    }
    out.push_back(line.get<std::string>());
  }
  return out;
}

}  // namespace

std::string require_string(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_string()) {
    throw ProtocolError(std::string("field '") + key + "' must be a string");
  }
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) {
    return std::nullopt;
  }
  return require_string(j, key);
}

std::uint64_t require_uint(const Json& j, const char* key) {
  return as_index(j, key);
}

std::optional<store::RevisionId> optional_id(const Json& j, const char* key) {
  auto text = optional_string(j, key);
  if (!text) return std::nullopt;
  return store::RevisionId::from_hex(*text);
}

Json id_or_null(const std::optional<store::RevisionId>& id) {
  return id ? Json(id->hex()) : Json(nullptr);
}

Json to_json(const merge::Hunk& h) {
  return Json{{"start", h.base_start},
              {"len", h.base_len},
              {"lines", h.replacement}};
}

Json to_json(const merge::Changeset& cs) {
  Json hunks = Json::array();
  for (const auto& h : cs.hunks) hunks.push_back(to_json(h));
  Json out{{"hunks", std::move(hunks)}};
  if (cs.final_newline) out["final_newline"] = *cs.final_newline;
  return out;
}

Json to_json(const store::Revision& rev) {
  Json parents = Json::array();
  for (const auto& p : rev.parents) parents.push_back(p.hex());
  return Json{{"id", rev.id.hex()},
              {"parents", std::move(parents)},
              {"changeset", to_json(rev.changeset)},
              {"author", rev.author},
              {"device", rev.device},
              {"server_seq", rev.server_seq ? Json(*rev.server_seq)
                                            : Json(nullptr)},
              {"server_time", rev.server_time_ms}};
}

Json to_json(const merge::ConflictRegion& region) {
  return Json{{"start", region.base_start},
              {"len", region.base_len},
              {"ours", region.ours},
              {"theirs", region.theirs}};
}

merge::Hunk hunk_from_json(const Json& j) {
  merge::Hunk h;
  h.base_start = as_index(j, "start");
  h.base_len = as_index(j, "len");
  h.replacement = as_lines(require(j, "lines"), "lines");
  return h;
}

merge::Changeset changeset_from_json(const Json& j) {
  merge::Changeset cs;
  const Json& hunks = require(j, "hunks");
  if (!hunks.is_array()) throw ProtocolError("'hunks' must be an array");
  for (const Json& h : hunks) cs.hunks.push_back(hunk_from_json(h));
  if (j.contains("final_newline") && !j.at("final_newline").is_null()) {
    if (!j.at("final_newline").is_boolean()) {
      throw ProtocolError("'final_newline' must be a boolean");
    }
    cs.final_newline = j.at("final_newline").get<bool>();
  }
  return cs;
}

store::Revision revision_from_json(const Json& j) {
  store::Revision rev;
  rev.id = store::RevisionId::from_hex(require_string(j, "id"));
  const Json& parents = require(j, "parents");
  if (!parents.is_array()) throw ProtocolError("'parents' must be an array");
  for (const Json& p : parents) {
    if (!p.is_string()) throw ProtocolError("parent ids must be strings");
    rev.parents.push_back(store::RevisionId::from_hex(p.get<std::string>()));
  }
  rev.changeset = changeset_from_json(require(j, "changeset"));
  rev.author = require_string(j, "author");
  rev.device = require_string(j, "device");
  if (j.contains("server_seq") && !j.at("server_seq").is_null()) {
    rev.server_seq = as_index(j, "server_seq");
  }
  const Json& time = require(j, "server_time");
  if (!time.is_number_integer()) {
    throw ProtocolError("'server_time' must be an integer");
  }
  rev.server_time_ms = time.get<std::int64_t>();
  return rev;
}

merge::ConflictRegion region_from_json(const Json& j) {
  merge::ConflictRegion region;
  region.base_start = as_index(j, "start");
  region.base_len = as_index(j, "len");
  region.ours = as_lines(require(j, "ours"), "ours");
  region.theirs = as_lines(require(j, "theirs"), "theirs");
  return region;
}

Json error_reply(std::string_view name, const std::string& message) {
  return Json{{"ok", false}, {"error", std::string(name)}, {"message", message}};
}

void raise_if_error(const Json& reply) {
  if (!reply.is_object() || !reply.contains("ok") ||
      !reply.at("ok").is_boolean()) {
    throw ProtocolError("reply has no 'ok' field");
  }
  if (reply.at("ok").get<bool>()) return;
  const std::string name = reply.value("error", std::string("ProtocolError"));
  const std::string message = reply.value("message", name);
  throw_named_error(name, message);
}

}  // namespace coco::net
