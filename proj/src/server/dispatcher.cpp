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


#include "coco/server/dispatcher.hpp"

#include "coco/error.hpp"

namespace coco::server {

using net::Json;

namespace {

constexpr std::string_view kFilesPrefix = "/files/";

Principal principal_of(const Json& j) {
  return Principal{net::require_string(j, "user"),
                   net::require_string(j, "device")};
}

LockMode mode_of(const Json& j) {
  const auto text = net::optional_string(j, "mode");
  return text ? lock_mode_from_string(*text) : LockMode::kAutomatic;
}

std::string url_decode(std::string_view text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '%' && i + 2 < text.size()) {
      out.push_back(static_cast<char>(
          std::stoi(std::string(text.substr(i + 1, 2)), nullptr, 16)));
      i += 2;
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

}  // namespace

Json to_json(const CheckInResult& result) {
  Json out{{"ok", true},
           {"result", std::string(to_string(result.kind))},
           {"head", net::id_or_null(result.head)},
           {"revision", result.revision.hex()}};
  if (result.merge) out["merge"] = result.merge->hex();
  if (!result.regions.empty()) {
    Json regions = Json::array();
    for (const auto& r : result.regions) regions.push_back(net::to_json(r));
    out["regions"] = std::move(regions);
  }
  return out;
}

CheckInResult check_in_result_from_json(const Json& reply) {
  CheckInResult result;
  result.kind = check_in_kind_from_string(net::require_string(reply, "result"));
  result.head = net::optional_id(reply, "head");
  result.revision =
      store::RevisionId::from_hex(net::require_string(reply, "revision"));
  result.merge = net::optional_id(reply, "merge");
  if (reply.contains("regions")) {
    for (const Json& r : reply.at("regions")) {
      result.regions.push_back(net::region_from_json(r));
    }
  }
  return result;
}

Json Dispatcher::handle(const Json& request) {
  try {
    return dispatch(request);
  } catch (const Error& e) {
    return net::error_reply(e.name(), e.what());
  } catch (const Json::exception& e) {
    return net::error_reply(ProtocolError::kName, e.what());
  }
}

Json Dispatcher::dispatch(const Json& request) {
  if (!request.is_object()) throw ProtocolError("request must be an object");
  const std::string op = net::require_string(request, "op");

  if (op == "ping") {
    if (request.contains("file") && request.contains("user")) {
      service_.renew(net::require_string(request, "file"), principal_of(request));
    }
    return Json{{"ok", true}};
  }
  const std::string file = net::require_string(request, "file");

  if (op == "checkout") {
    const LockGrant grant =
        service_.checkout(file, principal_of(request), mode_of(request));
    return Json{{"ok", true},
                {"ticket", grant.ticket},
                {"head", net::id_or_null(grant.head)}};
  }
  if (op == "checkin") {
    CheckInRequest req;
    req.file = file;
    req.principal = principal_of(request);
    req.mode = mode_of(request);
    req.base = net::optional_id(request, "base");
    req.merge_parent = net::optional_id(request, "merge_parent");
    if (request.contains("ticket") && !request.at("ticket").is_null()) {
      req.ticket = net::require_uint(request, "ticket");
    }
    if (!request.contains("changeset")) {
      throw ProtocolError("missing field 'changeset'");
    }
    req.changeset = net::changeset_from_json(request.at("changeset"));
    return to_json(service_.checkin(req));
  }
  if (op == "release") {
    service_.release(file, principal_of(request));
    return Json{{"ok", true}};
  }
  if (op == "pull") {
    std::set<store::RevisionId> have;
    if (request.contains("have")) {
      const Json& list = request.at("have");
      if (!list.is_array()) throw ProtocolError("'have' must be an array");
      for (const Json& id : list) {
        if (!id.is_string()) throw ProtocolError("'have' must hold ids");
        have.insert(store::RevisionId::from_hex(id.get<std::string>()));
      }
    }
    const PullResult pulled = service_.pull(file, have);
    Json revisions = Json::array();
    for (const auto& rev : pulled.revisions) revisions.push_back(net::to_json(rev));
    return Json{{"ok", true},
                {"file", file},
                {"head", net::id_or_null(pulled.head)},
                {"revisions", std::move(revisions)}};
  }
  if (op == "history") {
    Json revisions = Json::array();
    for (const auto& rev : service_.history(file)) {
      revisions.push_back(net::to_json(rev));
    }
    return Json{{"ok", true}, {"revisions", std::move(revisions)}};
  }
  if (op == "put") {
    Principal who{request.value("user", std::string("web")),
                  request.value("device", std::string("browser"))};
    const auto head =
        service_.put_file(file, net::require_string(request, "content"), who);
    return Json{{"ok", true}, {"head", net::id_or_null(head)}};
  }
  if (op == "get") {
    return Json{{"ok", true}, {"content", service_.get_file(file)}};
  }
  if (op == "stats") {
    const FileStats stats = service_.stats(file);
    Json order = Json::array();
    for (const auto& c : stats.commit_order) {
      order.push_back(Json{{"ticket", c.ticket}, {"seq", c.first_seq},
                           {"user", c.who.user}, {"device", c.who.device}});
    }
    return Json{{"ok", true},
                {"conflicts", stats.conflicts},
                {"commits", stats.commits},
                {"head", net::id_or_null(stats.head)},
                {"commit_order", std::move(order)}};
  }
  throw ProtocolError("unknown op '" + op + "'");
}

net::HttpResponse Dispatcher::handle_http(const net::HttpRequest& request) {
  std::string_view path = request.path;
  if (path.rfind(kFilesPrefix, 0) != 0) {
    return {404, "not found\n"};
  }
  std::string file;
  try {
    file = url_decode(path.substr(kFilesPrefix.size()));
    validate_file_name(file);
  } catch (const std::exception&) {
    return {400, "bad file name\n"};
  }
  try {
    if (request.method == "GET") {
      return {200, service_.get_file(file)};
    }
    if (request.method == "PUT") {
      const auto head =
          service_.put_file(file, request.body, Principal{"web", "browser"});
      return {200, (head ? head->hex() : std::string()) + "\n"};
    }
    return {405, "method not allowed\n"};
  } catch (const NotFound& e) {
    return {404, std::string(e.what()) + "\n"};
  } catch (const EncodingError& e) {
    return {415, std::string(e.what()) + "\n"};
  } catch (const Error& e) {
    return {409, std::string(e.name()) + ": " + e.what() + "\n"};
  }
}

}  // namespace coco::server
