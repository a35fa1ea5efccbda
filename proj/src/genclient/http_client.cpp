// Copyright 2026 The fidaudit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <cstdlib>
#include "json.hpp"

#include "genclient/genclient.hpp"

namespace fidaudit {

HttpChatClient::HttpChatClient(std::string base_url, std::string api_key,
                               std::chrono::seconds timeout)
    : api_key_(std::move(api_key)), timeout_(timeout) {
  while (!base_url.empty() && base_url.back() == '/') base_url.pop_back();
  const std::size_t scheme_end = base_url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "API base URL needs a scheme: \"" + base_url + "\"");
  }
  const std::size_t path_start = base_url.find('/', scheme_end + 3);
  scheme_host_port_ = base_url.substr(0, path_start);
  path_prefix_ =
      path_start == std::string::npos ? "" : base_url.substr(path_start);
}

HttpChatClient HttpChatClient::FromEnvironment() {
  const char* base = std::getenv("FIDAUDIT_API_BASE");
  if (base == nullptr || *base == '\0') {
    throw Error(ErrorCode::kInvalidArgument,
                "FIDAUDIT_API_BASE is not set (use --dry-run for offline runs)");
  }
  const char* key = std::getenv("FIDAUDIT_API_KEY");
  return HttpChatClient(base, key == nullptr ? "" : key);
}

std::string HttpChatClient::Complete(const ChatRequest& request) {
  nlohmann::json body = {
      {"model", request.model},
      {"messages", {{{"role", "user"}, {"content", request.prompt}}}},
  };
  if (request.temperature) body["temperature"] = *request.temperature;
  if (request.top_p) body["top_p"] = *request.top_p;

  httplib::Client http(scheme_host_port_);
  http.set_connection_timeout(timeout_);
  http.set_read_timeout(timeout_);
  httplib::Headers headers;
  if (!api_key_.empty()) {
    headers.emplace("Authorization", "Bearer " + api_key_);
  }
  const auto response = http.Post(path_prefix_ + "/chat/completions", headers,
                                  body.dump(), "application/json");
  if (!response) {
    throw ProviderError(
        "request failed: " + httplib::to_string(response.error()), true);
  }
  const int status = response->status;
  if (status != 200) {
    const bool transient = status == 408 || status == 429 || status >= 500;
    throw ProviderError("HTTP " + std::to_string(status) + ": " +
                            response->body.substr(0, 200),
                        transient);
  }
  try {
    const auto reply = nlohmann::json::parse(response->body);
    return reply.at("choices").at(0).at("message").at("content")
        .get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ProviderError(std::string("malformed response: ") + e.what(), false);
  }
}

}  // namespace fidaudit
