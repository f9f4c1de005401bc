//
// Copyright 2026 The AdvForge Authors
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

#ifndef ADVFORGE_SRC_HTTP_CLIENT_H_
#define ADVFORGE_SRC_HTTP_CLIENT_H_

#include <chrono>
#include <string>
#include <string_view>

namespace advforge::internal {

struct Url {
  std::string scheme;  // "http" or "https"
  std::string host;
  int port = 0;
  std::string path;  // always begins with '/'

  // scheme://host:port
  std::string Origin() const;
};

// Throws NetworkError on anything that is not an absolute http(s) URL.
Url ParseUrl(std::string_view url);

// Joins a base URL (possibly with a path prefix) and an endpoint path.
std::string JoinUrl(std::string_view base, std::string_view path);

struct HttpResponse {
  int status = 0;
  std::string body;
};

// One blocking request on a fresh connection. Transport failures (refused,
// timeout, TLS) throw NetworkError naming the URL; HTTP error statuses are
// returned to the caller.
HttpResponse HttpGet(const std::string& url,
                     std::chrono::milliseconds timeout);
HttpResponse HttpPostJson(const std::string& url, const std::string& body,
                          std::chrono::milliseconds timeout);

}  // namespace advforge::internal

#endif  // ADVFORGE_SRC_HTTP_CLIENT_H_
