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

#include "http_client.h"

#include <algorithm>

// CPPHTTPLIB_OPENSSL_SUPPORT is set by the build for this file only.
#include "httplib.h"

#include "advforge/error.h"

namespace advforge::internal {

std::string Url::Origin() const {
  return scheme + "://" + host + ":" + std::to_string(port);
}

Url ParseUrl(std::string_view url) {
  Url out;
  const std::size_t sep = url.find("://");
  if (sep == std::string_view::npos) {
    throw NetworkError("not an absolute URL: " + std::string(url));
  }
  out.scheme = std::string(url.substr(0, sep));
  if (out.scheme != "http" && out.scheme != "https") {
    throw NetworkError("unsupported URL scheme: " + std::string(url));
  }
  std::string_view rest = url.substr(sep + 3);
  // std::find rather than string_view::find: GCC 11 misreports the latter
  // under -Wstringop-overread.
  const auto slash_it = std::find(rest.begin(), rest.end(), '/');
  const std::size_t slash = slash_it == rest.end()
                                ? std::string_view::npos
                                : static_cast<std::size_t>(slash_it - rest.begin());
  std::string_view authority = rest.substr(0, slash);
  out.path = slash == std::string_view::npos ? "/" : std::string(rest.substr(slash));
  const std::size_t colon = authority.rfind(':');
  if (colon != std::string_view::npos &&
      authority.find(']') == std::string_view::npos) {
    out.host = std::string(authority.substr(0, colon));
    try {
      out.port = std::stoi(std::string(authority.substr(colon + 1)));
    } catch (const std::exception&) {
      throw NetworkError("bad port in URL: " + std::string(url));
    }
  } else {
    out.host = std::string(authority);
    out.port = out.scheme == "https" ? 443 : 80;
  }
  if (out.host.empty()) {
    throw NetworkError("missing host in URL: " + std::string(url));
  }
  return out;
}

std::string JoinUrl(std::string_view base, std::string_view path) {
  std::string out(base);
  while (!out.empty() && out.back() == '/') out.pop_back();
  if (path.empty() || path.front() != '/') out.push_back('/');
  out += path;
  return out;
}

namespace {

template <typename Fn>
HttpResponse Send(const std::string& url, std::chrono::milliseconds timeout,
                  Fn&& fn) {
  const Url parsed = ParseUrl(url);
  httplib::Client client(parsed.Origin());
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  httplib::Result res = fn(client, parsed.path);
  if (!res) {
    throw NetworkError(url + ": " + httplib::to_string(res.error()));
  }
  return {res->status, res->body};
}

}  // namespace

HttpResponse HttpGet(const std::string& url,
                     std::chrono::milliseconds timeout) {
  return Send(url, timeout, [](httplib::Client& c, const std::string& path) {
    return c.Get(path);
  });
}

HttpResponse HttpPostJson(const std::string& url, const std::string& body,
                          std::chrono::milliseconds timeout) {
  return Send(url, timeout,
              [&body](httplib::Client& c, const std::string& path) {
                return c.Post(path, body, "application/json");
              });
}

}  // namespace advforge::internal
