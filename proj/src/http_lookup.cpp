#include <cstdlib>
#include <chrono>
#include <thread>

#include "httplib.h"
#include "ldql/executor.h"

namespace ldql {

namespace {

struct SplitUri {
  std::string origin;  // scheme://host[:port]
  std::string host;
  std::string path;
};

// Minimal absolute-URI splitter; anything unparsable is not retrievable.
std::optional<SplitUri> split_uri(const std::string& uri) {
  auto scheme_end = uri.find("://");
  if (scheme_end == std::string::npos) return std::nullopt;
  std::string scheme = uri.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") return std::nullopt;
  auto path_start = uri.find('/', scheme_end + 3);
  SplitUri out;
  if (path_start == std::string::npos) {
    out.origin = uri;
    out.path = "/";
  } else {
    out.origin = uri.substr(0, path_start);
    out.path = uri.substr(path_start);
  }
  out.host = out.origin.substr(scheme_end + 3);
  if (out.host.empty()) return std::nullopt;
  return out;
}

std::string resolve_location(const SplitUri& base, const std::string& location) {
  if (location.rfind("http://", 0) == 0 || location.rfind("https://", 0) == 0) {
    return location;
  }
  if (!location.empty() && location[0] == '/') return base.origin + location;
  return base.origin + "/" + location;
}

std::int64_t now_millis() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// http_proxy / HTTP_PROXY passthrough, as host and port.
std::optional<std::pair<std::string, int>> proxy_from_env() {
  const char* raw = std::getenv("http_proxy");
  if (!raw) raw = std::getenv("HTTP_PROXY");
  if (!raw || !*raw) return std::nullopt;
  auto split = split_uri(raw);
  std::string host = split ? split->host : std::string(raw);
  int port = 80;
  auto colon = host.rfind(':');
  if (colon != std::string::npos) {
    try {
      port = std::stoi(host.substr(colon + 1));
      host = host.substr(0, colon);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  if (host.empty()) return std::nullopt;
  return std::make_pair(host, port);
}

}  // namespace

std::optional<Document> HttpLookup::fetch(const std::string& uri) {
  std::string current = uri;
  for (int hop = 0; hop <= options_.max_redirects; ++hop) {
    auto split = split_uri(current);
    if (!split) return std::nullopt;
    if (options_.per_host_delay_millis > 0) {
      auto it = last_request_ms_.find(split->host);
      if (it != last_request_ms_.end()) {
        std::int64_t wait = it->second + options_.per_host_delay_millis - now_millis();
        if (wait > 0) std::this_thread::sleep_for(std::chrono::milliseconds(wait));
      }
    }
    httplib::Client client(split->origin);
    client.set_connection_timeout(options_.timeout_seconds, 0);
    client.set_read_timeout(options_.timeout_seconds, 0);
    client.set_follow_location(false);
    if (auto proxy = proxy_from_env()) {
      client.set_proxy(proxy->first, proxy->second);
    }
    httplib::Headers headers = {
        {"Accept", "application/n-triples, text/plain;q=0.9"},
    };
    auto res = client.Get(split->path, headers);
    last_request_ms_[split->host] = now_millis();
    if (!res) return std::nullopt;
    if (res->status >= 300 && res->status < 400) {
      auto location = res->get_header_value("Location");
      if (location.empty()) return std::nullopt;
      current = resolve_location(*split, location);
      continue;
    }
    if (res->status < 200 || res->status >= 300) return std::nullopt;
    try {
      // The document is authoritative for the request URI, pre-redirect.
      return Document{uri, parse_ntriples(res->body, uri)};
    } catch (const FixtureError&) {
      return std::nullopt;
    }
  }
  return std::nullopt;  // redirect chain too deep
}

}  // namespace ldql
