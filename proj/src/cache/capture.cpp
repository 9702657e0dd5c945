#include "muzeel/cache/capture.hpp"

#include <algorithm>
#include <set>

#include <httplib.h>

#include "muzeel/cache/url.hpp"
#include "muzeel/dom/dom.hpp"

namespace muzeel::cache {

namespace {

class HttpFetcher : public Fetcher {
 public:
  explicit HttpFetcher(int timeout_ms) : timeout_ms_(timeout_ms) {}

  FetchResult fetch(const std::string& url) override {
    FetchResult result;
    UrlParts parts;
    if (!parse_url(url, parts)) {
      result.error = "unparseable url";
      return result;
    }
    httplib::Client client(parts.origin());
    client.set_connection_timeout(0, timeout_ms_ * 1000);
    client.set_read_timeout(timeout_ms_ / 1000, (timeout_ms_ % 1000) * 1000);
    client.set_follow_location(true);
    auto res = client.Get(parts.path_query());
    if (!res) {
      result.error = httplib::to_string(res.error());
      return result;
    }
    result.ok = true;
    result.status = res->status;
    for (const auto& [k, v] : res->headers) {
      std::string key = k;
      std::transform(key.begin(), key.end(), key.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      if (key == "content-length" || key == "transfer-encoding" || key == "connection" ||
          key == "keep-alive" || key == "content-encoding") {
        continue;
      }
      if (key == "content-type") result.content_type = v;
      result.headers.emplace_back(key, v);
    }
    result.body = res->body;
    return result;
  }

 private:
  int timeout_ms_;
};

bool looks_like_js(const UrlParts& url, const std::string& content_type) {
  if (content_type.find("javascript") != std::string::npos) return true;
  if (content_type.find("ecmascript") != std::string::npos) return true;
  const std::string& p = url.path;
  return p.size() > 3 && (p.ends_with(".js") || p.ends_with(".mjs"));
}

bool looks_like_html(const std::string& content_type) {
  return content_type.find("text/html") != std::string::npos || content_type.empty();
}

// Resource references worth replaying: scripts, stylesheets, images, frames.
std::vector<std::string> referenced_urls(const dom::Document& doc, const UrlParts& base) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto* node : all_elements(doc)) {
    std::string href;
    if (node->tag == "script" || node->tag == "img" || node->tag == "iframe") {
      if (const auto* src = node->attr("src")) href = *src;
    } else if (node->tag == "link") {
      if (const auto* h = node->attr("href")) href = *h;
    }
    if (href.empty()) continue;
    std::string absolute = resolve_href(base, href);
    if (!absolute.empty() && seen.insert(absolute).second) out.push_back(absolute);
  }
  return out;
}

}  // namespace

std::unique_ptr<Fetcher> make_http_fetcher(int timeout_ms) {
  return std::make_unique<HttpFetcher>(timeout_ms);
}

Snapshot capture(const std::string& url, Fetcher& fetcher, const std::filesystem::path& dir,
                 const CaptureOptions& options, CaptureReport* report) {
  UrlParts origin;
  if (!parse_url(url, origin)) throw CaptureFailed("unparseable url " + url);

  FetchResult page = fetcher.fetch(origin.full());
  if (!page.ok) throw CaptureFailed("cannot fetch " + url + ": " + page.error);

  Snapshot snapshot = Snapshot::create(dir, origin.full(), options.first_party_domains);
  auto is_first_party = [&](const UrlParts& u) {
    if (u.host == origin.host) return true;
    for (const auto& d : options.first_party_domains) {
      if (u.host == d) return true;
    }
    return false;
  };

  auto add_entry = [&](const UrlParts& parts, const FetchResult& fetched) {
    ResourceEntry entry;
    entry.url = parts.full();
    entry.status = fetched.status;
    entry.headers = fetched.headers;
    entry.content_type = fetched.content_type;
    bool fp = is_first_party(parts);
    entry.first_party = fp;
    if (looks_like_js(parts, fetched.content_type)) {
      entry.kind = "js";
      entry.eligible = fp;
      if (!fp) entry.skip_reason = "third_party";
    } else if (looks_like_html(fetched.content_type)) {
      entry.kind = "html";
      entry.eligible = fp;
      if (!fp) entry.skip_reason = "third_party";
    } else {
      entry.kind = "other";
      entry.eligible = false;
    }
    entry.local_path = local_path_for(parts);
    entry.body_original = snapshot.put_blob(fetched.body);
    snapshot.entries().push_back(std::move(entry));
  };

  add_entry(origin, page);

  auto doc = dom::parse_html(page.body);
  for (const auto& resource_url : referenced_urls(doc, origin)) {
    UrlParts parts;
    if (!parse_url(resource_url, parts)) continue;
    FetchResult fetched = fetcher.fetch(resource_url);
    if (!fetched.ok) {
      if (report) report->failures.emplace_back(resource_url, fetched.error);
      continue;
    }
    add_entry(parts, fetched);
  }

  snapshot.save();
  return snapshot;
}

}  // namespace muzeel::cache
