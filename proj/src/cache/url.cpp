#include "muzeel/cache/url.hpp"

#include <algorithm>
#include <cctype>

namespace muzeel::cache {

std::string UrlParts::origin() const {
  std::string out = scheme + "://" + host;
  if (port != 0) out += ":" + std::to_string(port);
  return out;
}

std::string UrlParts::path_query() const {
  std::string out = path.empty() ? "/" : path;
  if (!query.empty()) out += "?" + query;
  return out;
}

bool parse_url(const std::string& url, UrlParts& out) {
  size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) return false;
  out.scheme = url.substr(0, scheme_end);
  std::transform(out.scheme.begin(), out.scheme.end(), out.scheme.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (out.scheme != "http" && out.scheme != "https") return false;

  size_t host_start = scheme_end + 3;
  size_t path_start = url.find_first_of("/?#", host_start);
  std::string authority =
      url.substr(host_start, path_start == std::string::npos ? std::string::npos
                                                             : path_start - host_start);
  size_t colon = authority.rfind(':');
  if (colon != std::string::npos && colon + 1 < authority.size() &&
      std::all_of(authority.begin() + colon + 1, authority.end(),
                  [](unsigned char c) { return std::isdigit(c); })) {
    out.host = authority.substr(0, colon);
    out.port = std::stoi(authority.substr(colon + 1));
  } else {
    out.host = authority;
    out.port = 0;
  }
  if (out.host.empty()) return false;

  out.path = "/";
  out.query.clear();
  if (path_start != std::string::npos && url[path_start] != '#') {
    std::string rest = url.substr(path_start);
    size_t hash = rest.find('#');
    if (hash != std::string::npos) rest = rest.substr(0, hash);
    size_t q = rest.find('?');
    if (q != std::string::npos) {
      out.path = rest.substr(0, q);
      out.query = rest.substr(q + 1);
    } else {
      out.path = rest;
    }
    if (out.path.empty() || out.path[0] == '?') out.path = "/";
  }
  return true;
}

std::string resolve_href(const UrlParts& base, const std::string& href) {
  if (href.empty()) return "";
  if (href.rfind("javascript:", 0) == 0 || href.rfind("mailto:", 0) == 0 ||
      href.rfind("data:", 0) == 0 || href[0] == '#') {
    return "";
  }
  UrlParts absolute;
  if (parse_url(href, absolute)) return absolute.full();
  if (href.find("://") != std::string::npos) return "";  // unsupported scheme

  if (href.rfind("//", 0) == 0) return base.scheme + ":" + href;
  if (href[0] == '/') return base.origin() + href;

  // Relative to the base path's directory.
  std::string dir = base.path;
  size_t slash = dir.rfind('/');
  dir = slash == std::string::npos ? "/" : dir.substr(0, slash + 1);
  std::string combined = dir + href;
  // Collapse ./ and ../ segments.
  std::vector<std::string> parts;
  size_t i = 0;
  while (i <= combined.size()) {
    size_t next = combined.find('/', i);
    std::string seg = combined.substr(i, next == std::string::npos ? std::string::npos : next - i);
    if (seg == "..") {
      if (!parts.empty()) parts.pop_back();
    } else if (!seg.empty() && seg != ".") {
      parts.push_back(seg);
    }
    if (next == std::string::npos) break;
    i = next + 1;
  }
  std::string path;
  for (const auto& p : parts) path += "/" + p;
  if (path.empty()) path = "/";
  return base.origin() + path;
}

std::string local_path_for(const UrlParts& url) {
  std::string p = url.path;
  if (p == "/" || p.empty()) return "index.html";
  if (p[0] == '/') p = p.substr(1);
  if (!p.empty() && p.back() == '/') p += "index.html";
  std::string out;
  for (char c : p) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_' ||
        c == '/') {
      out += c;
    } else {
      out += '_';
    }
  }
  if (!url.query.empty()) {
    out += "_q_";
    for (char c : url.query) {
      out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    }
  }
  return out;
}

}  // namespace muzeel::cache
