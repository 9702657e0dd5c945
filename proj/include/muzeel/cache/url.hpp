#pragma once

#include <string>

namespace muzeel::cache {

struct UrlParts {
  std::string scheme;
  std::string host;
  int port = 0;          // 0 = scheme default
  std::string path;      // always starts with '/'
  std::string query;     // without '?', may be empty

  std::string origin() const;      // scheme://host[:port]
  std::string path_query() const;  // /path[?query]
  std::string full() const { return origin() + path_query(); }
};

bool parse_url(const std::string& url, UrlParts& out);

// Resolves an href against a base URL (absolute, scheme-relative,
// root-relative, and relative forms). Returns an empty string for
// unsupported schemes (mailto:, javascript:, data:).
std::string resolve_href(const UrlParts& base, const std::string& href);

// Filesystem-safe relative path for a resource URL ("index.html" for "/").
std::string local_path_for(const UrlParts& url);

}  // namespace muzeel::cache
