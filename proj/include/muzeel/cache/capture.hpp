#pragma once

#include <memory>
#include <string>
#include <vector>

#include "muzeel/cache/snapshot.hpp"

namespace muzeel::cache {

class CaptureFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FetchResult {
  bool ok = false;
  int status = 0;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string content_type;
  std::string body;
  std::string error;
};

// Transport used by capture; tests inject a canned one.
class Fetcher {
 public:
  virtual ~Fetcher() = default;
  virtual FetchResult fetch(const std::string& url) = 0;
};

// Plain HTTP client over the vendored httplib.
std::unique_ptr<Fetcher> make_http_fetcher(int timeout_ms = 10000);

struct CaptureOptions {
  std::vector<std::string> first_party_domains;  // origin host is always first party
};

struct CaptureReport {
  std::vector<std::pair<std::string, std::string>> failures;  // url -> error (capture continues)
};

// Fetches the page and the resources its HTML references (scripts,
// stylesheets, images), classifies JavaScript as first- or third-party, and
// stores everything under |dir|. Third-party JS is stored but marked
// skip-by-default. Throws CaptureFailed when the page itself is unreachable.
Snapshot capture(const std::string& url, Fetcher& fetcher, const std::filesystem::path& dir,
                 const CaptureOptions& options, CaptureReport* report = nullptr);

}  // namespace muzeel::cache
