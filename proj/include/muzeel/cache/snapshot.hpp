#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "muzeel/js/span.hpp"

namespace muzeel::cache {

enum class Variant { kOriginal, kInstrumented, kMuzeeled };

const char* to_string(Variant variant);
std::optional<Variant> variant_from_string(const std::string& name);

class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Promotion input failed validation; the snapshot is left untouched.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ResourceEntry {
  std::string url;  // full absolute URL, query included
  int status = 200;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string content_type;
  std::string kind;  // "html" | "js" | "other"
  bool first_party = false;
  bool eligible = false;       // rewriting may touch it (first-party js/html)
  std::string skip_reason;     // why rewriting left it alone
  std::string local_path;      // stable name; function spans key off it
  std::string body_original;   // blob hashes
  std::string body_instrumented;
  std::string body_muzeeled;

  const std::string& body_for(Variant variant) const {
    if (variant == Variant::kInstrumented && !body_instrumented.empty()) {
      return body_instrumented;
    }
    if (variant == Variant::kMuzeeled && !body_muzeeled.empty()) return body_muzeeled;
    return body_original;
  }
};

// One captured page on disk: manifest.json, content-addressed bodies under
// blobs/, and pipeline outputs under meta/ (spans sidecar, used set, tree,
// report). All variants of a resource share the spans sidecar.
class Snapshot {
 public:
  static Snapshot create(const std::filesystem::path& dir, const std::string& origin_url,
                         const std::vector<std::string>& first_party_domains);
  static Snapshot open(const std::filesystem::path& dir);

  const std::filesystem::path& dir() const { return dir_; }
  const std::string& origin_url() const { return origin_url_; }
  const std::vector<std::string>& first_party_domains() const { return first_party_; }

  std::vector<ResourceEntry>& entries() { return entries_; }
  const std::vector<ResourceEntry>& entries() const { return entries_; }
  ResourceEntry* find_by_url(const std::string& url);

  // Stores a body (content-addressed) and returns its hash.
  std::string put_blob(const std::string& body);
  std::string load_blob(const std::string& hash) const;

  // Atomic manifest rewrite (temp file + rename).
  void save() const;

  // Spans sidecar: one record per span, line-delimited.
  void save_spans(const std::map<std::string, std::vector<js::FunctionSpan>>& spans_by_file) const;
  std::map<std::string, std::vector<js::FunctionSpan>> load_spans() const;

  void save_used(const js::UsedSet& used) const;
  js::UsedSet load_used() const;

  std::filesystem::path meta_path(const std::string& name) const;

 private:
  std::filesystem::path dir_;
  std::string origin_url_;
  std::vector<std::string> first_party_;
  std::vector<ResourceEntry> entries_;
};

// Replaces the muzeeled variant of every listed resource in one step: all
// bodies are validated and staged first, the manifest is rewritten once.
// rewritten maps resource URL -> new body.
void promote(Snapshot& snapshot, const std::map<std::string, std::string>& rewritten);

std::string sha256_hex(std::string_view data);

}  // namespace muzeel::cache
