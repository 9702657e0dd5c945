#include "muzeel/cache/snapshot.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "muzeel/js/scanner.hpp"

namespace muzeel::cache {

using nlohmann::json;

const char* to_string(Variant variant) {
  switch (variant) {
    case Variant::kOriginal: return "original";
    case Variant::kInstrumented: return "instrumented";
    case Variant::kMuzeeled: return "muzeeled";
  }
  return "original";
}

std::optional<Variant> variant_from_string(const std::string& name) {
  if (name == "original") return Variant::kOriginal;
  if (name == "instrumented") return Variant::kInstrumented;
  if (name == "muzeeled") return Variant::kMuzeeled;
  return std::nullopt;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw SnapshotError("cannot write " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

Snapshot Snapshot::create(const std::filesystem::path& dir, const std::string& origin_url,
                          const std::vector<std::string>& first_party_domains) {
  Snapshot s;
  s.dir_ = dir;
  s.origin_url_ = origin_url;
  s.first_party_ = first_party_domains;
  std::filesystem::create_directories(dir / "blobs");
  std::filesystem::create_directories(dir / "meta");
  return s;
}

Snapshot Snapshot::open(const std::filesystem::path& dir) {
  json j = json::parse(read_file(dir / "manifest.json"));
  Snapshot s;
  s.dir_ = dir;
  s.origin_url_ = j.at("origin_url").get<std::string>();
  s.first_party_ = j.value("first_party", std::vector<std::string>{});
  for (const auto& e : j.at("entries")) {
    ResourceEntry r;
    r.url = e.at("url").get<std::string>();
    r.status = e.value("status", 200);
    for (const auto& h : e.value("headers", json::array())) {
      r.headers.emplace_back(h.at(0).get<std::string>(), h.at(1).get<std::string>());
    }
    r.content_type = e.value("content_type", "");
    r.kind = e.value("kind", "other");
    r.first_party = e.value("first_party", false);
    r.eligible = e.value("eligible", false);
    r.skip_reason = e.value("skip_reason", "");
    r.local_path = e.value("local_path", "");
    r.body_original = e.value("body_original", "");
    r.body_instrumented = e.value("body_instrumented", "");
    r.body_muzeeled = e.value("body_muzeeled", "");
    s.entries_.push_back(std::move(r));
  }
  return s;
}

ResourceEntry* Snapshot::find_by_url(const std::string& url) {
  for (auto& e : entries_) {
    if (e.url == url) return &e;
  }
  return nullptr;
}

std::string Snapshot::put_blob(const std::string& body) {
  std::string hash = sha256_hex(body);
  auto path = dir_ / "blobs" / hash;
  if (!std::filesystem::exists(path)) {
    write_file_atomic(path, body);
  }
  return hash;
}

std::string Snapshot::load_blob(const std::string& hash) const {
  return read_file(dir_ / "blobs" / hash);
}

void Snapshot::save() const {
  json j;
  j["schema_version"] = 1;
  j["origin_url"] = origin_url_;
  j["first_party"] = first_party_;
  j["entries"] = json::array();
  for (const auto& e : entries_) {
    json entry;
    entry["url"] = e.url;
    entry["status"] = e.status;
    entry["headers"] = json::array();
    for (const auto& [k, v] : e.headers) entry["headers"].push_back({k, v});
    entry["content_type"] = e.content_type;
    entry["kind"] = e.kind;
    entry["first_party"] = e.first_party;
    entry["eligible"] = e.eligible;
    if (!e.skip_reason.empty()) entry["skip_reason"] = e.skip_reason;
    entry["local_path"] = e.local_path;
    entry["body_original"] = e.body_original;
    if (!e.body_instrumented.empty()) entry["body_instrumented"] = e.body_instrumented;
    if (!e.body_muzeeled.empty()) entry["body_muzeeled"] = e.body_muzeeled;
    j["entries"].push_back(entry);
  }
  write_file_atomic(dir_ / "manifest.json", j.dump(1) + "\n");
}

std::filesystem::path Snapshot::meta_path(const std::string& name) const {
  return dir_ / "meta" / name;
}

void Snapshot::save_spans(
    const std::map<std::string, std::vector<js::FunctionSpan>>& spans_by_file) const {
  std::string out;
  for (const auto& [file, spans] : spans_by_file) {
    for (const auto& s : spans) {
      json line;
      line["file"] = s.file_name;
      line["start"] = s.start_line;
      line["end"] = s.end_line;
      line["kind"] = js::to_string(s.kind);
      out += line.dump() + "\n";
    }
    (void)file;
  }
  write_file_atomic(meta_path("spans.jsonl"), out);
}

std::map<std::string, std::vector<js::FunctionSpan>> Snapshot::load_spans() const {
  std::map<std::string, std::vector<js::FunctionSpan>> out;
  auto path = meta_path("spans.jsonl");
  if (!std::filesystem::exists(path)) return out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    js::FunctionSpan span;
    span.file_name = j.at("file").get<std::string>();
    span.start_line = j.at("start").get<int>();
    span.end_line = j.at("end").get<int>();
    span.kind = js::kind_from_string(j.value("kind", "declaration"));
    out[span.file_name].push_back(span);
  }
  return out;
}

void Snapshot::save_used(const js::UsedSet& used) const {
  json j = json::array();
  for (const auto& key : used.keys()) {
    j.push_back({{"file", key.file_name}, {"start", key.start_line}, {"end", key.end_line}});
  }
  write_file_atomic(meta_path("used.json"), j.dump(1) + "\n");
}

js::UsedSet Snapshot::load_used() const {
  js::UsedSet used;
  auto path = meta_path("used.json");
  if (!std::filesystem::exists(path)) return used;
  json j = json::parse(read_file(path));
  for (const auto& e : j) {
    used.insert(js::SpanKey(e.at("file").get<std::string>(), e.at("start").get<int>(),
                            e.at("end").get<int>()));
  }
  return used;
}

void promote(Snapshot& snapshot, const std::map<std::string, std::string>& rewritten) {
  // Validate everything first: the URL must exist and be eligible, and a JS
  // body must still scan cleanly.
  for (const auto& [url, body] : rewritten) {
    ResourceEntry* entry = snapshot.find_by_url(url);
    if (!entry) throw ValidationError("promotion covers unknown url " + url);
    if (!entry->eligible) throw ValidationError("promotion touches ineligible url " + url);
    if (entry->kind == "js") {
      try {
        js::scan_functions(body, entry->local_path);
      } catch (const js::ParseError& e) {
        throw ValidationError("rewritten body for " + url + " does not parse: " + e.what());
      }
    }
  }
  // Stage bodies (content-addressed; orphan blobs are harmless), then one
  // manifest rewrite makes the variant visible.
  for (const auto& [url, body] : rewritten) {
    snapshot.find_by_url(url)->body_muzeeled = snapshot.put_blob(body);
  }
  snapshot.save();
}

}  // namespace muzeel::cache
