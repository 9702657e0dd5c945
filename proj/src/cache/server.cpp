#include "muzeel/cache/server.hpp"

#include <map>

#include <httplib.h>

#include "muzeel/cache/url.hpp"

namespace muzeel::cache {

struct EdgeServer::Impl {
  Snapshot snapshot;
  Variant variant;
  httplib::Server server;
  std::thread thread;
  mutable std::mutex mutex;
  std::vector<std::string> misses;

  // path?query -> entry indices; the origin host's entry sorts first.
  std::map<std::string, std::vector<size_t>> routes;

  Impl(Snapshot snap, Variant v) : snapshot(std::move(snap)), variant(v) {
    UrlParts origin;
    parse_url(snapshot.origin_url(), origin);
    for (size_t i = 0; i < snapshot.entries().size(); ++i) {
      UrlParts parts;
      if (!parse_url(snapshot.entries()[i].url, parts)) continue;
      auto& bucket = routes[parts.path_query()];
      if (parts.host == origin.host) {
        bucket.insert(bucket.begin(), i);
      } else {
        bucket.push_back(i);
      }
    }
  }

  void handle(const httplib::Request& req, httplib::Response& res) {
    std::string target = req.target.empty() ? req.path : req.target;
    auto it = routes.find(target);
    if (it == routes.end() && target != req.path) it = routes.find(req.path);
    if (it == routes.end()) {
      {
        std::lock_guard<std::mutex> lock(mutex);
        misses.push_back(target);
      }
      res.status = 404;
      res.set_content("not in snapshot", "text/plain");
      return;
    }
    const ResourceEntry& entry = snapshot.entries()[it->second.front()];
    res.status = entry.status;
    for (const auto& [k, v] : entry.headers) {
      if (k == "content-type") continue;  // set_content owns it
      res.set_header(k, v);
    }
    std::string body = snapshot.load_blob(entry.body_for(variant));
    res.set_content(body, entry.content_type.empty() ? "application/octet-stream"
                                                     : entry.content_type.c_str());
  }
};

EdgeServer::EdgeServer(Snapshot snapshot, Variant variant)
    : impl_(std::make_unique<Impl>(std::move(snapshot), variant)) {}

EdgeServer::~EdgeServer() { stop(); }

int EdgeServer::start(int port) {
  impl_->server.Get(".*", [this](const httplib::Request& req, httplib::Response& res) {
    impl_->handle(req, res);
  });
  if (port == 0) {
    port_ = impl_->server.bind_to_any_port("127.0.0.1");
    if (port_ <= 0) throw PortBindError("cannot bind a local port");
  } else {
    if (!impl_->server.bind_to_port("127.0.0.1", port)) {
      throw PortBindError("cannot bind port " + std::to_string(port));
    }
    port_ = port;
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port_;
}

void EdgeServer::stop() {
  if (impl_ && impl_->thread.joinable()) {
    impl_->server.stop();
    impl_->thread.join();
  }
}

std::vector<std::string> EdgeServer::misses() const {
  std::lock_guard<std::mutex> lock(impl_->mutex);
  return impl_->misses;
}

}  // namespace muzeel::cache
