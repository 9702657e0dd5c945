#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "muzeel/cache/snapshot.hpp"

namespace muzeel::cache {

class PortBindError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Serves one snapshot over plain HTTP on localhost, playing the CDN-edge
// role. Requests are matched on path+query against the manifest (the origin
// host wins when several captured hosts share a path); bodies come from the
// selected variant with content-length recomputed. Unmatched requests get a
// 404 and a logged miss.
class EdgeServer {
 public:
  EdgeServer(Snapshot snapshot, Variant variant);
  ~EdgeServer();

  // Binds and serves on a background thread. port 0 picks a free port.
  // Returns the bound port.
  int start(int port = 0);
  void stop();

  int port() const { return port_; }
  std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_); }

  std::vector<std::string> misses() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = 0;
};

}  // namespace muzeel::cache
