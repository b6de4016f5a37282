#pragma once

#include <memory>
#include <optional>
#include <string>

#include "dam/service/inference.hpp"

namespace dam::service {

inline constexpr const char* kPortEnvVar = "DAM_PORT";
inline constexpr int kDefaultPort = 8080;

// --port wins, then $DAM_PORT, then kDefaultPort. Throws ArgumentError for a
// malformed environment value.
int resolve_port(std::optional<int> flag);

/// POST /predict, /explain, /feedback and GET /health over cpp-httplib.
class HttpServer {
 public:
  explicit HttpServer(InferenceService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Blocks until stop().
  bool listen(const std::string& host, int port);
  // Binds an ephemeral port and returns it; follow with listen_after_bind().
  int bind_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace dam::service
