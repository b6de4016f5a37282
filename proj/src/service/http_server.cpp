#include "dam/service/http_server.hpp"

#include <cstdlib>

#include <httplib.h>

#include "dam/errors.hpp"

namespace dam::service {

int resolve_port(std::optional<int> flag) {
  if (flag) return *flag;
  const char* env = std::getenv(kPortEnvVar);
  if (env == nullptr || *env == '\0') return kDefaultPort;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v <= 0 || v > 65535) {
    throw ArgumentError(std::string(kPortEnvVar) + " is not a valid port: '" + env + "'");
  }
  return static_cast<int>(v);
}

struct HttpServer::Impl {
  httplib::Server server;
};

namespace {

void send(httplib::Response& res, const Response& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

}  // namespace

HttpServer::HttpServer(InferenceService& service) : impl_(std::make_unique<Impl>()) {
  auto& s = impl_->server;
  s.Post("/predict", [&service](const httplib::Request& req, httplib::Response& res) {
    send(res, service.predict(req.body));
  });
  s.Post("/explain", [&service](const httplib::Request& req, httplib::Response& res) {
    send(res, service.explain(req.body));
  });
  s.Post("/feedback", [&service](const httplib::Request& req, httplib::Response& res) {
    send(res, service.feedback(req.body));
  });
  s.Get("/health", [&service](const httplib::Request&, httplib::Response& res) {
    send(res, service.health());
  });
}

HttpServer::~HttpServer() = default;

bool HttpServer::listen(const std::string& host, int port) {
  return impl_->server.listen(host, port);
}

int HttpServer::bind_any_port(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool HttpServer::listen_after_bind() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace dam::service
