#pragma once

#include <memory>
#include <string>

namespace httplib {
class Server;
}

namespace ecp {

struct ServerOptions {
  std::string allow_origin = "*";
  std::string host = "127.0.0.1";
  int port = 8080;

  /// Reads ECP_ALLOW_ORIGIN and ECP_BIND ("host:port").
  static ServerOptions from_env();
};

struct HttpReply {
  int status = 200;
  std::string body;
};

/// Endpoint logic, independent of the socket layer. Request bodies carry the
/// spec either at top level or under "spec"; an optional "seq" is echoed.
HttpReply handle_check(const std::string& body);
HttpReply handle_curve(const std::string& body);
HttpReply handle_catalog(const std::string& seq);

/// A server with POST /api/check, POST /api/curve and GET /api/catalog
/// mounted, CORS headers included. Bind and listen are left to the caller.
std::unique_ptr<httplib::Server> make_server(const ServerOptions& options);

}  // namespace ecp
