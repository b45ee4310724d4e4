// HTTP front end for the design studio. Bind address from ECP_BIND
// (default 127.0.0.1:8080), CORS origin from ECP_ALLOW_ORIGIN.

#include <iostream>

#include <httplib.h>

#include "ecp/server.hpp"

int main() {
  const ecp::ServerOptions options = ecp::ServerOptions::from_env();
  auto server = ecp::make_server(options);
  std::cerr << "listening on " << options.host << ":" << options.port << "\n";
  if (!server->listen(options.host, options.port)) {
    std::cerr << "cannot bind " << options.host << ":" << options.port << "\n";
    return 1;
  }
  return 0;
}
