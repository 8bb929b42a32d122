#include <chrono>
#include <csignal>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <httplib.h>

// Loopback stand-in for a function gateway: accepts any function name and
// echoes the request body after an optional fixed delay. Useful for
// exercising the live driver without a cluster.
int main(int argc, char** argv) {
  CLI::App app{"loopback function gateway stub"};
  std::string host = "127.0.0.1";
  int port = 8080;
  int delay_ms = 0;
  app.add_option("--host", host, "bind address");
  app.add_option("--port", port, "listen port");
  app.add_option("--delay-ms", delay_ms, "fixed service delay per request");
  CLI11_PARSE(app, argc, argv);

  httplib::Server server;
  server.Post(R"(/function/(.+))", [&](const httplib::Request& req,
                                       httplib::Response& res) {
    if (delay_ms > 0)
      std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
    res.set_content(req.body.empty() ? std::string("{}") : req.body,
                    "application/json");
  });
  server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("ok", "text/plain");
  });

  std::cout << "listening on " << host << ":" << port << std::endl;
  if (!server.listen(host, port)) {
    std::cerr << "error: cannot bind " << host << ":" << port << "\n";
    return 3;
  }
  return 0;
}
