#include "serve.hpp"

#include <iostream>

#include <httplib.h>

#include "baire/session.hpp"
#include "cli_common.hpp"

namespace baire::cli {

namespace {

nlohmann::json with_default_seed(nlohmann::json request, const ServeArgs& args) {
  if (args.seed && request.is_object() && request.value("op", "") == "create") {
    auto& cfg = request["config"];
    if (!cfg.is_object()) cfg = nlohmann::json::object();
    if (!cfg.contains("seed")) cfg["seed"] = *args.seed;
  }
  return request;
}

std::vector<nlohmann::json> dispatch(SessionManager& mgr, const std::string& body, const ServeArgs& args) {
  nlohmann::json request;
  try {
    request = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    return {error_message(Error(ErrorKind::ParseError, e.what()))};
  }
  return mgr.handle(with_default_seed(std::move(request), args));
}

int serve_stdio(const ServeArgs& args) {
  SessionManager mgr;
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.empty()) continue;
    for (const auto& msg : dispatch(mgr, line, args)) std::cout << msg.dump() << "\n";
    std::cout.flush();
  }
  return kExitOk;
}

int serve_http(const ServeArgs& args) {
  SessionManager mgr;
  httplib::Server server;
  server.Post("/api", [&](const httplib::Request& req, httplib::Response& res) {
    res.set_content(nlohmann::json(dispatch(mgr, req.body, args)).dump(), "application/json");
  });
  server.Get("/health", [&](const httplib::Request&, httplib::Response& res) {
    res.set_content(nlohmann::json{{"version", kProtocolVersion}, {"sessions", mgr.size()}}.dump(),
                    "application/json");
  });
  std::cerr << "listening on " << args.host << ":" << *args.port << "\n";
  if (!server.listen(args.host, *args.port)) {
    std::cerr << "cannot bind " << args.host << ":" << *args.port << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace

int serve(const ServeArgs& args) { return args.port ? serve_http(args) : serve_stdio(args); }

}  // namespace baire::cli
