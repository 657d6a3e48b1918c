#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace baire::cli {

struct ServeArgs {
  std::optional<int> port;
  std::string host = "127.0.0.1";
  std::optional<std::uint64_t> seed;
};

/// stdio: one request per line in, one reply message per line out.
/// HTTP: POST /api with a request body, reply is a JSON array of messages.
int serve(const ServeArgs& args);

}  // namespace baire::cli
