#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "baire/error.hpp"
#include "baire/extend.hpp"
#include "baire/game.hpp"

namespace baire::cli {

// Exit codes: 0 success, 1 usage or input error, 2 a negative or unknown
// verdict.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerdict = 2;

/// Inline JSON when the argument starts with '{' or '[', "-" for stdin,
/// otherwise a file path.
inline nlohmann::json load_json(const std::string& arg) {
  std::string text;
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
    text = arg;
  } else if (arg == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(arg);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, arg + ": " + e.what());
  }
}

inline std::uint64_t env_or(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    const auto n = std::stoull(v);
    if (n == 0) throw std::invalid_argument("zero");
    return n;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgument, std::string(name) + " must be a positive integer");
  }
}

/// Budget flags, seeded from BAIRE_MAX_ORDER, BAIRE_NODE_LIMIT and
/// BAIRE_VAR_LIMIT.
struct BudgetFlags {
  std::size_t max_order = 24;
  std::uint64_t node_limit = 200'000;
  std::size_t symmetric_degree = 5;
  std::size_t var_limit = 4;

  static BudgetFlags from_env() {
    BudgetFlags b;
    b.max_order = env_or("BAIRE_MAX_ORDER", b.max_order);
    b.node_limit = env_or("BAIRE_NODE_LIMIT", b.node_limit);
    b.var_limit = env_or("BAIRE_VAR_LIMIT", b.var_limit);
    return b;
  }

  ExtendBudget extend() const { return ExtendBudget{max_order, node_limit, symmetric_degree, false}; }
};

inline bool ci_mode() {
  const char* v = std::getenv("CI");
  return v && *v && std::string(v) != "0" && std::string(v) != "false";
}

inline void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace baire::cli
