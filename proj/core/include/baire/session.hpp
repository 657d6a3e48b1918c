#pragma once

// Human-vs-engine game sessions and the JSON message protocol spoken over
// `baire serve`. Every message carries {"version": 1, "kind": ...}.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "baire/game.hpp"

namespace baire {

inline constexpr int kProtocolVersion = 1;

struct SessionConfig {
  GameConfig game;
  Player human = Player::Eve;
  std::string engine = "odd-scheduler";  // odd-scheduler, random-legal or spoiler

  /// {"mode", "seed", "schedule", "human", "engine", "permissive",
  ///  "budget": {"maxOrder", "nodeLimit", "symmetricDegree", "varLimit"}}.
  static SessionConfig from_json(const nlohmann::json& j);
};

/// Odd engines draw from seed + 1 and Eve engines from seed, as `simulate`
/// does.
std::unique_ptr<Strategy> make_engine(const std::string& name, std::uint64_t seed);

class Session {
 public:
  Session(std::string id, SessionConfig cfg);

  const std::string& id() const { return id_; }
  const GameState& state() const { return state_; }
  bool finished() const { return resigned_; }

  /// Verdict message, then on acceptance the engine's reply and a fresh
  /// state. Throws NotYourTurn.
  std::vector<nlohmann::json> submit_move(const Move& m);
  nlohmann::json resign();
  /// The game transcript, identical to `simulate` output for the same moves.
  nlohmann::json snapshot() const;
  nlohmann::json state_message() const;

 private:
  std::vector<nlohmann::json> engine_turns();

  std::string id_;
  SessionConfig cfg_;
  GameState state_;
  std::unique_ptr<Strategy> engine_;
  bool resigned_ = false;
};

/// Owns sessions; each request is handled under the manager's lock, so a
/// session sees its requests one at a time.
class SessionManager {
 public:
  std::string create(const SessionConfig& cfg);

  /// Dispatches {"op": "create"|"move"|"resign"|"snapshot", ...} and returns
  /// the reply messages. Errors become {"kind": "error"} messages.
  std::vector<nlohmann::json> handle(const nlohmann::json& request);

  std::size_t size() const;

 private:
  Session& find(const std::string& id);

  mutable std::mutex mu_;
  std::map<std::string, std::unique_ptr<Session>> sessions_;
  std::size_t next_id_ = 1;
};

nlohmann::json message(const std::string& kind, nlohmann::json body = nlohmann::json::object());
nlohmann::json error_message(const Error& e);

}  // namespace baire
