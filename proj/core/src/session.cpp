#include "baire/session.hpp"

namespace baire {

nlohmann::json message(const std::string& kind, nlohmann::json body) {
  body["version"] = kProtocolVersion;
  body["kind"] = kind;
  return body;
}

nlohmann::json error_message(const Error& e) {
  return message("error", {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}});
}

SessionConfig SessionConfig::from_json(const nlohmann::json& j) {
  SessionConfig c;
  try {
    if (j.contains("mode")) c.game.mode = mode_from_string(j.at("mode").get<std::string>());
    if (j.contains("seed")) c.game.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("schedule")) c.game.schedule = parse_schedule(j.at("schedule"), &c.game.mode);
    if (j.contains("permissive")) c.game.permissive = j.at("permissive").get<bool>();
    if (j.contains("human")) {
      const auto h = j.at("human").get<std::string>();
      if (h != "eve" && h != "odd") throw Error(ErrorKind::InvalidArgument, "human must be 'eve' or 'odd'");
      c.human = h == "eve" ? Player::Eve : Player::Odd;
    }
    if (j.contains("engine")) c.engine = j.at("engine").get<std::string>();
    if (j.contains("budget")) {
      const auto& b = j.at("budget");
      c.game.budget.max_order = b.value("maxOrder", c.game.budget.max_order);
      c.game.budget.node_limit = b.value("nodeLimit", c.game.budget.node_limit);
      c.game.budget.symmetric_degree = b.value("symmetricDegree", c.game.budget.symmetric_degree);
      c.game.var_limit = b.value("varLimit", c.game.var_limit);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("bad session config: ") + e.what());
  }
  if (c.game.budget.max_order == 0 || c.game.budget.node_limit == 0 || c.game.var_limit == 0) {
    throw Error(ErrorKind::InvalidArgument, "budgets must be positive");
  }
  make_engine(c.engine, 0);
  return c;
}

std::unique_ptr<Strategy> make_engine(const std::string& name, std::uint64_t seed) {
  if (name == "odd-scheduler") return odd_scheduler();
  if (name == "random-legal") return random_legal(seed);
  if (name == "spoiler") return spoiler(seed);
  throw Error(ErrorKind::InvalidArgument, "unknown engine '" + name + "'");
}

Session::Session(std::string id, SessionConfig cfg)
    : id_(std::move(id)), cfg_(std::move(cfg)), state_(cfg_.game),
      engine_(make_engine(cfg_.engine, cfg_.game.seed + (cfg_.human == Player::Eve ? 1 : 0))) {
  engine_turns();
}

std::vector<nlohmann::json> Session::engine_turns() {
  std::vector<nlohmann::json> out;
  while (!resigned_ && state_.to_move() != cfg_.human) {
    const Player mover = state_.to_move();
    StrategyMove sm;
    try {
      sm = engine_->next_move(state_);
    } catch (const StrategyFault&) {
      throw;
    } catch (const Error& e) {
      throw StrategyFault(mover, state_.step, e.what());
    }
    auto r = legal(state_, sm.move, sm.witness);
    if (r.kind != Legality::Legal) throw StrategyFault(mover, state_.step, r.reason);
    const auto step = state_.step;
    state_ = apply(std::move(state_), sm.move, r, sm.hints);
    out.push_back(message("move", {{"step", step}, {"mover", std::string(to_string(mover))}, {"cells", sm.move.cells}}));
  }
  return out;
}

std::vector<nlohmann::json> Session::submit_move(const Move& m) {
  if (resigned_) throw Error(ErrorKind::NotYourTurn, "the game is over");
  if (state_.to_move() != cfg_.human) throw Error(ErrorKind::NotYourTurn, "it is the engine's turn");
  auto r = legal(state_, m);
  nlohmann::json verdict{{"verdict", std::string(to_string(r.kind))}, {"step", state_.step}};
  if (!r.reason.empty()) verdict["reason"] = r.reason;
  if (r.kind != Legality::Legal) verdict["rule"] = r.rule;
  if (r.certificate) {
    verdict["certificate"] = *r.certificate;
    verdict["rendered"] = render_certificate(*r.certificate);
  }
  const bool admitted = r.kind == Legality::Legal || (r.kind == Legality::Unknown && cfg_.game.permissive);
  std::vector<nlohmann::json> out{message("verdict", verdict)};
  if (!admitted) return out;
  state_ = apply(std::move(state_), m, r);
  for (auto& msg : engine_turns()) out.push_back(std::move(msg));
  out.push_back(message("monitors", {{"monitors", monitors_json(state_.monitors)}}));
  out.push_back(state_message());
  return out;
}

nlohmann::json Session::resign() {
  resigned_ = true;
  auto s = state_message();
  s["resigned"] = std::string(to_string(cfg_.human));
  return s;
}

nlohmann::json Session::snapshot() const {
  const std::string human = "human";
  const std::string engine = engine_->name();
  return cfg_.human == Player::Eve ? transcript_json(state_, human, engine) : transcript_json(state_, engine, human);
}

nlohmann::json Session::state_message() const {
  return message("state", {{"session", id_},
                           {"step", state_.step},
                           {"toMove", std::string(to_string(state_.to_move()))},
                           {"human", std::string(to_string(cfg_.human))},
                           {"mode", std::string(to_string(state_.mode()))},
                           {"cells", state_.table.cells()},
                           {"blockBound", state_.step + 1},
                           {"finished", resigned_},
                           {"monitors", monitors_json(state_.monitors)}});
}

std::string SessionManager::create(const SessionConfig& cfg) {
  std::lock_guard lock(mu_);
  std::string id = "s" + std::to_string(next_id_++);
  sessions_.emplace(id, std::make_unique<Session>(id, cfg));
  return id;
}

std::size_t SessionManager::size() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

Session& SessionManager::find(const std::string& id) {
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorKind::SessionNotFound, "no session '" + id + "'");
  return *it->second;
}

std::vector<nlohmann::json> SessionManager::handle(const nlohmann::json& request) {
  try {
    if (!request.is_object() || !request.contains("op")) throw Error(ErrorKind::ParseError, "request needs an 'op'");
    if (request.contains("version") && request.at("version") != kProtocolVersion) {
      throw Error(ErrorKind::InvalidArgument, "unsupported protocol version " + request.at("version").dump());
    }
    const auto op = request.at("op").get<std::string>();
    if (op == "create") {
      const auto cfg = SessionConfig::from_json(request.value("config", nlohmann::json::object()));
      const auto id = create(cfg);
      std::lock_guard lock(mu_);
      return {find(id).state_message()};
    }
    std::lock_guard lock(mu_);
    auto& s = find(request.value("session", std::string{}));
    if (op == "move") {
      Move m;
      try {
        m = request.get<Move>();
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("bad move: ") + e.what());
      }
      return s.submit_move(m);
    }
    if (op == "resign") return {s.resign()};
    if (op == "snapshot") return {message("snapshot", {{"transcript", s.snapshot()}})};
    if (op == "state") return {s.state_message()};
    throw Error(ErrorKind::InvalidArgument, "unknown op '" + op + "'");
  } catch (const Error& e) {
    return {error_message(e)};
  } catch (const nlohmann::json::exception& e) {
    return {error_message(Error(ErrorKind::ParseError, e.what()))};
  }
}

}  // namespace baire
