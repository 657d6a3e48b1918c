#include "baire/game.hpp"

#include <algorithm>
#include <sstream>

#include "baire/catalog.hpp"

namespace baire {

std::string_view to_string(Player p) { return p == Player::Eve ? "eve" : "odd"; }

std::string_view to_string(Mode m) { return m == Mode::General ? "general" : "abelian"; }

Mode mode_from_string(std::string_view s) {
  if (s == "general") return Mode::General;
  if (s == "abelian") return Mode::Abelian;
  throw Error(ErrorKind::ParseError, "mode must be 'general' or 'abelian'");
}

std::string_view to_string(MonitorStatus s) {
  switch (s) {
    case MonitorStatus::Pending: return "pending";
    case MonitorStatus::Achieved: return "achieved";
    case MonitorStatus::Impossible: return "impossible";
  }
  return "pending";
}

std::string_view to_string(Legality l) {
  switch (l) {
    case Legality::Legal: return "legal";
    case Legality::Illegal: return "illegal";
    case Legality::Unknown: return "unknown";
  }
  return "unknown";
}

std::uint64_t group_order(const WitnessGroup& g) {
  if (const auto* f = std::get_if<FinGroup>(&g)) return f->order();
  return std::get<FinAbelian>(g).order();
}

Label group_mul(const WitnessGroup& g, Label a, Label b) {
  if (const auto* f = std::get_if<FinGroup>(&g)) return f->mul(a, b);
  const auto& h = std::get<FinAbelian>(g);
  std::uint64_t ra = a - 1, rb = b - 1, out = 0, stride = 1;
  for (auto q : h.factors) {
    out += ((ra % q) + (rb % q)) % q * stride;
    ra /= q;
    rb /= q;
    stride *= q;
  }
  return static_cast<Label>(out + 1);
}

Label group_inv(const WitnessGroup& g, Label a) {
  if (const auto* f = std::get_if<FinGroup>(&g)) return f->inv(a);
  const auto& h = std::get<FinAbelian>(g);
  std::uint64_t ra = a - 1, out = 0, stride = 1;
  for (auto q : h.factors) {
    out += (q - ra % q) % q * stride;
    ra /= q;
    stride *= q;
  }
  return static_cast<Label>(out + 1);
}

std::string group_name(const WitnessGroup& g) {
  if (const auto* f = std::get_if<FinGroup>(&g)) return f->name().empty() ? "G" + std::to_string(f->order()) : f->name();
  return std::get<FinAbelian>(g).name();
}

bool group_is_abelian(const WitnessGroup& g) {
  if (const auto* f = std::get_if<FinGroup>(&g)) return f->is_abelian();
  return true;
}

FinGroup group_table(const WitnessGroup& g) {
  if (const auto* f = std::get_if<FinGroup>(&g)) return *f;
  return fin_abelian_group(std::get<FinAbelian>(g));
}

bool verify_witness(const PartialTable& t, const Witness& w) {
  const auto n = group_order(w.group);
  auto it1 = w.labeling.find(kIdentity);
  if (it1 != w.labeling.end() && it1->second != kIdentity) return false;
  LabelSet used;
  for (const auto& [from, to] : w.labeling) {
    if (to < 1 || to > n || !used.insert(to).second) return false;
    if ((from == kIdentity) != (to == kIdentity)) return false;
  }
  auto img = [&](Label x) -> std::optional<Label> {
    if (x == kIdentity) return kIdentity;
    auto it = w.labeling.find(x);
    if (it == w.labeling.end()) return std::nullopt;
    return it->second;
  };
  for (const auto& [key, v] : t.map()) {
    auto a = img(key.first), b = img(key.second), c = img(v);
    if (!a || !b || !c || group_mul(w.group, *a, *b) != *c) return false;
  }
  return true;
}

std::string describe(const Goal& g) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, EmbedGoal>) {
          return "embed " + (x.group.name().empty() ? "group of order " + std::to_string(x.group.order())
                                                    : x.group.name());
        } else if constexpr (std::is_same_v<T, DivisibilityGoal>) {
          return "m^" + std::to_string(x.k) + " = " + std::to_string(x.n);
        } else if constexpr (std::is_same_v<T, InverseGoal>) {
          return "inverse of " + std::to_string(x.n);
        } else if constexpr (std::is_same_v<T, SolveGoal>) {
          std::string s = "solve";
          for (const auto& w : x.system.equations) s += " [" + to_string(w) + " = 1]";
          for (const auto& w : x.system.inequations) s += " [" + to_string(w) + " != 1]";
          return s;
        } else {
          return "clopen with " + std::to_string(x.clopen.size()) + " cells";
        }
      },
      g);
}

namespace {

bool check_embedding_image(const PartialTable& t, const FinGroup& h, const std::vector<Label>& image) {
  if (image.size() != h.order() || image[0] != kIdentity) return false;
  if (LabelSet(image.begin(), image.end()).size() != image.size()) return false;
  for (Label a = 1; a <= h.order(); ++a) {
    for (Label b = 1; b <= h.order(); ++b) {
      if (t.product(image[a - 1], image[b - 1]) != image[h.mul(a, b) - 1]) return false;
    }
  }
  return true;
}

bool check_assignment(const PartialTable& t, const EqSystem& sys, const std::vector<Label>& params) {
  if (params.size() != sys.var_count) return false;
  try {
    for (const auto& w : sys.equations) {
      if (evaluate_in_table(w, t, params) != kIdentity) return false;
    }
    for (const auto& w : sys.inequations) {
      if (evaluate_in_table(w, t, params) == kIdentity) return false;
    }
  } catch (const Error&) {
    return false;
  }
  return true;
}

std::optional<Label> two_sided_inverse(const PartialTable& t, Label n) {
  if (n == kIdentity) return kIdentity;
  for (const auto& [key, v] : t.map()) {
    if (key.first == n && v == kIdentity && t.get(key.second, n) == kIdentity) return key.second;
  }
  return std::nullopt;
}

}  // namespace

std::optional<nlohmann::json> check_goal(const PartialTable& t, const Goal& goal, const nlohmann::json& hint) {
  using nlohmann::json;
  if (const auto* g = std::get_if<EmbedGoal>(&goal)) {
    if (hint.contains("image")) {
      const auto image = hint.at("image").get<std::vector<Label>>();
      if (check_embedding_image(t, g->group, image)) return json{{"image", image}};
    }
    if (t.labels().size() > 256) return std::nullopt;
    if (auto image = embed_into_table(g->group, t)) return json{{"image", *image}};
    return std::nullopt;
  }
  if (const auto* g = std::get_if<DivisibilityGoal>(&goal)) {
    if (hint.contains("m")) {
      const auto m = hint.at("m").get<Label>();
      if (table_power(t, m, g->k) == g->n) return json{{"m", m}};
    }
    auto labels = t.labels();
    labels.insert(kIdentity);
    if (!labels.contains(g->n)) return std::nullopt;
    for (Label m : labels) {
      if (table_power(t, m, g->k) == g->n) return json{{"m", m}};
    }
    return std::nullopt;
  }
  if (const auto* g = std::get_if<InverseGoal>(&goal)) {
    if (g->n != kIdentity && !t.labels().contains(g->n)) return std::nullopt;
    if (auto y = two_sided_inverse(t, g->n)) return json{{"inverse", *y}};
    return std::nullopt;
  }
  if (const auto* g = std::get_if<SolveGoal>(&goal)) {
    if (hint.contains("assignment")) {
      const auto params = hint.at("assignment").get<std::vector<Label>>();
      if (check_assignment(t, g->system, params)) return json{{"assignment", params}};
    }
    return std::nullopt;
  }
  const auto& c = std::get<ClopenGoal>(goal);
  if (satisfies_cell_clopen(t, c.clopen) == Tri::Yes) return json::object();
  return std::nullopt;
}

namespace {

bool goal_impossible(const PartialTable& t, const Goal& goal, Mode mode) {
  if (const auto* g = std::get_if<EmbedGoal>(&goal)) return mode == Mode::Abelian && !g->group.is_abelian();
  if (const auto* g = std::get_if<ClopenGoal>(&goal)) return satisfies_cell_clopen(t, g->clopen) == Tri::No;
  return false;
}

void update_monitors(GameState& s, std::size_t completed_step, const std::vector<GoalHint>& hints) {
  for (std::size_t i = 0; i < s.monitors.size(); ++i) {
    auto& mon = s.monitors[i];
    if (mon.status != MonitorStatus::Pending) continue;
    if (goal_impossible(s.table, mon.goal, s.config.mode)) {
      mon.status = MonitorStatus::Impossible;
      continue;
    }
    nlohmann::json hint = nlohmann::json::object();
    for (const auto& h : hints) {
      if (h.goal == i) hint = h.evidence;
    }
    if (auto ev = check_goal(s.table, mon.goal, hint)) {
      mon.status = MonitorStatus::Achieved;
      mon.achieved_step = completed_step;
      mon.evidence = std::move(*ev);
      mon.note.clear();
    }
  }
}

}  // namespace

GameState::GameState(GameConfig cfg) : config(std::move(cfg)) {
  for (const auto& g : config.schedule) monitors.push_back(Monitor{g, MonitorStatus::Pending, std::nullopt, {}, {}});
  Witness w;
  w.group = config.mode == Mode::Abelian ? WitnessGroup{FinAbelian{}} : WitnessGroup{FinGroup::trivial()};
  w.labeling[kIdentity] = kIdentity;
  witnesses.push_back(std::move(w));
  current_witness = 0;
  update_monitors(*this, 0, {});
}

std::optional<std::pair<int, std::string>> check_block_rules(const PartialTable& t, std::size_t n) {
  const Label bound = static_cast<Label>(n + 1);
  for (Label i = 1; i <= bound; ++i) {
    for (Label j = 1; j <= bound; ++j) {
      if (!t.has(i, j)) {
        return std::pair{2, "cell (" + std::to_string(i) + "," + std::to_string(j) + ") of the block {1.." +
                                std::to_string(bound) + "}^2 is empty"};
      }
    }
  }
  for (Label i = 1; i <= bound; ++i) {
    if (!t.row_has_identity(i)) return std::pair{3, "row " + std::to_string(i) + " contains no 1"};
    if (!t.col_has_identity(i)) return std::pair{3, "column " + std::to_string(i) + " contains no 1"};
  }
  return std::nullopt;
}

namespace {

std::optional<std::string> symmetry_violation(const PartialTable& t) {
  for (const auto& [key, v] : t.map()) {
    if (t.get(key.second, key.first) != v) {
      return "abelian mode: cell (" + std::to_string(key.second) + "," + std::to_string(key.first) +
             ") must also read " + std::to_string(v);
    }
  }
  return std::nullopt;
}

// Searches for a witness of t near the current one: the same group with the
// old labelling fixed, then small groups K x G, which keep every old label.
std::optional<Witness> extend_witness(const PartialTable& t, const Witness& w, Mode mode, std::uint64_t& nodes,
                                      std::uint64_t limit) {
  constexpr std::uint64_t kTableLimit = 4096;
  if (group_order(w.group) > kTableLimit) return std::nullopt;
  const FinGroup g = group_table(w.group);
  if (auto lab = find_labeling(t, g, nodes, limit, w.labeling)) return Witness{w.group, std::move(*lab)};
  const std::vector<std::string> extras =
      mode == Mode::Abelian ? std::vector<std::string>{"C2", "C3", "C4", "C5"}
                            : std::vector<std::string>{"C2", "C3", "C4", "C2xC2", "C5", "S3"};
  for (const auto& name : extras) {
    if (nodes >= limit) return std::nullopt;
    const auto k = group_by_name(name);
    if (k.order() * g.order() > kTableLimit) continue;
    const auto prod = direct_product(k, g).group;
    if (auto lab = find_labeling(t, prod, nodes, limit, w.labeling)) {
      if (mode == Mode::Abelian) {
        auto h = std::get<FinAbelian>(w.group);
        h.factors.push_back(k.order());
        return Witness{h, std::move(*lab)};
      }
      return Witness{prod, std::move(*lab)};
    }
  }
  return std::nullopt;
}

Witness as_witness(const ExtendVerdict& v, Mode mode) {
  if (mode == Mode::General) return Witness{*v.witness, v.labeling};
  const auto st = abelian_structure(*v.witness);
  std::map<Label, Label> back;  // witness label -> structure label
  for (Label x = 1; x <= st.iso.image.size(); ++x) back[st.iso(x)] = x;
  Witness w{st.structure, {}};
  for (const auto& [from, to] : v.labeling) w.labeling[from] = back.at(to);
  return w;
}

}  // namespace

LegalResult legal(const GameState& s, const Move& m, const std::optional<Witness>& supplied) {
  LegalResult r;
  auto illegal = [&](int rule, std::string reason) {
    r.kind = Legality::Illegal;
    r.rule = rule;
    r.reason = std::move(reason);
    return r;
  };
  PartialTable post = s.table;
  for (const auto& c : m.cells) {
    const std::string where = "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
    if (s.table.has(c.row, c.col)) return illegal(0, "cell " + where + " is already filled");
    if (auto v = post.get(c.row, c.col); v && *v != c.value) return illegal(0, "cell " + where + " written twice");
    try {
      post.set(c);
    } catch (const Error& e) {
      return illegal(e.kind() == ErrorKind::IdentityViolation ? 1 : 0, e.what());
    }
  }
  const bool witnessed = supplied && verify_witness(post, *supplied) &&
                         (s.config.mode == Mode::General || group_is_abelian(supplied->group));
  if (!witnessed) {
    auto sat = saturate(post);
    if (sat.contradictory()) {
      illegal(1, "the table cannot extend to a group");
      r.certificate = std::move(sat.contradiction);
      return r;
    }
  }
  if (auto broken = check_block_rules(post, s.step)) return illegal(broken->first, broken->second);
  if (s.config.mode == Mode::Abelian) {
    if (auto why = symmetry_violation(post)) return illegal(1, *why);
  }
  if (witnessed) {
    r.kind = Legality::Legal;
    r.witness = *supplied;
    return r;
  }
  std::uint64_t nodes = 0;
  const auto limit = s.config.budget.node_limit;
  if (const auto* w = s.witness()) {
    if (auto ext = extend_witness(post, *w, s.config.mode, nodes, limit)) {
      r.kind = Legality::Legal;
      r.witness = std::move(*ext);
      return r;
    }
  }
  auto budget = s.config.budget;
  budget.abelian_only = s.config.mode == Mode::Abelian;
  auto v = check_extendable(post, budget);
  switch (v.kind) {
    case Verdict::Extends:
      r.kind = Legality::Legal;
      r.witness = as_witness(v, s.config.mode);
      return r;
    case Verdict::NonExtendable:
      illegal(1, "the table cannot extend to a group");
      r.certificate = std::move(v.certificate);
      return r;
    case Verdict::Unknown:
      r.kind = Legality::Unknown;
      r.rule = 1;
      r.reason = "no witness found within budget: " + v.reason;
      return r;
  }
  return r;
}

GameState apply(GameState s, const Move& m, const LegalResult& r, const std::vector<GoalHint>& hints) {
  const bool admitted = r.kind == Legality::Legal || (r.kind == Legality::Unknown && s.config.permissive);
  if (!admitted) throw Error(ErrorKind::IllegalMove, "move rejected: " + r.reason);
  for (const auto& c : m.cells) s.table.set(c);
  HistoryEntry h{s.step, s.to_move(), m, r.kind, r.reason, std::nullopt};
  if (r.witness) {
    s.witnesses.push_back(*r.witness);
    s.current_witness = s.witnesses.size() - 1;
    h.witness_ref = s.current_witness;
  } else {
    s.current_witness.reset();
    s.caveat = true;
  }
  s.history.push_back(std::move(h));
  const std::size_t completed = s.step++;
  update_monitors(s, completed, hints);
  return s;
}

GameState run(GameState s, Strategy& eve, Strategy& odd, std::size_t steps) {
  for (std::size_t i = 0; i < steps; ++i) {
    const Player mover = s.to_move();
    Strategy& p = mover == Player::Eve ? eve : odd;
    StrategyMove sm;
    try {
      sm = p.next_move(s);
    } catch (const StrategyFault&) {
      throw;
    } catch (const Error& e) {
      throw StrategyFault(mover, s.step, e.what());
    }
    auto r = legal(s, sm.move, sm.witness);
    if (r.kind != Legality::Legal) {
      throw StrategyFault(mover, s.step, std::string(to_string(r.kind)) + " move: " + r.reason);
    }
    s = apply(std::move(s), sm.move, r, sm.hints);
  }
  return s;
}

void to_json(nlohmann::json& j, const Move& m) { j = nlohmann::json{{"cells", m.cells}}; }

void from_json(const nlohmann::json& j, Move& m) {
  m.cells = (j.is_array() ? j : j.at("cells")).get<std::vector<Cell>>();
}

void to_json(nlohmann::json& j, const Witness& w) {
  j = nlohmann::json::object();
  j["group"] = group_name(w.group);
  j["order"] = group_order(w.group);
  if (const auto* f = std::get_if<FinAbelian>(&w.group)) {
    j["factors"] = f->factors;
  } else {
    j["table"] = std::get<FinGroup>(w.group);
  }
  auto lab = nlohmann::json::array();
  for (const auto& [from, to] : w.labeling) lab.push_back({from, to});
  j["labeling"] = std::move(lab);
}

void to_json(nlohmann::json& j, const Goal& g) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, EmbedGoal>) {
          bool named = false;
          if (!x.group.name().empty()) {
            try {
              named = group_by_name(x.group.name()) == x.group;
            } catch (const Error&) {
            }
          }
          j = named ? nlohmann::json{{"embed", x.group.name()}} : nlohmann::json{{"embed", x.group}};
        } else if constexpr (std::is_same_v<T, DivisibilityGoal>) {
          j = nlohmann::json{{"divisibility", {{"n", x.n}, {"k", x.k}}}};
        } else if constexpr (std::is_same_v<T, InverseGoal>) {
          j = nlohmann::json{{"inverse", x.n}};
        } else if constexpr (std::is_same_v<T, SolveGoal>) {
          j = nlohmann::json{{"solve", x.system}};
        } else {
          j = nlohmann::json{{"clopen", x.clopen}};
        }
      },
      g);
}

void from_json(const nlohmann::json& j, Goal& g) {
  if (j.contains("embed")) {
    const auto& e = j.at("embed");
    g = EmbedGoal{e.is_string() ? group_by_name(e.get<std::string>()) : e.get<FinGroup>()};
  } else if (j.contains("divisibility")) {
    const auto& d = j.at("divisibility");
    DivisibilityGoal goal;
    if (d.is_array()) {
      goal.n = d.at(0).get<Label>();
      goal.k = d.at(1).get<std::uint64_t>();
    } else {
      goal.n = d.at("n").get<Label>();
      goal.k = d.at("k").get<std::uint64_t>();
    }
    if (goal.n == 0 || goal.k == 0) throw Error(ErrorKind::InvalidArgument, "divisibility needs n, k >= 1");
    g = goal;
  } else if (j.contains("inverse")) {
    g = InverseGoal{j.at("inverse").get<Label>()};
  } else if (j.contains("solve")) {
    g = SolveGoal{j.at("solve").get<EqSystem>()};
  } else if (j.contains("clopen")) {
    g = ClopenGoal{j.at("clopen").get<CellClopen>()};
  } else {
    throw Error(ErrorKind::ParseError, "unknown goal " + j.dump());
  }
}

std::vector<Goal> parse_schedule(const nlohmann::json& j, Mode* mode) {
  if (j.is_array()) return j.get<std::vector<Goal>>();
  if (mode && j.contains("mode")) *mode = mode_from_string(j.at("mode").get<std::string>());
  if (!j.contains("goals")) return {};
  return j.at("goals").get<std::vector<Goal>>();
}

nlohmann::json monitors_json(const std::vector<Monitor>& monitors) {
  auto out = nlohmann::json::array();
  for (const auto& m : monitors) {
    nlohmann::json e{{"goal", describe(m.goal)}, {"definition", m.goal}, {"status", std::string(to_string(m.status))}};
    if (m.achieved_step) e["step"] = *m.achieved_step;
    if (!m.evidence.is_null()) e["evidence"] = m.evidence;
    if (!m.note.empty()) e["note"] = m.note;
    out.push_back(std::move(e));
  }
  return out;
}

nlohmann::json transcript_json(const GameState& s, const std::string& eve, const std::string& odd,
                               bool include_witnesses) {
  using nlohmann::json;
  json config{{"mode", std::string(to_string(s.config.mode))},
              {"seed", s.config.seed},
              {"budget",
               {{"maxOrder", s.config.budget.max_order},
                {"nodeLimit", s.config.budget.node_limit},
                {"symmetricDegree", s.config.budget.symmetric_degree},
                {"varLimit", s.config.var_limit}}},
              {"schedule", s.config.schedule},
              {"permissive", s.config.permissive},
              {"eve", eve},
              {"odd", odd}};
  auto moves = json::array();
  for (const auto& h : s.history) {
    json m{{"step", h.step},
           {"mover", std::string(to_string(h.mover))},
           {"cells", h.move.cells},
           {"verdict", std::string(to_string(h.verdict))}};
    m["witnessRef"] = h.witness_ref ? json(*h.witness_ref) : json();
    if (h.verdict != Legality::Legal) m["reason"] = h.reason;
    moves.push_back(std::move(m));
  }
  json out{{"config", config}, {"moves", moves}, {"finalTable", s.table}, {"monitors", monitors_json(s.monitors)}};
  if (s.caveat) out["caveat"] = "a move was admitted without a witness; later verdicts rest on it";
  if (include_witnesses) out["witnesses"] = s.witnesses;
  return out;
}

}  // namespace baire
