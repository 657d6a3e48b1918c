#include <functional>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "baire/abelian.hpp"
#include "baire/catalog.hpp"
#include "baire/equations.hpp"
#include "baire/extend.hpp"
#include "baire/game.hpp"
#include "baire/session.hpp"
#include "cli_common.hpp"
#include "serve.hpp"

using namespace baire;
using namespace baire::cli;
using nlohmann::json;

namespace {

FinGroup load_group(const std::string& arg) {
  if (!arg.empty() && arg.front() != '{' && arg.find('.') == std::string::npos && arg != "-") {
    return group_by_name(arg);
  }
  return load_json(arg).get<FinGroup>();
}

void add_budget(CLI::App* cmd, BudgetFlags& b) {
  cmd->add_option("--max-order", b.max_order, "largest witness group tried (env BAIRE_MAX_ORDER)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--node-limit", b.node_limit, "search nodes before giving up (env BAIRE_NODE_LIMIT)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--symmetric-degree", b.symmetric_degree, "largest S_k tried after the catalog")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--var-limit", b.var_limit, "most variables a system may use (env BAIRE_VAR_LIMIT)")
      ->check(CLI::PositiveNumber);
}

// ---------------------------------------------------------------------------

struct CatalogArgs {
  std::size_t max_order = 8;
  bool json = false;
};

int run_catalog(const CatalogArgs& a) {
  const auto& groups = catalog(a.max_order, std::max(a.max_order, kDefaultCatalogLimit));
  if (a.json) {
    auto out = json::array();
    for (const auto& g : groups) out.push_back({{"name", g.name()}, {"order", g.order()}, {"abelian", g.is_abelian()}});
    print_json(out);
  } else {
    for (const auto& g : groups) std::cout << g.order() << "\t" << g.name() << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct AbelianArgs {
  std::string x, y, element, group;
  std::uint64_t k = 1, n = 1, bound = 5;
  std::string table;
};

int run_abelian(const std::string& op, const AbelianArgs& a) {
  auto elem = [](const std::string& s) { return load_json(s).get<AbelianElement>(); };
  if (op == "add") {
    print_json(add(elem(a.x), elem(a.y)));
  } else if (op == "order") {
    std::cout << order(elem(a.element)) << "\n";
  } else if (op == "divide") {
    const auto x = elem(a.element);
    const auto y = divide(x, a.k);
    print_json({{"root", y}, {"check", multiply(y, a.k) == x}});
  } else if (op == "enumerate") {
    print_json(enumerate(a.n));
  } else if (op == "encode") {
    std::cout << encode(elem(a.element)) << "\n";
  } else if (op == "embed") {
    FinAbelian h;
    if (!a.group.empty() && (a.group.front() == '[' || a.group.front() == '{')) {
      h = load_json(a.group).get<FinAbelian>();
    } else {
      h = abelian_structure(group_by_name(a.group)).structure;
    }
    const auto gens = embed_fin_abelian(h);
    print_json({{"group", h}, {"generators", gens}, {"verified", verify_abelian_embedding(h, gens)}});
  } else if (op == "prefix") {
    print_json(a_prefix_table(a.n));
  } else if (op == "monitors") {
    print_json(abelian_monitors(load_json(a.table).get<PartialTable>(), a.bound));
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SolveArgs {
  std::string system, group;
  bool consistency = false;
  bool json = false;
  BudgetFlags budget;
};

int run_solve(const SolveArgs& a) {
  const auto sys = load_json(a.system).get<EqSystem>();
  const auto g = load_group(a.group);
  if (a.consistency) {
    auto w = consistency_search(sys, g, a.budget.max_order, a.budget.var_limit);
    if (!w) {
      if (a.json) print_json({{"solution", nullptr}});
      else std::cout << "none within order " << a.budget.max_order << "\n";
      return kExitVerdict;
    }
    if (a.json) {
      print_json({{"group", w->group}, {"embedding", w->embedding.image}, {"system", w->system}, {"solution", w->solution}});
    } else {
      std::cout << "solvable in " << w->group.name() << " (order " << w->group.order() << "): ";
      for (std::size_t i = 0; i < w->solution.size(); ++i) std::cout << (i ? " " : "") << "x" << i << "=" << w->solution[i];
      std::cout << "\n";
    }
    return kExitOk;
  }
  const auto sol = solve(sys, g, a.budget.var_limit);
  if (a.json) {
    print_json({{"solution", sol ? json(*sol) : json()}});
  } else if (sol) {
    for (std::size_t i = 0; i < sol->size(); ++i) std::cout << (i ? " " : "") << "x" << i << "=" << (*sol)[i];
    std::cout << "\n";
  } else {
    std::cout << "none\n";
  }
  return sol ? kExitOk : kExitVerdict;
}

// ---------------------------------------------------------------------------

struct WitnessArgs {
  std::string table;
  bool abelian = false;
  bool json = false;
  BudgetFlags budget;
};

int run_witness(const WitnessArgs& a) {
  const auto t = load_json(a.table).get<PartialTable>();
  auto budget = a.budget.extend();
  budget.abelian_only = a.abelian;
  const auto v = check_extendable(t, budget);
  if (a.json) {
    print_json(v);
  } else {
    std::cout << to_string(v.kind) << "\n";
    if (v.witness) {
      std::cout << "witness " << v.witness->name() << " (order " << v.witness->order() << ")\n";
      for (const auto& [from, to] : v.labeling) std::cout << "  " << from << " -> " << to << "\n";
    }
    if (v.certificate) std::cout << render_certificate(*v.certificate);
    if (!v.reason.empty() && v.kind != Verdict::Extends) std::cout << v.reason << "\n";
  }
  return v.kind == Verdict::Extends ? kExitOk : kExitVerdict;
}

// ---------------------------------------------------------------------------

struct ClopenArgs {
  std::string table, clopen, other;
  bool system = false;
  bool json = false;
  BudgetFlags budget;
};

int run_clopen(const ClopenArgs& a) {
  const auto b = load_json(a.clopen).get<CellClopen>();
  if (a.system) {
    print_json(clopen_to_system(b));
    return kExitOk;
  }
  if (!a.other.empty()) {
    const auto v = load_json(a.other).get<CellClopen>();
    auto w = homogeneity_witness(b, v, a.budget.extend());
    if (!w) {
      std::cout << (a.json ? "null" : "no witness within budget") << "\n";
      return kExitVerdict;
    }
    const auto moved = transport_clopen(w->phi, b);
    json out{{"phi", w->phi},
             {"table", w->table},
             {"group", w->group.name()},
             {"inTransported", std::string(to_string(satisfies_cell_clopen(w->table, moved)))},
             {"inTarget", std::string(to_string(satisfies_cell_clopen(w->table, v)))}};
    print_json(out);
    return kExitOk;
  }
  if (a.table.empty()) throw CLI::ValidationError("clopen", "--table, --system or --homogeneity is required");
  const auto t = load_json(a.table).get<PartialTable>();
  const auto r = satisfies_cell_clopen(t, b);
  if (a.json) print_json({{"membership", std::string(to_string(r))}});
  else std::cout << to_string(r) << "\n";
  return r == Tri::Yes ? kExitOk : kExitVerdict;
}

// ---------------------------------------------------------------------------

struct GameArgs {
  std::string mode = "general";
  std::string schedule;
  std::size_t steps = 10;
  std::optional<std::uint64_t> seed;
  std::string eve = "random-legal";
  std::string odd = "odd-scheduler";
  std::string script;
  bool witnesses = false;
  bool permissive = false;
  BudgetFlags budget;
};

GameConfig game_config(const GameArgs& a) {
  GameConfig cfg;
  cfg.mode = mode_from_string(a.mode);
  if (!a.schedule.empty()) cfg.schedule = parse_schedule(load_json(a.schedule), &cfg.mode);
  cfg.seed = a.seed.value_or(0);
  cfg.budget = a.budget.extend();
  cfg.var_limit = a.budget.var_limit;
  cfg.permissive = a.permissive;
  return cfg;
}

void require_seed(const GameArgs& a) {
  if (ci_mode() && !a.seed) throw CLI::ValidationError("--seed", "is mandatory when CI is set");
}

std::unique_ptr<Strategy> make_strategy(const std::string& name, std::uint64_t seed, const std::string& script) {
  if (name == "scripted") {
    if (script.empty()) throw CLI::ValidationError("--script", "a scripted player needs a move file");
    return scripted(load_json(script).get<std::vector<Move>>());
  }
  return make_engine(name, seed);
}

int run_simulate(const GameArgs& a) {
  require_seed(a);
  const auto cfg = game_config(a);
  // Different streams for the two sides so a mirrored match is not a replay.
  auto eve = make_strategy(a.eve, cfg.seed, a.script);
  auto odd = make_strategy(a.odd, cfg.seed + 1, a.script);
  GameState s(cfg);
  try {
    s = run(std::move(s), *eve, *odd, a.steps);
  } catch (const StrategyFault& f) {
    std::cerr << "strategy fault: " << f.what() << "\n";
    return kExitUsage;
  }
  print_json(transcript_json(s, eve->name(), odd->name(), a.witnesses));
  return kExitOk;
}

int run_play(const GameArgs& a, const std::string& human) {
  require_seed(a);
  SessionConfig cfg;
  cfg.game = game_config(a);
  cfg.human = human == "odd" ? Player::Odd : Player::Eve;
  cfg.engine = cfg.human == Player::Eve ? a.odd : a.eve;
  Session session("local", cfg);
  std::cout << session.state_message().dump() << std::endl;
  std::cerr << "enter cells as [[row,col,value],...], 'snapshot' or 'resign'\n";
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.empty()) continue;
    if (line == "resign") {
      std::cout << session.resign().dump() << std::endl;
      break;
    }
    if (line == "snapshot") {
      std::cout << session.snapshot().dump() << std::endl;
      continue;
    }
    try {
      const auto m = json::parse(line).get<Move>();
      for (const auto& msg : session.submit_move(m)) std::cout << msg.dump() << std::endl;
    } catch (const Error& e) {
      std::cout << error_message(e).dump() << std::endl;
    } catch (const json::exception& e) {
      std::cout << error_message(Error(ErrorKind::ParseError, e.what())).dump() << std::endl;
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"baire: finite stages of the space of countable group tables"};
  app.require_subcommand(1);
  int code = kExitOk;
  std::function<int()> action;

  BudgetFlags env_budget;
  try {
    env_budget = BudgetFlags::from_env();
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  CatalogArgs cat;
  auto* c_cat = app.add_subcommand("catalog", "list the built-in finite groups");
  c_cat->add_option("--max-order", cat.max_order, "largest order listed")->check(CLI::Range(1, 64));
  c_cat->add_flag("--json", cat.json, "JSON output");
  c_cat->callback([&] { action = [&] { return run_catalog(cat); }; });

  AbelianArgs ab;
  std::string ab_op;
  auto* c_ab = app.add_subcommand("abelian", "arithmetic in the generic countable Abelian group A");
  c_ab->add_option("op", ab_op, "add, order, divide, enumerate, encode, embed, prefix or monitors")
      ->required()
      ->check(CLI::IsMember({"add", "order", "divide", "enumerate", "encode", "embed", "prefix", "monitors"}));
  c_ab->add_option("--x", ab.x, "first summand (JSON)");
  c_ab->add_option("--y", ab.y, "second summand (JSON)");
  c_ab->add_option("--element", ab.element, "element as {\"coords\": [{p, i, a, m}, ...]}");
  c_ab->add_option("--k", ab.k, "divisor")->check(CLI::PositiveNumber);
  c_ab->add_option("--n", ab.n, "label or prefix size")->check(CLI::PositiveNumber);
  c_ab->add_option("--group", ab.group, "finite Abelian group: a name such as C2xC4 or a factor list [2,4]");
  c_ab->add_option("--table", ab.table, "partial table (JSON) for monitors");
  c_ab->add_option("--bound", ab.bound, "largest label and exponent the monitors inspect");
  c_ab->callback([&] {
    const bool ok = ab_op == "add"         ? !ab.x.empty() && !ab.y.empty()
                    : ab_op == "embed"     ? !ab.group.empty()
                    : ab_op == "monitors"  ? !ab.table.empty()
                    : ab_op == "enumerate" || ab_op == "prefix" ? true
                                                                : !ab.element.empty();
    if (!ok) throw CLI::ValidationError(ab_op, "missing operand");
    action = [&] { return run_abelian(ab_op, ab); };
  });

  SolveArgs sv;
  sv.budget = env_budget;
  auto* c_sv = app.add_subcommand("solve", "solve an equation system in a finite group");
  c_sv->add_option("--system", sv.system, "system JSON: {\"equations\": [...], \"inequations\": [...]}")->required();
  c_sv->add_option("--group", sv.group, "group name (C4, S3, ...) or group JSON")->required();
  c_sv->add_flag("--consistency", sv.consistency, "also search catalog groups containing the group");
  c_sv->add_flag("--json", sv.json, "JSON output");
  add_budget(c_sv, sv.budget);
  c_sv->callback([&] { action = [&] { return run_solve(sv); }; });

  WitnessArgs wt;
  wt.budget = env_budget;
  auto* c_wt = app.add_subcommand("witness", "decide whether a partial table extends to a group");
  c_wt->add_option("--table", wt.table, "partial table JSON: {\"cells\": [[i,j,k], ...]}")->required();
  c_wt->add_flag("--abelian", wt.abelian, "only Abelian witnesses");
  c_wt->add_flag("--json", wt.json, "JSON output");
  add_budget(c_wt, wt.budget);
  c_wt->callback([&] { action = [&] { return run_witness(wt); }; });

  ClopenArgs cl;
  cl.budget = env_budget;
  auto* c_cl = app.add_subcommand("clopen", "basic clopen sets: membership, diagram systems, homogeneity");
  c_cl->add_option("--clopen", cl.clopen, "constraints JSON: {\"constraints\": [[i,j,k], ...]}")->required();
  c_cl->add_option("--table", cl.table, "membership of this partial table");
  c_cl->add_flag("--system", cl.system, "print the diagram equation system");
  c_cl->add_option("--homogeneity", cl.other, "second clopen set; build a homogeneity witness");
  c_cl->add_flag("--json", cl.json, "JSON output");
  add_budget(c_cl, cl.budget);
  c_cl->callback([&] { action = [&] { return run_clopen(cl); }; });

  GameArgs sim;
  sim.budget = env_budget;
  auto* c_sim = app.add_subcommand("simulate", "play engine strategies against each other");
  auto game_opts = [](CLI::App* cmd, GameArgs& g) {
    cmd->add_option("--mode", g.mode, "general or abelian")->check(CLI::IsMember({"general", "abelian"}));
    cmd->add_option("--schedule", g.schedule, "goal schedule JSON");
    cmd->add_option("--seed", g.seed, "random seed (mandatory when CI is set)");
    cmd->add_option("--eve", g.eve, "random-legal, spoiler, odd-scheduler or scripted");
    cmd->add_option("--odd", g.odd, "odd-scheduler, random-legal, spoiler or scripted");
    cmd->add_option("--script", g.script, "moves for the scripted player: [{\"cells\": ...}, ...]");
    cmd->add_flag("--permissive", g.permissive, "admit moves whose verdict is unknown");
    add_budget(cmd, g.budget);
  };
  game_opts(c_sim, sim);
  c_sim->add_option("--steps", sim.steps, "number of steps")->check(CLI::PositiveNumber);
  c_sim->add_flag("--witnesses", sim.witnesses, "include every witness in the transcript");
  c_sim->callback([&] { action = [&] { return run_simulate(sim); }; });

  GameArgs pl;
  pl.budget = env_budget;
  std::string human = "eve";
  auto* c_pl = app.add_subcommand("play", "play against an engine over stdin, one JSON move per line");
  game_opts(c_pl, pl);
  c_pl->add_option("--as", human, "eve or odd")->check(CLI::IsMember({"eve", "odd"}));
  c_pl->callback([&] { action = [&] { return run_play(pl, human); }; });

  ServeArgs srv;
  auto* c_srv = app.add_subcommand("serve", "host game sessions over stdio JSON lines or HTTP");
  c_srv->add_option("--port", srv.port, "HTTP port; without it, serve stdio");
  c_srv->add_option("--host", srv.host, "HTTP bind address");
  c_srv->add_option("--seed", srv.seed, "default seed for sessions that give none (mandatory when CI is set)");
  c_srv->callback([&] {
    if (ci_mode() && !srv.seed) throw CLI::ValidationError("--seed", "is mandatory when CI is set");
    action = [&] { return serve(srv); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }
  try {
    code = action();
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return code;
}
