#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "baire/catalog.hpp"
#include "baire/game.hpp"

using namespace baire;

namespace {

Move c2_block() { return Move{{{1, 1, 1}, {1, 2, 2}, {2, 1, 2}, {2, 2, 1}}}; }

void replay_rules(const GameState& s) {
  // After step n the table must satisfy rules 2 and 3 for n.
  PartialTable t;
  for (const auto& h : s.history) {
    for (const auto& c : h.move.cells) t.set(c.row, c.col, c.value);
    const auto bad = check_block_rules(t, h.step);
    ASSERT_FALSE(bad) << "step " << h.step << ": " << bad->second;
  }
  EXPECT_EQ(t, s.table);
  if (s.witness()) EXPECT_TRUE(verify_witness(s.table, *s.witness()));
}

}  // namespace

TEST(Legal, Examples) {
  GameState s;
  const auto ok = legal(s, c2_block());
  EXPECT_EQ(ok.kind, Legality::Legal);
  ASSERT_TRUE(ok.witness);
  EXPECT_EQ(group_order(ok.witness->group), 2u);

  const auto no_inverse = legal(s, Move{{{1, 1, 1}, {1, 2, 2}, {2, 1, 2}, {2, 2, 3}}});
  EXPECT_EQ(no_inverse.kind, Legality::Illegal);
  EXPECT_EQ(no_inverse.rule, 3);

  const auto cancel = legal(s, Move{{{2, 2, 3}, {2, 4, 3}}});
  EXPECT_EQ(cancel.kind, Legality::Illegal);
  EXPECT_EQ(cancel.rule, 1);
  ASSERT_TRUE(cancel.certificate);
  EXPECT_TRUE(replay_certificate(PartialTable{{2, 2, 3}, {2, 4, 3}}, *cancel.certificate));

  const auto incomplete = legal(s, Move{{{1, 1, 1}}});
  EXPECT_EQ(incomplete.kind, Legality::Illegal);
  EXPECT_EQ(incomplete.rule, 2);
}

TEST(Legal, AbelianNeedsSymmetry) {
  GameConfig cfg;
  cfg.mode = Mode::Abelian;
  GameState s(cfg);
  EXPECT_EQ(legal(s, c2_block()).kind, Legality::Legal);
  EXPECT_EQ(legal(s, Move{{{1, 1, 1}, {1, 2, 2}, {2, 1, 2}, {2, 2, 1}, {2, 3, 4}}}).kind, Legality::Illegal);
}

TEST(Legal, SuppliedWitnessIsChecked) {
  GameState s;
  Witness bogus{cyclic_group(3), {{1, 1}, {2, 2}}};
  const auto r = legal(s, c2_block(), bogus);
  EXPECT_EQ(r.kind, Legality::Legal);
  EXPECT_EQ(group_order(r.witness->group), 2u);
}

TEST(Apply, AdvancesState) {
  GameConfig cfg;
  cfg.schedule = {DivisibilityGoal{2, 2}};
  GameState s(cfg);
  const auto m = c2_block();
  const auto next = apply(s, m, legal(s, m));
  EXPECT_EQ(next.step, 2u);
  EXPECT_EQ(next.to_move(), Player::Odd);
  EXPECT_EQ(next.history.size(), s.history.size() + 1);
  EXPECT_EQ(next.monitors[0].status, MonitorStatus::Pending);

  // 3 with 3*3 = 2 in the C4 table.
  const Move c4{{{3, 3, 2}, {1, 3, 3}, {3, 1, 3}, {2, 3, 4}, {3, 2, 4}, {3, 4, 1}, {4, 3, 1}, {1, 4, 4}, {4, 1, 4},
                 {2, 4, 3}, {4, 2, 3}, {4, 4, 2}}};
  const auto r = legal(next, c4);
  ASSERT_EQ(r.kind, Legality::Legal) << r.reason;
  const auto after = apply(next, c4, r);
  EXPECT_EQ(after.monitors[0].status, MonitorStatus::Achieved);
  EXPECT_EQ(after.monitors[0].achieved_step, 2u);
  EXPECT_THROW(apply(s, Move{{{2, 2, 3}, {2, 4, 3}}}, legal(s, Move{{{2, 2, 3}, {2, 4, 3}}})), Error);
}

TEST(Run, RandomVersusRandomKeepsRules) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    GameConfig cfg;
    cfg.seed = seed;
    auto eve = random_legal(seed);
    auto odd = random_legal(seed + 1);
    const auto s = run(GameState(cfg), *eve, *odd, 10);
    EXPECT_EQ(s.step, 11u);
    replay_rules(s);
    EXPECT_FALSE(check_block_rules(s.table, 10));
  }
}

TEST(Run, EmptyScheduleAndDeterminism) {
  auto play = [](std::uint64_t seed) {
    GameConfig cfg;
    cfg.seed = seed;
    auto eve = random_legal(seed);
    auto odd = random_legal(seed + 1);
    return transcript_json(run(GameState(cfg), *eve, *odd, 8), eve->name(), odd->name()).dump();
  };
  EXPECT_EQ(play(4), play(4));
  GameState s;
  EXPECT_TRUE(s.monitors.empty());

  auto a = scripted({c2_block()});
  auto b = scripted({});
  const auto x = transcript_json(run(GameState{}, *a, *b, 4), "human", "human");
  auto a2 = scripted({c2_block()});
  auto b2 = scripted({});
  EXPECT_EQ(x, transcript_json(run(GameState{}, *a2, *b2, 4), "human", "human"));
}

TEST(Run, BadScriptFaults) {
  auto eve = scripted({Move{{{2, 2, 3}, {2, 4, 3}}}});
  auto odd = odd_scheduler();
  EXPECT_THROW(run(GameState{}, *eve, *odd, 2), StrategyFault);
}

TEST(Scheduler, EmbedC3) {
  GameConfig cfg;
  cfg.schedule = {EmbedGoal{cyclic_group(3)}};
  auto eve = random_legal(7);
  auto odd = odd_scheduler();
  const auto s = run(GameState(cfg), *eve, *odd, 6);
  ASSERT_EQ(s.monitors[0].status, MonitorStatus::Achieved);
  EXPECT_LE(*s.monitors[0].achieved_step, 2u);
  EXPECT_TRUE(embed_search(cyclic_group(3), group_table(s.witness()->group)));
  EXPECT_TRUE(check_goal(s.table, s.monitors[0].goal));
}

TEST(Scheduler, AbelianDivisibility) {
  GameConfig cfg;
  cfg.mode = Mode::Abelian;
  cfg.schedule = {DivisibilityGoal{2, 2}};
  auto eve = random_legal(3);
  auto odd = odd_scheduler();
  const auto s = run(GameState(cfg), *eve, *odd, 2);
  ASSERT_EQ(s.monitors[0].status, MonitorStatus::Achieved);
  bool root = false;
  for (const auto& c : s.table.cells()) root |= c.row == c.col && c.value == 2;
  EXPECT_TRUE(root);
}

TEST(Scheduler, SolveSystem) {
  EqSystem sys{{parse_word("x0^2")}, {parse_word("x0")}, 1};
  GameConfig cfg;
  cfg.schedule = {SolveGoal{sys}};
  auto eve = random_legal(9);
  auto odd = odd_scheduler();
  const auto s = run(GameState(cfg), *eve, *odd, 4);
  ASSERT_EQ(s.monitors[0].status, MonitorStatus::Achieved);
  const auto& ev = s.monitors[0].evidence;
  ASSERT_TRUE(ev.contains("assignment"));
  const Label x = ev["assignment"][0].get<Label>();
  const auto& w = *s.witness();
  const Label gx = w.labeling.at(x);
  EXPECT_NE(gx, kIdentity);
  EXPECT_EQ(group_mul(w.group, gx, gx), kIdentity);
}

TEST(Spoiler, AlwaysLegal) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GameConfig cfg;
    cfg.seed = seed;
    auto eve = spoiler(seed);
    auto odd = random_legal(seed + 1);
    const auto s = run(GameState(cfg), *eve, *odd, 20);
    ASSERT_EQ(s.step, 21u);
    replay_rules(s);
  }
}

TEST(Spoiler, SchedulerStillEmbedsC2) {
  GameConfig cfg;
  cfg.schedule = {EmbedGoal{cyclic_group(2)}};
  auto eve = spoiler(1);
  auto odd = odd_scheduler();
  const auto s = run(GameState(cfg), *eve, *odd, 10);
  EXPECT_EQ(s.monitors[0].status, MonitorStatus::Achieved);
}

TEST(Transcript, Shape) {
  auto eve = scripted({c2_block()});
  auto odd = odd_scheduler();
  const auto j = transcript_json(run(GameState{}, *eve, *odd, 2), "human", "odd-scheduler");
  for (const char* k : {"config", "moves", "finalTable", "monitors"}) EXPECT_TRUE(j.contains(k)) << k;
  ASSERT_EQ(j["moves"].size(), 2u);
  EXPECT_EQ(j["moves"][0]["mover"], "eve");
  EXPECT_EQ(j["moves"][1]["mover"], "odd");
}

TEST(Schedule, Parse) {
  Mode m = Mode::General;
  const auto gs = parse_schedule(nlohmann::json::parse(R"({"mode":"abelian","goals":[{"divisibility":{"n":2,"k":3}}]})"), &m);
  EXPECT_EQ(m, Mode::Abelian);
  ASSERT_EQ(gs.size(), 1u);
  ASSERT_TRUE(std::holds_alternative<DivisibilityGoal>(gs[0]));
  EXPECT_EQ(std::get<DivisibilityGoal>(gs[0]).k, 3u);
  const nlohmann::json back = gs[0];
  EXPECT_EQ(back.get<Goal>().index(), gs[0].index());
}
