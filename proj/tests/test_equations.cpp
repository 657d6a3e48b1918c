#include <random>

#include <gtest/gtest.h>

#include "baire/catalog.hpp"
#include "baire/equations.hpp"
#include "oracles.hpp"

using namespace baire;

namespace {

EqSystem sys(std::vector<std::string> eqs, std::vector<std::string> ineqs = {}) {
  EqSystem s;
  for (const auto& e : eqs) s.equations.push_back(parse_word(e));
  for (const auto& e : ineqs) s.inequations.push_back(parse_word(e));
  for (const auto& w : s.equations) s.var_count = std::max(s.var_count, w.variable_bound());
  for (const auto& w : s.inequations) s.var_count = std::max(s.var_count, w.variable_bound());
  return s;
}

}  // namespace

TEST(Evaluate, Basics) {
  const auto c2 = cyclic_group(2);
  EXPECT_EQ(evaluate(Word{}, c2, {}), kIdentity);
  EXPECT_EQ(evaluate(parse_word("x0^2"), c2, {2}), kIdentity);
  const auto s3 = symmetric_group(3);
  for (Label x = 1; x <= 6; ++x) {
    EXPECT_EQ(evaluate(parse_word("x0^-1 * c4 * x0"), s3, {x}), s3.mul(s3.mul(s3.inv(x), 4), x));
  }
  EXPECT_THROW(evaluate(parse_word("c9"), s3, {}), Error);
}

TEST(Solve, Examples) {
  for (const auto& g : catalog(6)) EXPECT_EQ(solve(sys({"x0"}), g), (Assignment{1}));
  EXPECT_EQ(solve(sys({"x0^2"}, {"x0"}), cyclic_group(2)), (Assignment{2}));
  EXPECT_FALSE(solve(sys({"x0^3"}, {"x0"}), cyclic_group(4)));
  EXPECT_THROW(solve(sys({"x0 * x1 * x2 * x3 * x4"}), cyclic_group(2)), Error);
}

TEST(Solve, LeastSolutionMatchesOracle) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> nv(1, 3), len(1, 5), coin(0, 3);
  for (const auto& g : catalog(8)) {
    std::uniform_int_distribution<Label> cst(1, static_cast<Label>(g.order()));
    for (int trial = 0; trial < 30; ++trial) {
      const int vars = nv(rng);
      std::uniform_int_distribution<std::uint32_t> var(0, vars - 1);
      EqSystem s;
      s.var_count = vars;
      for (int e = 0; e < 2; ++e) {
        std::vector<Letter> ls;
        for (int i = len(rng); i > 0; --i) {
          ls.push_back(coin(rng) ? Letter::var(var(rng), coin(rng) ? 1 : -1) : Letter::constant(cst(rng)));
        }
        (e == 0 || coin(rng) ? s.equations : s.inequations).push_back(Word(ls));
      }
      const auto got = solve(s, g);
      const auto want = oracle::solve(s, g);
      ASSERT_EQ(got.has_value(), want.has_value()) << g.name();
      if (got) EXPECT_EQ(*got, *want);
    }
  }
}

TEST(Conjugation, Examples) {
  EXPECT_EQ(solve(conjugation_system({1}, {1}), cyclic_group(3)), (Assignment{1}));
  const auto s3 = symmetric_group(3);
  std::vector<Label> inv;
  for (Label a = 2; a <= 6; ++a) {
    if (s3.element_order(a) == 2) inv.push_back(a);
  }
  const auto sol = solve(conjugation_system({inv[0]}, {inv[1]}), s3);
  ASSERT_TRUE(sol);
  EXPECT_EQ(s3.conj(inv[0], (*sol)[0]), inv[1]);
  const auto c4 = cyclic_group(4);
  const Label g = 2;
  EXPECT_FALSE(solve(conjugation_system({g}, {c4.pow(g, 3)}), c4));
}

TEST(Consistency, Examples) {
  const auto c2 = cyclic_group(2);
  const auto in_g = consistency_search(sys({"x0^2"}, {"x0"}), c2);
  ASSERT_TRUE(in_g);
  EXPECT_EQ(in_g->group, c2);
  EXPECT_EQ(in_g->embedding, Embedding::identity(2));

  // x0^2 = a with a the involution of C2, x0 != 1.
  const auto w = consistency_search(sys({"x0^2 * c2^-1"}, {"x0"}), c2, 4);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->group.order(), 4u);
  EXPECT_TRUE(w->group.is_abelian());
  EXPECT_EQ(w->group.element_order(w->embedding(2)), 2u);
  EXPECT_EQ(w->group.element_order(w->solution[0]), 4u);
  EXPECT_TRUE(verify_solution(w->system, w->group, w->solution));

  const auto c3 = consistency_search(sys({"x0^2"}, {"x0"}), cyclic_group(3));
  ASSERT_TRUE(c3);
  EXPECT_EQ(c3->group.order() % 6, 0u);
  EXPECT_TRUE(verify_embedding(cyclic_group(3), c3->group, c3->embedding));
}

TEST(Transport, LiftsSolutions) {
  const auto c2 = cyclic_group(2), c3 = cyclic_group(3);
  const auto s = sys({"x0^2"}, {"x0"});
  const auto sol = *solve(s, c2);
  const auto prod = direct_product(c3, c2);
  EXPECT_TRUE(verify_solution(s, prod.group, product_transport(sol, c3, c2)));
  EXPECT_EQ(product_transport({1}, c3, c2), (Assignment{1}));

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> len(1, 4), coin(0, 2);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 50; ++trial) {
    const auto& h = catalog(6)[trial % catalog(6).size()];
    std::uniform_int_distribution<Label> cst(1, static_cast<Label>(h.order()));
    EqSystem e;
    e.var_count = 2;
    std::vector<Letter> ls;
    for (int i = len(rng); i > 0; --i) ls.push_back(coin(rng) ? Letter::var(i % 2) : Letter::constant(cst(rng)));
    e.equations.push_back(Word(ls));
    const auto hs = solve(e, h);
    if (!hs) continue;
    for (const auto& g : {c2, c3}) {
      EXPECT_TRUE(verify_solution(lift_system(e, g, h), direct_product(g, h).group, product_transport(*hs, g, h)));
    }
    ++checked;
  }
  EXPECT_EQ(checked, 50);
}

TEST(Diagram, Blocks) {
  const auto one = clopen_to_system(CellClopen::square({{1}}));
  for (const auto& g : catalog(6)) EXPECT_TRUE(solve(one, g));

  const auto c2_block = CellClopen::square({{1, 2}, {2, 1}});
  const auto s3 = symmetric_group(3);
  const auto sol = solve(clopen_to_system(c2_block), s3, 6);
  ASSERT_TRUE(sol);
  const auto relabel = diagram_relabeling(c2_block, s3, *sol);
  ASSERT_TRUE(relabel);
  EXPECT_EQ(s3.element_order(relabel->at(2)), 2u);

  const auto c3_block = CellClopen::square({{1, 2, 3}, {2, 3, 1}, {3, 1, 2}});
  const auto c3sys = clopen_to_system(c3_block);
  EXPECT_FALSE(solve(c3sys, cyclic_group(2), c3sys.var_count));
  EXPECT_TRUE(solve(c3sys, cyclic_group(6), c3sys.var_count));
  EXPECT_THROW(clopen_to_system(CellClopen{{3, 3, 1}}), Error);
}
