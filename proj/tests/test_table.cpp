#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "baire/catalog.hpp"
#include "baire/table.hpp"

using namespace baire;

TEST(PartialTable, WriteOnce) {
  PartialTable t;
  t.set(2, 3, 4);
  t.set(2, 3, 4);
  EXPECT_EQ(t.size(), 1u);
  try {
    t.set(2, 3, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WriteOnceViolation);
  }
}

TEST(PartialTable, IdentityRowAndColumn) {
  PartialTable t;
  t.set(1, 5, 5);
  t.set(5, 1, 5);
  for (auto [a, b, v] : {std::tuple{1u, 4u, 3u}, std::tuple{4u, 1u, 2u}}) {
    try {
      t.set(a, b, v);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::IdentityViolation);
    }
  }
}

TEST(PartialTable, Labels) {
  PartialTable t{{2, 3, 7}, {4, 4, 1}};
  EXPECT_EQ(t.labels(), (LabelSet{1, 2, 3, 4, 7}));
  EXPECT_TRUE(t.row_has_identity(4));
  EXPECT_FALSE(t.row_has_identity(2));
  EXPECT_EQ(t.inverse_of(4), 4u);
  EXPECT_EQ(t.product(1, 9), 9u);
  EXPECT_FALSE(t.product(3, 2).has_value());
}

TEST(CellClopenMembership, ThreeValued) {
  const CellClopen b{{2, 2, 1}};
  EXPECT_EQ(satisfies_cell_clopen(PartialTable{{2, 2, 1}}, b), Tri::Yes);
  EXPECT_EQ(satisfies_cell_clopen(PartialTable{{2, 2, 3}}, b), Tri::No);
  EXPECT_EQ(satisfies_cell_clopen(PartialTable{}, b), Tri::Undetermined);
}

TEST(WordClopenMembership, CompleteC2Table) {
  const auto c2 = cyclic_group(2);
  WordClopen sq{{2}, {{parse_word("x0 * x0"), 1}}, {}};
  EXPECT_EQ(satisfies_word_clopen(c2, sq), Tri::Yes);
  WordClopen ne{{2}, {}, {{parse_word("x0"), 1}}};
  EXPECT_EQ(satisfies_word_clopen(c2, ne), Tri::Yes);
}

TEST(WordClopenMembership, BlockedOnMissingProduct) {
  // 3^-1 = 2 comes from (2,3) -> 1, then 4*2 is not on the table.
  const PartialTable t{{2, 3, 1}};
  const std::vector<Label> params{4, 3};
  try {
    evaluate_in_table(parse_word("x0 * x1^-1"), t, params);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EvaluationBlocked);
    EXPECT_NE(std::string(e.what()).find("4*2"), std::string::npos);
  }
}

TEST(Supp, SquareForms) {
  EXPECT_EQ(supp(CellClopen::square({{1, 2}, {2, 1}})), (LabelSet{1, 2}));
  EXPECT_EQ(supp(CellClopen::square({{1, 2}, {2, 5}})), (LabelSet{1, 2, 5}));
  try {
    supp(CellClopen{{3, 3, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSquareForm);
  }
}

TEST(Homeomorphism, Pushforward) {
  const PartialTable t{{2, 2, 1}};
  EXPECT_EQ(apply_homeomorphism(FinitePermutation{}, t), t);
  const auto s23 = FinitePermutation::transposition(2, 3);
  const auto s34 = FinitePermutation::transposition(3, 4);
  EXPECT_EQ(apply_homeomorphism(s23, t), (PartialTable{{3, 3, 1}}));
  EXPECT_EQ(apply_homeomorphism(s34.compose(s23), t), apply_homeomorphism(s34, apply_homeomorphism(s23, t)));
  EXPECT_EQ(transport_clopen(FinitePermutation::transposition(2, 5), CellClopen{{2, 2, 1}}), (CellClopen{{5, 5, 1}}));
}

TEST(Homeomorphism, MembershipEquivariance) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Label> lab(1, 6);
  for (int trial = 0; trial < 100; ++trial) {
    std::map<Label, Label> m;
    std::vector<Label> perm{2, 3, 4, 5, 6};
    std::shuffle(perm.begin(), perm.end(), rng);
    for (Label x = 2; x <= 6; ++x) m[x] = perm[x - 2];
    const auto phi = FinitePermutation::from_map(m);
    PartialTable t;
    std::vector<Cell> bc;
    for (int k = 0; k < 6; ++k) {
      const Label a = lab(rng), b = lab(rng);
      if (a == 1 || b == 1) continue;
      const Label v = lab(rng);
      if (!t.has(a, b)) t.set(a, b, v);
      if (k % 2 == 0) bc.push_back({a, b, k % 4 == 0 ? v : lab(rng)});
    }
    if (bc.empty()) bc.push_back({2, 2, 3});
    std::map<std::pair<Label, Label>, Label> dedup;
    for (const auto& c : bc) dedup.emplace(std::pair{c.row, c.col}, c.value);
    std::vector<Cell> unique;
    for (const auto& [k, v] : dedup) unique.push_back({k.first, k.second, v});
    const CellClopen b(unique);
    EXPECT_EQ(satisfies_cell_clopen(apply_homeomorphism(phi, t), transport_clopen(phi, b)),
              satisfies_cell_clopen(t, b));
  }
}

TEST(FinitePermutation, ExtendingClosesTheMap) {
  const auto p = FinitePermutation::extending({{2, 7}, {3, 8}});
  EXPECT_EQ(p(2), 7u);
  EXPECT_EQ(p(3), 8u);
  EXPECT_EQ(p(7), 2u);
  EXPECT_EQ(p(8), 3u);
  EXPECT_EQ(p.compose(p.inverse()), FinitePermutation{});
}

TEST(TableJson, RoundTrip) {
  const PartialTable t{{2, 2, 1}, {2, 3, 4}};
  const nlohmann::json j = t;
  EXPECT_EQ(j.get<PartialTable>(), t);
}
