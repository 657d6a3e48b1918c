#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "baire/abelian.hpp"
#include "baire/catalog.hpp"
#include "oracles.hpp"

using namespace baire;

namespace {

AbelianElement c(std::uint64_t p, std::uint64_t i, std::uint64_t a, std::uint32_t m) {
  return AbelianElement::coord(p, i, a, m);
}

}  // namespace

TEST(Abelian, Addition) {
  EXPECT_TRUE(add(c(2, 0, 1, 1), c(2, 0, 1, 1)).is_identity());
  EXPECT_EQ(add(c(2, 0, 1, 2), c(2, 0, 1, 2)), c(2, 0, 1, 1));
  const auto x = add(c(2, 0, 3, 2), c(3, 1, 1, 1));
  EXPECT_TRUE(subtract(x, x).is_identity());
  EXPECT_TRUE(add(x, negate(x)).is_identity());
  EXPECT_EQ(c(2, 0, 2, 2), c(2, 0, 1, 1));
  EXPECT_THROW(c(4, 0, 1, 1), Error);
}

TEST(Abelian, Order) {
  EXPECT_EQ(order(AbelianElement{}), 1u);
  EXPECT_EQ(order(c(2, 0, 1, 3)), 8u);
  const auto x = add(c(2, 0, 1, 3), c(3, 1, 2, 2));
  EXPECT_EQ(order(x), 72u);
  std::uint64_t k = 1;
  for (auto acc = x; !acc.is_identity(); acc = add(acc, x)) ++k;
  EXPECT_EQ(k, 72u);
}

TEST(Abelian, Divide) {
  EXPECT_TRUE(divide(AbelianElement{}, 7).is_identity());
  EXPECT_EQ(divide(c(2, 0, 1, 2), 3), c(2, 0, 3, 2));
  EXPECT_EQ(divide(c(2, 0, 1, 1), 2), c(2, 0, 1, 2));
  EXPECT_THROW(divide(c(2, 0, 1, 1), 0), Error);
  std::mt19937_64 rng(3);
  const auto pool = oracle::elements_up_to_weight(9);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<std::uint64_t> kk(1, 30);
  for (int i = 0; i < 300; ++i) {
    const auto& x = pool[pick(rng)];
    const auto k = kk(rng);
    EXPECT_EQ(multiply(divide(x, k), k), x);
  }
}

TEST(Abelian, Overflow) { EXPECT_THROW(divide(c(2, 0, 1, 62), 2), Error); }

TEST(Abelian, AxiomsAgainstRationalOracle) {
  const auto pool = oracle::elements_up_to_weight(6);
  for (const auto& x : pool) {
    for (const auto& y : pool) EXPECT_TRUE(oracle::sum_matches(x, y, add(x, y)));
  }
}

TEST(Enumeration, WeightCounts) {
  // Counted independently by building every element of bounded weight.
  for (std::uint64_t w = 0; w <= 10; ++w) {
    EXPECT_EQ(count_up_to_weight(w), oracle::elements_up_to_weight(w).size()) << w;
  }
  EXPECT_EQ(count_up_to_weight(8), 138u);
}

TEST(Enumeration, Bijection) {
  EXPECT_TRUE(enumerate(1).is_identity());
  EXPECT_EQ(enumerate(2), c(2, 0, 1, 1));
  for (std::uint64_t n = 1; n <= 10000; ++n) ASSERT_EQ(encode(enumerate(n)), n) << n;
  for (std::uint64_t n = 1; n < 2000; ++n) EXPECT_TRUE(enumeration_less(enumerate(n), enumerate(n + 1)));
  for (const auto& x : oracle::elements_up_to_weight(8)) EXPECT_LE(encode(x), 138u);
}

TEST(PrefixTable, Shape) {
  EXPECT_EQ(a_prefix_table(1), (PartialTable{{1, 1, 1}}));
  const auto t = a_prefix_table(20);
  for (Label i = 1; i <= 20; ++i) {
    LabelSet row;
    for (Label j = 1; j <= 20; ++j) {
      ASSERT_TRUE(t.has(i, j));
      EXPECT_EQ(t.get(i, j), t.get(j, i));
      row.insert(*t.get(i, j));
    }
    EXPECT_EQ(row.size(), 20u);
  }
}

TEST(FinAbelian, Embeddings) {
  const auto c2 = embed_fin_abelian(FinAbelian{{2}});
  EXPECT_EQ(c2, std::vector<AbelianElement>{c(2, 0, 1, 1)});
  const auto c6 = fin_abelian_image(FinAbelian{{2, 3}}, embed_fin_abelian(FinAbelian{{2, 3}}));
  std::size_t order6 = 0;
  for (const auto& x : c6) order6 += order(x) == 6;
  EXPECT_EQ(order6, 2u);
  const auto v4 = embed_fin_abelian(FinAbelian{{2, 2}});
  ASSERT_EQ(v4.size(), 2u);
  EXPECT_EQ(v4[0], c(2, 0, 1, 1));
  EXPECT_EQ(v4[1], c(2, 1, 1, 1));
  for (const auto& h : fin_abelian_groups(16)) EXPECT_TRUE(verify_abelian_embedding(h, embed_fin_abelian(h))) << h.name();
  // Partition counts over prime powers for n = 1..16, trivial group included.
  EXPECT_EQ(fin_abelian_groups(16).size(), 25u);
}

TEST(FinAbelian, StructureOfCatalogGroups) {
  for (const auto& g : catalog(16, 16)) {
    if (!g.is_abelian()) {
      EXPECT_THROW(abelian_structure(g), Error);
      continue;
    }
    const auto st = abelian_structure(g);
    EXPECT_EQ(st.structure.order(), g.order());
    EXPECT_TRUE(verify_embedding(fin_abelian_group(st.structure), g, st.iso)) << g.name();
  }
}

TEST(Monitors, TorsionAndEmbedding) {
  const auto empty = abelian_monitors(PartialTable{}, 3);
  for (const auto& d : empty.divisibility) {
    if (d.n != 1) EXPECT_FALSE(d.witness);
  }
  const auto full = abelian_monitors(a_prefix_table(60), 5);
  for (const auto& t : full.torsion) EXPECT_TRUE(t.exponent.has_value()) << t.n;
  const PartialTable c4{{2, 2, 3}, {2, 3, 4}, {3, 2, 4}, {3, 3, 1}, {2, 4, 1}, {4, 2, 1}, {4, 4, 3}, {3, 4, 2}, {4, 3, 2}};
  const auto r = abelian_monitors(c4, 4);
  bool c4_seen = false;
  for (const auto& e : r.embedding) c4_seen |= e.group == FinAbelian{{4}} && e.image.has_value();
  EXPECT_TRUE(c4_seen);
}

TEST(AbelianJson, RoundTrip) {
  const auto x = add(c(2, 0, 1, 3), c(5, 2, 3, 1));
  const nlohmann::json j = x;
  EXPECT_EQ(j.get<AbelianElement>(), x);
}
