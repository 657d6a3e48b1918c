#pragma once

// Brute-force reference implementations. They share no code with the
// library beyond the FinGroup multiplication table and the data types, so a
// disagreement points at one side or the other.

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "baire/abelian.hpp"
#include "baire/fingroup.hpp"
#include "baire/table.hpp"
#include "baire/word.hpp"

namespace oracle {

using baire::FinGroup;
using baire::Label;

inline Label eval(const baire::Word& w, const FinGroup& g, const std::vector<Label>& s) {
  Label acc = 1;
  for (const auto& l : w.letters()) {
    Label x = l.is_variable() ? s.at(l.id) : l.id;
    if (l.exponent < 0) {
      for (Label y = 1; y <= g.order(); ++y) {
        if (g.mul(x, y) == 1) {
          x = y;
          break;
        }
      }
    }
    acc = g.mul(acc, x);
  }
  return acc;
}

inline bool satisfies(const baire::EqSystem& sys, const FinGroup& g, const std::vector<Label>& s) {
  for (const auto& w : sys.equations) {
    if (eval(w, g, s) != 1) return false;
  }
  for (const auto& w : sys.inequations) {
    if (eval(w, g, s) == 1) return false;
  }
  return true;
}

/// Every assignment in lexicographic order; the first that works.
inline std::optional<std::vector<Label>> solve(const baire::EqSystem& sys, const FinGroup& g) {
  std::vector<Label> s(sys.var_count, 1);
  while (true) {
    if (satisfies(sys, g, s)) return s;
    std::size_t i = s.size();
    while (i > 0 && s[i - 1] == g.order()) s[--i] = 1;
    if (i == 0) return std::nullopt;
    ++s[i - 1];
  }
}

inline std::set<Label> closure(const FinGroup& g, std::set<Label> s) {
  s.insert(1);
  bool grew = true;
  while (grew) {
    grew = false;
    for (Label a : std::vector<Label>(s.begin(), s.end())) {
      for (Label b : std::vector<Label>(s.begin(), s.end())) {
        grew |= s.insert(g.mul(a, b)).second;
      }
    }
  }
  return s;
}

inline Label inverse(const FinGroup& g, Label a) {
  for (Label y = 1; y <= g.order(); ++y) {
    if (g.mul(a, y) == 1) return y;
  }
  return 0;
}

/// Simple iff the conjugacy-closed subgroup generated by each x != 1 is all
/// of g.
inline bool simple(const FinGroup& g) {
  if (g.order() == 1) return false;
  for (Label x = 2; x <= g.order(); ++x) {
    std::set<Label> conj;
    for (Label y = 1; y <= g.order(); ++y) conj.insert(g.mul(g.mul(inverse(g, y), x), y));
    if (closure(g, conj).size() != g.order()) return false;
  }
  return true;
}

inline std::size_t element_order(const FinGroup& g, Label a) {
  std::size_t k = 1;
  for (Label x = a; x != 1; x = g.mul(x, a)) ++k;
  return k;
}

/// Conjugators y with y^-1 h_i y = alpha_i for all i.
inline std::vector<Label> conjugators(const FinGroup& g, const std::vector<Label>& h, const std::vector<Label>& alpha) {
  std::vector<Label> out;
  for (Label y = 1; y <= g.order(); ++y) {
    bool ok = true;
    for (std::size_t i = 0; i < h.size() && ok; ++i) ok = g.mul(g.mul(inverse(g, y), h[i]), y) == alpha[i];
    if (ok) out.push_back(y);
  }
  return out;
}

/// Rational arithmetic in Q/Z per (p, copy), with no reduction tricks: the
/// value a/p^m is kept as a pair and compared after cross-multiplying.
struct Coord {
  __int128 num;
  __int128 den;
};

inline std::map<std::pair<std::uint64_t, std::uint64_t>, Coord> to_rationals(const baire::AbelianElement& x) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, Coord> out;
  for (const auto& c : x.coords()) {
    __int128 d = 1;
    for (std::uint32_t i = 0; i < c.m; ++i) d *= c.p;
    out[{c.p, c.i}] = Coord{static_cast<__int128>(c.a), d};
  }
  return out;
}

inline bool same_mod_one(Coord x, Coord y) {
  const __int128 lhs = x.num * y.den - y.num * x.den;
  const __int128 den = x.den * y.den;
  return lhs % den == 0;
}

/// x + y computed on rationals, compared to z.
inline bool sum_matches(const baire::AbelianElement& x, const baire::AbelianElement& y, const baire::AbelianElement& z) {
  auto rx = to_rationals(x), ry = to_rationals(y), rz = to_rationals(z);
  std::set<std::pair<std::uint64_t, std::uint64_t>> keys;
  for (auto* m : {&rx, &ry, &rz}) {
    for (const auto& [k, v] : *m) keys.insert(k);
  }
  for (const auto& k : keys) {
    const Coord a = rx.contains(k) ? rx[k] : Coord{0, 1};
    const Coord b = ry.contains(k) ? ry[k] : Coord{0, 1};
    const Coord c = rz.contains(k) ? rz[k] : Coord{0, 1};
    const Coord s{a.num * b.den + b.num * a.den, a.den * b.den};
    if (!same_mod_one(s, c)) return false;
  }
  return true;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Every element of weight <= w (weight of a coordinate a/p^m in copy i is
/// p^m + i), built from scratch.
inline std::vector<baire::AbelianElement> elements_up_to_weight(std::uint64_t w) {
  struct Slot {
    std::uint64_t p, i;
    std::uint32_t m;
    std::uint64_t cost;
  };
  std::vector<Slot> slots;
  for (std::uint64_t p = 2; p <= w; ++p) {
    if (!is_prime(p)) continue;
    std::uint64_t q = p;
    for (std::uint32_t m = 1; q <= w; ++m, q *= p) {
      for (std::uint64_t i = 0; q + i <= w; ++i) slots.push_back({p, i, m, q + i});
    }
  }
  std::vector<baire::AbelianElement> out;
  std::vector<baire::PruferCoord> chosen;
  std::set<std::pair<std::uint64_t, std::uint64_t>> used;
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t from, std::uint64_t left) {
    out.push_back(baire::AbelianElement::from_coords(chosen));
    for (std::size_t s = from; s < slots.size(); ++s) {
      const auto& sl = slots[s];
      if (sl.cost > left || used.contains({sl.p, sl.i})) continue;
      std::uint64_t d = 1;
      for (std::uint32_t k = 0; k < sl.m; ++k) d *= sl.p;
      used.insert({sl.p, sl.i});
      for (std::uint64_t a = 1; a < d; ++a) {
        if (a % sl.p == 0) continue;
        chosen.push_back({sl.p, sl.i, a, sl.m});
        rec(s + 1, left - sl.cost);
        chosen.pop_back();
      }
      used.erase({sl.p, sl.i});
    }
  };
  rec(0, w);
  return out;
}

/// A random subset of g's cells (a, b) -> ab, with at least one cell.
inline baire::PartialTable random_subtable(const FinGroup& g, std::mt19937_64& rng, double density) {
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<Label> any(1, static_cast<Label>(g.order()));
  baire::PartialTable t;
  for (Label a = 2; a <= g.order(); ++a) {
    for (Label b = 2; b <= g.order(); ++b) {
      if (keep(rng)) t.set(a, b, g.mul(a, b));
    }
  }
  if (t.empty()) {
    const Label a = any(rng), b = any(rng);
    t.set(a, b, g.mul(a, b));
  }
  return t;
}

}  // namespace oracle
