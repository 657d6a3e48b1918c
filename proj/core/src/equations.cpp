#include "baire/equations.hpp"

#include <algorithm>

#include "baire/catalog.hpp"

namespace baire {

Label evaluate(const Word& w, const FinGroup& g, const Assignment& s) {
  Label acc = kIdentity;
  for (const auto& l : w.letters()) {
    Label x;
    if (l.is_variable()) {
      if (l.id >= s.size() || s[l.id] == 0) {
        throw Error(ErrorKind::InvalidArgument, "variable x" + std::to_string(l.id) + " is unassigned");
      }
      x = s[l.id];
    } else {
      x = l.id;
      if (!g.contains(x)) throw Error(ErrorKind::UnknownConstant, "constant c" + std::to_string(x) + " not in group");
    }
    if (!g.contains(x)) throw Error(ErrorKind::InvalidArgument, "assigned label outside the group");
    acc = g.mul(acc, l.exponent < 0 ? g.inv(x) : x);
  }
  return acc;
}

bool verify_solution(const EqSystem& sys, const FinGroup& g, const Assignment& s) {
  if (s.size() != sys.var_count) return false;
  for (const auto& w : sys.equations) {
    if (evaluate(w, g, s) != kIdentity) return false;
  }
  for (const auto& w : sys.inequations) {
    if (evaluate(w, g, s) == kIdentity) return false;
  }
  return true;
}

namespace {

class Solver {
 public:
  Solver(const EqSystem& sys, const FinGroup& g) : sys_(sys), g_(g) {
    const std::size_t n = sys.var_count;
    value_.assign(n, 0);
    watch_.resize(n);
    auto add = [&](const Word& w, bool equation) {
      Constraint c{&w, equation, {}, 0};
      for (const auto& l : w.letters()) {
        if (l.is_variable() && std::find(c.vars.begin(), c.vars.end(), l.id) == c.vars.end()) c.vars.push_back(l.id);
      }
      c.open = c.vars.size();
      for (auto v : c.vars) watch_[v].push_back(constraints_.size());
      constraints_.push_back(std::move(c));
    };
    for (const auto& w : sys.equations) add(w, true);
    for (const auto& w : sys.inequations) add(w, false);
  }

  std::optional<Assignment> run() {
    // Constraints with no variables at all.
    for (std::size_t c = 0; c < constraints_.size(); ++c) {
      if (constraints_[c].open == 0 && !holds(c)) return std::nullopt;
    }
    for (std::size_t c = 0; c < constraints_.size(); ++c) {
      if (!force_from(c)) return std::nullopt;
    }
    if (search()) return value_;
    return std::nullopt;
  }

 private:
  struct Constraint {
    const Word* word;
    bool equation;
    std::vector<std::uint32_t> vars;
    std::size_t open;
  };

  bool holds(std::size_t c) const {
    const auto& con = constraints_[c];
    const bool is_one = eval(*con.word) == kIdentity;
    return con.equation == is_one;
  }

  Label eval(const Word& w) const {
    Label acc = kIdentity;
    for (const auto& l : w.letters()) {
      const Label x = l.is_variable() ? value_[l.id] : l.id;
      acc = g_.mul(acc, l.exponent < 0 ? g_.inv(x) : x);
    }
    return acc;
  }

  // For an equation whose single open variable occurs once, assign it.
  bool force_from(std::size_t c) {
    const auto& con = constraints_[c];
    if (!con.equation || con.open != 1) return true;
    std::uint32_t var = 0;
    for (auto v : con.vars) {
      if (value_[v] == 0) var = v;
    }
    if (value_[var] != 0) return true;
    const auto& ls = con.word->letters();
    std::size_t pos = ls.size(), count = 0;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      if (ls[i].is_variable() && ls[i].id == var) {
        pos = i;
        ++count;
      }
    }
    if (count != 1) return true;
    Label a = kIdentity, b = kIdentity;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      if (i == pos) continue;
      const Label x = ls[i].is_variable() ? value_[ls[i].id] : ls[i].id;
      const Label y = ls[i].exponent < 0 ? g_.inv(x) : x;
      if (i < pos) {
        a = g_.mul(a, y);
      } else {
        b = g_.mul(b, y);
      }
    }
    // a x^e b = 1  =>  x^e = a^-1 b^-1
    Label v = g_.mul(g_.inv(a), g_.inv(b));
    if (ls[pos].exponent < 0) v = g_.inv(v);
    return assign(var, v);
  }

  bool assign(std::uint32_t var, Label v) {
    value_[var] = v;
    trail_.push_back(var);
    for (auto c : watch_[var]) --constraints_[c].open;
    for (auto c : watch_[var]) {
      if (constraints_[c].open == 0 && !holds(c)) return false;
    }
    for (auto c : watch_[var]) {
      if (!force_from(c)) return false;
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const auto var = trail_.back();
      trail_.pop_back();
      for (auto c : watch_[var]) ++constraints_[c].open;
      value_[var] = 0;
    }
  }

  bool search() {
    std::uint32_t var = 0;
    while (var < value_.size() && value_[var] != 0) ++var;
    if (var == value_.size()) return true;
    for (Label v = 1; v <= g_.order(); ++v) {
      const std::size_t mark = trail_.size();
      if (assign(var, v) && search()) return true;
      undo(mark);
    }
    return false;
  }

  const EqSystem& sys_;
  const FinGroup& g_;
  std::vector<Constraint> constraints_;
  std::vector<std::vector<std::size_t>> watch_;
  std::vector<Label> value_;
  std::vector<std::uint32_t> trail_;
};

}  // namespace

std::optional<Assignment> solve(const EqSystem& sys, const FinGroup& g, std::size_t var_limit) {
  sys.validate();
  if (sys.var_count > var_limit) {
    throw Error(ErrorKind::LimitExceeded, "system has " + std::to_string(sys.var_count) +
                                              " variables, limit is " + std::to_string(var_limit));
  }
  for (Label c : sys.constants()) {
    if (!g.contains(c)) throw Error(ErrorKind::UnknownConstant, "constant c" + std::to_string(c) + " not in group");
  }
  auto sol = Solver(sys, g).run();
  if (sol && !verify_solution(sys, g, *sol)) {
    throw Error(ErrorKind::InvalidArgument, "internal: solver returned an unverified assignment");
  }
  return sol;
}

EqSystem conjugation_system(const std::vector<Label>& h_gens, const std::vector<Label>& alpha_images) {
  if (h_gens.size() != alpha_images.size()) {
    throw Error(ErrorKind::LengthMismatch, "h and alpha(h) must have the same length");
  }
  EqSystem sys;
  sys.var_count = 1;
  for (std::size_t i = 0; i < h_gens.size(); ++i) {
    sys.equations.push_back(Word({Letter::var(0, -1), Letter::constant(h_gens[i]), Letter::var(0),
                                  Letter::constant(alpha_images[i], -1)}));
  }
  return sys;
}

EqSystem map_constants(const EqSystem& sys, const std::function<Label(Label)>& f) {
  auto map_word = [&](const Word& w) {
    std::vector<Letter> ls = w.letters();
    for (auto& l : ls) {
      if (l.is_constant()) l.id = f(l.id);
    }
    return Word(std::move(ls));
  };
  EqSystem out;
  out.var_count = sys.var_count;
  for (const auto& w : sys.equations) out.equations.push_back(map_word(w));
  for (const auto& w : sys.inequations) out.inequations.push_back(map_word(w));
  return out;
}

std::optional<ConsistencyWitness> consistency_search(const EqSystem& sys, const FinGroup& g, std::size_t max_order,
                                                     std::size_t var_limit) {
  if (auto sol = solve(sys, g, var_limit)) {
    return ConsistencyWitness{g, Embedding::identity(g.order()), sys, std::move(*sol)};
  }
  std::optional<ConsistencyWitness> found;
  for (const auto& h : catalog(max_order, std::max(max_order, kDefaultCatalogLimit))) {
    if (h.order() <= g.order() || h.order() % g.order() != 0) continue;
    for_each_embedding(g, h, [&](const Embedding& e) {
      auto moved = map_constants(sys, [&](Label c) { return e(c); });
      if (auto sol = solve(moved, h, var_limit)) {
        found = ConsistencyWitness{h, e, std::move(moved), std::move(*sol)};
        return false;
      }
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

Assignment product_transport(const Assignment& sol, const FinGroup& g, const FinGroup& h) {
  const ProductGroup shape{FinGroup{}, g.order(), h.order()};
  Assignment out;
  out.reserve(sol.size());
  for (Label v : sol) {
    if (!h.contains(v)) throw Error(ErrorKind::InvalidArgument, "assignment value outside the group");
    out.push_back(shape.pair(kIdentity, v));
  }
  return out;
}

EqSystem lift_system(const EqSystem& sys, const FinGroup& g, const FinGroup& h) {
  const ProductGroup shape{FinGroup{}, g.order(), h.order()};
  return map_constants(sys, [&](Label c) {
    if (!h.contains(c)) throw Error(ErrorKind::UnknownConstant, "constant c" + std::to_string(c) + " not in group");
    return shape.pair(kIdentity, c);
  });
}

EqSystem clopen_to_system(const CellClopen& b) {
  supp(b);  // NotSquareForm check
  const Label k = *b.square_size();
  const DiagramLayout layout{k};
  // The element each variable stands for.
  std::vector<Label> denotes(layout.var_count());
  for (Label i = 1; i <= k; ++i) denotes[layout.point(i)] = i;
  for (const auto& [key, value] : b.map()) denotes[layout.product(key.first, key.second)] = value;
  EqSystem sys;
  sys.var_count = layout.var_count();
  for (Label i = 1; i <= k; ++i) {
    for (Label j = 1; j <= k; ++j) {
      sys.equations.push_back(
          Word({Letter::var(layout.point(i)), Letter::var(layout.point(j)), Letter::var(layout.product(i, j), -1)}));
    }
  }
  for (std::uint32_t u = 0; u < sys.var_count; ++u) {
    for (std::uint32_t v = u + 1; v < sys.var_count; ++v) {
      Word w({Letter::var(u), Letter::var(v, -1)});
      if (denotes[u] == denotes[v]) {
        sys.equations.push_back(std::move(w));
      } else {
        sys.inequations.push_back(std::move(w));
      }
    }
  }
  return sys;
}

std::optional<std::map<Label, Label>> diagram_relabeling(const CellClopen& b, const FinGroup& g,
                                                         const Assignment& sol) {
  supp(b);
  const Label k = *b.square_size();
  const DiagramLayout layout{k};
  if (sol.size() != layout.var_count()) return std::nullopt;
  std::map<Label, Label> psi;
  std::map<Label, Label> back;
  auto bind = [&](Label from, Label to) {
    if (!g.contains(to)) return false;
    auto [it, fresh] = psi.emplace(from, to);
    if (!fresh && it->second != to) return false;
    auto [jt, fresh2] = back.emplace(to, from);
    return fresh2 || jt->second == from;
  };
  for (Label i = 1; i <= k; ++i) {
    if (!bind(i, sol[layout.point(i)])) return std::nullopt;
  }
  for (const auto& [key, value] : b.map()) {
    if (!bind(value, sol[layout.product(key.first, key.second)])) return std::nullopt;
  }
  for (const auto& [key, value] : b.map()) {
    if (g.mul(psi.at(key.first), psi.at(key.second)) != psi.at(value)) return std::nullopt;
  }
  return psi;
}

}  // namespace baire
