#include <algorithm>
#include <functional>
#include <random>

#include "baire/catalog.hpp"
#include "baire/game.hpp"

namespace baire {

namespace {

constexpr std::uint64_t kTableLimit = 4096;
// Abelian witnesses are only expanded to a Cayley table up to this order.
constexpr std::uint64_t kAbelianTableLimit = 256;
constexpr std::uint64_t kGeneralGrowthCap = 1024;
constexpr std::uint64_t kRandomGeneralCap = 256;
constexpr std::uint64_t kRandomAbelianCap = std::uint64_t{1} << 16;

[[noreturn]] void blocked(const std::string& why) { throw Error(ErrorKind::GoalBlocked, why); }

std::uint64_t prime_of(std::uint64_t q) {
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p == 0) return p;
  }
  return q;
}

// A position plus a witness, with the cells written so far. Every label the
// table mentions stays in the labelling, so the witness verifies after each
// write.
class MoveBuilder {
 public:
  MoveBuilder(const GameState& s) : table_(s.table), mode_(s.mode()), step_(s.step) {
    if (!s.witness()) throw Error(ErrorKind::InvalidArgument, "no current witness to build a move on");
    witness_ = *s.witness();
    for (const auto& [l, g] : witness_.labeling) back_[g] = l;
  }

  Mode mode() const { return mode_; }
  const PartialTable& table() const { return table_; }
  const Witness& witness() const { return witness_; }
  std::uint64_t order() const { return group_order(witness_.group); }
  Label bound() const { return static_cast<Label>(step_ + 1); }

  std::optional<Label> image(Label l) const {
    auto it = witness_.labeling.find(l);
    if (it == witness_.labeling.end()) return std::nullopt;
    return it->second;
  }
  std::optional<Label> label_of(Label g) const {
    auto it = back_.find(g);
    if (it == back_.end()) return std::nullopt;
    return it->second;
  }

  bool exhausted() const { return back_.size() >= order(); }

  Label fresh_label() const {
    Label l = 2;
    while (witness_.labeling.contains(l)) ++l;
    return l;
  }

  void bind(Label l, Label g) {
    witness_.labeling[l] = g;
    back_[g] = l;
  }

  Label ensure_label(Label g) {
    if (auto l = label_of(g)) return *l;
    const Label l = fresh_label();
    bind(l, g);
    return l;
  }

  Label mul(Label a, Label b) const { return group_mul(witness_.group, *image(a), *image(b)); }

  // Writes a*b (and b*a in abelian mode); both must be labelled.
  Label write(Label a, Label b) {
    const Label v = ensure_label(mul(a, b));
    put(a, b, v);
    if (mode_ == Mode::Abelian) put(b, a, v);
    return v;
  }

  // Rows and columns of a and its inverse both get a 1.
  Label write_inverse(Label a) {
    const Label inv = ensure_label(group_inv(witness_.group, *image(a)));
    write(a, inv);
    write(inv, a);
    return inv;
  }

  Label smallest_unused() const {
    for (Label g = 2; g <= order(); ++g) {
      if (!back_.contains(g)) return g;
    }
    throw Error(ErrorKind::LimitExceeded, "witness group is exhausted");
  }

  template <class Rng>
  Label random_unused(Rng& rng) const {
    std::uniform_int_distribution<std::uint64_t> pick(2, order());
    for (int tries = 0; tries < 16; ++tries) {
      const auto g = static_cast<Label>(pick(rng));
      if (!back_.contains(g)) return g;
    }
    return smallest_unused();
  }

  // General mode: K x G, old labels keep their elements since (1, g) = g.
  void grow(const FinGroup& k) {
    if (mode_ == Mode::Abelian) {
      auto st = abelian_structure(k);
      append_factors(st.structure);
      return;
    }
    const auto g = std::get<FinGroup>(witness_.group);
    if (k.order() * g.order() > kDefaultProductLimit) throw Error(ErrorKind::LimitExceeded, "witness would be too large");
    witness_.group = direct_product(k, g).group;
  }

  // Abelian mode: G + H, element x of H at 1 + |G| (x - 1).
  std::uint64_t append_factors(const FinAbelian& h) {
    auto w = std::get<FinAbelian>(witness_.group);
    const std::uint64_t stride = w.order();
    if (stride * h.order() > kMaxWitnessOrder) throw Error(ErrorKind::LimitExceeded, "witness would be too large");
    w.factors.insert(w.factors.end(), h.factors.begin(), h.factors.end());
    witness_.group = w;
    return stride;
  }

  // Replaces the witness by one containing the old through `emb`.
  void rebase(WitnessGroup g, const std::function<Label(Label)>& emb) {
    witness_.group = std::move(g);
    back_.clear();
    for (auto& [l, x] : witness_.labeling) {
      x = emb(x);
      back_[x] = l;
    }
  }

  // Gives unlabelled labels of the block elements, then fills the block and
  // the rule-3 obligations.
  template <class Choose>
  void fill_block(Choose choose) {
    for (Label i = 1; i <= bound(); ++i) {
      if (image(i)) continue;
      if (exhausted()) grow_minimal();
      bind(i, choose(*this));
    }
    for (Label i = 1; i <= bound(); ++i) {
      for (Label j = 1; j <= bound(); ++j) {
        if (!table_.has(i, j)) write(i, j);
      }
    }
    for (Label i = 1; i <= bound(); ++i) {
      if (!table_.row_has_identity(i) || !table_.col_has_identity(i)) write_inverse(i);
    }
  }

  void grow_minimal() {
    if (mode_ == Mode::Abelian) {
      append_factors(FinAbelian{{2}});
    } else {
      grow(cyclic_group(2));
    }
  }

  Move move() const { return Move{cells_}; }
  bool touched() const { return !cells_.empty(); }

 private:
  void put(Label a, Label b, Label v) {
    if (auto old = table_.get(a, b)) {
      if (*old != v) throw Error(ErrorKind::InvalidArgument, "internal: witness disagrees with the table");
      return;
    }
    table_.set(a, b, v);
    cells_.push_back(Cell{a, b, v});
  }

  PartialTable table_;
  Mode mode_;
  std::size_t step_;
  Witness witness_;
  std::map<Label, Label> back_;
  std::vector<Cell> cells_;
};

std::uint64_t table_limit(const MoveBuilder& b) {
  return b.mode() == Mode::Abelian ? kAbelianTableLimit : kTableLimit;
}

Label smallest_choice(const MoveBuilder& b) { return b.smallest_unused(); }

// Cells that make evaluate_in_table reach the end of w.
void pin_word(MoveBuilder& b, const Word& w, const std::vector<Label>& params) {
  Label acc = kIdentity;
  for (const auto& letter : w.letters()) {
    Label x = letter.is_variable() ? params.at(letter.id) : letter.id;
    if (letter.exponent < 0 && x != kIdentity) {
      if (auto inv = b.table().inverse_of(x)) {
        x = *inv;
      } else {
        x = b.write_inverse(x);
      }
    }
    if (auto next = b.table().product(acc, x)) {
      acc = *next;
    } else {
      acc = b.write(acc, x);
    }
  }
}

// ---------------------------------------------------------------------------
// Goal realizations. Each either extends b so that check_goal succeeds with
// the returned hint, or throws GoalBlocked.

nlohmann::json realize_inverse(MoveBuilder& b, const InverseGoal& g) {
  if (!b.image(g.n)) {
    if (b.exhausted()) b.grow_minimal();
    b.bind(g.n, b.smallest_unused());
  }
  return {{"inverse", b.write_inverse(g.n)}};
}

nlohmann::json write_power_chain(MoveBuilder& b, Label m, std::uint64_t k) {
  Label acc = m;
  for (std::uint64_t j = 1; j < k; ++j) {
    if (auto next = b.table().product(acc, m)) {
      acc = *next;
    } else {
      acc = b.write(acc, m);
    }
  }
  return {{"m", m}};
}

nlohmann::json realize_divisibility(MoveBuilder& b, const DivisibilityGoal& g) {
  if (!b.image(g.n)) {
    if (b.exhausted()) b.grow_minimal();
    b.bind(g.n, b.smallest_unused());
  }
  const Label target = *b.image(g.n);
  if (b.mode() == Mode::General) {
    const auto& grp = std::get<FinGroup>(b.witness().group);
    for (Label m = 1; m <= grp.order(); ++m) {
      if (grp.pow(m, static_cast<long long>(g.k)) == target) return write_power_chain(b, b.ensure_label(m), g.k);
    }
    blocked("no " + std::to_string(g.k) + "-th root of " + std::to_string(g.n) + " in " + group_name(b.witness().group));
  }
  // Send the witness into A, divide there, and enlarge the cyclic factors
  // until they hold the quotient.
  const auto h = std::get<FinAbelian>(b.witness().group);
  const auto gens = embed_fin_abelian(h);
  const auto coords = fin_abelian_coordinates(h, target);
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> factor_of;  // (p, copy) -> factor
  std::map<std::uint64_t, std::uint64_t> next_copy;
  for (std::size_t j = 0; j < h.factors.size(); ++j) factor_of[{prime_of(h.factors[j]), next_copy[prime_of(h.factors[j])]++}] = j;
  AbelianElement x;
  for (std::size_t j = 0; j < h.factors.size(); ++j) x = add(x, multiply(gens[j], coords[j]));
  const auto y = divide(x, g.k);
  FinAbelian bigger = h;
  std::vector<std::uint64_t> m_coords(h.factors.size(), 0);
  for (const auto& c : y.coords()) {
    const auto j = factor_of.at({c.p, c.i});
    bigger.factors[j] = std::max(bigger.factors[j], c.denominator());
  }
  if (bigger.order() > kMaxWitnessOrder) blocked("root of " + std::to_string(g.n) + " needs a witness past the order cap");
  for (const auto& c : y.coords()) {
    const auto j = factor_of.at({c.p, c.i});
    m_coords[j] = static_cast<std::uint64_t>((static_cast<unsigned __int128>(c.a) * (bigger.factors[j] / c.denominator())) %
                                             bigger.factors[j]);
  }
  auto to_label = [&](const std::vector<std::uint64_t>& e) {
    std::uint64_t out = 0, stride = 1;
    for (std::size_t j = 0; j < e.size(); ++j) {
      out += e[j] * stride;
      stride *= bigger.factors[j];
    }
    return static_cast<Label>(out + 1);
  };
  if (bigger != h) {
    b.rebase(bigger, [&](Label old) {
      auto e = fin_abelian_coordinates(h, old);
      for (std::size_t j = 0; j < e.size(); ++j) e[j] *= bigger.factors[j] / h.factors[j];
      return to_label(e);
    });
  }
  const Label m = b.ensure_label(to_label(m_coords));
  return write_power_chain(b, m, g.k);
}

nlohmann::json pin_embedding(MoveBuilder& b, const FinGroup& h, const std::function<Label(Label)>& elem) {
  std::vector<Label> image(h.order());
  for (Label a = 1; a <= h.order(); ++a) image[a - 1] = b.ensure_label(elem(a));
  for (Label a = 1; a <= h.order(); ++a) {
    for (Label c = 1; c <= h.order(); ++c) {
      if (!b.table().has(image[a - 1], image[c - 1])) b.write(image[a - 1], image[c - 1]);
    }
  }
  return {{"image", image}};
}

nlohmann::json realize_embed(MoveBuilder& b, const EmbedGoal& g) {
  const auto& h = g.group;
  if (b.mode() == Mode::Abelian) {
    if (!h.is_abelian()) blocked(h.name() + " is not Abelian");
    if (b.order() <= kAbelianTableLimit) {
      if (auto e = embed_search(h, group_table(b.witness().group))) return pin_embedding(b, h, *e);
    }
    const auto st = abelian_structure(h);
    std::vector<Label> pre(h.order());  // h label -> structure label
    for (Label x = 1; x <= h.order(); ++x) pre[st.iso(x) - 1] = x;
    std::uint64_t stride;
    try {
      stride = b.append_factors(st.structure);
    } catch (const Error& e) {
      blocked(e.what());
    }
    return pin_embedding(b, h, [&](Label a) { return static_cast<Label>(1 + stride * (pre[a - 1] - 1)); });
  }
  const auto& grp = std::get<FinGroup>(b.witness().group);
  if (auto e = embed_search(h, grp)) return pin_embedding(b, h, *e);
  const std::uint64_t n = grp.order();
  if (h.order() * n > kDefaultProductLimit) blocked("no room to embed " + h.name() + " next to " + grp.name());
  b.grow(h);
  return pin_embedding(b, h, [&](Label a) { return static_cast<Label>((a - 1) * n + 1); });
}

nlohmann::json pin_solution(MoveBuilder& b, const EqSystem& sys, const Assignment& sol) {
  std::vector<Label> params;
  for (Label x : sol) params.push_back(b.ensure_label(x));
  for (const auto& w : sys.equations) pin_word(b, w, params);
  for (const auto& w : sys.inequations) pin_word(b, w, params);
  return {{"assignment", params}};
}

nlohmann::json realize_solve(MoveBuilder& b, const SolveGoal& g, const GameConfig& cfg) {
  const auto& sys = g.system;
  for (Label c : sys.constants()) {
    if (c != kIdentity && !b.image(c)) blocked("constant c" + std::to_string(c) + " is not on the table yet");
  }
  auto to_elements = [&](const EqSystem& s) { return map_constants(s, [&](Label c) { return *b.image(c); }); };
  const auto mapped = to_elements(sys);
  try {
    if (b.order() <= table_limit(b)) {
      const auto grp = group_table(b.witness().group);
      if (auto sol = solve(mapped, grp, cfg.var_limit)) return pin_solution(b, sys, *sol);
    }
    const bool abelian = b.mode() == Mode::Abelian;
    if (sys.constants().empty() || sys.constants() == LabelSet{kIdentity}) {
      for (const auto& k : catalog(std::min(cfg.consistency_order, kCatalogHardLimit),
                                   std::max(cfg.consistency_order, kDefaultCatalogLimit))) {
        if (abelian && !k.is_abelian()) continue;
        auto sol = solve(mapped, k, cfg.var_limit);
        if (!sol) continue;
        if (abelian) {
          const auto st = abelian_structure(k);
          std::vector<Label> pre(k.order());
          for (Label x = 1; x <= k.order(); ++x) pre[st.iso(x) - 1] = x;
          const auto stride = b.append_factors(st.structure);
          for (auto& x : *sol) x = static_cast<Label>(1 + stride * (pre[x - 1] - 1));
        } else {
          const std::uint64_t n = b.order();
          b.grow(k);
          for (auto& x : *sol) x = static_cast<Label>((x - 1) * n + 1);
        }
        return pin_solution(b, sys, *sol);
      }
      blocked("no catalog group solves the system");
    }
    if (!abelian && b.order() <= cfg.consistency_order) {
      const auto grp = std::get<FinGroup>(b.witness().group);
      if (auto cw = consistency_search(mapped, grp, cfg.consistency_order, cfg.var_limit)) {
        const auto emb = cw->embedding;
        b.rebase(cw->group, [&](Label x) { return emb(x); });
        return pin_solution(b, sys, cw->solution);
      }
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::GoalBlocked) throw;
    blocked(e.what());
  }
  blocked("no solution within the witness or its small extensions");
}

nlohmann::json realize_clopen(MoveBuilder& b, const ClopenGoal& g, const GameConfig& cfg) {
  const auto& target = g.clopen;
  const auto cells = target.constraints();
  for (const auto& c : cells) {
    if (auto v = b.table().get(c.row, c.col); v && *v != c.value) blocked("cell conflicts with the table");
  }
  auto write_target = [&]() {
    for (const auto& c : cells) {
      if (b.table().has(c.row, c.col)) continue;
      if (b.write(c.row, c.col) != c.value) throw Error(ErrorKind::InvalidArgument, "internal: clopen relabelling");
    }
    return nlohmann::json::object();
  };
  const auto tlabels = target.as_table().labels();
  bool disjoint = true;
  for (Label l : tlabels) disjoint = disjoint && (l == kIdentity || !b.image(l));
  if (disjoint) {
    auto budget = cfg.budget;
    budget.abelian_only = b.mode() == Mode::Abelian;
    const auto v = check_extendable(target.as_table(), budget);
    if (v.kind != Verdict::Extends) blocked("no witness for the clopen set: " + v.reason);
    const auto& k = *v.witness;
    try {
      if (b.mode() == Mode::Abelian) {
        const auto st = abelian_structure(k);
        std::vector<Label> pre(k.order());
        for (Label x = 1; x <= k.order(); ++x) pre[st.iso(x) - 1] = x;
        const auto stride = b.append_factors(st.structure);
        for (const auto& [l, x] : v.labeling) {
          if (l != kIdentity) b.bind(l, static_cast<Label>(1 + stride * (pre[x - 1] - 1)));
        }
      } else {
        const std::uint64_t n = b.order();
        b.grow(k);
        for (const auto& [l, x] : v.labeling) {
          if (l != kIdentity) b.bind(l, static_cast<Label>((x - 1) * n + 1));
        }
      }
    } catch (const Error& e) {
      blocked(e.what());
    }
    return write_target();
  }
  if (b.order() > table_limit(b)) blocked("witness too large to search");
  PartialTable joint = b.table();
  for (const auto& c : cells) joint.set(c);
  for (const auto& [l, x] : b.witness().labeling) {
    if (l != kIdentity) joint.set(l, kIdentity, l);
  }
  std::uint64_t nodes = 0;
  const auto grp = group_table(b.witness().group);
  auto lab = find_labeling(joint, grp, nodes, cfg.budget.node_limit, b.witness().labeling);
  if (!lab) blocked("no labelling of the clopen set inside " + group_name(b.witness().group));
  for (const auto& [l, x] : *lab) {
    if (!b.image(l)) b.bind(l, x);
  }
  return write_target();
}

nlohmann::json realize(MoveBuilder& b, const Goal& goal, const GameConfig& cfg) {
  return std::visit(
      [&](const auto& g) -> nlohmann::json {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, EmbedGoal>) {
          return realize_embed(b, g);
        } else if constexpr (std::is_same_v<T, DivisibilityGoal>) {
          return realize_divisibility(b, g);
        } else if constexpr (std::is_same_v<T, InverseGoal>) {
          return realize_inverse(b, g);
        } else if constexpr (std::is_same_v<T, SolveGoal>) {
          return realize_solve(b, g, cfg);
        } else {
          return realize_clopen(b, g, cfg);
        }
      },
      goal);
}

// ---------------------------------------------------------------------------

class RandomLegal : public Strategy {
 public:
  explicit RandomLegal(std::uint64_t seed) : rng_(seed) {}

  StrategyMove next_move(const GameState& s) override {
    std::vector<MoveBuilder> recipes;
    for (int i = 0; i < 8; ++i) recipes.push_back(recipe(s));
    std::uniform_int_distribution<std::size_t> pick(0, recipes.size() - 1);
    const auto& b = recipes[pick(rng_)];
    return StrategyMove{b.move(), b.witness(), {}};
  }

  std::string name() const override { return "random-legal"; }

 private:
  MoveBuilder recipe(const GameState& s) {
    MoveBuilder b(s);
    std::uniform_int_distribution<int> coin(0, 3);
    if (coin(rng_) == 0) maybe_grow(b);
    auto choose = [this](const MoveBuilder& mb) { return mb.random_unused(rng_); };
    b.fill_block(choose);
    std::uniform_int_distribution<int> extra(0, 3);
    const int n = extra(rng_);
    std::vector<Label> labelled;
    for (const auto& [l, g] : b.witness().labeling) labelled.push_back(l);
    std::uniform_int_distribution<std::size_t> any(0, labelled.size() - 1);
    for (int i = 0; i < n; ++i) {
      const Label a = labelled[any(rng_)], c = labelled[any(rng_)];
      if (!b.table().has(a, c)) b.write(a, c);
    }
    return b;
  }

  void maybe_grow(MoveBuilder& b) {
    if (b.mode() == Mode::Abelian) {
      static const std::uint64_t primes[] = {2, 3, 5};
      std::uniform_int_distribution<std::size_t> pick(0, 2);
      const auto p = primes[pick(rng_)];
      if (b.order() * p <= kRandomAbelianCap) b.append_factors(FinAbelian{{p}});
      return;
    }
    static const char* names[] = {"C2", "C3", "S3", "C4", "C2xC2", "C5"};
    std::uniform_int_distribution<std::size_t> pick(0, 5);
    const auto k = group_by_name(names[pick(rng_)]);
    if (b.order() * k.order() <= kRandomGeneralCap) b.grow(k);
  }

  std::mt19937_64 rng_;
};

class Spoiler : public Strategy {
 public:
  explicit Spoiler(std::uint64_t seed) : rng_(seed) {}

  StrategyMove next_move(const GameState& s) override {
    MoveBuilder b(s);
    auto choose = [this](const MoveBuilder& mb) { return mb.random_unused(rng_); };
    b.fill_block(choose);
    for (int i = 0; i < 2; ++i) {
      if (b.exhausted()) {
        if (b.order() * 2 > kGeneralGrowthCap) break;
        b.grow_minimal();
      }
      const Label z = b.ensure_label(b.random_unused(rng_));
      std::vector<Label> labelled;
      for (const auto& [l, g] : b.witness().labeling) labelled.push_back(l);
      std::uniform_int_distribution<std::size_t> any(0, labelled.size() - 1);
      const Label a = labelled[any(rng_)];
      if (!b.table().has(a, z)) b.write(a, z);
      if (!b.table().has(z, z)) b.write(z, z);
    }
    return StrategyMove{b.move(), b.witness(), {}};
  }

  std::string name() const override { return "spoiler"; }

 private:
  std::mt19937_64 rng_;
};

class OddScheduler : public Strategy {
 public:
  StrategyMove next_move(const GameState& s) override {
    if (!started_) {
      for (std::size_t i = 0; i < s.monitors.size(); ++i) queue_.push_back(i);
      started_ = true;
    }
    MoveBuilder b(s);
    std::vector<GoalHint> hints;
    const std::size_t rounds = queue_.size();
    for (std::size_t r = 0; r < rounds; ++r) {
      const std::size_t i = queue_.front();
      queue_.pop_front();
      if (i >= s.monitors.size() || s.monitors[i].status != MonitorStatus::Pending) continue;
      MoveBuilder trial = b;
      try {
        auto hint = realize(trial, s.monitors[i].goal, s.config);
        b = std::move(trial);
        hints.push_back(GoalHint{i, std::move(hint)});
        break;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::GoalBlocked && e.kind() != ErrorKind::LimitExceeded &&
            e.kind() != ErrorKind::Overflow) {
          throw;
        }
        notes_[i] = e.what();
        queue_.push_back(i);
      }
    }
    b.fill_block(smallest_choice);
    return StrategyMove{b.move(), b.witness(), std::move(hints)};
  }

  std::string name() const override { return "odd-scheduler"; }

 private:
  bool started_ = false;
  std::deque<std::size_t> queue_;
  std::map<std::size_t, std::string> notes_;
};

class Scripted : public Strategy {
 public:
  explicit Scripted(std::vector<Move> moves) : moves_(std::move(moves)) {}

  StrategyMove next_move(const GameState& s) override {
    if (next_ < moves_.size()) return StrategyMove{moves_[next_++], std::nullopt, {}};
    MoveBuilder b(s);
    b.fill_block(smallest_choice);
    return StrategyMove{b.move(), b.witness(), {}};
  }

  std::string name() const override { return "human"; }

 private:
  std::vector<Move> moves_;
  std::size_t next_ = 0;
};

}  // namespace

std::unique_ptr<Strategy> random_legal(std::uint64_t seed) { return std::make_unique<RandomLegal>(seed); }
std::unique_ptr<Strategy> spoiler(std::uint64_t seed) { return std::make_unique<Spoiler>(seed); }
std::unique_ptr<Strategy> odd_scheduler() { return std::make_unique<OddScheduler>(); }
std::unique_ptr<Strategy> scripted(std::vector<Move> moves) { return std::make_unique<Scripted>(std::move(moves)); }

}  // namespace baire
