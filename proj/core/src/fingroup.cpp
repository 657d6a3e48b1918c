#include "baire/fingroup.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

namespace baire {

std::string_view to_string(GroupAxiom axiom) {
  switch (axiom) {
    case GroupAxiom::Carrier: return "carrier";
    case GroupAxiom::Identity: return "identity";
    case GroupAxiom::Cancellation: return "cancellation";
    case GroupAxiom::Inverse: return "inverse";
    case GroupAxiom::Associativity: return "associativity";
  }
  return "unknown";
}

namespace {

std::string cell_text(Label a, Label b, Label v) {
  return std::to_string(a) + "*" + std::to_string(b) + "=" + std::to_string(v);
}

}  // namespace

FinGroup::FinGroup() : n_(1), table_{kIdentity}, name_("C1") { derive(); }

FinGroup::FinGroup(std::size_t order, std::vector<Label> cayley, std::string name)
    : n_(order), table_(std::move(cayley)), name_(std::move(name)) {
  if (n_ == 0) throw GroupAxiomViolation(GroupAxiom::Carrier, "order must be at least 1");
  if (table_.size() != n_ * n_) {
    throw GroupAxiomViolation(GroupAxiom::Carrier, "table must have n*n entries");
  }
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i] < 1 || table_[i] > n_) {
      throw GroupAxiomViolation(GroupAxiom::Carrier, "entry " + std::to_string(table_[i]) + " at (" +
                                                         std::to_string(i / n_ + 1) + "," +
                                                         std::to_string(i % n_ + 1) + ") is outside {1.." +
                                                         std::to_string(n_) + "}");
    }
  }
  for (Label a = 1; a <= n_; ++a) {
    if (mul(kIdentity, a) != a) throw GroupAxiomViolation(GroupAxiom::Identity, cell_text(1, a, mul(1, a)));
    if (mul(a, kIdentity) != a) throw GroupAxiomViolation(GroupAxiom::Identity, cell_text(a, 1, mul(a, 1)));
  }
  std::vector<char> seen(n_ + 1);
  for (Label a = 1; a <= n_; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (Label b = 1; b <= n_; ++b) {
      if (seen[mul(a, b)]++) {
        throw GroupAxiomViolation(GroupAxiom::Cancellation, "row " + std::to_string(a) + " repeats " +
                                                                std::to_string(mul(a, b)));
      }
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (Label b = 1; b <= n_; ++b) {
      if (seen[mul(b, a)]++) {
        throw GroupAxiomViolation(GroupAxiom::Cancellation, "column " + std::to_string(a) + " repeats " +
                                                                std::to_string(mul(b, a)));
      }
    }
  }
  for (Label a = 1; a <= n_; ++a) {
    for (Label b = 1; b <= n_; ++b) {
      if (mul(a, b) == kIdentity && mul(b, a) != kIdentity) {
        throw GroupAxiomViolation(GroupAxiom::Inverse,
                                  cell_text(a, b, 1) + " but " + cell_text(b, a, mul(b, a)));
      }
    }
  }
  for (Label a = 1; a <= n_; ++a) {
    for (Label b = 1; b <= n_; ++b) {
      const Label ab = mul(a, b);
      for (Label c = 1; c <= n_; ++c) {
        if (mul(ab, c) != mul(a, mul(b, c))) {
          throw GroupAxiomViolation(GroupAxiom::Associativity, "(" + std::to_string(a) + "*" + std::to_string(b) +
                                                                   ")*" + std::to_string(c) + " != " +
                                                                   std::to_string(a) + "*(" + std::to_string(b) +
                                                                   "*" + std::to_string(c) + ")");
        }
      }
    }
  }
  derive();
}

FinGroup FinGroup::from_rows(const std::vector<std::vector<Label>>& rows, std::string name) {
  std::vector<Label> flat;
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw GroupAxiomViolation(GroupAxiom::Carrier, "table must be square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return FinGroup(rows.size(), std::move(flat), std::move(name));
}

FinGroup FinGroup::trivial() { return FinGroup(); }

FinGroup FinGroup::trusted(std::size_t order, std::vector<Label> cayley, std::string name) {
  FinGroup g;
  g.n_ = order;
  g.table_ = std::move(cayley);
  g.name_ = std::move(name);
  g.derive();
  return g;
}

void FinGroup::derive() {
  inv_.assign(n_, 0);
  for (Label a = 1; a <= n_; ++a) {
    for (Label b = 1; b <= n_; ++b) {
      if (mul(a, b) == kIdentity) {
        inv_[a - 1] = b;
        break;
      }
    }
  }
  orders_.assign(n_, 0);
  for (Label a = 1; a <= n_; ++a) {
    std::size_t k = 1;
    for (Label x = a; x != kIdentity; x = mul(x, a)) ++k;
    orders_[a - 1] = k;
  }
}

Label FinGroup::pow(Label a, long long k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  k %= static_cast<long long>(element_order(a));
  Label acc = kIdentity;
  for (long long i = 0; i < k; ++i) acc = mul(acc, a);
  return acc;
}

bool FinGroup::is_abelian() const {
  for (Label a = 1; a <= n_; ++a) {
    for (Label b = a + 1; b <= n_; ++b) {
      if (mul(a, b) != mul(b, a)) return false;
    }
  }
  return true;
}

std::size_t FinGroup::center_size() const {
  std::size_t count = 0;
  for (Label a = 1; a <= n_; ++a) {
    bool central = true;
    for (Label b = 1; b <= n_ && central; ++b) central = mul(a, b) == mul(b, a);
    count += central;
  }
  return count;
}

PartialTable FinGroup::full_table() const {
  PartialTable t;
  for (Label a = 1; a <= n_; ++a) {
    for (Label b = 1; b <= n_; ++b) t.set(a, b, mul(a, b));
  }
  return t;
}

std::vector<Label> FinGroup::generators() const {
  std::vector<Label> gens;
  LabelSet closure{kIdentity};
  for (Label a = 2; a <= n_ && closure.size() < n_; ++a) {
    if (closure.contains(a)) continue;
    gens.push_back(a);
    closure = subgroup_closure(*this, LabelSet(gens.begin(), gens.end()));
  }
  return gens;
}

Fingerprint fingerprint(const FinGroup& g) {
  Fingerprint f;
  f.order = g.order();
  f.abelian = g.is_abelian();
  f.center = g.center_size();
  for (Label a = 1; a <= g.order(); ++a) ++f.order_counts[g.element_order(a)];
  return f;
}

Embedding Embedding::identity(std::size_t order) {
  Embedding e;
  e.image.resize(order);
  std::iota(e.image.begin(), e.image.end(), Label{1});
  return e;
}

bool verify_embedding(const FinGroup& source, const FinGroup& target, const Embedding& e) {
  if (e.image.size() != source.order()) return false;
  if (e(kIdentity) != kIdentity) return false;
  std::vector<char> used(target.order() + 1, 0);
  for (Label a = 1; a <= source.order(); ++a) {
    const Label x = e(a);
    if (!target.contains(x) || used[x]++) return false;
  }
  for (Label a = 1; a <= source.order(); ++a) {
    for (Label b = 1; b <= source.order(); ++b) {
      if (e(source.mul(a, b)) != target.mul(e(a), e(b))) return false;
    }
  }
  return true;
}

LabelSet subgroup_closure(const FinGroup& g, const LabelSet& gens) {
  LabelSet out{kIdentity};
  std::deque<Label> queue{kIdentity};
  std::vector<Label> gs;
  for (Label x : gens) {
    if (!g.contains(x)) throw Error(ErrorKind::InvalidArgument, "generator " + std::to_string(x) + " not in group");
    gs.push_back(x);
  }
  // Finite groups: closing under right multiplication by generators suffices.
  while (!queue.empty()) {
    const Label x = queue.front();
    queue.pop_front();
    for (Label s : gs) {
      const Label y = g.mul(x, s);
      if (out.insert(y).second) queue.push_back(y);
    }
  }
  return out;
}

LabelSet normal_closure(const FinGroup& g, Label x) {
  if (x == kIdentity) throw Error(ErrorKind::IdentityElement, "normal closure of the identity is requested");
  if (!g.contains(x)) throw Error(ErrorKind::InvalidArgument, "label " + std::to_string(x) + " not in group");
  LabelSet conjugates;
  for (Label y = 1; y <= g.order(); ++y) conjugates.insert(g.conj(x, y));
  return subgroup_closure(g, conjugates);
}

bool is_normal_subgroup(const FinGroup& g, const LabelSet& s) {
  if (!s.contains(kIdentity)) return false;
  for (Label a : s) {
    if (!g.contains(a) || !s.contains(g.inv(a))) return false;
    for (Label b : s) {
      if (!s.contains(g.mul(a, b))) return false;
    }
    for (Label y = 1; y <= g.order(); ++y) {
      if (!s.contains(g.conj(a, y))) return false;
    }
  }
  return true;
}

SimplicityCertificate is_simple(const FinGroup& g) {
  if (g.order() < 2) throw Error(ErrorKind::TrivialGroup, "the trivial group is not considered");
  SimplicityCertificate cert;
  for (Label x = 2; x <= g.order(); ++x) {
    auto closure = normal_closure(g, x);
    if (closure.size() != g.order()) {
      cert.simple = false;
      cert.witness = x;
      cert.witness_closure = std::move(closure);
      cert.confirmed.clear();
      return cert;
    }
    cert.confirmed.push_back(x);
  }
  cert.simple = true;
  return cert;
}

bool verify_simplicity_certificate(const FinGroup& g, const SimplicityCertificate& cert) {
  if (!cert.simple) {
    if (!cert.witness || *cert.witness == kIdentity || !g.contains(*cert.witness)) return false;
    const auto& s = cert.witness_closure;
    return s.contains(*cert.witness) && s.size() < g.order() && is_normal_subgroup(g, s);
  }
  // Every nonidentity element must be confirmed, and each confirmation is
  // replayed by an independent fixpoint: the smallest conjugation-closed
  // subgroup containing x.
  if (cert.confirmed.size() != g.order() - 1) return false;
  LabelSet listed(cert.confirmed.begin(), cert.confirmed.end());
  if (listed.size() != g.order() - 1 || listed.contains(kIdentity)) return false;
  for (Label x : cert.confirmed) {
    std::vector<char> in(g.order() + 1, 0);
    std::vector<Label> members{kIdentity, x};
    in[kIdentity] = in[x] = 1;
    bool grew = true;
    while (grew) {
      grew = false;
      const auto snapshot = members;
      for (Label a : snapshot) {
        for (Label y = 1; y <= g.order(); ++y) {
          for (Label c : {g.mul(a, y), g.conj(a, y)}) {
            if (in[y] && !in[c]) {
              in[c] = 1;
              members.push_back(c);
              grew = true;
            }
          }
        }
      }
      // conjugates of members by arbitrary elements
      for (Label a : std::vector<Label>(members)) {
        for (Label y = 1; y <= g.order(); ++y) {
          const Label c = g.conj(a, y);
          if (!in[c]) {
            in[c] = 1;
            members.push_back(c);
            grew = true;
          }
        }
      }
    }
    if (members.size() != g.order()) return false;
  }
  return true;
}

Label ConjugateWord::evaluate(const FinGroup& g, Label n) const {
  Label acc = kIdentity;
  for (const auto& f : factors) {
    Label c = g.conj(n, f.conjugator);
    if (f.exponent < 0) c = g.inv(c);
    acc = g.mul(acc, c);
  }
  return acc;
}

ConjugateWord conjugate_word_witness(const FinGroup& g, Label n, Label k) {
  if (!g.contains(n) || !g.contains(k)) throw Error(ErrorKind::InvalidArgument, "label outside the group");
  struct Step {
    Label from = 0;
    ConjugateFactor factor;
  };
  // Distinct factor values in canonical (conjugator, +1 then -1) order.
  std::vector<std::pair<ConjugateFactor, Label>> factors;
  {
    std::vector<char> seen(g.order() + 1, 0);
    for (Label y = 1; y <= g.order(); ++y) {
      for (int e : {1, -1}) {
        Label c = g.conj(n, y);
        if (e < 0) c = g.inv(c);
        if (!seen[c]) {
          seen[c] = 1;
          factors.push_back({{y, e}, c});
        }
      }
    }
  }
  std::vector<std::optional<Step>> parent(g.order() + 1);
  std::vector<char> visited(g.order() + 1, 0);
  std::deque<Label> queue{kIdentity};
  visited[kIdentity] = 1;
  while (!queue.empty() && !visited[k]) {
    const Label x = queue.front();
    queue.pop_front();
    for (const auto& [factor, value] : factors) {
      const Label y = g.mul(x, value);
      if (visited[y]) continue;
      visited[y] = 1;
      parent[y] = Step{x, factor};
      queue.push_back(y);
    }
  }
  if (!visited[k]) {
    throw Error(ErrorKind::NotInClosure,
                std::to_string(k) + " is not in the normal closure of " + std::to_string(n));
  }
  ConjugateWord w;
  for (Label x = k; x != kIdentity; x = parent[x]->from) w.factors.push_back(parent[x]->factor);
  std::reverse(w.factors.begin(), w.factors.end());
  if (w.evaluate(g, n) != k) throw Error(ErrorKind::InvalidArgument, "internal: conjugate witness failed to replay");
  return w;
}

namespace {

/// Backtracking over generator images. The partial map is always a
/// homomorphism on the subgroup generated by the generators placed so far.
class EmbeddingSearch {
 public:
  EmbeddingSearch(const FinGroup& source, const FinGroup& target,
                  const std::function<bool(const Embedding&)>& visit)
      : src_(source), dst_(target), visit_(visit), gens_(source.generators()) {
    image_.assign(src_.order() + 1, 0);
    used_.assign(dst_.order() + 1, 0);
    chosen_.reserve(gens_.size());
  }

  void run() {
    if (src_.order() > dst_.order()) return;
    image_[kIdentity] = kIdentity;
    used_[kIdentity] = 1;
    mapped_.push_back(kIdentity);
    recurse(0);
  }

 private:
  bool recurse(std::size_t depth) {
    if (depth == gens_.size()) {
      Embedding e;
      e.image.assign(image_.begin() + 1, image_.end());
      return visit_(e);
    }
    const Label gen = gens_[depth];
    const std::size_t want = src_.element_order(gen);
    for (Label c = 2; c <= dst_.order(); ++c) {
      if (used_[c] || dst_.element_order(c) != want) continue;
      chosen_.push_back(c);
      const std::size_t mark = mapped_.size();
      if (close(depth)) {
        if (!recurse(depth + 1)) return false;
      }
      undo(mark);
      chosen_.pop_back();
    }
    return true;
  }

  // Extends the map to <g_0..g_depth> by right multiplication, failing on a
  // clash or an injectivity violation.
  bool close(std::size_t depth) {
    for (std::size_t i = 0; i < mapped_.size(); ++i) {
      const Label x = mapped_[i];
      for (std::size_t t = 0; t <= depth; ++t) {
        const Label y = src_.mul(x, gens_[t]);
        const Label fy = dst_.mul(image_[x], chosen_[t]);
        if (image_[y] == 0) {
          if (used_[fy]) return false;
          image_[y] = fy;
          used_[fy] = 1;
          mapped_.push_back(y);
        } else if (image_[y] != fy) {
          return false;
        }
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (mapped_.size() > mark) {
      const Label y = mapped_.back();
      mapped_.pop_back();
      used_[image_[y]] = 0;
      image_[y] = 0;
    }
  }

  const FinGroup& src_;
  const FinGroup& dst_;
  const std::function<bool(const Embedding&)>& visit_;
  std::vector<Label> gens_;
  std::vector<Label> chosen_;
  std::vector<Label> image_;
  std::vector<char> used_;
  std::vector<Label> mapped_;
};

}  // namespace

void for_each_embedding(const FinGroup& source, const FinGroup& target,
                        const std::function<bool(const Embedding&)>& visit) {
  EmbeddingSearch(source, target, visit).run();
}

std::optional<Embedding> embed_search(const FinGroup& source, const FinGroup& target) {
  std::optional<Embedding> found;
  for_each_embedding(source, target, [&](const Embedding& e) {
    found = e;
    return false;
  });
  if (found && !verify_embedding(source, target, *found)) {
    throw Error(ErrorKind::InvalidArgument, "internal: embedding search produced an invalid map");
  }
  return found;
}

std::optional<Embedding> find_isomorphism(const FinGroup& a, const FinGroup& b) {
  if (a.order() != b.order()) return std::nullopt;
  if (!(fingerprint(a) == fingerprint(b))) return std::nullopt;
  return embed_search(a, b);
}

bool isomorphic(const FinGroup& a, const FinGroup& b) { return find_isomorphism(a, b).has_value(); }

std::vector<Label> ProductGroup::left_projection() const {
  std::vector<Label> out(group.order());
  for (Label x = 1; x <= group.order(); ++x) out[x - 1] = left(x);
  return out;
}

std::vector<Label> ProductGroup::right_projection() const {
  std::vector<Label> out(group.order());
  for (Label x = 1; x <= group.order(); ++x) out[x - 1] = right(x);
  return out;
}

ProductGroup direct_product(const FinGroup& g, const FinGroup& h, std::size_t limit) {
  const std::size_t n = g.order() * h.order();
  if (n > limit) {
    throw Error(ErrorKind::LimitExceeded,
                "direct product of order " + std::to_string(n) + " exceeds limit " + std::to_string(limit));
  }
  ProductGroup p;
  p.left_order = g.order();
  p.right_order = h.order();
  std::vector<Label> table(n * n);
  for (Label x = 1; x <= n; ++x) {
    for (Label y = 1; y <= n; ++y) {
      table[(x - 1) * n + (y - 1)] = p.pair(g.mul(p.left(x), p.left(y)), h.mul(p.right(x), p.right(y)));
    }
  }
  std::string name = g.name().empty() || h.name().empty() ? std::string{} : g.name() + "x" + h.name();
  p.group = FinGroup::trusted(n, std::move(table), std::move(name));
  return p;
}

namespace {

// Order of x as shown by the stored power chain, if it closes.
std::optional<std::size_t> chain_order(const PartialTable& t, Label x, std::size_t cap) {
  Label acc = x;
  for (std::size_t k = 1; k <= cap; ++k) {
    if (acc == kIdentity) return k;
    auto next = t.product(acc, x);
    if (!next) return std::nullopt;
    acc = *next;
  }
  return std::nullopt;
}

class TableEmbedding {
 public:
  TableEmbedding(const FinGroup& h, const PartialTable& t) : h_(h), t_(t), gens_(h.generators()) {
    auto labels = t.labels();
    labels.insert(kIdentity);
    for (Label x : labels) {
      if (x == kIdentity) continue;
      if (auto k = chain_order(t, x, h.order())) orders_[x] = *k;
    }
    labels_.assign(labels.begin(), labels.end());
  }

  std::optional<std::vector<Label>> run() {
    image_.assign(h_.order() + 1, 0);
    image_[kIdentity] = kIdentity;
    used_.insert(kIdentity);
    mapped_.push_back(kIdentity);
    if (!recurse(0)) return std::vector<Label>(image_.begin() + 1, image_.end());
    return std::nullopt;
  }

 private:
  // Returns false once a full embedding is found.
  bool recurse(std::size_t depth) {
    if (depth == gens_.size()) return !complete();
    for (const auto& [c, ord] : orders_) {
      if (used_.contains(c) || ord != h_.element_order(gens_[depth])) continue;
      chosen_.push_back(c);
      const std::size_t mark = mapped_.size();
      if (close(depth) && !recurse(depth + 1)) return false;
      undo(mark);
      chosen_.pop_back();
    }
    return true;
  }

  bool close(std::size_t depth) {
    for (std::size_t i = 0; i < mapped_.size(); ++i) {
      const Label x = mapped_[i];
      for (std::size_t s = 0; s <= depth; ++s) {
        const Label y = h_.mul(x, gens_[s]);
        auto fy = t_.product(image_[x], chosen_[s]);
        if (!fy) return false;
        if (image_[y] == 0) {
          if (used_.contains(*fy)) return false;
          image_[y] = *fy;
          used_.insert(*fy);
          mapped_.push_back(y);
        } else if (image_[y] != *fy) {
          return false;
        }
      }
    }
    return true;
  }

  bool complete() const {
    for (Label a = 1; a <= h_.order(); ++a) {
      for (Label b = 1; b <= h_.order(); ++b) {
        if (t_.product(image_[a], image_[b]) != image_[h_.mul(a, b)]) return false;
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (mapped_.size() > mark) {
      const Label y = mapped_.back();
      mapped_.pop_back();
      used_.erase(image_[y]);
      image_[y] = 0;
    }
  }

  const FinGroup& h_;
  const PartialTable& t_;
  std::vector<Label> gens_;
  std::map<Label, std::size_t> orders_;
  std::vector<Label> labels_;
  std::vector<Label> chosen_;
  std::vector<Label> image_;
  LabelSet used_;
  std::vector<Label> mapped_;
};

}  // namespace

std::optional<std::vector<Label>> embed_into_table(const FinGroup& h, const PartialTable& t) {
  return TableEmbedding(h, t).run();
}

bool presentation_equiv(const FinGroup& h, std::span<const Label> a, const FinGroup& g, std::span<const Label> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidArgument, "tuples must have equal length");
  for (Label x : a) {
    if (!h.contains(x)) throw Error(ErrorKind::InvalidArgument, "label outside the first group");
  }
  for (Label y : b) {
    if (!g.contains(y)) throw Error(ErrorKind::InvalidArgument, "label outside the second group");
  }
  std::vector<Label> forward(h.order() + 1, 0);
  std::vector<Label> backward(g.order() + 1, 0);
  forward[kIdentity] = kIdentity;
  backward[kIdentity] = kIdentity;
  std::deque<Label> queue{kIdentity};
  while (!queue.empty()) {
    const Label x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Label x2 = h.mul(x, a[i]);
      const Label y2 = g.mul(forward[x], b[i]);
      if (forward[x2] == 0 && backward[y2] == 0) {
        forward[x2] = y2;
        backward[y2] = x2;
        queue.push_back(x2);
      } else if (forward[x2] != y2 || backward[y2] != x2) {
        return false;
      }
    }
  }
  return true;
}

Tri satisfies_word_clopen(const FinGroup& g, const WordClopen& w) {
  w.validate();
  for (Label x : w.labels()) {
    if (!g.contains(x)) return Tri::Undetermined;
  }
  auto eval = [&](const Word& word) {
    Label acc = kIdentity;
    for (const auto& l : word.letters()) {
      Label x = l.is_variable() ? w.params[l.id] : l.id;
      if (l.exponent < 0) x = g.inv(x);
      acc = g.mul(acc, x);
    }
    return acc;
  };
  for (const auto& [word, target] : w.equations) {
    if (eval(word) != target) return Tri::No;
  }
  for (const auto& [word, excluded] : w.inequations) {
    if (eval(word) == excluded) return Tri::No;
  }
  return Tri::Yes;
}

FinGroup parse_cayley_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  long long n = 0;
  if (!(in >> n) || n < 1) throw Error(ErrorKind::ParseError, "expected the group order on the first line");
  std::vector<Label> flat;
  flat.reserve(static_cast<std::size_t>(n * n));
  for (long long i = 0; i < n * n; ++i) {
    long long v = 0;
    if (!(in >> v)) throw Error(ErrorKind::ParseError, "expected " + std::to_string(n * n) + " table entries");
    if (v < 0) throw Error(ErrorKind::ParseError, "negative table entry");
    flat.push_back(static_cast<Label>(v));
  }
  std::string extra;
  if (in >> extra) throw Error(ErrorKind::ParseError, "trailing data after the table");
  return FinGroup(static_cast<std::size_t>(n), std::move(flat));
}

std::string to_cayley_text(const FinGroup& g) {
  std::string out = std::to_string(g.order()) + "\n";
  for (Label a = 1; a <= g.order(); ++a) {
    for (Label b = 1; b <= g.order(); ++b) {
      if (b > 1) out += ' ';
      out += std::to_string(g.mul(a, b));
    }
    out += '\n';
  }
  return out;
}

void to_json(nlohmann::json& j, const FinGroup& g) {
  auto rows = nlohmann::json::array();
  for (Label a = 1; a <= g.order(); ++a) {
    auto row = nlohmann::json::array();
    for (Label b = 1; b <= g.order(); ++b) row.push_back(g.mul(a, b));
    rows.push_back(std::move(row));
  }
  j = nlohmann::json{{"order", g.order()}, {"table", std::move(rows)}};
  if (!g.name().empty()) j["name"] = g.name();
}

void from_json(const nlohmann::json& j, FinGroup& g) {
  const auto rows = j.at("table").get<std::vector<std::vector<Label>>>();
  if (j.contains("order") && j.at("order").get<std::size_t>() != rows.size()) {
    throw Error(ErrorKind::ParseError, "order does not match the table");
  }
  g = FinGroup::from_rows(rows, j.value("name", std::string{}));
}

void to_json(nlohmann::json& j, const Fingerprint& f) {
  auto counts = nlohmann::json::object();
  for (const auto& [ord, count] : f.order_counts) counts[std::to_string(ord)] = count;
  j = nlohmann::json{{"order", f.order}, {"abelian", f.abelian}, {"center", f.center}, {"orderCounts", counts}};
}

}  // namespace baire
