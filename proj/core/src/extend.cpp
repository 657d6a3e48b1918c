#include "baire/extend.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "baire/catalog.hpp"

namespace baire {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Extends: return "extends";
    case Verdict::NonExtendable: return "non-extendable";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

bool verify_extension(const PartialTable& t, const FinGroup& g, const std::map<Label, Label>& labeling) {
  auto lab = [&](Label x) -> std::optional<Label> {
    auto it = labeling.find(x);
    if (it == labeling.end()) return std::nullopt;
    return it->second;
  };
  if (auto one = lab(kIdentity); one && *one != kIdentity) return false;
  LabelSet used;
  for (const auto& [from, to] : labeling) {
    if (!g.contains(to) || !used.insert(to).second) return false;
    if ((from == kIdentity) != (to == kIdentity)) return false;
  }
  for (const auto& c : t.cells()) {
    auto a = c.row == kIdentity ? std::optional<Label>(kIdentity) : lab(c.row);
    auto b = c.col == kIdentity ? std::optional<Label>(kIdentity) : lab(c.col);
    auto v = c.value == kIdentity ? std::optional<Label>(kIdentity) : lab(c.value);
    if (!a || !b || !v || g.mul(*a, *b) != *v) return false;
  }
  return true;
}

namespace {

class LabelingSearch {
 public:
  LabelingSearch(const PartialTable& t, const FinGroup& g, std::uint64_t& nodes, std::uint64_t limit)
      : g_(g), nodes_(nodes), limit_(limit) {
    auto labels = t.labels();
    labels.insert(kIdentity);
    labels_.assign(labels.begin(), labels.end());
    for (std::size_t i = 0; i < labels_.size(); ++i) index_[labels_[i]] = i;
    touching_.resize(labels_.size());
    for (const auto& c : t.cells()) {
      const Tri3 tri{index_[c.row], index_[c.col], index_[c.value]};
      for (auto i : {tri.a, tri.b, tri.c}) touching_[i].push_back(cells_.size());
      cells_.push_back(tri);
    }
    order_.assign(labels_.size(), 0);
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      Label acc = labels_[i];
      for (std::size_t k = 1; k <= g.order(); ++k) {
        if (acc == kIdentity) {
          order_[i] = k;
          break;
        }
        auto next = t.product(acc, labels_[i]);
        if (!next) break;
        acc = *next;
      }
    }
    image_.assign(labels_.size(), 0);
    used_.assign(g.order() + 1, 0);
  }

  std::optional<std::map<Label, Label>> run(const std::map<Label, Label>& fixed) {
    if (labels_.size() > g_.order()) return std::nullopt;
    if (!assign(index_.at(kIdentity), kIdentity)) return std::nullopt;
    for (const auto& [from, to] : fixed) {
      auto it = index_.find(from);
      if (it == index_.end()) continue;
      if (!g_.contains(to)) return std::nullopt;
      if (image_[it->second] == to) continue;
      if (image_[it->second] != 0 || !assign(it->second, to)) return std::nullopt;
    }
    if (!search()) return std::nullopt;
    std::map<Label, Label> out;
    for (std::size_t i = 0; i < labels_.size(); ++i) out[labels_[i]] = image_[i];
    return out;
  }

  bool exhausted() const { return nodes_ >= limit_; }

 private:
  struct Tri3 {
    std::size_t a, b, c;
  };

  bool assign(std::size_t i, Label v) {
    if (used_[v] || (order_[i] != 0 && g_.element_order(v) != order_[i])) return false;
    image_[i] = v;
    used_[v] = 1;
    trail_.push_back(i);
    for (auto ci : touching_[i]) {
      const auto& t = cells_[ci];
      const Label a = image_[t.a], b = image_[t.b], c = image_[t.c];
      std::size_t target;
      Label value;
      if (a && b) {
        target = t.c;
        value = g_.mul(a, b);
      } else if (a && c) {
        target = t.b;
        value = g_.mul(g_.inv(a), c);
      } else if (b && c) {
        target = t.a;
        value = g_.mul(c, g_.inv(b));
      } else {
        continue;
      }
      if (image_[target] != 0) {
        if (image_[target] != value) return false;
      } else if (!assign(target, value)) {
        return false;
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const auto i = trail_.back();
      trail_.pop_back();
      used_[image_[i]] = 0;
      image_[i] = 0;
    }
  }

  std::optional<std::size_t> pick() const {
    std::optional<std::size_t> best;
    std::size_t best_score = 0;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (image_[i] != 0) continue;
      std::size_t score = 1;
      for (auto ci : touching_[i]) {
        const auto& t = cells_[ci];
        score += (image_[t.a] != 0) + (image_[t.b] != 0) + (image_[t.c] != 0);
      }
      if (!best || score > best_score) {
        best = i;
        best_score = score;
      }
    }
    return best;
  }

  bool search() {
    auto next = pick();
    if (!next) return true;
    for (Label v = 2; v <= g_.order(); ++v) {
      if (used_[v]) continue;
      if (++nodes_ >= limit_) return false;
      const std::size_t mark = trail_.size();
      if (assign(*next, v) && search()) return true;
      undo(mark);
      if (exhausted()) return false;
    }
    return false;
  }

  const FinGroup& g_;
  std::uint64_t& nodes_;
  std::uint64_t limit_;
  std::vector<Label> labels_;
  std::map<Label, std::size_t> index_;
  std::vector<Tri3> cells_;
  std::vector<std::vector<std::size_t>> touching_;
  std::vector<std::size_t> order_;
  std::vector<Label> image_;
  std::vector<char> used_;
  std::vector<std::size_t> trail_;
};

}  // namespace

std::optional<std::map<Label, Label>> find_labeling(const PartialTable& t, const FinGroup& g, std::uint64_t& nodes,
                                                    std::uint64_t node_limit, const std::map<Label, Label>& fixed) {
  return LabelingSearch(t, g, nodes, node_limit).run(fixed);
}

ExtendVerdict check_extendable(const PartialTable& t, const ExtendBudget& budget) {
  ExtendVerdict v;
  auto sat = saturate(t);
  if (sat.contradictory()) {
    v.kind = Verdict::NonExtendable;
    v.certificate = std::move(sat.contradiction);
    v.reason = "saturation derives a contradiction";
    return v;
  }
  const std::size_t label_count = sat.cells.labels().size() + (sat.cells.labels().contains(kIdentity) ? 0 : 1);
  std::vector<FinGroup> candidates;
  const std::size_t max_order = std::min(budget.max_order, kCatalogHardLimit);
  for (const auto& g : catalog(max_order, std::max(max_order, kDefaultCatalogLimit))) {
    if (g.order() >= label_count && (!budget.abelian_only || g.is_abelian())) candidates.push_back(g);
  }
  if (!budget.abelian_only) {
    std::size_t fact = 1;
    for (std::size_t k = 2; k <= std::min<std::size_t>(budget.symmetric_degree, 6); ++k) {
      fact *= k;
      if (fact > max_order && fact >= label_count) candidates.push_back(symmetric_group(k));
    }
  }
  for (const auto& g : candidates) {
    auto lab = find_labeling(sat.cells, g, v.nodes, budget.node_limit);
    if (lab) {
      if (!verify_extension(t, g, *lab)) throw Error(ErrorKind::InvalidArgument, "internal: unverified labelling");
      v.kind = Verdict::Extends;
      v.witness = g;
      v.labeling = std::move(*lab);
      return v;
    }
    if (v.nodes >= budget.node_limit) {
      v.reason = "node limit " + std::to_string(budget.node_limit) + " reached at " + g.name();
      return v;
    }
  }
  v.reason = "no witness among " + std::to_string(candidates.size()) + " candidate groups";
  return v;
}

PartialTable witness_prefix(const FinGroup& g, const LabelSet& labels) {
  PartialTable t;
  for (Label a : labels) {
    if (!g.contains(a)) throw Error(ErrorKind::InvalidArgument, "label outside the group");
  }
  for (Label a : labels) {
    for (Label b : labels) {
      const Label c = g.mul(a, b);
      if (labels.contains(c)) t.set(a, b, c);
    }
  }
  return t;
}

std::optional<HomogeneityWitness> homogeneity_witness(const CellClopen& u, const CellClopen& v,
                                                      const ExtendBudget& budget) {
  const auto su = supp(u);
  const auto sv = supp(v);
  const auto wu = check_extendable(u.as_table(), budget);
  const auto wv = check_extendable(v.as_table(), budget);
  if (wu.kind != Verdict::Extends || wv.kind != Verdict::Extends) return std::nullopt;
  Label fresh = std::max(*su.rbegin(), *sv.rbegin()) + 1;
  std::map<Label, Label> partial;
  for (Label x : su) {
    if (x != kIdentity) partial[x] = fresh++;
  }
  HomogeneityWitness out;
  out.phi = FinitePermutation::extending(partial);
  const auto product = direct_product(*wv.witness, *wu.witness);
  out.group = product.group;
  auto image_v = [&](Label l) {
    auto it = wv.labeling.find(l);
    return product.pair(it == wv.labeling.end() ? kIdentity : it->second, kIdentity);
  };
  auto image_u = [&](Label l) {
    auto it = wu.labeling.find(l);
    return product.pair(kIdentity, it == wu.labeling.end() ? kIdentity : it->second);
  };
  out.labeling[kIdentity] = kIdentity;
  for (Label l : sv) out.labeling[l] = image_v(l);
  for (Label l : su) {
    if (l != kIdentity) out.labeling[out.phi(l)] = image_u(l);
  }
  std::map<Label, Label> back;
  for (const auto& [l, g] : out.labeling) back[g] = l;
  for (const auto& [a, ga] : out.labeling) {
    for (const auto& [b, gb] : out.labeling) {
      if (auto it = back.find(out.group.mul(ga, gb)); it != back.end()) out.table.set(a, b, it->second);
    }
  }
  return out;
}

void to_json(nlohmann::json& j, const ExtendVerdict& v) {
  j = nlohmann::json{{"verdict", std::string(to_string(v.kind))}, {"nodes", v.nodes}};
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (v.witness) {
    j["witness"] = *v.witness;
    auto lab = nlohmann::json::array();
    for (const auto& [from, to] : v.labeling) lab.push_back({from, to});
    j["labeling"] = lab;
  }
  if (v.certificate) j["certificate"] = *v.certificate;
}

}  // namespace baire
