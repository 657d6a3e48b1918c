#include "baire/table.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "baire/error.hpp"

namespace baire {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::WriteOnceViolation: return "WriteOnceViolation";
    case ErrorKind::IdentityViolation: return "IdentityViolation";
    case ErrorKind::NotSquareForm: return "NotSquareForm";
    case ErrorKind::EvaluationBlocked: return "EvaluationBlocked";
    case ErrorKind::GroupAxiomViolation: return "GroupAxiomViolation";
    case ErrorKind::LimitExceeded: return "LimitExceeded";
    case ErrorKind::IdentityElement: return "IdentityElement";
    case ErrorKind::TrivialGroup: return "TrivialGroup";
    case ErrorKind::NotInClosure: return "NotInClosure";
    case ErrorKind::UnknownConstant: return "UnknownConstant";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IllegalMove: return "IllegalMove";
    case ErrorKind::StrategyFault: return "StrategyFault";
    case ErrorKind::NotYourTurn: return "NotYourTurn";
    case ErrorKind::SessionNotFound: return "SessionNotFound";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::GoalBlocked: return "GoalBlocked";
  }
  return "Unknown";
}

std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Undetermined: return "undetermined";
  }
  return "undetermined";
}

// ---------------------------------------------------------------------------
// PartialTable

PartialTable::PartialTable(std::span<const Cell> cells) {
  for (const auto& c : cells) set(c);
}

PartialTable::PartialTable(std::initializer_list<Cell> cells)
    : PartialTable(std::span<const Cell>(cells.begin(), cells.size())) {}

std::optional<Label> PartialTable::get(Label row, Label col) const {
  auto it = cells_.find({row, col});
  if (it == cells_.end()) return std::nullopt;
  return it->second;
}

void PartialTable::set(Label row, Label col, Label value) {
  if (row == 0 || col == 0 || value == 0) {
    throw Error(ErrorKind::InvalidArgument, "labels start at 1");
  }
  if (row == kIdentity && value != col) {
    throw Error(ErrorKind::IdentityViolation,
                "cell (1," + std::to_string(col) + ") must hold " + std::to_string(col));
  }
  if (col == kIdentity && value != row) {
    throw Error(ErrorKind::IdentityViolation,
                "cell (" + std::to_string(row) + ",1) must hold " + std::to_string(row));
  }
  auto [it, inserted] = cells_.try_emplace({row, col}, value);
  if (!inserted && it->second != value) {
    throw Error(ErrorKind::WriteOnceViolation, "cell (" + std::to_string(row) + "," + std::to_string(col) +
                                                   ") already holds " + std::to_string(it->second));
  }
}

std::vector<Cell> PartialTable::cells() const {
  std::vector<Cell> out;
  out.reserve(cells_.size());
  for (const auto& [k, v] : cells_) out.push_back({k.first, k.second, v});
  return out;
}

LabelSet PartialTable::labels() const {
  LabelSet out;
  for (const auto& [k, v] : cells_) {
    out.insert(k.first);
    out.insert(k.second);
    out.insert(v);
  }
  return out;
}

bool PartialTable::row_has_identity(Label row) const {
  for (auto it = cells_.lower_bound({row, 0}); it != cells_.end() && it->first.first == row; ++it) {
    if (it->second == kIdentity) return true;
  }
  return false;
}

bool PartialTable::col_has_identity(Label col) const {
  return std::any_of(cells_.begin(), cells_.end(),
                     [&](const auto& kv) { return kv.first.second == col && kv.second == kIdentity; });
}

std::optional<Label> PartialTable::product(Label a, Label b) const {
  if (a == kIdentity) return b;
  if (b == kIdentity) return a;
  return get(a, b);
}

std::optional<Label> PartialTable::inverse_of(Label a) const {
  if (a == kIdentity) return kIdentity;
  for (auto it = cells_.lower_bound({a, 0}); it != cells_.end() && it->first.first == a; ++it) {
    if (it->second == kIdentity) return it->first.second;
  }
  for (const auto& [k, v] : cells_) {
    if (k.second == a && v == kIdentity) return k.first;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// CellClopen

CellClopen::CellClopen(std::span<const Cell> constraints) {
  for (const auto& c : constraints) {
    if (c.row == 0 || c.col == 0 || c.value == 0) {
      throw Error(ErrorKind::InvalidArgument, "labels start at 1");
    }
    auto [it, inserted] = constraints_.try_emplace({c.row, c.col}, c.value);
    if (!inserted && it->second != c.value) {
      throw Error(ErrorKind::InvalidArgument, "conflicting constraints for (" + std::to_string(c.row) + "," +
                                                  std::to_string(c.col) + ")");
    }
  }
}

CellClopen::CellClopen(std::initializer_list<Cell> constraints)
    : CellClopen(std::span<const Cell>(constraints.begin(), constraints.size())) {}

CellClopen CellClopen::square(const std::vector<std::vector<Label>>& values) {
  std::vector<Cell> cells;
  const auto k = static_cast<Label>(values.size());
  for (Label i = 1; i <= k; ++i) {
    if (values[i - 1].size() != k) throw Error(ErrorKind::NotSquareForm, "block rows must have length k");
    for (Label j = 1; j <= k; ++j) cells.push_back({i, j, values[i - 1][j - 1]});
  }
  return CellClopen(cells);
}

std::vector<Cell> CellClopen::constraints() const {
  std::vector<Cell> out;
  for (const auto& [k, v] : constraints_) out.push_back({k.first, k.second, v});
  return out;
}

std::optional<Label> CellClopen::square_size() const {
  Label k = 0;
  for (const auto& [key, v] : constraints_) k = std::max({k, key.first, key.second});
  if (static_cast<std::size_t>(k) * k != constraints_.size()) return std::nullopt;
  return k;
}

PartialTable CellClopen::as_table() const {
  auto cs = constraints();
  return PartialTable(cs);
}

// ---------------------------------------------------------------------------
// WordClopen

void WordClopen::validate() const {
  auto check = [&](const Word& w) {
    if (w.variable_bound() > params.size()) {
      throw Error(ErrorKind::InvalidArgument, "word '" + to_string(w) + "' uses more than " +
                                                  std::to_string(params.size()) + " parameters");
    }
  };
  for (const auto& [w, b] : equations) check(w);
  for (const auto& [w, c] : inequations) check(w);
}

LabelSet WordClopen::labels() const {
  LabelSet out(params.begin(), params.end());
  auto add = [&](const Word& w, Label target) {
    out.insert(target);
    for (const auto& l : w.letters()) {
      if (l.is_constant()) out.insert(l.id);
    }
  };
  for (const auto& [w, b] : equations) add(w, b);
  for (const auto& [w, c] : inequations) add(w, c);
  return out;
}

// ---------------------------------------------------------------------------
// FinitePermutation

FinitePermutation FinitePermutation::from_map(const std::map<Label, Label>& m) {
  FinitePermutation p;
  LabelSet domain;
  LabelSet image;
  for (const auto& [a, b] : m) {
    if (a == 0 || b == 0) throw Error(ErrorKind::InvalidArgument, "labels start at 1");
    if (a == b) continue;
    if (a == kIdentity || b == kIdentity) {
      throw Error(ErrorKind::InvalidArgument, "permutation must fix label 1");
    }
    if (!image.insert(b).second) {
      throw Error(ErrorKind::InvalidArgument, "permutation is not injective at " + std::to_string(b));
    }
    domain.insert(a);
    p.map_.emplace(a, b);
  }
  for (const auto& [a, b] : m) {
    if (a == b && image.contains(a)) {
      throw Error(ErrorKind::InvalidArgument, "permutation is not injective at " + std::to_string(a));
    }
  }
  if (domain != image) {
    throw Error(ErrorKind::InvalidArgument, "image of the support differs from the support");
  }
  return p;
}

FinitePermutation FinitePermutation::from_pairs(std::span<const std::pair<Label, Label>> pairs) {
  std::map<Label, Label> m;
  for (const auto& [a, b] : pairs) {
    auto [it, inserted] = m.emplace(a, b);
    if (!inserted && it->second != b) {
      throw Error(ErrorKind::InvalidArgument, "label " + std::to_string(a) + " mapped twice");
    }
  }
  return from_map(m);
}

FinitePermutation FinitePermutation::transposition(Label a, Label b) {
  if (a == b) return {};
  return from_map({{a, b}, {b, a}});
}

FinitePermutation FinitePermutation::extending(const std::map<Label, Label>& partial) {
  LabelSet domain;
  LabelSet range;
  for (const auto& [a, b] : partial) {
    domain.insert(a);
    if (!range.insert(b).second) {
      throw Error(ErrorKind::InvalidArgument, "partial map is not injective at " + std::to_string(b));
    }
  }
  std::map<Label, Label> full = partial;
  std::vector<Label> need_image;    // range \ domain: still need somewhere to go
  std::vector<Label> free_targets;  // domain \ range: not yet hit
  std::set_difference(range.begin(), range.end(), domain.begin(), domain.end(), std::back_inserter(need_image));
  std::set_difference(domain.begin(), domain.end(), range.begin(), range.end(), std::back_inserter(free_targets));
  for (std::size_t i = 0; i < need_image.size(); ++i) full.emplace(need_image[i], free_targets[i]);
  return from_map(full);
}

Label FinitePermutation::operator()(Label x) const {
  auto it = map_.find(x);
  return it == map_.end() ? x : it->second;
}

FinitePermutation FinitePermutation::inverse() const {
  FinitePermutation p;
  for (const auto& [a, b] : map_) p.map_.emplace(b, a);
  return p;
}

FinitePermutation FinitePermutation::compose(const FinitePermutation& rhs) const {
  std::map<Label, Label> m;
  for (const auto& [a, b] : rhs.map_) m[a] = (*this)(b);
  for (const auto& [a, b] : map_) {
    if (!rhs.map_.contains(a)) m[a] = b;
  }
  return from_map(m);
}

// ---------------------------------------------------------------------------
// Membership and the action

Tri satisfies_cell_clopen(const PartialTable& t, const CellClopen& b) {
  bool all_present = true;
  for (const auto& [key, value] : b.map()) {
    const auto have = t.product(key.first, key.second);
    if (!have) {
      all_present = false;
    } else if (*have != value) {
      return Tri::No;
    }
  }
  return all_present ? Tri::Yes : Tri::Undetermined;
}

Label evaluate_in_table(const Word& w, const PartialTable& t, std::span<const Label> params) {
  Label acc = kIdentity;
  for (const auto& letter : w.letters()) {
    Label x;
    if (letter.is_variable()) {
      if (letter.id >= params.size()) {
        throw Error(ErrorKind::InvalidArgument, "variable x" + std::to_string(letter.id) + " has no parameter");
      }
      x = params[letter.id];
    } else {
      x = letter.id;
    }
    if (letter.exponent < 0) {
      const auto inv = t.inverse_of(x);
      if (!inv) throw Error(ErrorKind::EvaluationBlocked, "inverse of " + std::to_string(x) + " is not derivable");
      x = *inv;
    }
    const auto next = t.product(acc, x);
    if (!next) {
      throw Error(ErrorKind::EvaluationBlocked,
                  "product " + std::to_string(acc) + "*" + std::to_string(x) + " is not derivable");
    }
    acc = *next;
  }
  return acc;
}

Tri satisfies_word_clopen(const PartialTable& t, const WordClopen& w) {
  w.validate();
  bool blocked = false;
  std::string blocked_reason;
  auto check = [&](const Word& word, Label target, bool equation) -> bool {
    try {
      const Label v = evaluate_in_table(word, t, w.params);
      return equation ? v == target : v != target;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::EvaluationBlocked) throw;
      if (!blocked) blocked_reason = e.what();
      blocked = true;
      return true;
    }
  };
  for (const auto& [word, target] : w.equations) {
    if (!check(word, target, true)) return Tri::No;
  }
  for (const auto& [word, excluded] : w.inequations) {
    if (!check(word, excluded, false)) return Tri::No;
  }
  if (blocked) throw Error(ErrorKind::EvaluationBlocked, blocked_reason);
  return Tri::Yes;
}

LabelSet supp(const CellClopen& b) {
  const auto k = b.square_size();
  if (!k) throw Error(ErrorKind::NotSquareForm, "constraints do not cover a full square block");
  LabelSet out;
  for (Label i = 1; i <= *k; ++i) out.insert(i);
  for (const auto& [key, v] : b.map()) out.insert(v);
  return out;
}

PartialTable apply_homeomorphism(const FinitePermutation& phi, const PartialTable& t) {
  PartialTable out;
  for (const auto& [key, v] : t.map()) out.set(phi(key.first), phi(key.second), phi(v));
  return out;
}

CellClopen transport_clopen(const FinitePermutation& phi, const CellClopen& b) {
  std::vector<Cell> cells;
  for (const auto& [key, v] : b.map()) cells.push_back({phi(key.first), phi(key.second), phi(v)});
  return CellClopen(cells);
}

// ---------------------------------------------------------------------------
// JSON

void to_json(nlohmann::json& j, const Cell& c) { j = nlohmann::json::array({c.row, c.col, c.value}); }

void from_json(const nlohmann::json& j, Cell& c) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorKind::ParseError, "a cell is [row, col, value]");
  c = Cell{j[0].get<Label>(), j[1].get<Label>(), j[2].get<Label>()};
}

void to_json(nlohmann::json& j, const PartialTable& t) { j = nlohmann::json{{"cells", t.cells()}}; }

void from_json(const nlohmann::json& j, PartialTable& t) {
  const auto cells = (j.is_array() ? j : j.at("cells")).get<std::vector<Cell>>();
  t = PartialTable(cells);
}

void to_json(nlohmann::json& j, const CellClopen& b) { j = nlohmann::json{{"constraints", b.constraints()}}; }

void from_json(const nlohmann::json& j, CellClopen& b) {
  const auto& arr = j.is_array() ? j : j.contains("constraints") ? j.at("constraints") : j.at("cells");
  const auto cells = arr.get<std::vector<Cell>>();
  b = CellClopen(cells);
}

void to_json(nlohmann::json& j, const FinitePermutation& p) {
  auto arr = nlohmann::json::array();
  for (const auto& [a, b] : p.moved()) arr.push_back({a, b});
  j = nlohmann::json{{"map", arr}};
}

void from_json(const nlohmann::json& j, FinitePermutation& p) {
  std::vector<std::pair<Label, Label>> pairs;
  for (const auto& e : j.at("map")) pairs.emplace_back(e.at(0).get<Label>(), e.at(1).get<Label>());
  p = FinitePermutation::from_pairs(pairs);
}

}  // namespace baire
