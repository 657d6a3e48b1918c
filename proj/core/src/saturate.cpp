#include "baire/extend.hpp"

#include <deque>

#include <nlohmann/json.hpp>

namespace baire {

std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::Given: return "given";
    case Rule::Identity: return "identity";
    case Rule::Inverse: return "inverse";
    case Rule::AssocLeft: return "assoc-left";
    case Rule::AssocRight: return "assoc-right";
    case Rule::Functional: return "functional";
    case Rule::LeftCancel: return "left-cancel";
    case Rule::RightCancel: return "right-cancel";
  }
  return "unknown";
}

Rule rule_from_string(std::string_view s) {
  for (Rule r : {Rule::Given, Rule::Identity, Rule::Inverse, Rule::AssocLeft, Rule::AssocRight, Rule::Functional,
                 Rule::LeftCancel, Rule::RightCancel}) {
    if (to_string(r) == s) return r;
  }
  throw Error(ErrorKind::ParseError, "unknown rule '" + std::string(s) + "'");
}

namespace {

std::string cell_str(const Cell& c) {
  return std::to_string(c.row) + "*" + std::to_string(c.col) + "=" + std::to_string(c.value);
}

class Saturator {
 public:
  explicit Saturator(const PartialTable& t) : given_(t) {}

  SaturatedTable run() {
    for (const auto& c : given_.cells()) {
      if (!add(c, Rule::Given, {})) return finish();
    }
    auto labels = given_.labels();
    labels.insert(kIdentity);
    for (Label x : labels) {
      if (!add({kIdentity, x, x}, Rule::Identity, {})) return finish();
      if (!add({x, kIdentity, x}, Rule::Identity, {})) return finish();
    }
    while (!queue_.empty()) {
      const Cell c = queue_.front();
      queue_.pop_front();
      if (!process(c)) break;
    }
    return finish();
  }

 private:
  using Derivation = std::pair<Rule, std::vector<Cell>>;

  struct Pending {
    Cell cell;
    Rule rule;
    std::vector<Cell> premises;
  };

  std::optional<Label> get(Label a, Label b) const {
    auto it = cells_.find({a, b});
    if (it == cells_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t record(InferenceStep step) {
    steps_.push_back(std::move(step));
    return steps_.size() - 1;
  }

  void contradict(const Cell& fresh, Rule rule, std::vector<Cell> premises, Rule why, const Cell& other,
                  Equate eq) {
    const auto idx = record({rule, std::move(premises), fresh});
    origin_.emplace(fresh, idx);
    final_ = record({why, {other, fresh}, eq});
  }

  bool add(const Cell& c, Rule rule, std::vector<Cell> premises) {
    if (auto v = get(c.row, c.col)) {
      if (*v == c.value) return true;
      contradict(c, rule, std::move(premises), Rule::Functional, {c.row, c.col, *v}, {*v, c.value});
      return false;
    }
    if (auto it = row_value_.find({c.row, c.value}); it != row_value_.end() && it->second != c.col) {
      contradict(c, rule, std::move(premises), Rule::LeftCancel, {c.row, it->second, c.value}, {it->second, c.col});
      return false;
    }
    if (auto it = col_value_.find({c.col, c.value}); it != col_value_.end() && it->second != c.row) {
      contradict(c, rule, std::move(premises), Rule::RightCancel, {it->second, c.col, c.value}, {it->second, c.row});
      return false;
    }
    origin_.emplace(c, record({rule, std::move(premises), c}));
    cells_[{c.row, c.col}] = c.value;
    by_row_[c.row][c.col] = c.value;
    by_col_[c.col][c.row] = c.value;
    by_value_[c.value].push_back({c.row, c.col, c.value});
    row_value_[{c.row, c.value}] = c.col;
    col_value_[{c.col, c.value}] = c.row;
    if (rule != Rule::Given) ++derived_;
    queue_.push_back(c);
    return true;
  }

  // Every associativity instance in which c takes part, plus inverse
  // symmetry.
  bool process(const Cell& c) {
    std::vector<Pending> out;
    if (c.value == kIdentity) out.push_back({{c.col, c.row, kIdentity}, Rule::Inverse, {c}});

    // p1 = ab=x, p2 = bc=y; p3 = xc=z gives ay=z, p4 = ay=z gives xc=z.
    auto both_ways = [&](const Cell& p1, const Cell& p2) {
      const Label a = p1.row, x = p1.value, cc = p2.col, y = p2.value;
      if (auto z = get(x, cc)) out.push_back({{a, y, *z}, Rule::AssocLeft, {p1, p2, {x, cc, *z}}});
      if (auto z = get(a, y)) out.push_back({{x, cc, *z}, Rule::AssocRight, {p1, p2, {a, y, *z}}});
    };
    // c as p1
    if (auto it = by_row_.find(c.col); it != by_row_.end()) {
      for (const auto& [col, y] : it->second) both_ways(c, {c.col, col, y});
    }
    // c as p2
    if (auto it = by_col_.find(c.row); it != by_col_.end()) {
      for (const auto& [row, x] : it->second) both_ways({row, c.row, x}, c);
    }
    // c as p3: xc=z with ab=x and bc=y
    if (auto it = by_value_.find(c.row); it != by_value_.end()) {
      for (const auto& p1 : it->second) {
        if (auto y = get(p1.col, c.col)) {
          out.push_back({{p1.row, *y, c.value}, Rule::AssocLeft, {p1, {p1.col, c.col, *y}, c}});
        }
      }
    }
    // c as p4: ay=z with bc=y and ab=x
    if (auto it = by_value_.find(c.col); it != by_value_.end()) {
      for (const auto& p2 : it->second) {
        if (auto x = get(c.row, p2.row)) {
          out.push_back({{*x, p2.col, c.value}, Rule::AssocRight, {{c.row, p2.row, *x}, p2, c}});
        }
      }
    }
    for (auto& p : out) {
      if (!add(p.cell, p.rule, std::move(p.premises))) return false;
    }
    return true;
  }

  SaturatedTable finish() {
    SaturatedTable out;
    out.derived = derived_;
    for (const auto& [key, v] : cells_) out.cells.set(key.first, key.second, v);
    if (final_) {
      // Backward slice from the contradiction; given cells need no step.
      std::vector<char> keep(steps_.size(), 0);
      std::vector<std::size_t> stack{*final_};
      while (!stack.empty()) {
        const auto i = stack.back();
        stack.pop_back();
        if (keep[i]) continue;
        keep[i] = 1;
        for (const auto& p : steps_[i].premises) {
          if (auto it = origin_.find(p); it != origin_.end()) stack.push_back(it->second);
        }
      }
      Certificate cert;
      for (std::size_t i = 0; i < steps_.size(); ++i) {
        if (keep[i] && steps_[i].rule != Rule::Given) cert.steps.push_back(steps_[i]);
      }
      out.contradiction = std::move(cert);
    }
    return out;
  }

  const PartialTable& given_;
  std::map<std::pair<Label, Label>, Label> cells_;
  std::map<Label, std::map<Label, Label>> by_row_;
  std::map<Label, std::map<Label, Label>> by_col_;
  std::map<Label, std::vector<Cell>> by_value_;
  std::map<std::pair<Label, Label>, Label> row_value_;  // (row, value) -> col
  std::map<std::pair<Label, Label>, Label> col_value_;  // (col, value) -> row
  std::deque<Cell> queue_;
  std::vector<InferenceStep> steps_;
  std::map<Cell, std::size_t> origin_;
  std::optional<std::size_t> final_;
  std::size_t derived_ = 0;
};

}  // namespace

SaturatedTable saturate(const PartialTable& t) { return Saturator(t).run(); }

bool replay_certificate(const PartialTable& t, const Certificate& cert) {
  if (cert.steps.empty()) return false;
  std::set<Cell> known;
  for (const auto& c : t.cells()) known.insert(c);
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const auto& s = cert.steps[i];
    const bool last = i + 1 == cert.steps.size();
    for (const auto& p : s.premises) {
      if (!known.contains(p)) return false;
    }
    const auto& ps = s.premises;
    if (last != std::holds_alternative<Equate>(s.conclusion)) return false;
    if (last) {
      const auto eq = std::get<Equate>(s.conclusion);
      if (eq.lhs == eq.rhs || ps.size() != 2) return false;
      const Cell& u = ps[0];
      const Cell& v = ps[1];
      switch (s.rule) {
        case Rule::Functional:
          if (!(u.row == v.row && u.col == v.col && eq.lhs == u.value && eq.rhs == v.value)) return false;
          break;
        case Rule::LeftCancel:
          if (!(u.row == v.row && u.value == v.value && eq.lhs == u.col && eq.rhs == v.col)) return false;
          break;
        case Rule::RightCancel:
          if (!(u.col == v.col && u.value == v.value && eq.lhs == u.row && eq.rhs == v.row)) return false;
          break;
        default:
          return false;
      }
      return true;
    }
    const Cell c = std::get<Cell>(s.conclusion);
    switch (s.rule) {
      case Rule::Given:
        if (!t.has(c.row, c.col) || *t.get(c.row, c.col) != c.value) return false;
        break;
      case Rule::Identity:
        if (!ps.empty()) return false;
        if (!((c.row == kIdentity && c.col == c.value) || (c.col == kIdentity && c.row == c.value))) return false;
        break;
      case Rule::Inverse:
        if (ps.size() != 1 || ps[0].value != kIdentity || c.value != kIdentity || c.row != ps[0].col ||
            c.col != ps[0].row) {
          return false;
        }
        break;
      case Rule::AssocLeft:
      case Rule::AssocRight: {
        if (ps.size() != 3) return false;
        const Cell& p1 = ps[0];
        const Cell& p2 = ps[1];
        const Cell& p3 = ps[2];
        if (p1.col != p2.row) return false;
        if (s.rule == Rule::AssocLeft) {
          if (!(p3.row == p1.value && p3.col == p2.col && c.row == p1.row && c.col == p2.value && c.value == p3.value)) {
            return false;
          }
        } else {
          if (!(p3.row == p1.row && p3.col == p2.value && c.row == p1.value && c.col == p2.col && c.value == p3.value)) {
            return false;
          }
        }
        break;
      }
      default:
        return false;
    }
    known.insert(c);
  }
  return false;
}

std::string render_certificate(const Certificate& cert) {
  std::string out;
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const auto& s = cert.steps[i];
    out += std::to_string(i + 1) + ". " + std::string(to_string(s.rule)) + ":";
    for (std::size_t k = 0; k < s.premises.size(); ++k) out += (k ? ", " : " ") + cell_str(s.premises[k]);
    out += " |- ";
    if (const auto* c = std::get_if<Cell>(&s.conclusion)) {
      out += cell_str(*c);
    } else {
      const auto& e = std::get<Equate>(s.conclusion);
      out += std::to_string(e.lhs) + " = " + std::to_string(e.rhs) + " (distinct labels)";
    }
    out += '\n';
  }
  return out;
}

void to_json(nlohmann::json& j, const InferenceStep& s) {
  j = nlohmann::json{{"rule", std::string(to_string(s.rule))}, {"premises", s.premises}};
  if (const auto* c = std::get_if<Cell>(&s.conclusion)) {
    j["conclusion"] = {{"cell", *c}};
  } else {
    const auto& e = std::get<Equate>(s.conclusion);
    j["conclusion"] = {{"equate", {e.lhs, e.rhs}}};
  }
}

void from_json(const nlohmann::json& j, InferenceStep& s) {
  s.rule = rule_from_string(j.at("rule").get<std::string>());
  s.premises = j.at("premises").get<std::vector<Cell>>();
  const auto& c = j.at("conclusion");
  if (c.contains("cell")) {
    s.conclusion = c.at("cell").get<Cell>();
  } else {
    const auto e = c.at("equate").get<std::vector<Label>>();
    if (e.size() != 2) throw Error(ErrorKind::ParseError, "equate needs two labels");
    s.conclusion = Equate{e[0], e[1]};
  }
}

void to_json(nlohmann::json& j, const Certificate& c) { j = nlohmann::json{{"steps", c.steps}}; }

void from_json(const nlohmann::json& j, Certificate& c) { c.steps = j.at("steps").get<std::vector<InferenceStep>>(); }

}  // namespace baire
