#pragma once

// Deciding, within a budget, whether a finite partial table is part of a
// group's multiplication table: saturation under the group laws for
// refutations, labelled search through finite groups for witnesses.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "baire/fingroup.hpp"
#include "baire/table.hpp"

namespace baire {

enum class Rule {
  Given,
  Identity,
  Inverse,
  AssocLeft,   // ab=x, bc=y, xc=z  |-  ay=z
  AssocRight,  // ab=x, bc=y, ay=z  |-  xc=z
  Functional,  // ab=c, ab=d        |-  c=d
  LeftCancel,  // ab=c, ad=c        |-  b=d
  RightCancel, // ba=c, da=c        |-  b=d
};

std::string_view to_string(Rule r);
Rule rule_from_string(std::string_view s);

/// Two labels the rules force to be equal.
struct Equate {
  Label lhs = 0;
  Label rhs = 0;

  friend bool operator==(const Equate&, const Equate&) = default;
};

struct InferenceStep {
  Rule rule = Rule::Given;
  std::vector<Cell> premises;
  std::variant<Cell, Equate> conclusion;
};

/// Ordered steps; the last one equates two distinct labels.
struct Certificate {
  std::vector<InferenceStep> steps;

  bool empty() const { return steps.empty(); }
};

/// Checks every step against its rule using only cells of t, identity cells
/// and earlier conclusions, and that the final step equates distinct labels.
bool replay_certificate(const PartialTable& t, const Certificate& cert);

/// Human-readable, one step per line.
std::string render_certificate(const Certificate& cert);

struct SaturatedTable {
  PartialTable cells;  // given plus derived, closed under the rules
  std::size_t derived = 0;
  std::optional<Certificate> contradiction;

  bool contradictory() const { return contradiction.has_value(); }
};

/// Closure of t (identity cells for every mentioned label, inverse symmetry,
/// associativity both ways) with functionality and cancellation checked
/// throughout. Never introduces new labels.
SaturatedTable saturate(const PartialTable& t);

struct ExtendBudget {
  std::size_t max_order = 24;
  std::uint64_t node_limit = 200'000;
  std::size_t symmetric_degree = 5;
  bool abelian_only = false;
};

enum class Verdict { Extends, NonExtendable, Unknown };

std::string_view to_string(Verdict v);

struct ExtendVerdict {
  Verdict kind = Verdict::Unknown;
  std::optional<FinGroup> witness;
  std::map<Label, Label> labeling;  // table label -> witness label
  std::optional<Certificate> certificate;
  std::uint64_t nodes = 0;
  std::string reason;
};

/// labeling is injective, fixes 1, and turns every cell into a true product.
bool verify_extension(const PartialTable& t, const FinGroup& g, const std::map<Label, Label>& labeling);

/// Saturate, then search for an injective labelling into catalog groups of
/// order <= max_order and symmetric groups up to symmetric_degree, smallest
/// first. Running out of nodes gives Unknown.
ExtendVerdict check_extendable(const PartialTable& t, const ExtendBudget& budget = {});

/// Search in one fixed group, starting from the `fixed` images. nodes is
/// incremented per search node; nullopt when exhausted or when the limit is
/// reached (compare nodes with the limit to tell the two apart).
std::optional<std::map<Label, Label>> find_labeling(const PartialTable& t, const FinGroup& g, std::uint64_t& nodes,
                                                    std::uint64_t node_limit,
                                                    const std::map<Label, Label>& fixed = {});

/// Cells (a, b) -> ab with a, b and ab all in `labels`.
PartialTable witness_prefix(const FinGroup& g, const LabelSet& labels);

struct HomogeneityWitness {
  FinitePermutation phi;
  PartialTable table;
  FinGroup group;
  std::map<Label, Label> labeling;  // table label -> group label
};

/// For square-form u and v with group witnesses: phi moves supp(u) \ {1}
/// off supp(v), and table is a group table prefix lying in both
/// transport_clopen(phi, u) and v. nullopt if either clopen has no witness
/// within the budget.
std::optional<HomogeneityWitness> homogeneity_witness(const CellClopen& u, const CellClopen& v,
                                                      const ExtendBudget& budget = {});

void to_json(nlohmann::json& j, const InferenceStep& s);
void from_json(const nlohmann::json& j, InferenceStep& s);
void to_json(nlohmann::json& j, const Certificate& c);
void from_json(const nlohmann::json& j, Certificate& c);
void to_json(nlohmann::json& j, const ExtendVerdict& v);

}  // namespace baire
