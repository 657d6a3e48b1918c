#pragma once

// Finite stages of the space of multiplication tables on {1, 2, 3, ...}:
// partial tables, the two clopen bases, supp, and the pushforward action of
// 1-fixing finite permutations.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "baire/label.hpp"
#include "baire/word.hpp"

namespace baire {

/// Three-valued membership of a finite stage in a basic clopen set.
enum class Tri { Yes, No, Undetermined };

std::string_view to_string(Tri t);

/// A finite, write-once partial multiplication table. Cells of row 1 and
/// column 1 must agree with label 1 being the identity.
class PartialTable {
 public:
  using Key = std::pair<Label, Label>;

  PartialTable() = default;
  explicit PartialTable(std::span<const Cell> cells);
  PartialTable(std::initializer_list<Cell> cells);

  std::optional<Label> get(Label row, Label col) const;
  bool has(Label row, Label col) const { return cells_.contains({row, col}); }

  /// Writes a cell. Rewriting the same value is a no-op; a different value
  /// throws WriteOnceViolation, a bad identity row or column throws
  /// IdentityViolation.
  void set(Label row, Label col, Label value);
  void set(const Cell& c) { set(c.row, c.col, c.value); }

  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

  /// Cells in row-major order.
  std::vector<Cell> cells() const;
  const std::map<Key, Label>& map() const { return cells_; }

  /// Every label mentioned in a row, column or value.
  LabelSet labels() const;

  bool row_has_identity(Label row) const;
  bool col_has_identity(Label col) const;

  /// Product derivable without search: a stored cell or an identity law.
  std::optional<Label> product(Label a, Label b) const;
  /// Some y with a*y = 1 or y*a = 1 stored (or a = 1). In a group either
  /// one-sided equation pins the two-sided inverse.
  std::optional<Label> inverse_of(Label a) const;

  friend bool operator==(const PartialTable&, const PartialTable&) = default;

 private:
  std::map<Key, Label> cells_;
};

/// Basic clopen set of the first kind: finitely many prescribed products.
class CellClopen {
 public:
  CellClopen() = default;
  explicit CellClopen(std::span<const Cell> constraints);
  CellClopen(std::initializer_list<Cell> constraints);

  /// The square block {1..k}^2 with values[i-1][j-1] = m_{i,j}.
  static CellClopen square(const std::vector<std::vector<Label>>& values);

  std::vector<Cell> constraints() const;
  const std::map<PartialTable::Key, Label>& map() const { return constraints_; }
  std::size_t size() const { return constraints_.size(); }

  /// k if the constraints are exactly the block {1..k}^2, nullopt otherwise.
  std::optional<Label> square_size() const;

  PartialTable as_table() const;

  friend bool operator==(const CellClopen&, const CellClopen&) = default;

 private:
  std::map<PartialTable::Key, Label> constraints_;
};

/// Basic clopen set of the second kind: words U_i(a) = b_i and V_j(a) != c_j
/// evaluated at parameters a_1..a_n.
struct WordClopen {
  std::vector<Label> params;
  std::vector<std::pair<Word, Label>> equations;
  std::vector<std::pair<Word, Label>> inequations;

  /// Throws InvalidArgument when a word uses a variable index >= params.size().
  void validate() const;
  LabelSet labels() const;
};

/// A bijection of {1, 2, ...} fixing 1 that moves finitely many labels.
class FinitePermutation {
 public:
  FinitePermutation() = default;

  /// Pairs (a, b) meaning a -> b; fixed points may be listed or omitted.
  static FinitePermutation from_pairs(std::span<const std::pair<Label, Label>> pairs);
  static FinitePermutation from_map(const std::map<Label, Label>& m);
  static FinitePermutation transposition(Label a, Label b);

  /// Extends a finite injective partial map to a permutation of dom ∪ ran:
  /// the labels of ran \ dom are sent, in increasing order, to the labels of
  /// dom \ ran in increasing order.
  static FinitePermutation extending(const std::map<Label, Label>& partial);

  Label operator()(Label x) const;
  FinitePermutation inverse() const;

  /// (*this ∘ rhs)(x) = (*this)(rhs(x)).
  FinitePermutation compose(const FinitePermutation& rhs) const;

  /// Moved points only.
  const std::map<Label, Label>& moved() const { return map_; }
  bool is_identity() const { return map_.empty(); }

  friend bool operator==(const FinitePermutation&, const FinitePermutation&) = default;

 private:
  std::map<Label, Label> map_;
};

Tri satisfies_cell_clopen(const PartialTable& t, const CellClopen& b);

/// Left-to-right evaluation of `w` with variables bound to `params`, using
/// only stored cells, identity laws and the one-sided inverse rule. Throws
/// EvaluationBlocked when a needed product or inverse is missing.
Label evaluate_in_table(const Word& w, const PartialTable& t, std::span<const Label> params);

Tri satisfies_word_clopen(const PartialTable& t, const WordClopen& w);

/// supp b = {1..k} ∪ {m_ij}. Throws NotSquareForm.
LabelSet supp(const CellClopen& b);

/// Pushforward: (a, b) -> c becomes (phi(a), phi(b)) -> phi(c).
PartialTable apply_homeomorphism(const FinitePermutation& phi, const PartialTable& t);
CellClopen transport_clopen(const FinitePermutation& phi, const CellClopen& b);

void to_json(nlohmann::json& j, const PartialTable& t);
void from_json(const nlohmann::json& j, PartialTable& t);
void to_json(nlohmann::json& j, const CellClopen& b);
void from_json(const nlohmann::json& j, CellClopen& b);
void to_json(nlohmann::json& j, const FinitePermutation& p);
void from_json(const nlohmann::json& j, FinitePermutation& p);
void to_json(nlohmann::json& j, const Cell& c);
void from_json(const nlohmann::json& j, Cell& c);

}  // namespace baire
