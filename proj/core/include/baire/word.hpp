#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "baire/label.hpp"

namespace baire {

/// A letter of a word in the free product F * G: either a variable x_i or a
/// constant naming an element of the ambient structure, raised to +1 or -1.
struct Letter {
  enum class Kind : std::uint8_t { Variable, Constant };

  Kind kind = Kind::Variable;
  std::uint32_t id = 0;  // variable index, or constant label
  int exponent = 1;      // +1 or -1

  static Letter var(std::uint32_t index, int exponent = 1) {
    return {Kind::Variable, index, exponent};
  }
  static Letter constant(Label label, int exponent = 1) {
    return {Kind::Constant, label, exponent};
  }

  bool is_variable() const { return kind == Kind::Variable; }
  bool is_constant() const { return kind == Kind::Constant; }
  Letter inverse() const { return {kind, id, -exponent}; }

  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Finite product of letters; the empty word is the identity.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const;
  Word operator*(const Word& rhs) const;

  /// One past the largest variable index used, 0 if none.
  std::size_t variable_bound() const;
  /// Number of occurrences of variable `index`.
  std::size_t occurrences(std::uint32_t index) const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

/// Parses `x0^-1 * c5 * x0`. Variables are `xN`, constants `cLABEL`; an
/// exponent `^k` with |k| >= 1 expands to |k| copies. `1` or an empty string
/// is the empty word.
Word parse_word(std::string_view text);
std::string to_string(const Word& w);

/// Free reduction: removes x x^-1 pairs and identity constants `c1`.
/// Idempotent and evaluation-preserving in every group.
Word normal_form(const Word& w);

/// True when two constants are adjacent, i.e. the word could be shortened
/// further once the ambient multiplication is known.
bool has_adjacent_constants(const Word& w);

/// A finite system (E, I): every equation word should evaluate to 1, every
/// inequation word to something else.
struct EqSystem {
  std::vector<Word> equations;
  std::vector<Word> inequations;
  std::size_t var_count = 0;

  /// Throws InvalidArgument if a word mentions a variable >= var_count.
  void validate() const;
  LabelSet constants() const;

  friend bool operator==(const EqSystem&, const EqSystem&) = default;
};

/// Values of variables 0..n-1, indexed by variable.
using Assignment = std::vector<Label>;

void to_json(nlohmann::json& j, const Word& w);
void from_json(const nlohmann::json& j, Word& w);
void to_json(nlohmann::json& j, const EqSystem& s);
void from_json(const nlohmann::json& j, EqSystem& s);

}  // namespace baire
