#pragma once

// Finite groups given by complete Cayley tables on {1..n}, with 1 the
// identity. These are the witnesses every other part of the library checks
// against: subgroup and normal closures, simplicity certificates, embedding
// search, direct products and presentation comparison.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "baire/error.hpp"
#include "baire/label.hpp"
#include "baire/table.hpp"

namespace baire {

enum class GroupAxiom { Carrier, Identity, Cancellation, Inverse, Associativity };

std::string_view to_string(GroupAxiom axiom);

class GroupAxiomViolation : public Error {
 public:
  GroupAxiomViolation(GroupAxiom axiom, const std::string& detail)
      : Error(ErrorKind::GroupAxiomViolation, std::string(to_string(axiom)) + ": " + detail), axiom_(axiom) {}

  GroupAxiom axiom() const noexcept { return axiom_; }

 private:
  GroupAxiom axiom_;
};

class FinGroup {
 public:
  /// The trivial group.
  FinGroup();

  /// Validates every group axiom and throws GroupAxiomViolation naming the
  /// first one that fails.
  FinGroup(std::size_t order, std::vector<Label> cayley, std::string name = {});

  static FinGroup from_rows(const std::vector<std::vector<Label>>& rows, std::string name = {});
  static FinGroup trivial();

  /// Builds from a table already known to be a group (products of valid
  /// groups, closures of permutations). Skips the O(n^3) checks.
  static FinGroup trusted(std::size_t order, std::vector<Label> cayley, std::string name = {});

  std::size_t order() const { return n_; }
  bool contains(Label a) const { return a >= 1 && a <= n_; }

  Label mul(Label a, Label b) const { return table_[(a - 1) * n_ + (b - 1)]; }
  Label inv(Label a) const { return inv_[a - 1]; }
  Label pow(Label a, long long k) const;
  Label conj(Label x, Label by) const { return mul(mul(inv(by), x), by); }  // by^-1 x by

  std::size_t element_order(Label a) const { return orders_[a - 1]; }
  bool is_abelian() const;
  std::size_t center_size() const;

  const std::vector<Label>& cayley() const { return table_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  PartialTable full_table() const;

  /// Greedy generating set: scan labels upward, keep those outside the
  /// closure of the ones kept so far.
  std::vector<Label> generators() const;

  friend bool operator==(const FinGroup& a, const FinGroup& b) { return a.n_ == b.n_ && a.table_ == b.table_; }

 private:
  void derive();

  std::size_t n_ = 0;
  std::vector<Label> table_;
  std::vector<Label> inv_;
  std::vector<std::size_t> orders_;
  std::string name_;
};

/// Isomorphism invariants used as a cheap pre-filter.
struct Fingerprint {
  std::size_t order = 0;
  bool abelian = false;
  std::size_t center = 0;
  std::map<std::size_t, std::size_t> order_counts;  // element order -> count

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint(const FinGroup& g);

/// Injective homomorphism source -> target; image[a - 1] is the image of a.
struct Embedding {
  std::vector<Label> image;

  Label operator()(Label a) const { return image[a - 1]; }
  static Embedding identity(std::size_t order);

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

/// Independent check: map(1) = 1, injective, multiplicative on every pair.
bool verify_embedding(const FinGroup& source, const FinGroup& target, const Embedding& e);

LabelSet subgroup_closure(const FinGroup& g, const LabelSet& gens);

/// Normal subgroup generated by x. Throws IdentityElement for x = 1.
LabelSet normal_closure(const FinGroup& g, Label x);

/// True iff `s` is a subgroup closed under conjugation.
bool is_normal_subgroup(const FinGroup& g, const LabelSet& s);

struct SimplicityCertificate {
  bool simple = false;
  /// For a non-simple group: an element whose normal closure is proper.
  std::optional<Label> witness;
  LabelSet witness_closure;
  /// For a simple group: every x != 1 in the order it was confirmed.
  std::vector<Label> confirmed;
};

/// Throws TrivialGroup on the one-element group.
SimplicityCertificate is_simple(const FinGroup& g);

/// Replays a certificate without trusting it.
bool verify_simplicity_certificate(const FinGroup& g, const SimplicityCertificate& cert);

/// (conjugator^-1 n conjugator)^exponent.
struct ConjugateFactor {
  Label conjugator = kIdentity;
  int exponent = 1;

  friend bool operator==(const ConjugateFactor&, const ConjugateFactor&) = default;
};

struct ConjugateWord {
  std::vector<ConjugateFactor> factors;

  Label evaluate(const FinGroup& g, Label n) const;
};

/// Shortest product of conjugates of n^{±1} equal to k. Breadth-first over
/// products; ties go to the smaller conjugator, then +1 before -1. Throws
/// NotInClosure.
ConjugateWord conjugate_word_witness(const FinGroup& g, Label n, Label k);

/// Calls `visit` on every embedding source -> target in a fixed order
/// (generator images ascending) until it returns false.
void for_each_embedding(const FinGroup& source, const FinGroup& target,
                        const std::function<bool(const Embedding&)>& visit);

std::optional<Embedding> embed_search(const FinGroup& source, const FinGroup& target);
std::optional<Embedding> find_isomorphism(const FinGroup& a, const FinGroup& b);
bool isomorphic(const FinGroup& a, const FinGroup& b);

inline constexpr std::size_t kDefaultProductLimit = 2048;

/// G x H relabelled so that (a, b) has label (a - 1) * |H| + b.
struct ProductGroup {
  FinGroup group;
  std::size_t left_order = 0;
  std::size_t right_order = 0;

  Label pair(Label a, Label b) const { return static_cast<Label>((a - 1) * right_order + b); }
  Label left(Label x) const { return static_cast<Label>((x - 1) / right_order + 1); }
  Label right(Label x) const { return static_cast<Label>((x - 1) % right_order + 1); }

  /// Projections as label maps, indexed by product label - 1.
  std::vector<Label> left_projection() const;
  std::vector<Label> right_projection() const;
};

/// Throws LimitExceeded when |G||H| > limit.
ProductGroup direct_product(const FinGroup& g, const FinGroup& h, std::size_t limit = kDefaultProductLimit);

/// Whether a_i -> b_i extends to an isomorphism <a> -> <b>. Runs the two
/// closures in lockstep and fails on the first inconsistency.
bool presentation_equiv(const FinGroup& h, std::span<const Label> a, const FinGroup& g, std::span<const Label> b);

/// Injective map of h into the labels of t under which every product of h
/// is derivable from t's cells (stored or identity law). Generator images are
/// pruned by the order their power chain shows in t. image[a - 1] is the
/// image of a.
std::optional<std::vector<Label>> embed_into_table(const FinGroup& h, const PartialTable& t);

/// Word clopen membership in a complete table: Undetermined only when a
/// mentioned label lies outside {1..n}.
Tri satisfies_word_clopen(const FinGroup& g, const WordClopen& w);

/// "n\nrow\nrow..." with space separated labels.
FinGroup parse_cayley_text(std::string_view text);
std::string to_cayley_text(const FinGroup& g);

void to_json(nlohmann::json& j, const FinGroup& g);
void from_json(const nlohmann::json& j, FinGroup& g);
void to_json(nlohmann::json& j, const Fingerprint& f);

}  // namespace baire
