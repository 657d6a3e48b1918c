#pragma once

// Exact arithmetic in A, the direct sum over primes p of countably many
// copies of the Prufer group Z[p^inf]. A coordinate a/p^m lives in copy i of
// the p-component; an element is a finite set of nonzero coordinates.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "baire/fingroup.hpp"
#include "baire/label.hpp"
#include "baire/table.hpp"

namespace baire {

/// Denominators p^m are kept at or below this bound; going past it throws
/// Overflow.
inline constexpr std::uint64_t kMaxDenominator = std::uint64_t{1} << 62;

struct PruferCoord {
  std::uint64_t p = 2;
  std::uint64_t i = 0;  // copy index
  std::uint64_t a = 0;  // numerator, coprime to p
  std::uint32_t m = 0;  // exponent of the denominator

  std::uint64_t denominator() const;

  friend bool operator==(const PruferCoord&, const PruferCoord&) = default;
};

class AbelianElement {
 public:
  AbelianElement() = default;

  /// a/p^m in copy i, reduced to lowest terms. Throws InvalidArgument when p
  /// is not prime.
  static AbelianElement coord(std::uint64_t p, std::uint64_t i, std::uint64_t a, std::uint32_t m);
  /// Builds from arbitrary coordinates (any order, zero allowed, not
  /// necessarily reduced); repeated keys are added.
  static AbelianElement from_coords(const std::vector<PruferCoord>& coords);

  bool is_identity() const { return coords_.empty(); }
  /// Sorted by (p, i), no zero entries.
  const std::vector<PruferCoord>& coords() const { return coords_; }

  /// Sum over the support of p^m + i; the identity has weight 0.
  std::uint64_t weight() const;

  friend bool operator==(const AbelianElement&, const AbelianElement&) = default;

 private:
  friend AbelianElement add(const AbelianElement&, const AbelianElement&);
  friend AbelianElement negate(const AbelianElement&);
  friend AbelianElement divide(const AbelianElement&, std::uint64_t);

  std::vector<PruferCoord> coords_;
};

AbelianElement add(const AbelianElement& x, const AbelianElement& y);
AbelianElement negate(const AbelianElement& x);
AbelianElement subtract(const AbelianElement& x, const AbelianElement& y);
/// k-fold sum, k >= 0.
AbelianElement multiply(const AbelianElement& x, std::uint64_t k);
/// lcm of the coordinate denominators. Throws Overflow.
std::uint64_t order(const AbelianElement& x);
/// The canonical y with k*y = x: per coordinate a/p^m with k = p^s u,
/// (u^-1 mod p^(m+s)) a / p^(m+s). Throws InvalidArgument for k = 0.
AbelianElement divide(const AbelianElement& x, std::uint64_t k);

/// Total order used by the enumeration: weight, then support size, then
/// (p, i, m, a) lexicographically.
bool enumeration_less(const AbelianElement& x, const AbelianElement& y);

bool is_prime(std::uint64_t n);

/// Finite Abelian group as a list of cyclic prime-power factors.
struct FinAbelian {
  std::vector<std::uint64_t> factors;

  /// Throws InvalidArgument when a factor is not a prime power >= 2.
  void validate() const;
  std::uint64_t order() const;
  std::string name() const;

  friend bool operator==(const FinAbelian&, const FinAbelian&) = default;
};

/// Factors sorted by prime then exponent.
FinAbelian canonical(FinAbelian h);

/// Every finite Abelian group of order <= max_order up to isomorphism,
/// ordered by order then factor list.
std::vector<FinAbelian> fin_abelian_groups(std::uint64_t max_order);

/// Cayley table: the tuple (e_1..e_r), 0 <= e_j < q_j, gets label
/// 1 + e_1 + q_1 (e_2 + q_2 (e_3 + ...)).
FinGroup fin_abelian_group(const FinAbelian& h);
std::vector<std::uint64_t> fin_abelian_coordinates(const FinAbelian& h, Label x);

/// Generator of factor p^e goes to (p, fresh copy) -> 1/p^e. Copies of each
/// prime start at next_copy[p] (default 0) and are handed out in order.
std::vector<AbelianElement> embed_fin_abelian(const FinAbelian& h,
                                              const std::map<std::uint64_t, std::uint64_t>& next_copy = {});

/// Image of every label of fin_abelian_group(h), indexed by label - 1.
std::vector<AbelianElement> fin_abelian_image(const FinAbelian& h, const std::vector<AbelianElement>& generators);

/// Exhaustive check that the induced map is an injective homomorphism.
bool verify_abelian_embedding(const FinAbelian& h, const std::vector<AbelianElement>& generators);

/// Invariants of an Abelian FinGroup and an isomorphism from
/// fin_abelian_group(structure) onto g. Throws InvalidArgument if g is not
/// Abelian.
struct AbelianStructure {
  FinAbelian structure;
  Embedding iso;
};
AbelianStructure abelian_structure(const FinGroup& g);

/// The canonical bijection between {1, 2, ...} and A with 1 -> identity.
/// Levels of equal weight are built on demand and cached.
AbelianElement enumerate(std::uint64_t n);
/// Throws LimitExceeded when the element's weight is beyond the cache
/// bound.
std::uint64_t encode(const AbelianElement& x);

/// Number of elements of weight <= w.
std::uint64_t count_up_to_weight(std::uint64_t w);

inline constexpr std::uint64_t kMaxEnumerationWeight = 96;
inline constexpr std::size_t kMaxPrefix = 512;

/// The block {1..n}^2 of A's table under enumerate. Throws LimitExceeded.
PartialTable a_prefix_table(std::size_t n);

/// m^k by repeated stored products, if the chain is derivable.
std::optional<Label> table_power(const PartialTable& t, Label m, std::uint64_t k);

struct DivisibilityStatus {
  Label n = 0;
  std::uint64_t k = 0;
  std::optional<Label> witness;
};

struct TorsionStatus {
  Label n = 0;
  std::optional<std::uint64_t> exponent;
};

struct EmbeddingStatus {
  FinAbelian group;
  std::optional<std::vector<Label>> image;
};

struct AbelianMonitorReport {
  std::vector<DivisibilityStatus> divisibility;
  std::vector<TorsionStatus> torsion;
  std::vector<EmbeddingStatus> embedding;
};

/// Stage check of the three conditions for labels and exponents <= bound,
/// using only what t's cells derive.
AbelianMonitorReport abelian_monitors(const PartialTable& t, std::uint64_t bound);

void to_json(nlohmann::json& j, const PruferCoord& c);
void to_json(nlohmann::json& j, const AbelianElement& x);
void from_json(const nlohmann::json& j, AbelianElement& x);
void to_json(nlohmann::json& j, const FinAbelian& h);
void from_json(const nlohmann::json& j, FinAbelian& h);
void to_json(nlohmann::json& j, const AbelianMonitorReport& r);

}  // namespace baire
