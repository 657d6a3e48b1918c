#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "baire/fingroup.hpp"
#include "baire/table.hpp"
#include "baire/word.hpp"

namespace baire {

inline constexpr std::size_t kDefaultVarLimit = 4;
inline constexpr std::size_t kDefaultConsistencyOrder = 24;

/// Left-to-right product in g. Throws UnknownConstant for a constant outside
/// g and InvalidArgument for an unassigned variable.
Label evaluate(const Word& w, const FinGroup& g, const Assignment& s);

/// Every equation evaluates to 1 and no inequation does.
bool verify_solution(const EqSystem& sys, const FinGroup& g, const Assignment& s);

/// Lexicographically least solution in g, or nullopt. Branches on the
/// lowest unassigned variable with candidates in ascending order; an equation
/// left with a single unassigned variable occurring once forces its value.
/// Throws LimitExceeded when sys.var_count > var_limit.
std::optional<Assignment> solve(const EqSystem& sys, const FinGroup& g, std::size_t var_limit = kDefaultVarLimit);

/// x^-1 h_i x alpha_i^-1 = 1 for each i, one variable.
EqSystem conjugation_system(const std::vector<Label>& h_gens, const std::vector<Label>& alpha_images);

/// Applies f to every constant.
EqSystem map_constants(const EqSystem& sys, const std::function<Label(Label)>& f);

struct ConsistencyWitness {
  FinGroup group;
  Embedding embedding;  // g -> group
  EqSystem system;      // constants moved through the embedding
  Assignment solution;
};

/// Solves in g itself first, then in each catalog group of order <= max_order
/// under each embedding of g. nullopt means no witness within the bound.
std::optional<ConsistencyWitness> consistency_search(const EqSystem& sys, const FinGroup& g,
                                                     std::size_t max_order = kDefaultConsistencyOrder,
                                                     std::size_t var_limit = kDefaultVarLimit);

/// x -> (1, sol(x)) in g x h.
Assignment product_transport(const Assignment& sol, const FinGroup& g, const FinGroup& h);
/// Constants c of a system over h become (1, c) in g x h.
EqSystem lift_system(const EqSystem& sys, const FinGroup& g, const FinGroup& h);

/// Variable layout of clopen_to_system for a k x k block.
struct DiagramLayout {
  std::size_t k = 0;
  std::uint32_t point(Label i) const { return static_cast<std::uint32_t>(i - 1); }
  std::uint32_t product(Label i, Label j) const { return static_cast<std::uint32_t>(k + (i - 1) * k + (j - 1)); }
  std::size_t var_count() const { return k + k * k; }
};

/// Variables x_i (i <= k) and x_ij; equations x_i x_j x_ij^-1 plus one
/// equation or inequation per pair of variables following the equality
/// pattern of the block's values. Throws NotSquareForm.
EqSystem clopen_to_system(const CellClopen& b);

/// If sol solves clopen_to_system(b) in g, the injective map supp(b) -> g it
/// induces (i -> x_i, m_ij -> x_ij), checked against the block. nullopt when
/// the pattern is not reproduced.
std::optional<std::map<Label, Label>> diagram_relabeling(const CellClopen& b, const FinGroup& g, const Assignment& sol);

}  // namespace baire
