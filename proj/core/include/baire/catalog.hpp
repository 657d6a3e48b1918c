#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "baire/fingroup.hpp"

namespace baire {

inline constexpr std::size_t kDefaultCatalogLimit = 16;
inline constexpr std::size_t kCatalogHardLimit = 64;

FinGroup cyclic_group(std::size_t n);
/// Symmetries of the m-gon, order 2m: r^i s^j has label j*m + i + 1.
FinGroup dihedral_group(std::size_t m);
/// Permutations of {0..k-1} labelled in lexicographic order, so the
/// identity gets label 1.
FinGroup symmetric_group(std::size_t k);
FinGroup alternating_group(std::size_t k);

/// One representative per isomorphism class among cyclic, dihedral,
/// symmetric and alternating groups and iterated direct products, all of
/// order <= max_order, sorted by order. Throws LimitExceeded when max_order
/// exceeds `limit` (itself capped at kCatalogHardLimit).
const std::vector<FinGroup>& catalog(std::size_t max_order, std::size_t limit = kDefaultCatalogLimit);

/// "C4", "D5", "S3", "A4", "C2xC2xC3", ... Throws ParseError.
FinGroup group_by_name(std::string_view name);

}  // namespace baire
