#pragma once

#include <compare>
#include <cstdint>
#include <set>

namespace baire {

/// Element names. Every carrier is a subset of {1, 2, 3, ...} and label 1 is
/// always the identity.
using Label = std::uint32_t;
using LabelSet = std::set<Label>;

inline constexpr Label kIdentity = 1;

/// One entry of a multiplication table: row * col = value.
struct Cell {
  Label row = 0;
  Label col = 0;
  Label value = 0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

}  // namespace baire
