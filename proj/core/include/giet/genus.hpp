#pragma once

#include "giet/ggiet.hpp"

namespace giet {

/// True when no proper prefix of the top order is a prefix of the bottom order (as sets).
bool is_irreducible(const CombData& pi);

/// Genus of the translation surface suspending a gapless irreducible permutation.
/// Throws std::invalid_argument for reducible permutations.
int genus_of_permutation(const CombData& pi);

}  // namespace giet
