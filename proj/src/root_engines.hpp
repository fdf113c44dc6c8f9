#pragma once

#include "hfb/graded_root.hpp"

#include <functional>

namespace hfb::detail {

using CentralMap = std::function<long long(long long)>;

/// Star engine with an optional map on the central coefficient; the induced
/// vertex permutation is attached when the map is given.
GradedRoot build_root_star_mapped(const PlumbingTree &t, const CharVector &k, std::optional<int> n_max,
                                  const CentralMap *map);

} // namespace hfb::detail
