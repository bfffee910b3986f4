#pragma once

#include <cstdint>
#include <vector>

#include "genuskit/graph.hpp"
#include "genuskit/rotation.hpp"

namespace gk {

struct GenusReport {
  int genus = 0;
  std::vector<int> faces_per_component;
  RotationSystem rotation;
};

/// Orientable genus of the embedding described by rot: Euler's formula per
/// connected component, summed.  Throws input_error on an invalid rotation.
int genus_of_rotation(const Graph& g, const RotationSystem& rot);

constexpr std::uint64_t kDefaultGenusBudget = 10'000'000;

/// Exact minimum orientable genus over all rotation systems, by
/// branch-and-bound with a partial-face lower bound.  Components are solved
/// independently and genus adds.  Throws budget_error when some component
/// has more than `budget` raw rotation systems (product of (deg-1)!).
GenusReport min_genus(const Graph& g,
                      std::uint64_t budget = kDefaultGenusBudget);

}  // namespace gk
