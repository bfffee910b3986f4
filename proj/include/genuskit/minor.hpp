#pragma once

#include <map>
#include <optional>
#include <set>

#include "genuskit/graph.hpp"

namespace gk {

/// Certificate of minor containment: disjoint connected branch sets in the
/// host, one per pattern vertex, plus a witnessing host edge per pattern
/// edge.
struct MinorModel {
  std::map<Vertex, std::set<Vertex>> branch_sets;
  std::map<Edge, Edge> edge_witnesses;
};

/// Re-checks a model from scratch: disjointness, connectivity, coverage of
/// the pattern, and that every witness edge runs between the right branch
/// sets.
bool validate_minor_model(const Graph& host, const Graph& pattern,
                          const MinorModel& model);

inline constexpr int kDefaultMinorCap = 14;

/// Exhaustive branch-set search.  Returns the first model in lexicographic
/// branch order, or nullopt when the pattern is not a minor of the host.
/// Throws budget_error when the host exceeds size_cap.
std::optional<MinorModel> has_minor(const Graph& host, const Graph& pattern,
                                    int size_cap = kDefaultMinorCap);

}  // namespace gk
