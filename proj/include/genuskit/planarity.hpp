#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "genuskit/graph.hpp"
#include "genuskit/rotation.hpp"

namespace gk {

/// Subgraph that certifies nonplanarity: a subdivision of K5 or K33.
struct KuratowskiWitness {
  Graph subgraph;
  std::string kind;  // "K5" or "K33"
  std::set<Vertex> branch_vertices;
};

/// Exactly one arm is set: a genus-0 rotation system of the whole graph, or
/// a Kuratowski witness inside it.
struct PlanarityCertificate {
  bool planar = false;
  std::optional<RotationSystem> embedding;
  std::optional<KuratowskiWitness> witness;
};

/// Certifying planarity test.  The embedding arm satisfies
/// genus_of_rotation = 0; the witness arm passes the subdivision shape check.
/// Deterministic: the witness keeps the lowest-labelled edges that stay
/// nonplanar under greedy deletion.
PlanarityCertificate is_planar(const Graph& g);

/// Decision-only planarity, no certificate construction.
bool is_planar_quick(const Graph& g);

/// Re-checks a certificate against g from scratch: embedding arm must be a
/// valid genus-0 rotation of g, witness arm a Kuratowski subdivision inside g.
bool verify_certificate(const Graph& g, const PlanarityCertificate& cert);

/// If h is exactly a subdivision of K5 or K33, returns the classified
/// witness; otherwise nullopt.  Shape check only, no planarity call.
std::optional<KuratowskiWitness> classify_kuratowski_subdivision(const Graph& h);

/// True iff rg.graph can be drawn in a closed disc with all roots on the
/// boundary.  Decided as planarity of the graph plus one fresh vertex
/// adjacent to every root; for at most three roots every cyclic boundary
/// order is equivalent up to reflection, so the reduction is exact.
bool is_flat(const RootedGraph& rg);

/// True iff some planar drawing of g has u and v incident with a common
/// region.  Decided as planarity of g plus a fresh degree-2 vertex adjacent
/// to u and v.  Requires g planar and u != v.
bool cofacial_embeddable(const Graph& g, Vertex u, Vertex v);

/// Minimum-cardinality set of face indices of the given genus-0 embedding
/// such that every vertex of u_set lies on some chosen face.  Exhaustive
/// set cover with memoization; throws budget_error beyond 20 faces.
std::vector<int> face_cover(const Graph& g, const RotationSystem& rot,
                            const std::set<Vertex>& u_set);

/// Validated constructor: apex_set must be stable (no edge inside it) and
/// g minus apex_set must be planar.
ApicalPair make_apical_pair(const Graph& g, const std::set<Vertex>& apex_set);

}  // namespace gk
