#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gk {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;  // stored with first < second

// Error taxonomy shared by the whole library.  The CLI maps these to its
// exit codes: input_error -> 2, budget_error -> 3, invariant_error -> 4.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};
struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};
struct invariant_error : std::runtime_error {
  explicit invariant_error(const std::string& what) : std::runtime_error(what) {}
};

inline Edge make_edge(Vertex a, Vertex b) {
  if (a == b) throw input_error("loop edge " + std::to_string(a));
  return a < b ? Edge{a, b} : Edge{b, a};
}

/// Simple undirected graph over opaque integer vertex ids.  Ids need not be
/// contiguous; operations that create vertices allocate fresh ids above the
/// current maximum and never reuse a live id.
class Graph {
 public:
  Graph() = default;

  /// Graph with vertices 0..n-1 and the given edges.
  Graph(int n, const std::vector<Edge>& edges);

  void add_vertex(Vertex v);
  void add_edge(Vertex a, Vertex b);        // adds missing endpoints; rejects loops
  void remove_edge(Vertex a, Vertex b);
  void remove_vertex(Vertex v);             // drops incident edges

  bool has_vertex(Vertex v) const { return adj_.count(v) != 0; }
  bool has_edge(Vertex a, Vertex b) const;

  int n() const { return static_cast<int>(adj_.size()); }
  int m() const;

  std::vector<Vertex> vertices() const;
  std::vector<Edge> edges() const;
  const std::set<Vertex>& neighbors(Vertex v) const;
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
  Vertex max_vertex_id() const;
  Vertex fresh_id() const { return n() == 0 ? 0 : max_vertex_id() + 1; }

  /// Induced subgraph on the given vertices (ids preserved).
  Graph induced(const std::set<Vertex>& keep) const;
  /// Induced subgraph on V minus the given vertices.
  Graph removed(const std::set<Vertex>& drop) const;

  bool is_subgraph_of(const Graph& host) const;
  /// Union of vertex and edge sets.
  Graph merged_with(const Graph& other) const;

  bool connected() const;  // true for the empty graph
  std::vector<std::set<Vertex>> components() const;
  std::set<Vertex> component_of(Vertex v) const;

  bool operator==(const Graph& o) const { return adj_ == o.adj_; }
  bool operator!=(const Graph& o) const { return !(*this == o); }

 private:
  std::map<Vertex, std::set<Vertex>> adj_;
};

// Named graphs used across tests and generators.
Graph complete(int n);
Graph complete_bipartite(int a, int b);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph grid_graph(int rows, int cols);
Graph petersen();

/// One binary vertex split: `target` is replaced by `new_u` (adjacent to
/// part_p) and `new_v` (adjacent to part_q).  part_p and part_q partition the
/// neighbourhood of target; either side may be empty.
struct SplitStep {
  Vertex target = -1;
  std::vector<Vertex> part_p, part_q;
  Vertex new_u = -1, new_v = -1;
};

struct SplitLog {
  std::vector<SplitStep> steps;
  int size() const { return static_cast<int>(steps.size()); }
};

/// Splits `target`, allocating fresh ids for the two sides.  Returns the new
/// graph and the fully resolved step (so the split can be undone or replayed).
std::pair<Graph, SplitStep> split_vertex(const Graph& g, Vertex target,
                                         const std::vector<Vertex>& part_p,
                                         const std::vector<Vertex>& part_q);

/// Applies a fully resolved step (new ids must be fresh for g).
Graph apply_split(const Graph& g, const SplitStep& step);

/// Exact inverse of apply_split: identifies new_u and new_v back into target.
/// Parallel edges collapse by simplification.
Graph merge_back(const Graph& g, const SplitStep& step);

/// Identifies the endpoints of edge uv, keeping the smaller id.  Loops and
/// parallel edges are simplified eagerly.
Graph contract_edge(const Graph& g, Vertex u, Vertex v);

/// Replays a log whose steps may lack new ids (new_u/new_v < 0): fresh ids are
/// then allocated deterministically, matching what split_vertex would pick.
std::pair<Graph, SplitLog> replay(const Graph& g, const SplitLog& log);

/// A graph with at most three distinguished root vertices.
struct RootedGraph {
  Graph graph;
  std::vector<Vertex> roots;
};
RootedGraph make_rooted(Graph g, std::vector<Vertex> roots);

/// An apical pair (G, X): X is a stable set whose removal leaves a planar
/// graph.  Constructed through make_apical_pair (planarity.hpp) which checks
/// both conditions; the raw struct performs only the stability check.
struct ApicalPair {
  Graph graph;
  std::set<Vertex> apex;

  Graph skeleton() const { return graph.removed(apex); }
};

/// A+X: the subgraph `a` of host\x together with x and every host edge
/// between x and V(a).  Pre: a is a subgraph of host with V(a) disjoint
/// from x.
Graph apex_join(const Graph& a, const std::set<Vertex>& x, const Graph& host);

/// Splits every apex vertex into t clones, the j-th clone adjacent to the
/// j-th listed subset of its neighbourhood.  Subset lists are padded with
/// empty parts to the longest length t.  Returns the split graph, the log,
/// and the t sibling-free sets (the j-th set holds the j-th clone of every
/// apex vertex).
struct SiblingFreeSplit {
  Graph graph;
  SplitLog log;
  std::vector<std::set<Vertex>> groups;
  std::map<Vertex, Vertex> origin;  // clone id -> original apex id
};
SiblingFreeSplit sibling_free_split(
    const ApicalPair& pair,
    const std::map<Vertex, std::vector<std::set<Vertex>>>& parts);

/// Blocks (maximal subgraphs without a cut vertex) and cut vertices.  An
/// isolated vertex forms a trivial block of its own.
struct BlockCut {
  std::vector<std::set<Vertex>> blocks;
  std::set<Vertex> cuts;
};
BlockCut block_decomposition(const Graph& g);

/// Connected, at least three vertices, no cut vertex.
bool is_biconnected(const Graph& g);

// ---------------------------------------------------------------------------
// Dense view for search kernels (hosts of at most 64 vertices).

struct DenseGraph {
  int n = 0;
  std::vector<std::uint64_t> adj;   // adjacency masks
  std::vector<Vertex> label;        // dense index -> original id
  std::map<Vertex, int> index;      // original id -> dense index

  std::uint64_t full_mask() const {
    return n == 64 ? ~0ull : ((1ull << n) - 1);
  }
};

DenseGraph densify(const Graph& g);
bool mask_connected(const DenseGraph& d, std::uint64_t mask);
std::uint64_t mask_neighbors(const DenseGraph& d, std::uint64_t mask);

}  // namespace gk
