#include "genuskit/graph.hpp"

#include <algorithm>
#include <bit>

namespace gk {

Graph::Graph(int n, const std::vector<Edge>& edges) {
  if (n < 0) throw input_error("negative vertex count");
  for (int v = 0; v < n; ++v) add_vertex(v);
  for (const auto& [a, b] : edges) add_edge(a, b);
}

void Graph::add_vertex(Vertex v) { adj_.try_emplace(v); }

void Graph::add_edge(Vertex a, Vertex b) {
  if (a == b) throw input_error("loop edge " + std::to_string(a));
  adj_[a].insert(b);
  adj_[b].insert(a);
}

void Graph::remove_edge(Vertex a, Vertex b) {
  if (!has_edge(a, b))
    throw input_error("edge not in graph: " + std::to_string(a) + "," +
                      std::to_string(b));
  adj_[a].erase(b);
  adj_[b].erase(a);
}

void Graph::remove_vertex(Vertex v) {
  if (!has_vertex(v)) throw input_error("vertex not in graph: " + std::to_string(v));
  for (Vertex w : adj_[v]) adj_[w].erase(v);
  adj_.erase(v);
}

bool Graph::has_edge(Vertex a, Vertex b) const {
  auto it = adj_.find(a);
  return it != adj_.end() && it->second.count(b) != 0;
}

int Graph::m() const {
  int total = 0;
  for (const auto& [v, nbrs] : adj_) total += static_cast<int>(nbrs.size());
  return total / 2;
}

std::vector<Vertex> Graph::vertices() const {
  std::vector<Vertex> out;
  out.reserve(adj_.size());
  for (const auto& [v, nbrs] : adj_) out.push_back(v);
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (const auto& [v, nbrs] : adj_)
    for (Vertex w : nbrs)
      if (v < w) out.emplace_back(v, w);
  return out;
}

const std::set<Vertex>& Graph::neighbors(Vertex v) const {
  auto it = adj_.find(v);
  if (it == adj_.end())
    throw input_error("vertex not in graph: " + std::to_string(v));
  return it->second;
}

Vertex Graph::max_vertex_id() const {
  if (adj_.empty()) throw input_error("empty graph has no max vertex id");
  return adj_.rbegin()->first;
}

Graph Graph::induced(const std::set<Vertex>& keep) const {
  Graph out;
  for (Vertex v : keep) {
    if (!has_vertex(v))
      throw input_error("induced: vertex not in graph: " + std::to_string(v));
    out.add_vertex(v);
  }
  for (Vertex v : keep)
    for (Vertex w : neighbors(v))
      if (v < w && keep.count(w)) out.add_edge(v, w);
  return out;
}

Graph Graph::removed(const std::set<Vertex>& drop) const {
  std::set<Vertex> keep;
  for (const auto& [v, nbrs] : adj_)
    if (!drop.count(v)) keep.insert(v);
  return induced(keep);
}

bool Graph::is_subgraph_of(const Graph& host) const {
  for (const auto& [v, nbrs] : adj_) {
    if (!host.has_vertex(v)) return false;
    for (Vertex w : nbrs)
      if (!host.has_edge(v, w)) return false;
  }
  return true;
}

Graph Graph::merged_with(const Graph& other) const {
  Graph out = *this;
  for (Vertex v : other.vertices()) out.add_vertex(v);
  for (const auto& [a, b] : other.edges()) out.add_edge(a, b);
  return out;
}

std::vector<std::set<Vertex>> Graph::components() const {
  std::vector<std::set<Vertex>> out;
  std::set<Vertex> seen;
  for (const auto& [start, nbrs] : adj_) {
    if (seen.count(start)) continue;
    std::set<Vertex> comp;
    std::vector<Vertex> stack{start};
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      if (!comp.insert(v).second) continue;
      for (Vertex w : neighbors(v))
        if (!comp.count(w)) stack.push_back(w);
    }
    seen.insert(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::set<Vertex> Graph::component_of(Vertex v) const {
  if (!has_vertex(v)) throw input_error("vertex not in graph: " + std::to_string(v));
  std::set<Vertex> comp;
  std::vector<Vertex> stack{v};
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    if (!comp.insert(u).second) continue;
    for (Vertex w : neighbors(u))
      if (!comp.count(w)) stack.push_back(w);
  }
  return comp;
}

bool Graph::connected() const {
  if (adj_.empty()) return true;
  return static_cast<int>(component_of(adj_.begin()->first).size()) == n();
}

Graph complete(int n) {
  Graph g;
  for (int v = 0; v < n; ++v) g.add_vertex(v);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

Graph complete_bipartite(int a, int b) {
  Graph g;
  for (int v = 0; v < a + b; ++v) g.add_vertex(v);
  for (int u = 0; u < a; ++u)
    for (int w = a; w < a + b; ++w) g.add_edge(u, w);
  return g;
}

Graph cycle_graph(int n) {
  if (n < 3) throw input_error("cycle needs at least 3 vertices");
  Graph g;
  for (int v = 0; v < n; ++v) g.add_vertex(v);
  for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

Graph path_graph(int n) {
  Graph g;
  for (int v = 0; v < n; ++v) g.add_vertex(v);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph grid_graph(int rows, int cols) {
  Graph g;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) g.add_vertex(id(r, c));
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) g.add_edge(id(r, c), id(r, c + 1));
      if (r + 1 < rows) g.add_edge(id(r, c), id(r + 1, c));
    }
  return g;
}

Graph petersen() {
  Graph g;
  for (int v = 0; v < 10; ++v) g.add_vertex(v);
  for (int v = 0; v < 5; ++v) {
    g.add_edge(v, (v + 1) % 5);        // outer cycle
    g.add_edge(v, v + 5);              // spokes
    g.add_edge(v + 5, (v + 2) % 5 + 5);  // inner pentagram
  }
  return g;
}

namespace {

void check_partition(const Graph& g, Vertex target,
                     const std::vector<Vertex>& part_p,
                     const std::vector<Vertex>& part_q) {
  const std::set<Vertex>& nbrs = g.neighbors(target);
  std::set<Vertex> seen;
  for (const auto* part : {&part_p, &part_q})
    for (Vertex v : *part) {
      if (!nbrs.count(v))
        throw input_error("split part contains non-neighbour " +
                          std::to_string(v));
      if (!seen.insert(v).second)
        throw input_error("split parts overlap at " + std::to_string(v));
    }
  if (seen.size() != nbrs.size())
    throw input_error("split parts do not cover the neighbourhood");
}

}  // namespace

std::pair<Graph, SplitStep> split_vertex(const Graph& g, Vertex target,
                                         const std::vector<Vertex>& part_p,
                                         const std::vector<Vertex>& part_q) {
  if (!g.has_vertex(target))
    throw input_error("split target not in graph: " + std::to_string(target));
  SplitStep step;
  step.target = target;
  step.part_p = part_p;
  step.part_q = part_q;
  step.new_u = g.fresh_id();
  step.new_v = step.new_u + 1;
  return {apply_split(g, step), step};
}

Graph apply_split(const Graph& g, const SplitStep& step) {
  if (!g.has_vertex(step.target))
    throw input_error("split target not in graph: " + std::to_string(step.target));
  if (g.has_vertex(step.new_u) || g.has_vertex(step.new_v) ||
      step.new_u == step.new_v || step.new_u < 0 || step.new_v < 0)
    throw input_error("split ids not fresh");
  check_partition(g, step.target, step.part_p, step.part_q);
  Graph out = g;
  out.remove_vertex(step.target);
  out.add_vertex(step.new_u);
  out.add_vertex(step.new_v);
  for (Vertex w : step.part_p) out.add_edge(step.new_u, w);
  for (Vertex w : step.part_q) out.add_edge(step.new_v, w);
  return out;
}

Graph merge_back(const Graph& g, const SplitStep& step) {
  if (!g.has_vertex(step.new_u) || !g.has_vertex(step.new_v))
    throw input_error("merge_back: split vertices not in graph");
  if (g.has_vertex(step.target) && step.target != step.new_u &&
      step.target != step.new_v)
    throw input_error("merge_back: target id already present");
  Graph out = g;
  std::set<Vertex> joined;
  for (Vertex side : {step.new_u, step.new_v})
    for (Vertex w : out.neighbors(side))
      if (w != step.new_u && w != step.new_v) joined.insert(w);
  out.remove_vertex(step.new_u);
  out.remove_vertex(step.new_v);
  out.add_vertex(step.target);
  for (Vertex w : joined) out.add_edge(step.target, w);
  return out;
}

Graph contract_edge(const Graph& g, Vertex u, Vertex v) {
  if (!g.has_edge(u, v))
    throw input_error("contract_edge: edge not in graph");
  Vertex keep = std::min(u, v), gone = std::max(u, v);
  Graph out = g;
  std::set<Vertex> joined = out.neighbors(gone);
  out.remove_vertex(gone);
  for (Vertex w : joined)
    if (w != keep) out.add_edge(keep, w);
  return out;
}

std::pair<Graph, SplitLog> replay(const Graph& g, const SplitLog& log) {
  Graph cur = g;
  SplitLog resolved;
  for (SplitStep step : log.steps) {
    if (step.new_u < 0 || step.new_v < 0) {
      step.new_u = cur.fresh_id();
      step.new_v = step.new_u + 1;
    }
    cur = apply_split(cur, step);
    resolved.steps.push_back(step);
  }
  return {cur, resolved};
}

RootedGraph make_rooted(Graph g, std::vector<Vertex> roots) {
  std::set<Vertex> seen;
  for (Vertex r : roots) {
    if (!g.has_vertex(r))
      throw input_error("root not in graph: " + std::to_string(r));
    if (!seen.insert(r).second)
      throw input_error("duplicate root: " + std::to_string(r));
  }
  if (roots.size() > 3) throw input_error("at most three roots supported");
  return RootedGraph{std::move(g), std::move(roots)};
}

Graph apex_join(const Graph& a, const std::set<Vertex>& x, const Graph& host) {
  if (!a.is_subgraph_of(host)) throw input_error("apex_join: a not a subgraph of host");
  for (Vertex v : x) {
    if (!host.has_vertex(v))
      throw input_error("apex_join: apex vertex not in host");
    if (a.has_vertex(v))
      throw input_error("apex_join: apex vertex inside a");
  }
  Graph out = a;
  for (Vertex v : x) out.add_vertex(v);
  for (Vertex v : x)
    for (Vertex w : host.neighbors(v))
      if (a.has_vertex(w)) out.add_edge(v, w);
  return out;
}

SiblingFreeSplit sibling_free_split(
    const ApicalPair& pair,
    const std::map<Vertex, std::vector<std::set<Vertex>>>& parts) {
  std::size_t t = 1;
  for (const auto& [x, subsets] : parts) {
    if (!pair.apex.count(x))
      throw input_error("sibling_free_split: " + std::to_string(x) +
                        " is not an apex vertex");
    t = std::max(t, subsets.size());
  }
  for (Vertex x : pair.apex)
    if (!parts.count(x))
      throw input_error("sibling_free_split: no parts listed for apex " +
                        std::to_string(x));

  SiblingFreeSplit out;
  out.graph = pair.graph;
  out.groups.assign(t, {});
  for (const auto& [x, subsets_in] : parts) {
    std::vector<std::set<Vertex>> subsets = subsets_in;
    subsets.resize(t);  // pad with empty parts

    // Validate: pairwise disjoint and covering N(x).
    std::set<Vertex> seen;
    const std::set<Vertex>& nbrs = pair.graph.neighbors(x);
    for (const auto& s : subsets)
      for (Vertex v : s) {
        if (!nbrs.count(v))
          throw input_error("sibling_free_split: part lists non-neighbour " +
                            std::to_string(v));
        if (!seen.insert(v).second)
          throw input_error("sibling_free_split: parts overlap at " +
                            std::to_string(v));
      }
    if (seen.size() != nbrs.size())
      throw input_error("sibling_free_split: parts do not cover N(" +
                        std::to_string(x) + ")");

    // Peel clones off one by one; the final remainder is the last clone.
    Vertex carrier = x;
    for (std::size_t j = 0; j + 1 < t; ++j) {
      std::vector<Vertex> part_p(subsets[j].begin(), subsets[j].end());
      std::vector<Vertex> part_q;
      const std::set<Vertex>& rest = out.graph.neighbors(carrier);
      for (Vertex v : rest)
        if (!subsets[j].count(v)) part_q.push_back(v);
      auto [next, step] = split_vertex(out.graph, carrier, part_p, part_q);
      out.graph = next;
      out.log.steps.push_back(step);
      out.groups[j].insert(step.new_u);
      out.origin[step.new_u] = x;
      carrier = step.new_v;
    }
    out.groups[t - 1].insert(carrier);
    out.origin[carrier] = x;
  }
  return out;
}

DenseGraph densify(const Graph& g) {
  if (g.n() > 64) throw budget_error("dense view limited to 64 vertices");
  DenseGraph d;
  d.n = g.n();
  d.label = g.vertices();
  for (int i = 0; i < d.n; ++i) d.index[d.label[i]] = i;
  d.adj.assign(d.n, 0);
  for (const auto& [a, b] : g.edges()) {
    int ia = d.index[a], ib = d.index[b];
    d.adj[ia] |= 1ull << ib;
    d.adj[ib] |= 1ull << ia;
  }
  return d;
}

bool mask_connected(const DenseGraph& d, std::uint64_t mask) {
  if (mask == 0) return true;
  std::uint64_t start = mask & (~mask + 1);
  std::uint64_t seen = start;
  while (true) {
    std::uint64_t frontier = 0;
    std::uint64_t work = seen;
    while (work) {
      int v = std::countr_zero(work);
      work &= work - 1;
      frontier |= d.adj[v] & mask;
    }
    frontier |= seen;
    if (frontier == seen) break;
    seen = frontier;
  }
  return seen == mask;
}

std::uint64_t mask_neighbors(const DenseGraph& d, std::uint64_t mask) {
  std::uint64_t out = 0;
  while (mask) {
    int v = std::countr_zero(mask);
    mask &= mask - 1;
    out |= d.adj[v];
  }
  return out;
}

namespace {

struct BlockDfs {
  const Graph& g;
  std::map<Vertex, int> disc;
  std::map<Vertex, int> low;
  std::vector<Edge> stack;
  int timer = 0;
  BlockCut out;

  explicit BlockDfs(const Graph& graph) : g(graph) {}

  void pop_block(const Edge& until) {
    std::set<Vertex> block;
    while (true) {
      Edge e = stack.back();
      stack.pop_back();
      block.insert(e.first);
      block.insert(e.second);
      if (e == until) break;
    }
    out.blocks.push_back(std::move(block));
  }

  void run(Vertex root) {
    struct Frame {
      Vertex v;
      Vertex parent;
      std::vector<Vertex> nbrs;
      std::size_t next = 0;
      int children = 0;
    };
    std::vector<Frame> frames;
    disc[root] = low[root] = timer++;
    frames.push_back({root, -1, {g.neighbors(root).begin(), g.neighbors(root).end()}});
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next < f.nbrs.size()) {
        Vertex w = f.nbrs[f.next++];
        if (w == f.parent) continue;
        auto it = disc.find(w);
        if (it == disc.end()) {
          ++f.children;
          stack.push_back(make_edge(f.v, w));
          disc[w] = low[w] = timer++;
          frames.push_back({w, f.v, {g.neighbors(w).begin(), g.neighbors(w).end()}});
        } else if (it->second < disc[f.v]) {
          stack.push_back(make_edge(f.v, w));
          low[f.v] = std::min(low[f.v], it->second);
        }
      } else {
        Frame done = f;
        frames.pop_back();
        if (frames.empty()) {
          if (done.children >= 2) out.cuts.insert(done.v);
          continue;
        }
        Frame& up = frames.back();
        low[up.v] = std::min(low[up.v], low[done.v]);
        if (low[done.v] >= disc[up.v]) {
          if (up.parent != -1) out.cuts.insert(up.v);
          pop_block(make_edge(up.v, done.v));
        }
      }
    }
  }
};

}  // namespace

BlockCut block_decomposition(const Graph& g) {
  BlockDfs dfs(g);
  for (Vertex v : g.vertices()) {
    if (dfs.disc.count(v)) continue;
    if (g.degree(v) == 0) {
      dfs.out.blocks.push_back({v});
      dfs.disc[v] = dfs.timer++;
      continue;
    }
    dfs.run(v);
  }
  return dfs.out;
}

bool is_biconnected(const Graph& g) {
  if (g.n() < 3 || !g.connected()) return false;
  return block_decomposition(g).cuts.empty();
}

}  // namespace gk
