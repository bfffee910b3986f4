#include "genuskit/planarity.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "genuskit/genus.hpp"

namespace gk {

namespace {

// Some cycle of a 2-connected graph, found along a DFS tree back edge.
std::vector<Vertex> find_cycle(const Graph& g) {
  std::map<Vertex, Vertex> parent;
  std::map<Vertex, int> depth;
  Vertex root = *g.vertices().begin();
  parent[root] = -1;
  depth[root] = 0;
  struct Frame {
    Vertex v;
    std::vector<Vertex> nbrs;
    std::size_t next = 0;
  };
  std::vector<Frame> st;
  st.push_back({root, {g.neighbors(root).begin(), g.neighbors(root).end()}});
  while (!st.empty()) {
    Frame& f = st.back();
    if (f.next == f.nbrs.size()) {
      st.pop_back();
      continue;
    }
    Vertex w = f.nbrs[f.next++];
    if (w == parent[f.v]) continue;
    auto it = depth.find(w);
    if (it != depth.end()) {
      if (it->second < depth[f.v]) {
        std::vector<Vertex> cycle;
        for (Vertex x = f.v; x != w; x = parent[x]) cycle.push_back(x);
        cycle.push_back(w);
        return cycle;
      }
      continue;
    }
    parent[w] = f.v;
    depth[w] = depth[f.v] + 1;
    st.push_back({w, {g.neighbors(w).begin(), g.neighbors(w).end()}});
  }
  throw invariant_error("planarity: no cycle in a 2-connected block");
}

struct BlockBridge {
  bool chord = false;
  Edge edge{-1, -1};
  std::set<Vertex> kernel;
  std::set<Vertex> attachments;
};

// Bridges of the embedded subgraph `emb` inside `block`: chords between
// embedded vertices, and components of block minus V(emb) with their
// attachment vertices.
std::vector<BlockBridge> block_bridges(const Graph& block, const Graph& emb) {
  std::vector<BlockBridge> out;
  std::vector<Vertex> vs = emb.vertices();
  std::set<Vertex> embedded(vs.begin(), vs.end());
  for (const Edge& e : block.edges()) {
    if (embedded.count(e.first) && embedded.count(e.second) &&
        !emb.has_edge(e.first, e.second)) {
      BlockBridge b;
      b.chord = true;
      b.edge = e;
      b.attachments = {e.first, e.second};
      out.push_back(std::move(b));
    }
  }
  std::set<Vertex> rest;
  for (Vertex v : block.vertices())
    if (!embedded.count(v)) rest.insert(v);
  Graph outside = block.induced(rest);
  for (const std::set<Vertex>& comp : outside.components()) {
    BlockBridge b;
    b.kernel = comp;
    for (Vertex x : comp)
      for (Vertex w : block.neighbors(x))
        if (embedded.count(w)) b.attachments.insert(w);
    if (b.attachments.size() < 2)
      throw invariant_error("planarity: bridge with fewer than 2 attachments");
    out.push_back(std::move(b));
  }
  return out;
}

// Shortest path from one attachment through the bridge kernel to another,
// ready for face insertion (interior vertices all outside the embedding).
std::vector<Vertex> bridge_path(const Graph& block, const BlockBridge& br) {
  if (br.chord) return {br.edge.first, br.edge.second};
  Vertex a = *br.attachments.begin();
  std::map<Vertex, Vertex> prev;
  std::deque<Vertex> queue;
  for (Vertex x : block.neighbors(a)) {
    if (br.kernel.count(x) && !prev.count(x)) {
      prev[x] = -1;
      queue.push_back(x);
    }
  }
  while (!queue.empty()) {
    Vertex x = queue.front();
    queue.pop_front();
    for (Vertex w : block.neighbors(x)) {
      if (w != a && br.attachments.count(w)) {
        std::vector<Vertex> path{w, x};
        for (Vertex p = prev[x]; p != -1; p = prev[p]) path.push_back(p);
        path.push_back(a);
        std::reverse(path.begin(), path.end());
        return path;
      }
    }
    for (Vertex w : block.neighbors(x)) {
      if (br.kernel.count(w) && !prev.count(w)) {
        prev[w] = x;
        queue.push_back(w);
      }
    }
  }
  throw invariant_error("planarity: bridge kernel reaches only one attachment");
}

// Face-by-face insertion on one 2-connected block: start from a cycle, then
// repeatedly route a path of the bridge with the fewest admissible faces.
// Returns nullopt when some bridge has no admissible face.
std::optional<RotationSystem> embed_block(const Graph& block) {
  std::vector<Vertex> cycle = find_cycle(block);
  int len = static_cast<int>(cycle.size());
  Graph emb;
  RotationSystem rot;
  for (int i = 0; i < len; ++i) {
    Vertex p = cycle[(i + len - 1) % len];
    Vertex q = cycle[(i + 1) % len];
    emb.add_edge(cycle[i], q);
    rot.rot[cycle[i]] = (p == q) ? std::vector<Vertex>{p}
                                 : std::vector<Vertex>{p, q};
  }
  while (emb.m() < block.m()) {
    FaceSet faces = trace_faces(emb, rot);
    std::vector<BlockBridge> bridges = block_bridges(block, emb);
    int best = -1;
    std::vector<int> best_adm;
    for (std::size_t i = 0; i < bridges.size(); ++i) {
      std::vector<int> adm;
      for (int f = 0; f < faces.count(); ++f) {
        std::set<Vertex> fv = faces.vertices_of(f);
        if (std::includes(fv.begin(), fv.end(), bridges[i].attachments.begin(),
                          bridges[i].attachments.end()))
          adm.push_back(f);
      }
      if (adm.empty()) return std::nullopt;
      if (best < 0 || adm.size() < best_adm.size()) {
        best = static_cast<int>(i);
        best_adm = adm;
      }
    }
    if (best < 0) throw invariant_error("planarity: no bridge over a partial embedding");
    std::vector<Vertex> path = bridge_path(block, bridges[best]);
    insert_path_in_face(emb, rot, faces.faces[best_adm.front()], path);
  }
  return rot;
}

std::optional<RotationSystem> planar_embed(const Graph& g) {
  RotationSystem rot;
  for (Vertex v : g.vertices()) rot.rot[v] = {};
  BlockCut bc = block_decomposition(g);
  std::sort(bc.blocks.begin(), bc.blocks.end());
  for (const std::set<Vertex>& block : bc.blocks) {
    if (block.size() == 1) continue;
    if (block.size() == 2) {
      Vertex u = *block.begin();
      Vertex v = *block.rbegin();
      rot.rot[u].push_back(v);
      rot.rot[v].push_back(u);
      continue;
    }
    std::optional<RotationSystem> br = embed_block(g.induced(block));
    if (!br) return std::nullopt;
    for (const auto& [v, order] : br->rot)
      rot.rot[v].insert(rot.rot[v].end(), order.begin(), order.end());
  }
  if (genus_of_rotation(g, rot) != 0)
    throw invariant_error("planarity: merged block embedding is not genus 0");
  return rot;
}

}  // namespace

bool is_planar_quick(const Graph& g) { return planar_embed(g).has_value(); }

std::optional<KuratowskiWitness> classify_kuratowski_subdivision(const Graph& h) {
  if (h.n() == 0 || !h.connected()) return std::nullopt;
  std::set<Vertex> branch;
  int branch_degree = -1;
  for (Vertex v : h.vertices()) {
    int d = h.degree(v);
    if (d == 2) continue;
    if (d < 2) return std::nullopt;
    if (branch_degree < 0) branch_degree = d;
    if (d != branch_degree) return std::nullopt;
    branch.insert(v);
  }
  std::string kind;
  if (branch.size() == 5 && branch_degree == 4) kind = "K5";
  else if (branch.size() == 6 && branch_degree == 3) kind = "K33";
  else return std::nullopt;

  std::map<Edge, int> paths;
  std::set<Vertex> interior_seen;
  for (Vertex b : branch) {
    for (Vertex start : h.neighbors(b)) {
      Vertex prev = b;
      Vertex cur = start;
      std::set<Vertex> walk;
      while (!branch.count(cur)) {
        if (walk.count(cur)) return std::nullopt;
        walk.insert(cur);
        interior_seen.insert(cur);
        const std::set<Vertex>& nb = h.neighbors(cur);
        Vertex next = (*nb.begin() == prev) ? *nb.rbegin() : *nb.begin();
        prev = cur;
        cur = next;
      }
      if (cur == b) return std::nullopt;
      paths[make_edge(b, cur)] += 1;
    }
  }
  if (interior_seen.size() + branch.size() != static_cast<std::size_t>(h.n()))
    return std::nullopt;
  for (const auto& [e, c] : paths)
    if (c != 2) return std::nullopt;
  if (kind == "K5") {
    if (paths.size() != 10) return std::nullopt;
  } else {
    if (paths.size() != 9) return std::nullopt;
    // 3-regular bipartite on 3+3 vertices is exactly K33; two-colour it.
    std::map<Vertex, int> colour;
    std::deque<Vertex> queue{*branch.begin()};
    colour[*branch.begin()] = 0;
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      for (const auto& [e, c] : paths) {
        if (e.first != v && e.second != v) continue;
        Vertex w = (e.first == v) ? e.second : e.first;
        if (!colour.count(w)) {
          colour[w] = 1 - colour[v];
          queue.push_back(w);
        } else if (colour[w] == colour[v]) {
          return std::nullopt;
        }
      }
    }
    int zeros = 0;
    for (const auto& [v, c] : colour) zeros += (c == 0);
    if (colour.size() != 6 || zeros != 3) return std::nullopt;
  }
  KuratowskiWitness w;
  w.subgraph = h;
  w.kind = kind;
  w.branch_vertices = branch;
  return w;
}

PlanarityCertificate is_planar(const Graph& g) {
  PlanarityCertificate cert;
  std::optional<RotationSystem> emb = planar_embed(g);
  if (emb) {
    cert.planar = true;
    cert.embedding = std::move(*emb);
    return cert;
  }
  Graph h = g;
  std::vector<Edge> edges = h.edges();
  for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
    Graph t = h;
    t.remove_edge(it->first, it->second);
    if (!planar_embed(t)) h = std::move(t);
  }
  for (Vertex v : h.vertices())
    if (h.degree(v) == 0) h.remove_vertex(v);
  std::optional<KuratowskiWitness> w = classify_kuratowski_subdivision(h);
  if (!w)
    throw invariant_error(
        "planarity: edge-minimal nonplanar graph failed the subdivision check");
  cert.planar = false;
  cert.witness = std::move(*w);
  return cert;
}

bool verify_certificate(const Graph& g, const PlanarityCertificate& cert) {
  if (cert.planar) {
    if (!cert.embedding || cert.witness) return false;
    try {
      validate_rotation(g, *cert.embedding);
      return genus_of_rotation(g, *cert.embedding) == 0;
    } catch (const input_error&) {
      return false;
    } catch (const invariant_error&) {
      return false;
    }
  }
  if (!cert.witness || cert.embedding) return false;
  const KuratowskiWitness& w = *cert.witness;
  if (!w.subgraph.is_subgraph_of(g)) return false;
  std::optional<KuratowskiWitness> check = classify_kuratowski_subdivision(w.subgraph);
  return check && check->kind == w.kind &&
         check->branch_vertices == w.branch_vertices;
}

bool is_flat(const RootedGraph& rg) {
  if (rg.roots.size() > 3)
    throw input_error("is_flat: more than 3 roots");
  for (Vertex r : rg.roots)
    if (!rg.graph.has_vertex(r))
      throw input_error("is_flat: root outside the graph");
  if (rg.roots.empty()) return is_planar_quick(rg.graph);
  Graph h = rg.graph;
  Vertex apex = h.fresh_id();
  h.add_vertex(apex);
  for (Vertex r : rg.roots) h.add_edge(apex, r);
  return is_planar_quick(h);
}

bool cofacial_embeddable(const Graph& g, Vertex u, Vertex v) {
  if (!g.has_vertex(u) || !g.has_vertex(v) || u == v)
    throw input_error("cofacial_embeddable: need two distinct vertices of g");
  if (!is_planar_quick(g))
    throw input_error("cofacial_embeddable: graph is not planar");
  Graph h = g;
  Vertex w = h.fresh_id();
  h.add_vertex(w);
  h.add_edge(u, w);
  h.add_edge(w, v);
  return is_planar_quick(h);
}

std::vector<int> face_cover(const Graph& g, const RotationSystem& rot,
                            const std::set<Vertex>& u_set) {
  validate_rotation(g, rot);
  if (genus_of_rotation(g, rot) != 0)
    throw input_error("face_cover: embedding is not planar");
  for (Vertex v : u_set)
    if (!g.has_vertex(v)) throw input_error("face_cover: vertex outside graph");
  FaceSet faces = trace_faces(g, rot);
  if (faces.count() > 20) throw budget_error("face_cover: more than 20 faces");
  std::vector<Vertex> targets(u_set.begin(), u_set.end());
  if (targets.size() > 63) throw budget_error("face_cover: more than 63 targets");
  if (targets.empty()) return {};

  std::vector<std::uint64_t> covers(faces.count(), 0);
  std::vector<std::vector<int>> faces_with(targets.size());
  for (int f = 0; f < faces.count(); ++f) {
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (faces.face_contains_vertex(f, targets[i])) {
        covers[f] |= std::uint64_t{1} << i;
        faces_with[i].push_back(f);
      }
    }
  }
  for (std::size_t i = 0; i < targets.size(); ++i)
    if (faces_with[i].empty())
      throw input_error("face_cover: vertex not incident with any face");

  std::map<std::uint64_t, std::pair<int, int>> memo;  // mask -> {size, face}
  std::function<int(std::uint64_t)> best = [&](std::uint64_t mask) -> int {
    if (mask == 0) return 0;
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second.first;
    int t = std::countr_zero(mask);
    int best_size = std::numeric_limits<int>::max();
    int best_face = -1;
    for (int f : faces_with[t]) {
      int size = 1 + best(mask & ~covers[f]);
      if (size < best_size) {
        best_size = size;
        best_face = f;
      }
    }
    memo[mask] = {best_size, best_face};
    return best_size;
  };
  std::uint64_t all = (targets.size() == 64)
                          ? ~std::uint64_t{0}
                          : ((std::uint64_t{1} << targets.size()) - 1);
  best(all);
  std::set<int> chosen;
  std::uint64_t mask = all;
  while (mask != 0) {
    int f = memo.at(mask).second;
    chosen.insert(f);
    mask &= ~covers[f];
  }
  return {chosen.begin(), chosen.end()};
}

ApicalPair make_apical_pair(const Graph& g, const std::set<Vertex>& apex_set) {
  for (Vertex x : apex_set) {
    if (!g.has_vertex(x))
      throw input_error("make_apical_pair: apex vertex outside graph");
    for (Vertex w : g.neighbors(x))
      if (apex_set.count(w))
        throw input_error("make_apical_pair: apex set is not stable");
  }
  ApicalPair pair{g, apex_set};
  if (!is_planar_quick(pair.skeleton()))
    throw input_error("make_apical_pair: graph minus apex set is not planar");
  return pair;
}

}  // namespace gk
