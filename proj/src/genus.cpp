#include "genuskit/genus.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace gk {

namespace {

int euler_genus_of_component(int v, int e, int f) {
  int doubled = 2 - v + e - f;
  if (doubled < 0 || doubled % 2 != 0)
    throw invariant_error("Euler count is not an even non-negative number");
  return doubled / 2;
}

}  // namespace

int genus_of_rotation(const Graph& g, const RotationSystem& rot) {
  FaceSet faces = trace_faces(g, rot);
  int total = 0;
  for (const std::set<Vertex>& comp : g.components()) {
    int edges = static_cast<int>(g.induced(comp).m());
    if (edges == 0) continue;  // a lone vertex embeds with one face, genus 0
    int f = 0;
    for (const auto& face : faces.faces)
      if (comp.count(face.front().from)) ++f;
    total +=
        euler_genus_of_component(static_cast<int>(comp.size()), edges, f);
  }
  return total;
}

namespace {

// Branch-and-bound minimum genus search over one connected component.
struct GenusSearch {
  const Graph& g;
  std::vector<Vertex> order;               // assignment order
  std::map<Vertex, std::vector<Vertex>> rot;  // partial rotation
  std::map<Vertex, bool> assigned;
  int verts = 0, edges = 0;
  int best = -1;
  std::map<Vertex, std::vector<Vertex>> best_rot;

  explicit GenusSearch(const Graph& graph) : g(graph) {
    verts = g.n();
    edges = g.m();
    pick_order();
  }

  void pick_order() {
    std::vector<Vertex> all = g.vertices();
    std::vector<Vertex> chosen;
    std::set<Vertex> used;
    auto better_root = [&](Vertex a, Vertex b) {
      if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
      return a < b;
    };
    Vertex root = all.front();
    for (Vertex v : all)
      if (better_root(v, root)) root = v;
    chosen.push_back(root);
    used.insert(root);
    while (chosen.size() < all.size()) {
      Vertex pick = -1;
      int pick_links = -1;
      for (Vertex v : all) {
        if (used.count(v)) continue;
        int links = 0;
        for (Vertex w : g.neighbors(v))
          if (used.count(w)) ++links;
        if (links > pick_links ||
            (links == pick_links &&
             (g.degree(v) > g.degree(pick) ||
              (g.degree(v) == g.degree(pick) && v < pick)))) {
          pick = v;
          pick_links = links;
        }
      }
      chosen.push_back(pick);
      used.insert(pick);
    }
    order = std::move(chosen);
  }

  // Counts fully determined face cycles, plus the darts whose successor is
  // still unknown.  Every not-yet-closed face of any completion contains at
  // least one of the latter, so F_final <= closed + undetermined.
  void face_progress(int& closed, int& undetermined) const {
    closed = 0;
    undetermined = 0;
    std::set<Dart> visited;
    std::vector<Dart> darts;
    for (Vertex v : order) {
      if (assigned.count(v)) {
        for (Vertex w : g.neighbors(v)) darts.push_back(Dart{w, v});
      } else {
        undetermined += g.degree(v);
      }
    }
    // A dart (u,v) with v assigned has a determined successor.  The successor
    // map is injective, so determined darts form disjoint chains and cycles;
    // walking from any dart of a cycle closes it, and chains never close.
    for (const Dart& start : darts) {
      if (visited.count(start)) continue;
      Dart cur = start;
      Dart first = start;
      bool cycle = false;
      while (true) {
        if (visited.count(cur)) break;
        visited.insert(cur);
        Vertex v = cur.to;
        const std::vector<Vertex>& order_v = rot.at(v);
        auto it = std::find(order_v.begin(), order_v.end(), cur.from);
        Vertex nxt = (it + 1 == order_v.end()) ? order_v.front() : *(it + 1);
        if (!assigned.count(nxt)) break;
        Dart next_dart{v, nxt};
        if (next_dart == first) {
          cycle = true;
          break;
        }
        cur = next_dart;
      }
      if (cycle) ++closed;
    }
  }

  int lower_bound() const {
    int closed = 0, undetermined = 0;
    face_progress(closed, undetermined);
    int num = 2 - verts + edges - closed - undetermined;
    return num <= 0 ? 0 : (num + 1) / 2;
  }

  void run() {
    descend(0);
  }

  void descend(std::size_t depth) {
    if (best == 0) return;  // cannot improve
    if (depth == order.size()) {
      RotationSystem rs;
      rs.rot = rot;
      FaceSet faces = trace_faces(g, rs);
      int genus = euler_genus_of_component(verts, edges, faces.count());
      if (best < 0 || genus < best) {
        best = genus;
        best_rot = rot;
      }
      return;
    }
    if (best >= 0 && lower_bound() >= best) return;

    Vertex v = order[depth];
    std::vector<Vertex> nbrs(g.neighbors(v).begin(), g.neighbors(v).end());
    if (nbrs.empty()) {
      rot[v] = {};
      assigned[v] = true;
      descend(depth + 1);
      assigned.erase(v);
      rot.erase(v);
      return;
    }
    Vertex anchor = nbrs.front();
    std::vector<Vertex> rest(nbrs.begin() + 1, nbrs.end());
    std::sort(rest.begin(), rest.end());
    do {
      // Quotient the global reflection at the root vertex.
      if (depth == 0 && rest.size() >= 2 && rest.front() > rest.back())
        continue;
      std::vector<Vertex> cyc;
      cyc.push_back(anchor);
      cyc.insert(cyc.end(), rest.begin(), rest.end());
      rot[v] = cyc;
      assigned[v] = true;
      descend(depth + 1);
      assigned.erase(v);
      rot.erase(v);
    } while (std::next_permutation(rest.begin(), rest.end()));
  }
};

std::uint64_t raw_rotation_count(const Graph& g, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (Vertex v : g.vertices()) {
    int d = g.degree(v);
    for (int i = 2; i + 1 <= d; ++i) {
      total *= static_cast<std::uint64_t>(i);
      if (total > cap) return cap + 1;
    }
  }
  return total;
}

}  // namespace

GenusReport min_genus(const Graph& g, std::uint64_t budget) {
  GenusReport report;
  for (const std::set<Vertex>& comp : g.components()) {
    Graph sub = g.induced(comp);
    if (sub.m() == 0) {
      for (Vertex v : sub.vertices()) report.rotation.rot[v] = {};
      report.faces_per_component.push_back(1);
      continue;
    }
    if (raw_rotation_count(sub, budget) > budget)
      throw budget_error("rotation count exceeds budget for a component of " +
                         std::to_string(sub.n()) + " vertices");
    GenusSearch search(sub);
    search.run();
    report.genus += search.best;
    RotationSystem rs;
    rs.rot = search.best_rot;
    report.faces_per_component.push_back(trace_faces(sub, rs).count());
    for (auto& [v, order] : search.best_rot)
      report.rotation.rot[v] = order;
  }
  return report;
}

}  // namespace gk
