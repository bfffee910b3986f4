#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "genuskit/genus.hpp"
#include "genuskit/graph.hpp"
#include "genuskit/planarity.hpp"

using namespace gk;

namespace {

Graph random_graph(int n, double p, std::mt19937& rng) {
  Graph g;
  std::bernoulli_distribution coin(p);
  for (Vertex v = 0; v < n; ++v) g.add_vertex(v);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

// Drawing-based flatness oracle: enumerate genus-0 rotations of each
// component holding roots and look for one whose face walk meets all the
// component's roots.  A disc drawing with the roots on the boundary exists
// exactly when the roots of every component share a face of some planar
// embedding, and distinct components can always be placed side by side.
bool flat_by_enumeration(const Graph& g, const std::vector<Vertex>& roots) {
  std::set<Vertex> rootset(roots.begin(), roots.end());
  for (const std::set<Vertex>& comp : g.components()) {
    std::set<Vertex> here;
    for (Vertex r : rootset)
      if (comp.count(r)) here.insert(r);
    if (here.empty()) {
      if (!is_planar_quick(g.induced(comp))) return false;
      continue;
    }
    Graph sub = g.induced(comp);
    std::vector<Vertex> vs = sub.vertices();
    std::vector<std::vector<std::vector<Vertex>>> perms;
    for (Vertex v : vs) {
      const std::set<Vertex>& nbset = sub.neighbors(v);
      std::vector<Vertex> order(nbset.begin(), nbset.end());
      std::vector<std::vector<Vertex>> list;
      if (order.size() <= 1) {
        list.push_back(order);
      } else {
        std::vector<Vertex> rest(order.begin() + 1, order.end());
        do {
          std::vector<Vertex> whole{order.front()};
          whole.insert(whole.end(), rest.begin(), rest.end());
          list.push_back(whole);
        } while (std::next_permutation(rest.begin(), rest.end()));
      }
      perms.push_back(list);
    }
    bool found = false;
    std::vector<std::size_t> idx(perms.size(), 0);
    while (!found) {
      RotationSystem rot;
      for (std::size_t i = 0; i < vs.size(); ++i)
        rot.rot[vs[i]] = perms[i][idx[i]];
      if (sub.m() == 0) {
        found = true;
        break;
      }
      if (genus_of_rotation(sub, rot) == 0) {
        FaceSet fs = trace_faces(sub, rot);
        for (int f = 0; f < fs.count() && !found; ++f) {
          std::set<Vertex> fv = fs.vertices_of(f);
          found = std::includes(fv.begin(), fv.end(), here.begin(), here.end());
        }
      }
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == perms[i].size()) idx[i++] = 0;
      if (i == idx.size()) break;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("planar certificates carry a genus-zero embedding") {
  for (Graph g : {complete(4), cycle_graph(6), grid_graph(3, 3), path_graph(5)}) {
    PlanarityCertificate cert = is_planar(g);
    REQUIRE(cert.planar);
    REQUIRE(cert.embedding.has_value());
    CHECK_FALSE(cert.witness.has_value());
    CHECK(genus_of_rotation(g, *cert.embedding) == 0);
    CHECK(verify_certificate(g, cert));
  }
}

TEST_CASE("K4 embeds with four faces") {
  PlanarityCertificate cert = is_planar(complete(4));
  REQUIRE(cert.planar);
  CHECK(trace_faces(complete(4), *cert.embedding).count() == 4);
}

TEST_CASE("K5 yields itself as witness") {
  PlanarityCertificate cert = is_planar(complete(5));
  REQUIRE_FALSE(cert.planar);
  REQUIRE(cert.witness.has_value());
  CHECK(cert.witness->kind == "K5");
  CHECK(cert.witness->subgraph == complete(5));
  CHECK(cert.witness->branch_vertices == std::set<Vertex>{0, 1, 2, 3, 4});
  CHECK(verify_certificate(complete(5), cert));
}

TEST_CASE("subdivided K33 is recovered as a K33 witness") {
  Graph g = complete_bipartite(3, 3);
  g.remove_edge(0, 3);
  g.add_edge(0, 9);
  g.add_edge(9, 3);
  PlanarityCertificate cert = is_planar(g);
  REQUIRE_FALSE(cert.planar);
  CHECK(cert.witness->kind == "K33");
  CHECK(cert.witness->subgraph == g);
  CHECK(cert.witness->branch_vertices == std::set<Vertex>{0, 1, 2, 3, 4, 5});
  CHECK(verify_certificate(g, cert));
}

TEST_CASE("witness inside a larger host is a subgraph of it") {
  Graph g = complete(5);
  g.add_edge(0, 10);
  g.add_edge(10, 11);
  Graph grid = grid_graph(2, 3);
  Graph host = g;
  for (const Edge& e : grid.edges())
    host.add_edge(e.first + 20, e.second + 20);
  PlanarityCertificate cert = is_planar(host);
  REQUIRE_FALSE(cert.planar);
  CHECK(cert.witness->subgraph.is_subgraph_of(host));
  CHECK(verify_certificate(host, cert));
  CHECK_FALSE(verify_certificate(grid, cert));
}

TEST_CASE("planarity agrees with the edge-count bound and known families") {
  CHECK(is_planar_quick(complete(4)));
  CHECK_FALSE(is_planar_quick(complete(5)));
  CHECK_FALSE(is_planar_quick(complete_bipartite(3, 3)));
  CHECK(is_planar_quick(complete_bipartite(2, 5)));
  CHECK_FALSE(is_planar_quick(petersen()));
  CHECK(is_planar_quick(grid_graph(4, 4)));
  Graph empty;
  CHECK(is_planar_quick(empty));
}

TEST_CASE("splitting one K5 vertex into 2+2 restores planarity") {
  auto [h, step] = split_vertex(complete(5), 0, {1, 2}, {3, 4});
  CHECK(is_planar_quick(h));
}

TEST_CASE("planarity matches min_genus over a random corpus") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    Graph g = random_graph(7, 0.4, rng);
    std::uint64_t raw = 1;
    bool ok = true;
    for (Vertex v : g.vertices()) {
      int d = g.degree(v);
      for (int i = 2; i < d; ++i) raw *= static_cast<std::uint64_t>(i);
      if (raw > 1000000) ok = false;
    }
    if (!ok) continue;
    CHECK(is_planar_quick(g) == (min_genus(g).genus == 0));
  }
}

TEST_CASE("flatness of textbook rooted graphs") {
  CHECK(is_flat(make_rooted(complete(4), {0, 1, 2})));
  Graph k5e = complete(5);
  k5e.remove_edge(0, 1);
  CHECK_FALSE(is_flat(make_rooted(k5e, {0, 1})));
  Graph edge;
  edge.add_edge(0, 1);
  CHECK(is_flat(make_rooted(edge, {0, 1})));
  CHECK(is_flat(make_rooted(cycle_graph(4), {0, 1, 2})));
  CHECK_FALSE(is_flat(make_rooted(complete(5), {0})));
}

TEST_CASE("flatness agrees with the drawing-based enumeration oracle") {
  std::mt19937 rng(13);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Graph g = random_graph(5, 0.45, rng);
    if (g.m() > 8) continue;
    std::vector<Vertex> roots;
    std::uniform_int_distribution<int> count(1, 3);
    int want = count(rng);
    for (Vertex v : g.vertices()) {
      if (static_cast<int>(roots.size()) < want) roots.push_back(v);
    }
    RootedGraph rg = make_rooted(g, roots);
    CHECK(is_flat(rg) == flat_by_enumeration(g, roots));
    ++checked;
  }
  CHECK(checked >= 20);
}

TEST_CASE("removing a root preserves flatness") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = random_graph(6, 0.4, rng);
    std::vector<Vertex> roots{0, 1, 2};
    if (!is_flat(make_rooted(g, roots))) continue;
    CHECK(is_flat(make_rooted(g, {0, 1})));
    CHECK(is_flat(make_rooted(g, {1, 2})));
  }
}

TEST_CASE("cofaciality on cycles, pendants, and the octahedron") {
  CHECK(cofacial_embeddable(cycle_graph(4), 0, 2));
  Graph k4p = complete(4);
  k4p.add_edge(0, 7);
  k4p.add_edge(1, 8);
  CHECK(cofacial_embeddable(k4p, 7, 8));
  // Antipodal octahedron vertices share no face: every embedding of a
  // 3-connected planar graph has the same triangular faces, and contracting
  // the subdividing vertex would give 6 vertices with 13 > 3*6-6 edges.
  Graph octa = complete(6);
  octa.remove_edge(0, 1);
  octa.remove_edge(2, 3);
  octa.remove_edge(4, 5);
  CHECK_FALSE(cofacial_embeddable(octa, 0, 1));
  CHECK_FALSE(cofacial_embeddable(octa, 2, 3));
  CHECK(cofacial_embeddable(octa, 0, 2));
}

TEST_CASE("cofaciality is symmetric and holds along edges") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    Graph g = random_graph(6, 0.4, rng);
    if (!is_planar_quick(g)) continue;
    std::vector<Vertex> vs = g.vertices();
    std::uniform_int_distribution<int> pick(0, static_cast<int>(vs.size()) - 1);
    Vertex u = vs[pick(rng)];
    Vertex v = vs[pick(rng)];
    if (u == v) continue;
    CHECK(cofacial_embeddable(g, u, v) == cofacial_embeddable(g, v, u));
    if (g.has_edge(u, v)) CHECK(cofacial_embeddable(g, u, v));
  }
  CHECK_THROWS_AS(cofacial_embeddable(complete(5), 0, 1), input_error);
  CHECK_THROWS_AS(cofacial_embeddable(complete(4), 0, 0), input_error);
}

TEST_CASE("face cover finds singletons when one face covers everything") {
  Graph c6 = cycle_graph(6);
  PlanarityCertificate cert = is_planar(c6);
  std::vector<int> cover =
      face_cover(c6, *cert.embedding, {0, 1, 2, 3, 4, 5});
  CHECK(cover.size() == 1);
}

TEST_CASE("face cover of the full 3x3 grid needs exactly two faces") {
  Graph g = grid_graph(3, 3);
  PlanarityCertificate cert = is_planar(g);
  std::set<Vertex> all;
  for (Vertex v : g.vertices()) all.insert(v);
  std::vector<int> cover = face_cover(g, *cert.embedding, all);
  CHECK(cover.size() == 2);
  FaceSet fs = trace_faces(g, *cert.embedding);
  std::set<Vertex> covered;
  for (int f : cover) {
    std::set<Vertex> fv = fs.vertices_of(f);
    covered.insert(fv.begin(), fv.end());
  }
  CHECK(covered == all);
}

TEST_CASE("face cover is minimal against exhaustive subset search") {
  std::mt19937 rng(29);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Graph g = random_graph(7, 0.35, rng);
    if (!is_planar_quick(g)) continue;
    PlanarityCertificate cert = is_planar(g);
    FaceSet fs = trace_faces(g, *cert.embedding);
    if (fs.count() > 12) continue;
    std::set<Vertex> targets;
    for (Vertex v : g.vertices())
      if (g.degree(v) > 0) targets.insert(v);
    if (targets.empty()) continue;
    std::vector<int> cover = face_cover(g, *cert.embedding, targets);
    int best = -1;
    for (int sub = 0; sub < (1 << fs.count()); ++sub) {
      std::set<Vertex> covered;
      for (int f = 0; f < fs.count(); ++f)
        if (sub & (1 << f)) {
          std::set<Vertex> fv = fs.vertices_of(f);
          covered.insert(fv.begin(), fv.end());
        }
      if (std::includes(covered.begin(), covered.end(), targets.begin(),
                        targets.end())) {
        int size = std::popcount(static_cast<unsigned>(sub));
        if (best < 0 || size < best) best = size;
      }
    }
    CHECK(static_cast<int>(cover.size()) == best);
    ++checked;
  }
  CHECK(checked >= 10);
}

TEST_CASE("face cover rejects stale embeddings and oversized instances") {
  Graph c4 = cycle_graph(4);
  RotationSystem rot;
  for (int i = 0; i < 4; ++i) rot.rot[i] = {(i + 3) % 4, (i + 1) % 4};
  CHECK(face_cover(c4, rot, {0, 2}).size() == 1);
  RotationSystem bad = rot;
  bad.rot[0] = {1};
  CHECK_THROWS_AS(face_cover(c4, bad, {0}), input_error);
}

TEST_CASE("apical pair construction checks stability and planar skeleton") {
  Graph g = complete(5);
  CHECK_THROWS_AS(make_apical_pair(g, {0, 1}), input_error);
  ApicalPair ok = make_apical_pair(g, {0});
  CHECK(ok.skeleton() == complete(5).removed({0}));
  Graph two_k5;
  for (const Edge& e : complete(5).edges()) {
    two_k5.add_edge(e.first, e.second);
    two_k5.add_edge(e.first + 5, e.second + 5);
  }
  CHECK_THROWS_AS(make_apical_pair(two_k5, {0}), input_error);
}

TEST_CASE("self-checks of certificates catch tampering") {
  PlanarityCertificate cert = is_planar(complete(4));
  CHECK(verify_certificate(complete(4), cert));
  PlanarityCertificate broken = cert;
  broken.embedding->rot[0].pop_back();
  CHECK_FALSE(verify_certificate(complete(4), broken));

  PlanarityCertificate w = is_planar(complete(5));
  CHECK(verify_certificate(complete(5), w));
  PlanarityCertificate wrong_kind = w;
  wrong_kind.witness->kind = "K33";
  CHECK_FALSE(verify_certificate(complete(5), wrong_kind));
  PlanarityCertificate torn = w;
  torn.witness->subgraph.remove_edge(0, 1);
  CHECK_FALSE(verify_certificate(complete(5), torn));
}
