#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "genuskit/graph.hpp"
#include "genuskit/minor.hpp"
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

}  // namespace

TEST_CASE("cliques contain smaller cliques as minors") {
  auto model = has_minor(complete(5), complete(4));
  REQUIRE(model.has_value());
  CHECK(validate_minor_model(complete(5), complete(4), *model));
}

TEST_CASE("the 3x3 grid has no K5 minor") {
  CHECK_FALSE(has_minor(grid_graph(3, 3), complete(5)).has_value());
}

TEST_CASE("the Petersen graph has a K5 minor") {
  auto model = has_minor(petersen(), complete(5));
  REQUIRE(model.has_value());
  CHECK(validate_minor_model(petersen(), complete(5), *model));
  for (const auto& [p, bs] : model->branch_sets) CHECK(bs.size() == 2);
}

TEST_CASE("minor search honours its size cap") {
  CHECK_THROWS_AS(has_minor(grid_graph(4, 4), complete(4), 14), budget_error);
  auto model = has_minor(grid_graph(4, 4), complete(4), 16);
  REQUIRE(model.has_value());
  CHECK(validate_minor_model(grid_graph(4, 4), complete(4), *model));
}

TEST_CASE("empty and oversized patterns resolve without search") {
  Graph empty;
  auto model = has_minor(complete(4), empty);
  REQUIRE(model.has_value());
  CHECK(model->branch_sets.empty());
  CHECK_FALSE(has_minor(complete(4), complete(5)).has_value());
}

TEST_CASE("subdivisions are recovered as minors of their host") {
  Graph g = complete_bipartite(3, 3);
  g.remove_edge(0, 3);
  g.add_edge(0, 9);
  g.add_edge(9, 3);
  auto model = has_minor(g, complete_bipartite(3, 3));
  REQUIRE(model.has_value());
  CHECK(validate_minor_model(g, complete_bipartite(3, 3), *model));
}

TEST_CASE("planar hosts never produce K5 or K33 minors") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = random_graph(8, 0.45, rng);
    if (!is_planar_quick(g)) continue;
    CHECK_FALSE(has_minor(g, complete(5)).has_value());
    CHECK_FALSE(has_minor(g, complete_bipartite(3, 3)).has_value());
  }
}

TEST_CASE("nonplanar graphs contain K5 or K33 minors") {
  std::mt19937 rng(47);
  int nonplanar = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = random_graph(8, 0.5, rng);
    if (is_planar_quick(g)) continue;
    ++nonplanar;
    bool k5 = has_minor(g, complete(5)).has_value();
    bool k33 = has_minor(g, complete_bipartite(3, 3)).has_value();
    CHECK((k5 || k33));
  }
  CHECK(nonplanar >= 5);
}

TEST_CASE("minor containment is transitive on small hosts") {
  std::mt19937 rng(53);
  int checked = 0;
  for (int trial = 0; trial < 30 && checked < 8; ++trial) {
    Graph g = random_graph(7, 0.5, rng);
    Graph h = random_graph(5, 0.5, rng);
    Graph p = random_graph(4, 0.5, rng);
    if (!has_minor(g, h).has_value()) continue;
    if (!has_minor(h, p).has_value()) continue;
    CHECK(has_minor(g, p).has_value());
    ++checked;
  }
  CHECK(checked >= 4);
}

TEST_CASE("validator rejects broken models") {
  auto model = has_minor(complete(5), complete(4));
  REQUIRE(model.has_value());
  MinorModel overlap = *model;
  Vertex first = overlap.branch_sets.begin()->first;
  Vertex second = std::next(overlap.branch_sets.begin())->first;
  overlap.branch_sets[first] = overlap.branch_sets[second];
  CHECK_FALSE(validate_minor_model(complete(5), complete(4), overlap));

  MinorModel missing = *model;
  missing.edge_witnesses.erase(missing.edge_witnesses.begin());
  CHECK_FALSE(validate_minor_model(complete(5), complete(4), missing));

  MinorModel disconnected = *model;
  Graph host = complete(5);
  host.add_vertex(40);
  host.add_vertex(41);
  disconnected.branch_sets[first] = {40, 41};
  CHECK_FALSE(validate_minor_model(host, complete(4), disconnected));
}
