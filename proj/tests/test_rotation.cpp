#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "genuskit/genus.hpp"
#include "genuskit/graph.hpp"
#include "genuskit/rotation.hpp"

using namespace gk;

namespace {

RotationSystem cycle_rotation(int n) {
  RotationSystem rot;
  for (int i = 0; i < n; ++i)
    rot.rot[i] = {(i + n - 1) % n, (i + 1) % n};
  return rot;
}

// K4 drawn as an outer triangle 1,2,3 with 0 inside.
RotationSystem k4_planar_rotation() {
  RotationSystem rot;
  rot.rot[0] = {1, 2, 3};
  rot.rot[1] = {0, 3, 2};
  rot.rot[2] = {0, 1, 3};
  rot.rot[3] = {0, 2, 1};
  return rot;
}

}  // namespace

TEST_CASE("rotation validation catches missing and foreign neighbours") {
  Graph g = cycle_graph(3);
  RotationSystem rot = cycle_rotation(3);
  CHECK_NOTHROW(validate_rotation(g, rot));
  rot.rot[0] = {1};
  CHECK_THROWS_AS(validate_rotation(g, rot), input_error);
  rot.rot[0] = {1, 2, 5};
  CHECK_THROWS_AS(validate_rotation(g, rot), input_error);
  rot.rot[0] = {1, 1};
  CHECK_THROWS_AS(validate_rotation(g, rot), input_error);
}

TEST_CASE("face tracing covers every dart exactly once") {
  Graph g = complete(4);
  FaceSet fs = trace_faces(g, k4_planar_rotation());
  CHECK(fs.count() == 4);
  std::set<Dart> seen;
  int total = 0;
  for (const auto& face : fs.faces) {
    for (const Dart& d : face) {
      CHECK_FALSE(seen.count(d));
      seen.insert(d);
      ++total;
    }
  }
  CHECK(total == 2 * g.m());
  for (const auto& [d, f] : fs.face_of) CHECK(seen.count(d));
}

TEST_CASE("a single edge traces one face of length two") {
  Graph g;
  g.add_edge(0, 1);
  RotationSystem rot;
  rot.rot[0] = {1};
  rot.rot[1] = {0};
  FaceSet fs = trace_faces(g, rot);
  CHECK(fs.count() == 1);
  CHECK(fs.faces[0].size() == 2);
}

TEST_CASE("cycle embeddings have two faces, each the cycle itself") {
  Graph g = cycle_graph(5);
  FaceSet fs = trace_faces(g, cycle_rotation(5));
  CHECK(fs.count() == 2);
  std::vector<Vertex> cyc{0, 1, 2, 3, 4};
  CHECK(face_is_cycle(fs.faces[0], cyc));
  CHECK(face_is_cycle(fs.faces[1], cyc));
  std::vector<Vertex> other{0, 2, 1, 3, 4};
  CHECK_FALSE(face_is_cycle(fs.faces[0], other));
}

TEST_CASE("inserting a chord splits a face") {
  Graph g = cycle_graph(4);
  RotationSystem rot = cycle_rotation(4);
  FaceSet fs = trace_faces(g, rot);
  insert_path_in_face(g, rot, fs.faces[0], {0, 2});
  CHECK(g.has_edge(0, 2));
  CHECK_NOTHROW(validate_rotation(g, rot));
  FaceSet after = trace_faces(g, rot);
  CHECK(after.count() == 3);
  CHECK(genus_of_rotation(g, rot) == 0);
}

TEST_CASE("inserting a path with fresh interior vertices splits a face") {
  Graph g = cycle_graph(4);
  RotationSystem rot = cycle_rotation(4);
  FaceSet fs = trace_faces(g, rot);
  insert_path_in_face(g, rot, fs.faces[1], {1, 8, 9, 3});
  CHECK(g.n() == 6);
  CHECK(g.has_edge(1, 8));
  CHECK(g.has_edge(8, 9));
  CHECK(g.has_edge(9, 3));
  CHECK_NOTHROW(validate_rotation(g, rot));
  CHECK(trace_faces(g, rot).count() == 3);
  CHECK(genus_of_rotation(g, rot) == 0);
}

TEST_CASE("deleting an edge merges its two faces") {
  Graph g = complete(4);
  RotationSystem rot = k4_planar_rotation();
  delete_edge(g, rot, 0, 1);
  CHECK_FALSE(g.has_edge(0, 1));
  CHECK_NOTHROW(validate_rotation(g, rot));
  CHECK(trace_faces(g, rot).count() == 3);
  delete_vertex(g, rot, 0);
  CHECK_NOTHROW(validate_rotation(g, rot));
  CHECK(trace_faces(g, rot).count() == 2);
}

TEST_CASE("restriction maps faces onto the regions that absorbed them") {
  Graph g = cycle_graph(4);
  RotationSystem rot = cycle_rotation(4);
  FaceSet before = trace_faces(g, rot);
  insert_path_in_face(g, rot, before.faces[0], {0, 2});
  FaceSet with_chord = trace_faces(g, rot);
  REQUIRE(with_chord.count() == 3);

  Restriction res = restrict_embedding(g, rot, cycle_graph(4));
  CHECK(res.graph == cycle_graph(4));
  CHECK(res.faces.count() == 2);
  int side_a = -1, side_b = -1, untouched = -1;
  for (int f = 0; f < 3; ++f) {
    bool touches = false;
    for (const Dart& d : with_chord.faces[f])
      if ((d.from == 0 && d.to == 2) || (d.from == 2 && d.to == 0)) touches = true;
    if (!touches) untouched = f;
    else if (side_a < 0) side_a = f;
    else side_b = f;
  }
  REQUIRE(untouched >= 0);
  CHECK(res.face_map[side_a] == res.face_map[side_b]);
  CHECK(res.face_map[untouched] != res.face_map[side_a]);
}

TEST_CASE("restriction to a spanning subgraph keeps vertex set") {
  Graph g = complete(4);
  RotationSystem rot = k4_planar_rotation();
  Graph keep = complete(4);
  keep.remove_edge(1, 2);
  Restriction res = restrict_embedding(g, rot, keep);
  CHECK(res.graph == keep);
  CHECK(res.faces.count() == 3);
  CHECK_NOTHROW(validate_rotation(keep, res.rot));
}
