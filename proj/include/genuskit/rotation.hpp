#pragma once

#include <map>
#include <set>
#include <vector>

#include "genuskit/graph.hpp"

namespace gk {

/// Combinatorial embedding: a cyclic order of neighbours at every vertex.
struct RotationSystem {
  std::map<Vertex, std::vector<Vertex>> rot;

  const std::vector<Vertex>& at(Vertex v) const;
  /// Neighbour following `after` in the cyclic order at v.
  Vertex successor(Vertex v, Vertex after) const;
  void insert_after(Vertex v, Vertex after, Vertex nb);
  void remove(Vertex v, Vertex nb);
};

/// Throws input_error unless rot lists exactly the neighbours of every
/// vertex of g, each once.
void validate_rotation(const Graph& g, const RotationSystem& rot);

struct Dart {
  Vertex from = -1, to = -1;
  bool operator<(const Dart& o) const {
    return from != o.from ? from < o.from : to < o.to;
  }
  bool operator==(const Dart& o) const { return from == o.from && to == o.to; }
};

/// Faces of the embedding.  Tracing rule: the dart after (u,v) is
/// (v, successor of u at v), so every dart lies on exactly one face.
struct FaceSet {
  std::vector<std::vector<Dart>> faces;
  std::map<Dart, int> face_of;

  int count() const { return static_cast<int>(faces.size()); }
  std::set<Vertex> vertices_of(int face) const;
  bool face_contains_vertex(int face, Vertex v) const;
};

FaceSet trace_faces(const Graph& g, const RotationSystem& rot);

/// True when the face walk is exactly the cycle (same cyclic sequence of
/// vertices, either direction).
bool face_is_cycle(const std::vector<Dart>& face,
                   const std::vector<Vertex>& cycle);

// --- Surgery -------------------------------------------------------------
// All helpers keep a genus-0 rotation genus 0; they edit graph and rotation
// together.

/// Inserts path a = p0, p1, ..., pk = b into face `face` (interior vertices
/// must be fresh; a path of length one adds the chord ab).  The face walk
/// must visit a and b.  Uses the first occurrence of each endpoint.
void insert_path_in_face(Graph& g, RotationSystem& rot,
                         const std::vector<Dart>& face,
                         const std::vector<Vertex>& path);

/// Deletes an edge from graph and rotation.
void delete_edge(Graph& g, RotationSystem& rot, Vertex a, Vertex b);

/// Deletes a vertex from graph and rotation.
void delete_vertex(Graph& g, RotationSystem& rot, Vertex v);

/// Result of restricting an embedding to a subgraph: the restricted rotation
/// plus, for every face of the original embedding, the face of the
/// restriction whose region absorbed it.
struct Restriction {
  Graph graph;
  RotationSystem rot;
  FaceSet faces;
  std::vector<int> face_map;  // original face index -> restricted face index
};

/// Restricts (g, rot) to the subgraph `keep` (which must be a subgraph of g),
/// deleting vertices and edges one at a time while tracking face merges.
Restriction restrict_embedding(const Graph& g, const RotationSystem& rot,
                               const Graph& keep);

}  // namespace gk
