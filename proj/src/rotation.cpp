#include "genuskit/rotation.hpp"

#include <algorithm>

namespace gk {

const std::vector<Vertex>& RotationSystem::at(Vertex v) const {
  auto it = rot.find(v);
  if (it == rot.end())
    throw input_error("rotation missing vertex " + std::to_string(v));
  return it->second;
}

Vertex RotationSystem::successor(Vertex v, Vertex after) const {
  const std::vector<Vertex>& order = at(v);
  auto it = std::find(order.begin(), order.end(), after);
  if (it == order.end())
    throw input_error("rotation at " + std::to_string(v) + " lacks neighbour " +
                      std::to_string(after));
  ++it;
  return it == order.end() ? order.front() : *it;
}

void RotationSystem::insert_after(Vertex v, Vertex after, Vertex nb) {
  std::vector<Vertex>& order = rot.at(v);
  auto it = std::find(order.begin(), order.end(), after);
  if (it == order.end())
    throw input_error("rotation at " + std::to_string(v) + " lacks neighbour " +
                      std::to_string(after));
  order.insert(it + 1, nb);
}

void RotationSystem::remove(Vertex v, Vertex nb) {
  std::vector<Vertex>& order = rot.at(v);
  auto it = std::find(order.begin(), order.end(), nb);
  if (it == order.end())
    throw input_error("rotation at " + std::to_string(v) + " lacks neighbour " +
                      std::to_string(nb));
  order.erase(it);
}

void validate_rotation(const Graph& g, const RotationSystem& rot) {
  if (static_cast<int>(rot.rot.size()) != g.n())
    throw input_error("rotation vertex set differs from graph");
  for (const auto& [v, order] : rot.rot) {
    if (!g.has_vertex(v))
      throw input_error("rotation lists unknown vertex " + std::to_string(v));
    std::set<Vertex> listed(order.begin(), order.end());
    if (listed.size() != order.size())
      throw input_error("rotation at " + std::to_string(v) +
                        " repeats a neighbour");
    if (listed != g.neighbors(v))
      throw input_error("rotation at " + std::to_string(v) +
                        " does not list the neighbourhood");
  }
}

std::set<Vertex> FaceSet::vertices_of(int face) const {
  std::set<Vertex> out;
  for (const Dart& d : faces.at(face)) out.insert(d.from);
  return out;
}

bool FaceSet::face_contains_vertex(int face, Vertex v) const {
  for (const Dart& d : faces.at(face))
    if (d.from == v) return true;
  return false;
}

FaceSet trace_faces(const Graph& g, const RotationSystem& rot) {
  validate_rotation(g, rot);
  FaceSet out;
  std::set<Dart> seen;
  for (Vertex v : g.vertices()) {
    for (Vertex w : rot.at(v)) {
      Dart start{v, w};
      if (seen.count(start)) continue;
      std::vector<Dart> face;
      Dart cur = start;
      do {
        face.push_back(cur);
        seen.insert(cur);
        cur = Dart{cur.to, rot.successor(cur.to, cur.from)};
      } while (!(cur == start));
      int id = out.count();
      for (const Dart& d : face) out.face_of[d] = id;
      out.faces.push_back(std::move(face));
    }
  }
  return out;
}

bool face_is_cycle(const std::vector<Dart>& face,
                   const std::vector<Vertex>& cycle) {
  if (face.size() != cycle.size()) return false;
  std::vector<Vertex> walk;
  walk.reserve(face.size());
  for (const Dart& d : face) walk.push_back(d.from);
  int n = static_cast<int>(cycle.size());
  for (int dir : {1, -1}) {
    for (int shift = 0; shift < n; ++shift) {
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        int idx = ((shift + dir * i) % n + n) % n;
        ok = walk[i] == cycle[idx];
      }
      if (ok) return true;
    }
  }
  return false;
}

void insert_path_in_face(Graph& g, RotationSystem& rot,
                         const std::vector<Dart>& face,
                         const std::vector<Vertex>& path) {
  if (path.size() < 2) throw input_error("path needs at least two vertices");
  Vertex a = path.front(), b = path.back();
  if (a == b) throw input_error("path endpoints must differ");

  auto incoming = [&face](Vertex v) -> Dart {
    for (const Dart& d : face)
      if (d.to == v) return d;
    throw input_error("face does not visit vertex " + std::to_string(v));
  };
  Dart into_a = incoming(a);
  Dart into_b = incoming(b);

  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    if (g.has_vertex(path[i]))
      throw input_error("interior path vertex not fresh");
    g.add_vertex(path[i]);
    rot.rot[path[i]] = {path[i - 1], path[i + 1]};
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    g.add_edge(path[i], path[i + 1]);

  rot.insert_after(a, into_a.from, path[1]);
  rot.insert_after(b, into_b.from, path[path.size() - 2]);
}

void delete_edge(Graph& g, RotationSystem& rot, Vertex a, Vertex b) {
  g.remove_edge(a, b);
  rot.remove(a, b);
  rot.remove(b, a);
}

void delete_vertex(Graph& g, RotationSystem& rot, Vertex v) {
  for (Vertex w : g.neighbors(v)) rot.remove(w, v);
  rot.rot.erase(v);
  g.remove_vertex(v);
}

namespace {

// Remaps `map` through one deletion step.  `old_faces` are the faces before
// the step, `now` the faces after; faces whose darts all vanished inherit the
// target of a surviving sibling face that touched the deleted element.
std::vector<int> compose_face_map(const std::vector<int>& map,
                                  const FaceSet& old_faces, const FaceSet& now,
                                  const std::set<int>& touched_old_faces) {
  std::vector<int> step(old_faces.count(), -1);
  for (int f = 0; f < old_faces.count(); ++f) {
    for (const Dart& d : old_faces.faces[f]) {
      auto it = now.face_of.find(d);
      if (it != now.face_of.end()) {
        step[f] = it->second;
        break;
      }
    }
  }
  int absorbed = -1;
  for (int f : touched_old_faces)
    if (step[f] >= 0) absorbed = step[f];
  for (int f : touched_old_faces)
    if (step[f] < 0) step[f] = absorbed;

  std::vector<int> out(map.size(), -1);
  for (std::size_t i = 0; i < map.size(); ++i)
    if (map[i] >= 0) out[i] = step[map[i]];
  return out;
}

}  // namespace

Restriction restrict_embedding(const Graph& g, const RotationSystem& rot,
                               const Graph& keep) {
  if (!keep.is_subgraph_of(g))
    throw input_error("restrict_embedding: keep is not a subgraph");

  Restriction r;
  r.graph = g;
  r.rot = rot;
  FaceSet cur = trace_faces(r.graph, r.rot);
  std::vector<int> map(cur.count());
  for (int i = 0; i < cur.count(); ++i) map[i] = i;

  auto touched_by_vertex = [&cur](Vertex v) {
    std::set<int> touched;
    for (const auto& [d, f] : cur.face_of)
      if (d.from == v || d.to == v) touched.insert(f);
    return touched;
  };

  for (Vertex v : g.vertices()) {
    if (keep.has_vertex(v)) continue;
    std::set<int> touched = touched_by_vertex(v);
    delete_vertex(r.graph, r.rot, v);
    FaceSet next = trace_faces(r.graph, r.rot);
    map = compose_face_map(map, cur, next, touched);
    cur = std::move(next);
  }
  for (const auto& [a, b] : r.graph.edges()) {
    if (keep.has_edge(a, b)) continue;
    std::set<int> touched{cur.face_of.at(Dart{a, b}), cur.face_of.at(Dart{b, a})};
    delete_edge(r.graph, r.rot, a, b);
    FaceSet next = trace_faces(r.graph, r.rot);
    map = compose_face_map(map, cur, next, touched);
    cur = std::move(next);
  }

  r.faces = std::move(cur);
  r.face_map = std::move(map);
  return r;
}

}  // namespace gk
