#include "genuskit/families.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <utility>

namespace gk {

namespace {

int pair_rank(const std::optional<PairKind>& pk) {
  if (!pk) return 0;
  return *pk == PairKind::edge ? 1 : 2;
}

}  // namespace

bool operator==(const PieceKind& a, const PieceKind& b) {
  return a.kind == b.kind && a.pair_kind == b.pair_kind;
}

bool operator!=(const PieceKind& a, const PieceKind& b) { return !(a == b); }

bool operator<(const PieceKind& a, const PieceKind& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  return pair_rank(a.pair_kind) < pair_rank(b.pair_kind);
}

PieceKind k5_piece() { return PieceKind{PieceKind::k5, std::nullopt}; }
PieceKind k33_piece() { return PieceKind{PieceKind::k33, std::nullopt}; }
PieceKind k33_piece(PairKind pk) { return PieceKind{PieceKind::k33, pk}; }

KuratowskiLayout make_kuratowski_layout(int k, int i,
                                        const std::vector<PieceKind>& pieces) {
  if (k < 1) throw input_error("family needs at least one piece");
  if (i < 0 || i > 3) throw input_error("gluing arity must be between 0 and 3");
  KuratowskiLayout out;
  Graph& g = out.graph;
  if (i == 3) {
    g = complete_bipartite(k, 3);
    out.hubs = {k, k + 1, k + 2};
    for (int j = 0; j < k; ++j)
      out.piece_vertices.push_back({k, k + 1, k + 2, j});
    return out;
  }
  if (static_cast<int>(pieces.size()) != k)
    throw input_error("need exactly one piece kind per piece");
  for (const PieceKind& p : pieces) {
    bool wants_pair = i == 2 && p.kind == PieceKind::k33;
    if (wants_pair && !p.pair_kind)
      throw input_error("a K33 piece glued on two vertices needs a pair flavour");
    if (!wants_pair && p.pair_kind)
      throw input_error("pair flavour given where the gluing leaves no choice");
  }
  for (Vertex h = 0; h < i; ++h) {
    g.add_vertex(h);
    out.hubs.push_back(h);
  }
  Vertex next = i;
  for (const PieceKind& p : pieces) {
    int fresh_count = (p.kind == PieceKind::k5 ? 5 : 6) - i;
    std::vector<Vertex> f;
    for (int t = 0; t < fresh_count; ++t) f.push_back(next++);
    std::vector<Vertex> verts;
    if (p.kind == PieceKind::k5) {
      verts = out.hubs;
      verts.insert(verts.end(), f.begin(), f.end());
      for (std::size_t a = 0; a < verts.size(); ++a)
        for (std::size_t b = a + 1; b < verts.size(); ++b) {
          if (i == 2 && a == 0 && b == 1) continue;  // glued pair stays a nonedge
          g.add_edge(verts[a], verts[b]);
        }
    } else {
      std::vector<Vertex> side_a, side_b;
      if (i == 0) {
        side_a = {f[0], f[1], f[2]};
        side_b = {f[3], f[4], f[5]};
      } else if (i == 1) {
        side_a = {0, f[0], f[1]};
        side_b = {f[2], f[3], f[4]};
      } else if (*p.pair_kind == PairKind::edge) {
        side_a = {0, f[0], f[1]};
        side_b = {1, f[2], f[3]};
      } else {
        side_a = {0, 1, f[0]};
        side_b = {f[1], f[2], f[3]};
      }
      for (Vertex a : side_a)
        for (Vertex b : side_b) {
          if (i == 2 && a == 0 && b == 1) continue;
          g.add_edge(a, b);
        }
      verts = side_a;
      verts.insert(verts.end(), side_b.begin(), side_b.end());
    }
    out.piece_vertices.push_back(verts);
  }
  return out;
}

Graph make_kuratowski(int k, int i, const std::vector<PieceKind>& pieces) {
  return make_kuratowski_layout(k, i, pieces).graph;
}

bool validate_kuratowski_model(const Graph& host, const KuratowskiModel& m) {
  KuratowskiLayout fresh;
  try {
    fresh = make_kuratowski_layout(m.k, m.i, m.pieces);
  } catch (const input_error&) {
    return false;
  }
  if (fresh.graph != m.layout.graph || fresh.hubs != m.layout.hubs ||
      fresh.piece_vertices != m.layout.piece_vertices)
    return false;
  return validate_minor_model(host, m.layout.graph, m.model);
}

namespace {

// Non-decreasing piece sequences over the kinds available for the arity, in
// lexicographic order (multisets, since gluing is symmetric across pieces).
std::vector<std::vector<PieceKind>> piece_mixes(int k, int i) {
  if (i == 3) return {{}};
  std::vector<PieceKind> kinds;
  if (i == 2)
    kinds = {k5_piece(), k33_piece(PairKind::edge), k33_piece(PairKind::nonedge)};
  else
    kinds = {k5_piece(), k33_piece()};
  std::vector<std::vector<PieceKind>> out;
  std::vector<PieceKind> cur;
  std::function<void(int, std::size_t)> rec = [&](int left, std::size_t from) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t idx = from; idx < kinds.size(); ++idx) {
      cur.push_back(kinds[idx]);
      rec(left - 1, idx);
      cur.pop_back();
    }
  };
  rec(k, 0);
  return out;
}

}  // namespace

std::optional<KuratowskiModel> detect_kuratowski_minor(const Graph& g, int k,
                                                       int i) {
  if (k < 1) throw input_error("family needs at least one piece");
  if (i < 0 || i > 3) throw input_error("gluing arity must be between 0 and 3");
  if (g.n() > kKuratowskiDetectCap)
    throw budget_error("family search capped at " +
                       std::to_string(kKuratowskiDetectCap) + " host vertices");
  // Arity 0 and 1 patterns are nonplanar, so a planar host holds none.
  if (i <= 1 && is_planar_quick(g)) return std::nullopt;
  for (const auto& mix : piece_mixes(k, i)) {
    KuratowskiLayout layout = make_kuratowski_layout(k, i, mix);
    if (layout.graph.n() > g.n() || layout.graph.m() > g.m()) continue;
    if (auto model = has_minor(g, layout.graph, kKuratowskiDetectCap))
      return KuratowskiModel{k, i, mix, std::move(layout), std::move(*model)};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Packing numbers.

namespace {

std::vector<std::uint32_t> masks_by_size(int bits) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 1; m < (1u << bits); ++m) out.push_back(m);
  std::sort(out.begin(), out.end(), [](std::uint32_t a, std::uint32_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return out;
}

std::set<Vertex> mask_to_set(std::uint32_t mask,
                             const std::vector<Vertex>& universe) {
  std::set<Vertex> out;
  for (std::size_t b = 0; b < universe.size(); ++b)
    if (mask >> b & 1) out.insert(universe[b]);
  return out;
}

// Subsets of `from` with exactly `size` elements, in lexicographic order.
std::vector<std::vector<Vertex>> subsets_of_size(const std::vector<Vertex>& from,
                                                 int size) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (static_cast<int>(cur.size()) == size) {
      out.push_back(cur);
      return;
    }
    if (idx >= from.size()) return;
    if (from.size() - idx < cur.size() + size - cur.size() - idx + idx) {
    }
    for (std::size_t p = idx; p < from.size(); ++p) {
      cur.push_back(from[p]);
      rec(p + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

// Inclusion-minimal good interiors: every good set contains one of these, so
// packings over them reach the same maximum.
std::vector<std::uint32_t> minimal_good_masks(
    const std::vector<Vertex>& universe,
    const std::function<bool(const std::set<Vertex>&)>& good) {
  std::vector<std::uint32_t> kept;
  for (std::uint32_t mask : masks_by_size(static_cast<int>(universe.size()))) {
    bool dominated = false;
    for (std::uint32_t m : kept)
      if ((mask & m) == m) {
        dominated = true;
        break;
      }
    if (dominated) continue;
    if (good(mask_to_set(mask, universe))) kept.push_back(mask);
  }
  return kept;
}

int max_disjoint_count(const std::vector<std::uint32_t>& sets) {
  int best = 0;
  std::function<void(std::size_t, std::uint32_t, int)> dfs =
      [&](std::size_t pos, std::uint32_t used, int count) {
        best = std::max(best, count);
        for (std::size_t p = pos; p < sets.size(); ++p) {
          if (count + static_cast<int>(sets.size() - p) <= best) return;
          if (!(sets[p] & used)) dfs(p + 1, used | sets[p], count + 1);
        }
      };
  dfs(0, 0, 0);
  return best;
}

// Nonplanarity needs at least five vertices and nine edges.
bool nonplanar_piece(const Graph& piece) {
  return piece.n() >= 5 && piece.m() >= 9 && !is_planar_quick(piece);
}

}  // namespace

int sigma(const std::set<Vertex>& x_set, const Graph& g) {
  std::vector<Vertex> apex, free_v;
  for (Vertex v : g.vertices())
    (x_set.count(v) ? apex : free_v).push_back(v);
  if (static_cast<int>(free_v.size()) > kSigmaFreeCap)
    throw budget_error("packing search capped at " +
                       std::to_string(kSigmaFreeCap) + " non-apex vertices");
  // Extra apex vertices never destroy nonplanarity, so only the largest
  // admissible apex subsets need checking.
  int duo_size = std::min<int>(2, static_cast<int>(apex.size()));
  std::vector<std::vector<Vertex>> duos = subsets_of_size(apex, duo_size);
  std::vector<std::vector<Vertex>> trios;
  if (apex.size() >= 3) trios = subsets_of_size(apex, 3);
  auto good = [&](const std::set<Vertex>& interior) {
    for (const auto& duo : duos) {
      std::set<Vertex> s = interior;
      s.insert(duo.begin(), duo.end());
      if (nonplanar_piece(g.induced(s))) return true;
    }
    if (!trios.empty() && g.induced(interior).connected()) {
      for (const auto& trio : trios) {
        std::set<Vertex> s = interior;
        s.insert(trio.begin(), trio.end());
        if (g.induced(s).connected()) return true;
      }
    }
    return false;
  };
  return max_disjoint_count(minimal_good_masks(free_v, good));
}

int sigma_at(const std::set<Vertex>& x_set, Vertex v, const Graph& g) {
  if (!g.has_vertex(v)) throw input_error("pivot vertex missing from the graph");
  if (x_set.count(v)) throw input_error("pivot vertex may not be an apex");
  std::vector<Vertex> apex, free_v;
  for (Vertex u : g.vertices()) {
    if (u == v) continue;
    (x_set.count(u) ? apex : free_v).push_back(u);
  }
  if (static_cast<int>(free_v.size()) + 1 > kSigmaFreeCap)
    throw budget_error("packing search capped at " +
                       std::to_string(kSigmaFreeCap) + " non-apex vertices");
  int duo_size = std::min<int>(2, static_cast<int>(apex.size()));
  std::vector<std::vector<Vertex>> duos = subsets_of_size(apex, duo_size);
  auto good = [&](const std::set<Vertex>& interior) {
    for (const auto& duo : duos) {
      std::set<Vertex> s = interior;
      s.insert(v);
      s.insert(duo.begin(), duo.end());
      if (nonplanar_piece(g.induced(s))) return true;
    }
    return false;
  };
  return max_disjoint_count(minimal_good_masks(free_v, good));
}

// ---------------------------------------------------------------------------
// Junction detection.

namespace {

bool junction_piece_good(const Graph& g, const std::set<Vertex>& interior,
                         const std::vector<Vertex>& roots, int i) {
  if (i == 3) {
    for (Vertex r : roots) {
      bool touched = false;
      for (Vertex w : g.neighbors(r))
        if (interior.count(w)) {
          touched = true;
          break;
        }
      if (!touched) return false;
    }
    std::set<Vertex> s = interior;
    s.insert(roots.begin(), roots.end());
    return g.induced(s).connected();
  }
  std::set<Vertex> s = interior;
  s.insert(roots.begin(), roots.end());
  Graph piece = g.induced(s);
  if (i <= 1) return nonplanar_piece(piece);
  if (piece.m() + 2 < 9) return false;
  return !is_flat(make_rooted(piece, roots));
}

// First packing of k disjoint minimal good interiors, in enumeration order.
std::optional<std::vector<std::set<Vertex>>> pack_for_roots(
    const Graph& g, const std::vector<Vertex>& roots, int k, int i) {
  std::set<Vertex> rootset(roots.begin(), roots.end());
  std::vector<Vertex> free_v;
  for (Vertex v : g.vertices())
    if (!rootset.count(v)) free_v.push_back(v);
  if (static_cast<int>(free_v.size()) < k) return std::nullopt;
  auto good = [&](const std::set<Vertex>& interior) {
    return junction_piece_good(g, interior, roots, i);
  };
  std::vector<std::uint32_t> kept = minimal_good_masks(free_v, good);
  std::vector<std::uint32_t> pick;
  std::function<bool(std::size_t, std::uint32_t)> rec =
      [&](std::size_t pos, std::uint32_t used) {
        if (static_cast<int>(pick.size()) == k) return true;
        for (std::size_t p = pos; p < kept.size(); ++p) {
          if (static_cast<int>(kept.size() - p) <
              k - static_cast<int>(pick.size()))
            return false;
          if (kept[p] & used) continue;
          pick.push_back(kept[p]);
          if (rec(p + 1, used | kept[p])) return true;
          pick.pop_back();
        }
        return false;
      };
  if (!rec(0, 0)) return std::nullopt;
  std::vector<std::set<Vertex>> out;
  for (std::uint32_t mask : pick) out.push_back(mask_to_set(mask, free_v));
  return out;
}

JunctionWitness build_witness(const Graph& g, const std::vector<Vertex>& roots,
                              const std::vector<std::set<Vertex>>& interiors,
                              int k, int i) {
  JunctionWitness w;
  w.k = k;
  w.i = i;
  w.roots = roots;
  for (const auto& interior : interiors) {
    std::set<Vertex> piece_set = interior;
    piece_set.insert(roots.begin(), roots.end());
    w.pieces.push_back(piece_set);
    Graph piece = g.induced(piece_set);
    PieceEvidence ev;
    if (i <= 1) {
      PlanarityCertificate cert = is_planar(piece);
      if (cert.planar || !cert.witness)
        throw invariant_error("packed piece lost its obstruction");
      ev.nonplanar = *cert.witness;
    } else if (i == 2) {
      Graph apexed = piece;
      Vertex apex = apexed.fresh_id();
      apexed.add_edge(apex, roots[0]);
      apexed.add_edge(apex, roots[1]);
      PlanarityCertificate cert = is_planar(apexed);
      if (cert.planar || !cert.witness)
        throw invariant_error("packed piece lost its boundary obstruction");
      ev.nonflat = *cert.witness;
      ev.apex = apex;
    } else {
      for (Vertex r : roots) {
        Vertex contact = -1;
        for (Vertex u : g.neighbors(r))
          if (interior.count(u)) {
            contact = u;
            break;
          }
        if (contact < 0) throw invariant_error("packed piece lost a root contact");
        ev.contacts.push_back(contact);
      }
    }
    w.evidence.push_back(std::move(ev));
  }
  return w;
}

}  // namespace

std::optional<JunctionWitness> detect_junction(const Graph& g, int k, int i) {
  if (k < 1) throw input_error("junction needs at least one piece");
  if (i < 0 || i > 3) throw input_error("junction arity must be between 0 and 3");
  if (g.n() > kJunctionDetectCap)
    throw budget_error("junction search capped at " +
                       std::to_string(kJunctionDetectCap) + " host vertices");
  std::vector<std::vector<Vertex>> root_choices =
      subsets_of_size(g.vertices(), i);
  std::size_t n = root_choices.size();
  std::vector<std::optional<std::vector<std::set<Vertex>>>> results(n);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> winner{n};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&]() {
    for (;;) {
      std::size_t idx = next.fetch_add(1);
      if (idx >= n) return;
      if (idx > winner.load()) continue;
      try {
        results[idx] = pack_for_roots(g, root_choices[idx], k, i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
      if (results[idx]) {
        std::size_t cur = winner.load();
        while (idx < cur && !winner.compare_exchange_weak(cur, idx)) {
        }
      }
    }
  };
  std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  for (std::size_t idx = 0; idx < n; ++idx)
    if (results[idx]) return build_witness(g, root_choices[idx], *results[idx], k, i);
  return std::nullopt;
}

bool validate_junction(const Graph& g, const JunctionWitness& w) {
  if (w.k < 1 || w.i < 0 || w.i > 3) return false;
  if (static_cast<int>(w.pieces.size()) != w.k) return false;
  if (static_cast<int>(w.evidence.size()) != w.k) return false;
  if (static_cast<int>(w.roots.size()) != w.i) return false;
  if (!std::is_sorted(w.roots.begin(), w.roots.end())) return false;
  std::set<Vertex> rootset(w.roots.begin(), w.roots.end());
  if (static_cast<int>(rootset.size()) != w.i) return false;
  for (Vertex r : w.roots)
    if (!g.has_vertex(r)) return false;
  for (const auto& piece : w.pieces) {
    for (Vertex v : piece)
      if (!g.has_vertex(v)) return false;
    for (Vertex r : w.roots)
      if (!piece.count(r)) return false;
  }
  for (std::size_t a = 0; a < w.pieces.size(); ++a)
    for (std::size_t b = a + 1; b < w.pieces.size(); ++b) {
      std::set<Vertex> common;
      std::set_intersection(w.pieces[a].begin(), w.pieces[a].end(),
                            w.pieces[b].begin(), w.pieces[b].end(),
                            std::inserter(common, common.begin()));
      if (common != rootset) return false;
    }
  for (int j = 0; j < w.k; ++j) {
    const PieceEvidence& ev = w.evidence[j];
    Graph piece = g.induced(w.pieces[j]);
    if (w.i <= 1) {
      if (!ev.nonplanar || ev.nonflat || ev.apex != -1 || !ev.contacts.empty())
        return false;
      PlanarityCertificate cert;
      cert.planar = false;
      cert.witness = ev.nonplanar;
      if (!verify_certificate(piece, cert)) return false;
    } else if (w.i == 2) {
      if (ev.nonplanar || !ev.nonflat || !ev.contacts.empty()) return false;
      Graph apexed = piece;
      Vertex apex = apexed.fresh_id();
      if (ev.apex != apex) return false;
      apexed.add_edge(apex, w.roots[0]);
      apexed.add_edge(apex, w.roots[1]);
      PlanarityCertificate cert;
      cert.planar = false;
      cert.witness = ev.nonflat;
      if (!verify_certificate(apexed, cert)) return false;
    } else {
      if (ev.nonplanar || ev.nonflat || ev.apex != -1) return false;
      if (static_cast<int>(ev.contacts.size()) != 3) return false;
      for (int s = 0; s < 3; ++s) {
        Vertex c = ev.contacts[s];
        if (!w.pieces[j].count(c) || rootset.count(c)) return false;
        if (!g.has_edge(c, w.roots[s])) return false;
      }
      if (!piece.connected()) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Constructive extraction.

namespace {

struct PieceModel {
  PieceKind::Kind kind = PieceKind::k5;
  MinorModel model;
};

// Every nonplanar graph holds a K5 or a K33 minor; K5 is preferred.
PieceModel find_piece_model(const Graph& body) {
  if (auto m = has_minor(body, complete(5), kDefaultMinorCap))
    return {PieceKind::k5, std::move(*m)};
  if (auto m = has_minor(body, complete_bipartite(3, 3), kDefaultMinorCap))
    return {PieceKind::k33, std::move(*m)};
  throw invariant_error("nonplanar piece without a Kuratowski minor");
}

// Pattern vertex whose branch set holds the host vertex, or -1.
Vertex branch_with(const MinorModel& m, Vertex host_v) {
  for (const auto& [pv, set] : m.branch_sets)
    if (set.count(host_v)) return pv;
  return -1;
}

// Orders the K5 / K33 pattern vertices so that position p carries the role
// of layout piece position p: pinned branch vertices lead (their K33 side
// stays grouped), remaining vertices follow in ascending order.
std::vector<Vertex> role_order(PieceKind::Kind kind,
                               const std::vector<Vertex>& pinned) {
  auto rest = [](std::vector<Vertex> all, const std::vector<Vertex>& used) {
    std::vector<Vertex> out;
    for (Vertex v : all)
      if (std::find(used.begin(), used.end(), v) == used.end())
        out.push_back(v);
    return out;
  };
  if (kind == PieceKind::k5) {
    std::vector<Vertex> order = pinned;
    for (Vertex v : rest({0, 1, 2, 3, 4}, pinned)) order.push_back(v);
    return order;
  }
  auto side_of = [](Vertex v) { return v < 3 ? 0 : 1; };
  auto side_list = [](int s) {
    return s == 0 ? std::vector<Vertex>{0, 1, 2} : std::vector<Vertex>{3, 4, 5};
  };
  if (pinned.empty()) return {0, 1, 2, 3, 4, 5};
  if (pinned.size() == 1) {
    Vertex rb = pinned[0];
    std::vector<Vertex> order = {rb};
    for (Vertex v : rest(side_list(side_of(rb)), pinned)) order.push_back(v);
    for (Vertex v : side_list(1 - side_of(rb))) order.push_back(v);
    return order;
  }
  Vertex rb1 = pinned[0], rb2 = pinned[1];
  std::vector<Vertex> order;
  if (side_of(rb1) != side_of(rb2)) {
    order = {rb1};
    for (Vertex v : rest(side_list(side_of(rb1)), pinned)) order.push_back(v);
    order.push_back(rb2);
    for (Vertex v : rest(side_list(side_of(rb2)), pinned)) order.push_back(v);
  } else {
    order = {rb1, rb2};
    for (Vertex v : rest(side_list(side_of(rb1)), pinned)) order.push_back(v);
    for (Vertex v : side_list(1 - side_of(rb1))) order.push_back(v);
  }
  return order;
}

// Glues per-piece K5 / K33 models into one family model.  pins[j] lists the
// branch vertices of model j that land on the hubs, first root first; hub
// branch sets take the union over pieces, which stays connected because
// every contribution contains the shared root.
KuratowskiModel assemble(const Graph& host, int k, int arity,
                         const std::vector<PieceModel>& models,
                         const std::vector<std::vector<Vertex>>& pins) {
  std::vector<PieceKind> kinds;
  for (int j = 0; j < k; ++j) {
    PieceKind pk;
    pk.kind = models[j].kind;
    if (arity == 2 && pk.kind == PieceKind::k33) {
      bool opposite = (pins[j][0] < 3) != (pins[j][1] < 3);
      pk.pair_kind = opposite ? PairKind::edge : PairKind::nonedge;
    }
    kinds.push_back(pk);
  }
  KuratowskiLayout layout = make_kuratowski_layout(k, arity, kinds);
  std::set<Vertex> hubset(layout.hubs.begin(), layout.hubs.end());
  MinorModel glued;
  for (Vertex h : layout.hubs) glued.branch_sets[h] = {};
  for (int j = 0; j < k; ++j) {
    std::vector<Vertex> order = role_order(models[j].kind, pins[j]);
    const std::vector<Vertex>& slots = layout.piece_vertices[j];
    if (order.size() != slots.size())
      throw invariant_error("piece shape does not fit its layout slot");
    std::map<Vertex, Vertex> to_slot;
    for (std::size_t p = 0; p < order.size(); ++p) to_slot[order[p]] = slots[p];
    for (std::size_t p = 0; p < order.size(); ++p) {
      const std::set<Vertex>& bs = models[j].model.branch_sets.at(order[p]);
      if (hubset.count(slots[p]))
        glued.branch_sets[slots[p]].insert(bs.begin(), bs.end());
      else
        glued.branch_sets[slots[p]] = bs;
    }
    for (const auto& [pattern_edge, host_edge] : models[j].model.edge_witnesses) {
      Vertex a = to_slot.at(pattern_edge.first);
      Vertex b = to_slot.at(pattern_edge.second);
      if (layout.graph.has_edge(a, b))
        glued.edge_witnesses[make_edge(a, b)] = host_edge;
    }
  }
  KuratowskiModel out{k, arity, std::move(kinds), std::move(layout),
                      std::move(glued)};
  if (!validate_kuratowski_model(host, out))
    throw invariant_error("extracted family model failed validation");
  return out;
}

// Contracts k connected piece interiors onto the k-side of a complete
// bipartite pattern; the roots become the 3-side.
KuratowskiModel extract_bipartite(const Graph& g, const JunctionWitness& w,
                                  int k) {
  std::set<Vertex> rootset(w.roots.begin(), w.roots.end());
  std::vector<std::set<Vertex>> interiors;
  for (const auto& piece : w.pieces) {
    if (static_cast<int>(interiors.size()) == k) break;
    std::set<Vertex> interior;
    for (Vertex v : piece)
      if (!rootset.count(v)) interior.insert(v);
    if (interior.empty() || !g.induced(interior).connected()) continue;
    interiors.push_back(std::move(interior));
  }
  if (static_cast<int>(interiors.size()) < k)
    throw input_error(
        "extraction over three roots needs enough pieces whose interiors "
        "stay connected without the roots");
  KuratowskiLayout layout = make_kuratowski_layout(k, 3, {});
  MinorModel glued;
  for (int s = 0; s < 3; ++s) glued.branch_sets[layout.hubs[s]] = {w.roots[s]};
  for (int j = 0; j < k; ++j) {
    glued.branch_sets[j] = interiors[j];
    for (int s = 0; s < 3; ++s) {
      Vertex contact = -1;
      for (Vertex u : g.neighbors(w.roots[s]))
        if (interiors[j].count(u)) {
          contact = u;
          break;
        }
      if (contact < 0)
        throw invariant_error("chosen piece lost a root contact");
      glued.edge_witnesses[make_edge(j, layout.hubs[s])] =
          make_edge(contact, w.roots[s]);
    }
  }
  KuratowskiModel out{k, 3, {}, std::move(layout), std::move(glued)};
  if (!validate_kuratowski_model(g, out))
    throw invariant_error("extracted family model failed validation");
  return out;
}

}  // namespace

KuratowskiModel junction_to_kuratowski(const Graph& g,
                                       const JunctionWitness& w) {
  if (!validate_junction(g, w))
    throw input_error("junction witness does not validate");
  if (w.k < 8 || w.k % 8 != 0)
    throw input_error("piece count must be a positive multiple of eight");
  int k = w.k / 8;
  if (w.i == 0) {
    std::vector<PieceModel> models;
    for (int j = 0; j < k; ++j)
      models.push_back(find_piece_model(g.induced(w.pieces[j])));
    return assemble(g, k, 0, models, std::vector<std::vector<Vertex>>(k));
  }
  if (w.i == 1) {
    // Pieces whose body stays nonplanar without the root give a detached
    // family; otherwise every obstruction passes through the root, which
    // becomes the shared hub.
    Vertex r = w.roots[0];
    std::vector<PieceModel> off, on;
    std::vector<std::vector<Vertex>> on_pins;
    for (const auto& piece : w.pieces) {
      std::set<Vertex> trimmed_set = piece;
      trimmed_set.erase(r);
      Graph trimmed = g.induced(trimmed_set);
      if (!is_planar_quick(trimmed)) {
        if (static_cast<int>(off.size()) < k)
          off.push_back(find_piece_model(trimmed));
      } else if (static_cast<int>(on.size()) < k) {
        PieceModel pm = find_piece_model(g.induced(piece));
        Vertex rb = branch_with(pm.model, r);
        if (rb < 0)
          throw invariant_error("piece minor search missed the shared vertex");
        on.push_back(std::move(pm));
        on_pins.push_back({rb});
      }
      if (static_cast<int>(off.size()) == k)
        return assemble(g, k, 0, off, std::vector<std::vector<Vertex>>(k));
      if (static_cast<int>(on.size()) == k) return assemble(g, k, 1, on, on_pins);
    }
    throw invariant_error("piece classification filled neither family");
  }
  if (w.i == 2) {
    // Each pair of pieces is glued on both roots and neither half is flat,
    // so the pair union is nonplanar; classify each union by which roots
    // its obstruction needs, and one of the four classes reaches k.
    Vertex r1 = w.roots[0], r2 = w.roots[1];
    std::vector<PieceModel> buckets[4];
    std::vector<std::vector<Vertex>> pins[4];
    int pairs = w.k / 2;
    for (int j = 0; j < pairs; ++j) {
      std::set<Vertex> u = w.pieces[2 * j];
      u.insert(w.pieces[2 * j + 1].begin(), w.pieces[2 * j + 1].end());
      std::set<Vertex> u_no_both = u, u_no_r2 = u, u_no_r1 = u;
      u_no_both.erase(r1);
      u_no_both.erase(r2);
      u_no_r2.erase(r2);
      u_no_r1.erase(r1);
      int cls;
      Graph body;
      if (!is_planar_quick(g.induced(u_no_both))) {
        cls = 0;
        body = g.induced(u_no_both);
      } else if (!is_planar_quick(g.induced(u_no_r2))) {
        cls = 1;
        body = g.induced(u_no_r2);
      } else if (!is_planar_quick(g.induced(u_no_r1))) {
        cls = 2;
        body = g.induced(u_no_r1);
      } else {
        cls = 3;
        body = g.induced(u);
        if (is_planar_quick(body))
          throw invariant_error(
              "two disc obstructions on a shared boundary pair formed a "
              "planar union");
      }
      if (static_cast<int>(buckets[cls].size()) < k) {
        PieceModel pm = find_piece_model(body);
        std::vector<Vertex> pin;
        if (cls == 1 || cls == 3) {
          Vertex rb = branch_with(pm.model, r1);
          if (rb < 0)
            throw invariant_error("pair minor search missed a shared vertex");
          pin.push_back(rb);
        }
        if (cls == 2 || cls == 3) {
          Vertex rb = branch_with(pm.model, r2);
          if (rb < 0)
            throw invariant_error("pair minor search missed a shared vertex");
          pin.push_back(rb);
        }
        buckets[cls].push_back(std::move(pm));
        pins[cls].push_back(std::move(pin));
        if (static_cast<int>(buckets[cls].size()) == k) {
          int arity = cls == 0 ? 0 : cls == 3 ? 2 : 1;
          return assemble(g, k, arity, buckets[cls], pins[cls]);
        }
      }
    }
    throw invariant_error("pair classification filled no family");
  }
  return extract_bipartite(g, w, k);
}

KuratowskiModel purify(const KuratowskiModel& m, int k) {
  if (k < 1) throw input_error("target piece count must be at least 1");
  if (m.i < 0 || m.i > 3) throw input_error("gluing arity must be between 0 and 3");
  int total = m.i == 3 ? static_cast<int>(m.layout.piece_vertices.size())
                       : static_cast<int>(m.pieces.size());
  if (total < 3 * k)
    throw input_error("purification needs at least three source pieces per "
                      "target piece");
  std::vector<int> chosen;
  std::vector<PieceKind> kinds;
  if (m.i == 3) {
    for (int j = 0; j < k; ++j) chosen.push_back(j);
  } else {
    std::map<PieceKind, std::vector<int>> groups;
    for (int idx = 0; idx < total; ++idx) groups[m.pieces[idx]].push_back(idx);
    const std::vector<int>* best = nullptr;
    for (const auto& [kind, members] : groups)
      if (!best || members.size() > best->size()) best = &members;
    if (static_cast<int>(best->size()) < k)
      throw input_error("piece labels are inconsistent with the arity");
    chosen.assign(best->begin(), best->begin() + k);
    kinds.assign(k, m.pieces[chosen[0]]);
  }
  KuratowskiLayout layout = make_kuratowski_layout(k, m.i, kinds);
  std::map<Vertex, Vertex> to_old;
  for (std::size_t h = 0; h < layout.hubs.size(); ++h)
    to_old[layout.hubs[h]] = m.layout.hubs[h];
  for (int j = 0; j < k; ++j) {
    const std::vector<Vertex>& fresh = layout.piece_vertices[j];
    const std::vector<Vertex>& old = m.layout.piece_vertices[chosen[j]];
    if (fresh.size() != old.size())
      throw input_error("source model shape does not match its piece labels");
    for (std::size_t p = 0; p < fresh.size(); ++p) to_old[fresh[p]] = old[p];
  }
  MinorModel reduced;
  for (const auto& [fresh, old] : to_old) {
    auto it = m.model.branch_sets.find(old);
    if (it == m.model.branch_sets.end())
      throw input_error("source model lacks a branch set for a retained piece");
    reduced.branch_sets[fresh] = it->second;
  }
  for (const Edge& e : layout.graph.edges()) {
    Edge old_edge = make_edge(to_old.at(e.first), to_old.at(e.second));
    auto it = m.model.edge_witnesses.find(old_edge);
    if (it == m.model.edge_witnesses.end())
      throw input_error("source model lacks a witness for a retained edge");
    reduced.edge_witnesses[e] = it->second;
  }
  return KuratowskiModel{k, m.i, std::move(kinds), std::move(layout),
                         std::move(reduced)};
}

}  // namespace gk
