#include "genuskit/minor.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <vector>

namespace gk {

bool validate_minor_model(const Graph& host, const Graph& pattern,
                          const MinorModel& model) {
  std::vector<Vertex> pverts = pattern.vertices();
  if (model.branch_sets.size() != pverts.size()) return false;
  std::set<Vertex> all;
  for (Vertex p : pverts) {
    auto it = model.branch_sets.find(p);
    if (it == model.branch_sets.end() || it->second.empty()) return false;
    for (Vertex v : it->second) {
      if (!host.has_vertex(v)) return false;
      if (!all.insert(v).second) return false;
    }
    if (!host.induced(it->second).connected()) return false;
  }
  std::vector<Edge> pedges = pattern.edges();
  if (model.edge_witnesses.size() != pedges.size()) return false;
  for (const Edge& pe : pedges) {
    auto it = model.edge_witnesses.find(pe);
    if (it == model.edge_witnesses.end()) return false;
    const Edge& he = it->second;
    if (!host.has_edge(he.first, he.second)) return false;
    const std::set<Vertex>& a = model.branch_sets.at(pe.first);
    const std::set<Vertex>& b = model.branch_sets.at(pe.second);
    bool straight = a.count(he.first) && b.count(he.second);
    bool flipped = a.count(he.second) && b.count(he.first);
    if (!straight && !flipped) return false;
  }
  return true;
}

std::optional<MinorModel> has_minor(const Graph& host, const Graph& pattern,
                                    int size_cap) {
  if (host.n() > size_cap || host.n() > 22)
    throw budget_error("has_minor: host too large for exhaustive search");
  if (pattern.n() == 0) return MinorModel{};
  if (pattern.n() > host.n() || pattern.m() > host.m()) return std::nullopt;

  DenseGraph d = densify(host);
  std::vector<std::uint64_t> masks;
  for (std::uint64_t m = 1; m <= d.full_mask(); ++m)
    if (mask_connected(d, m)) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });

  // Place the most constrained pattern vertices first: maximum links into
  // the already placed ones, then degree, then id.
  std::vector<Vertex> all = pattern.vertices();
  std::vector<Vertex> pverts;
  std::set<Vertex> placed;
  while (pverts.size() < all.size()) {
    Vertex pick = -1;
    int pick_links = -1;
    for (Vertex v : all) {
      if (placed.count(v)) continue;
      int links = 0;
      for (Vertex w : pattern.neighbors(v))
        if (placed.count(w)) ++links;
      if (pick < 0) {
        pick = v;
        pick_links = links;
        continue;
      }
      bool better;
      if (links != pick_links) {
        better = links > pick_links;
      } else if (pattern.degree(v) != pattern.degree(pick)) {
        better = pattern.degree(v) > pattern.degree(pick);
      } else {
        better = v < pick;
      }
      if (better) {
        pick = v;
        pick_links = links;
      }
    }
    pverts.push_back(pick);
    placed.insert(pick);
  }

  int pn = static_cast<int>(pverts.size());
  std::vector<std::vector<int>> earlier(pn);
  for (int i = 0; i < pn; ++i)
    for (int j = 0; j < i; ++j)
      if (pattern.has_edge(pverts[i], pverts[j])) earlier[i].push_back(j);

  std::vector<std::uint64_t> chosen(pn, 0);
  std::uint64_t used = 0;
  std::function<bool(int)> descend = [&](int i) -> bool {
    if (i == pn) return true;
    for (std::uint64_t m : masks) {
      if (m & used) continue;
      if (host.n() - std::popcount(used | m) < pn - i - 1) continue;
      std::uint64_t reach = mask_neighbors(d, m);
      bool ok = true;
      for (int j : earlier[i]) {
        if (!(reach & chosen[j])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen[i] = m;
      used |= m;
      if (descend(i + 1)) return true;
      used &= ~m;
      chosen[i] = 0;
    }
    return false;
  };
  if (!descend(0)) return std::nullopt;

  MinorModel model;
  for (int i = 0; i < pn; ++i) {
    std::set<Vertex> bs;
    for (std::uint64_t m = chosen[i]; m != 0; m &= m - 1)
      bs.insert(d.label[std::countr_zero(m)]);
    model.branch_sets[pverts[i]] = bs;
  }
  for (const Edge& pe : pattern.edges()) {
    const std::set<Vertex>& a = model.branch_sets.at(pe.first);
    const std::set<Vertex>& b = model.branch_sets.at(pe.second);
    bool found = false;
    for (const Edge& he : host.edges()) {
      if ((a.count(he.first) && b.count(he.second)) ||
          (a.count(he.second) && b.count(he.first))) {
        model.edge_witnesses[pe] = he;
        found = true;
        break;
      }
    }
    if (!found)
      throw invariant_error("has_minor: placed sets lost their adjacency");
  }
  return model;
}

}  // namespace gk
