#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypercover/hypergraph.hpp"

namespace hypercover {

/**
 * Reduction of an arbitrary instance to a d-regular r-uniform one. The
 * source embeds into the target (embedded[v] is the target vertex carrying
 * source vertex v), edge_map sends each source edge instance to a target
 * instance with f(e) meeting the embedded vertices only inside e, and every
 * target edge that meets an embedded vertex is such an image. Under those
 * conditions any valid k-cover of the target pulls back to one of the source.
 */
struct LevellingMap {
  MultiHypergraph source;
  MultiHypergraph target;
  std::vector<EdgeInstance> edge_map;  // indexed by source linear instance
  std::vector<Vertex> embedded;        // source vertex -> target vertex
};

struct TrimResult {
  // One multiplicity-1 edge per source instance, in instance order. Edges
  // may have shrunk, collided, or become empty.
  MultiHypergraph trimmed;
  std::vector<EdgeInstance> provenance;  // trimmed edge index -> source instance
};

// Removes vertices from edge instances until every degree is exactly d.
// Deterministic rule: vertices in increasing index order; a vertex of degree
// d+x leaves its x incident instances with the largest (edge, copy) index.
// Removing v from an instance changes no other vertex's degree, so one pass
// suffices.
inline TrimResult trim_to_degree(const MultiHypergraph& h, std::size_t d) {
  if (d == 0) throw InputError("trim_to_degree: d must be positive");
  if (h.min_degree() < d)
    throw InfeasibleError("trim_to_degree: minimum degree " + std::to_string(h.min_degree()) +
                          " below target " + std::to_string(d));

  const std::size_t m = h.instance_count();
  std::vector<std::vector<Vertex>> sets;
  std::vector<EdgeInstance> prov;
  sets.reserve(m);
  prov.reserve(m);
  for (std::size_t e = 0; e < h.edge_count(); ++e)
    for (std::size_t c = 0; c < h.edge(e).multiplicity; ++c) {
      sets.push_back(h.edge(e).verts);
      prov.push_back(EdgeInstance{e, c});
    }

  std::vector<std::vector<std::size_t>> incident(h.vertex_count());
  for (std::size_t i = 0; i < m; ++i)
    for (Vertex v : sets[i]) incident[v].push_back(i);  // ascending instance ids

  for (Vertex v = 0; v < h.vertex_count(); ++v) {
    std::size_t deg = incident[v].size();
    for (std::size_t k = deg; k > d; --k) {
      std::size_t inst = incident[v][k - 1];
      auto& verts = sets[inst];
      verts.erase(std::lower_bound(verts.begin(), verts.end(), v));
    }
  }

  std::vector<Edge> edges;
  edges.reserve(m);
  for (auto& s : sets) edges.push_back(Edge{std::move(s), 1});
  return TrimResult{MultiHypergraph(h.vertex_count(), std::move(edges)), std::move(prov)};
}

// Builds a d-regular r-uniform target for h (min degree >= d, edge sizes
// <= r): trim to degree d, pad each trimmed edge with r-|e| fresh vertices,
// and lay down d vertex-disjoint copies; the padding vertices are shared
// across the copies of their edge, which is what raises them to degree d.
// A hypergraph that is already simple, d-regular and r-uniform maps to
// itself by the identity.
inline LevellingMap level(const MultiHypergraph& h, std::size_t r, std::size_t d) {
  if (r == 0) throw InputError("level: r must be positive");
  if (d == 0) throw InputError("level: d must be positive");
  if (h.max_edge_size() > r)
    throw InfeasibleError("level: edge size " + std::to_string(h.max_edge_size()) +
                          " exceeds r=" + std::to_string(r));
  if (h.min_degree() < d)
    throw InfeasibleError("level: minimum degree " + std::to_string(h.min_degree()) +
                          " below d=" + std::to_string(d));

  LevellingMap out;
  out.source = h;

  if (h.is_simple() && h.regular_degree() == d && h.uniform_size() == r) {
    out.target = h;
    out.edge_map.reserve(h.instance_count());
    for (std::size_t e = 0; e < h.edge_count(); ++e) out.edge_map.push_back(EdgeInstance{e, 0});
    out.embedded.resize(h.vertex_count());
    std::iota(out.embedded.begin(), out.embedded.end(), Vertex{0});
    return out;
  }

  TrimResult tr = trim_to_degree(h, d);
  const std::size_t n = h.vertex_count();
  const std::size_t m = tr.trimmed.edge_count();

  // Fresh padding indices come after all d copies of the original range,
  // grouped per trimmed edge.
  std::vector<std::size_t> pad_start(m + 1, 0);
  for (std::size_t j = 0; j < m; ++j)
    pad_start[j + 1] = pad_start[j] + (r - tr.trimmed.edge(j).verts.size());
  const std::size_t pad_base = n * d;

  std::vector<Edge> target_edges;
  target_edges.reserve(d * m);
  for (std::size_t t = 0; t < d; ++t)
    for (std::size_t j = 0; j < m; ++j) {
      Edge e;
      e.verts.reserve(r);
      for (Vertex v : tr.trimmed.edge(j).verts) e.verts.push_back(t * n + v);
      for (std::size_t p = pad_start[j]; p < pad_start[j + 1]; ++p)
        e.verts.push_back(pad_base + p);
      target_edges.push_back(std::move(e));
    }
  out.target = MultiHypergraph(pad_base + pad_start[m], std::move(target_edges));

  // Copy 0 carries the embedding; trimming preserved instance order, so
  // source instance j maps to copy-0 target edge j.
  out.edge_map.reserve(m);
  for (std::size_t j = 0; j < m; ++j) out.edge_map.push_back(EdgeInstance{j, 0});
  out.embedded.resize(n);
  std::iota(out.embedded.begin(), out.embedded.end(), Vertex{0});
  return out;
}

// Exhaustively checks the levelling conditions for the claimed (r, d).
inline bool is_levelling(const LevellingMap& l, std::size_t r, std::size_t d) {
  const MultiHypergraph& s = l.source;
  const MultiHypergraph& t = l.target;

  // Embedding is an injection into the target vertex range.
  if (l.embedded.size() != s.vertex_count()) return false;
  std::vector<std::size_t> embed_inv(t.vertex_count(), static_cast<std::size_t>(-1));
  for (Vertex v = 0; v < l.embedded.size(); ++v) {
    Vertex tv = l.embedded[v];
    if (tv >= t.vertex_count() || embed_inv[tv] != static_cast<std::size_t>(-1)) return false;
    embed_inv[tv] = v;
  }

  // edge_map is an injection on instances.
  if (l.edge_map.size() != s.instance_count()) return false;
  std::vector<char> image(t.instance_count(), 0);
  for (std::size_t i = 0; i < l.edge_map.size(); ++i) {
    const EdgeInstance& ti = l.edge_map[i];
    if (ti.edge >= t.edge_count() || ti.copy >= t.edge(ti.edge).multiplicity) return false;
    std::size_t linear = t.instance_index(ti);
    if (image[linear]) return false;
    image[linear] = 1;

    // f(e) meets the embedded copy of V only inside e itself.
    EdgeInstance si = s.instance_at(i);
    const auto& src_verts = s.edge(si.edge).verts;
    for (Vertex tv : t.edge(ti.edge).verts) {
      std::size_t pre = embed_inv[tv];
      if (pre == static_cast<std::size_t>(-1)) continue;
      if (!std::binary_search(src_verts.begin(), src_verts.end(), pre)) return false;
    }
  }

  // Every target edge instance meeting an embedded vertex is an image.
  for (std::size_t e = 0; e < t.edge_count(); ++e) {
    bool meets = false;
    for (Vertex tv : t.edge(e).verts)
      if (embed_inv[tv] != static_cast<std::size_t>(-1)) { meets = true; break; }
    if (!meets) continue;
    for (std::size_t c = 0; c < t.edge(e).multiplicity; ++c)
      if (!image[t.instance_index(EdgeInstance{e, c})]) return false;
  }

  // Target is d-regular and r-uniform.
  for (std::size_t deg : t.degree_sequence())
    if (deg != d) return false;
  for (const Edge& e : t.edges())
    if (e.verts.size() != r) return false;
  return true;
}

// Pulls a valid cover of the target back along the levelling: each source
// instance inherits the class of its image. Every class still covers every
// source vertex because the target edges covering an embedded vertex are
// exactly images of source edges through it.
inline CoverPartition pull_back(const LevellingMap& l, const CoverPartition& target_partition) {
  CoverCheck check = verify_cover_partition(l.target, target_partition);
  if (!check.valid)
    throw InputError("pull_back: partition is not a valid cover of the levelling target");

  CoverPartition out = make_partition_shell(l.source, target_partition.k);
  for (std::size_t i = 0; i < l.edge_map.size(); ++i) {
    EdgeInstance si = l.source.instance_at(i);
    const EdgeInstance& ti = l.edge_map[i];
    out.assign[si.edge][si.copy] = target_partition.assign[ti.edge][ti.copy];
  }
  return out;
}

inline nlohmann::ordered_json levelling_sidecar_json(const LevellingMap& l,
                                                     const std::string& source_file,
                                                     const std::string& target_file) {
  nlohmann::ordered_json j;
  j["source_file"] = source_file;
  j["target_file"] = target_file;
  auto em = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < l.edge_map.size(); ++i)
    em.push_back({i, l.target.instance_index(l.edge_map[i])});
  j["edge_map"] = std::move(em);
  j["embedded"] = l.embedded;
  return j;
}

}  // namespace hypercover
