#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypercover/errors.hpp"

namespace hypercover {

using Vertex = std::size_t;

// One stored edge: a strictly increasing vertex list plus a positive
// multiplicity. An empty vertex list is a legal (empty) edge.
struct Edge {
  std::vector<Vertex> verts;
  std::size_t multiplicity = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Addresses one copy of a (possibly repeated) edge.
struct EdgeInstance {
  std::size_t edge = 0;
  std::size_t copy = 0;

  friend auto operator<=>(const EdgeInstance&, const EdgeInstance&) = default;
};

/**
 * A finite multihypergraph: a dense 0-based vertex range plus an ordered list
 * of edges with multiplicities. Immutable after construction, so instances
 * can be shared freely. "Simple" means all multiplicities are 1 and vertex
 * sets are pairwise distinct.
 */
class MultiHypergraph {
 public:
  MultiHypergraph() { build_offsets(); }

  MultiHypergraph(std::size_t n_vertices, std::vector<Edge> edges,
                  std::optional<std::size_t> r_cap = std::nullopt)
      : n_(n_vertices), edges_(std::move(edges)), r_cap_(r_cap) {
    validate();
    build_offsets();
  }

  std::size_t vertex_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }
  std::size_t edge_count() const { return edges_.size(); }
  std::optional<std::size_t> r_cap() const { return r_cap_; }

  // Total number of edge instances, multiplicities counted.
  std::size_t instance_count() const { return offsets_.back(); }

  std::size_t instance_index(EdgeInstance inst) const {
    return offsets_[inst.edge] + inst.copy;
  }

  EdgeInstance instance_at(std::size_t linear) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), linear);
    std::size_t e = static_cast<std::size_t>(it - offsets_.begin()) - 1;
    return EdgeInstance{e, linear - offsets_[e]};
  }

  bool edge_contains(std::size_t e, Vertex v) const {
    const auto& verts = edges_[e].verts;
    return std::binary_search(verts.begin(), verts.end(), v);
  }

  std::size_t degree(Vertex v) const {
    if (v >= n_) throw InputError("degree: vertex " + std::to_string(v) + " out of range");
    std::size_t d = 0;
    for (const Edge& e : edges_)
      if (std::binary_search(e.verts.begin(), e.verts.end(), v)) d += e.multiplicity;
    return d;
  }

  std::vector<std::size_t> degree_sequence() const {
    std::vector<std::size_t> deg(n_, 0);
    for (const Edge& e : edges_)
      for (Vertex v : e.verts) deg[v] += e.multiplicity;
    return deg;
  }

  // Edge ids (not instances) incident to each vertex, ascending.
  std::vector<std::vector<std::size_t>> incidence_lists() const {
    std::vector<std::vector<std::size_t>> inc(n_);
    for (std::size_t i = 0; i < edges_.size(); ++i)
      for (Vertex v : edges_[i].verts) inc[v].push_back(i);
    return inc;
  }

  std::size_t min_degree() const {
    if (n_ == 0) return 0;
    auto deg = degree_sequence();
    return *std::min_element(deg.begin(), deg.end());
  }

  std::size_t max_degree() const {
    if (n_ == 0) return 0;
    auto deg = degree_sequence();
    return *std::max_element(deg.begin(), deg.end());
  }

  std::size_t max_edge_size() const {
    std::size_t r = 0;
    for (const Edge& e : edges_) r = std::max(r, e.verts.size());
    return r;
  }

  // Common edge size if every edge has the same one; nullopt otherwise or
  // when there are no edges.
  std::optional<std::size_t> uniform_size() const {
    if (edges_.empty()) return std::nullopt;
    std::size_t r = edges_.front().verts.size();
    for (const Edge& e : edges_)
      if (e.verts.size() != r) return std::nullopt;
    return r;
  }

  // Common degree if the degree sequence is constant; nullopt otherwise or
  // when there are no vertices.
  std::optional<std::size_t> regular_degree() const {
    if (n_ == 0) return std::nullopt;
    auto deg = degree_sequence();
    for (std::size_t d : deg)
      if (d != deg.front()) return std::nullopt;
    return deg.front();
  }

  std::optional<Vertex> first_isolated_vertex() const {
    std::vector<char> seen(n_, 0);
    for (const Edge& e : edges_)
      for (Vertex v : e.verts) seen[v] = 1;
    for (Vertex v = 0; v < n_; ++v)
      if (!seen[v]) return v;
    return std::nullopt;
  }

  bool has_empty_edge() const {
    for (const Edge& e : edges_)
      if (e.verts.empty()) return true;
    return false;
  }

  bool is_simple() const {
    std::vector<const std::vector<Vertex>*> sets;
    sets.reserve(edges_.size());
    for (const Edge& e : edges_) {
      if (e.multiplicity != 1) return false;
      sets.push_back(&e.verts);
    }
    std::sort(sets.begin(), sets.end(),
              [](const auto* a, const auto* b) { return *a < *b; });
    for (std::size_t i = 1; i < sets.size(); ++i)
      if (*sets[i - 1] == *sets[i]) return false;
    return true;
  }

  // Canonical form: identical vertex sets merged into one edge (summing
  // multiplicities), edges sorted lexicographically by vertex list. The
  // serialized bytes of a canonical hypergraph are stable, which is what the
  // golden-file tests and generators rely on.
  MultiHypergraph canonicalized() const {
    std::map<std::vector<Vertex>, std::size_t> merged;
    for (const Edge& e : edges_) merged[e.verts] += e.multiplicity;
    std::vector<Edge> out;
    out.reserve(merged.size());
    for (auto& [verts, mult] : merged) out.push_back(Edge{verts, mult});
    return MultiHypergraph(n_, std::move(out), r_cap_);
  }

  friend bool operator==(const MultiHypergraph& a, const MultiHypergraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void validate() const {
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      if (e.multiplicity == 0)
        throw InputError("edge " + std::to_string(i) + ": multiplicity must be positive");
      for (std::size_t j = 0; j < e.verts.size(); ++j) {
        if (e.verts[j] >= n_)
          throw InputError("edge " + std::to_string(i) + ": vertex " +
                           std::to_string(e.verts[j]) + " out of range (n=" +
                           std::to_string(n_) + ")");
        if (j > 0 && e.verts[j - 1] >= e.verts[j])
          throw InputError("edge " + std::to_string(i) +
                           ": vertex list must be strictly increasing");
      }
      if (r_cap_ && e.verts.size() > *r_cap_)
        throw InputError("edge " + std::to_string(i) + ": size exceeds r_cap");
    }
  }

  void build_offsets() {
    offsets_.assign(1, 0);
    offsets_.reserve(edges_.size() + 1);
    for (const Edge& e : edges_) offsets_.push_back(offsets_.back() + e.multiplicity);
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::optional<std::size_t> r_cap_;
  std::vector<std::size_t> offsets_;  // prefix sums of multiplicities
};

/**
 * Assignment of every edge instance to one of k classes; assign[e][c] is the
 * class of copy c of edge e. A partition is a valid k-cover when each class,
 * viewed as a sub-hypergraph, leaves no vertex uncovered.
 */
struct CoverPartition {
  std::size_t k = 1;
  std::vector<std::vector<std::size_t>> assign;

  friend bool operator==(const CoverPartition&, const CoverPartition&) = default;
};

// All-zero assignment shell matching h's edge multiset.
inline CoverPartition make_partition_shell(const MultiHypergraph& h, std::size_t k) {
  CoverPartition p;
  p.k = k;
  p.assign.reserve(h.edge_count());
  for (const Edge& e : h.edges()) p.assign.emplace_back(e.multiplicity, 0);
  return p;
}

inline bool partition_is_total(const MultiHypergraph& h, const CoverPartition& p) {
  if (p.k == 0 || p.assign.size() != h.edge_count()) return false;
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    if (p.assign[e].size() != h.edge(e).multiplicity) return false;
    for (std::size_t cls : p.assign[e])
      if (cls >= p.k) return false;
  }
  return true;
}

struct CoverWitness {
  std::size_t failing_class = 0;
  Vertex uncovered_vertex = 0;
};

struct CoverCheck {
  bool valid = false;
  std::optional<CoverWitness> witness;

  explicit operator bool() const { return valid; }
};

// Checks that every class covers every vertex. Classes are scanned in
// ascending order and vertices in ascending order inside each class, so the
// reported witness is the first failure in that order. A class whose edges
// are all empty covers nothing, which fails automatically once n >= 1.
inline CoverCheck verify_cover_partition(const MultiHypergraph& h, const CoverPartition& p) {
  if (!partition_is_total(h, p))
    throw InputError("verify_cover_partition: partition is not a total assignment for this hypergraph");
  const std::size_t n = h.vertex_count();
  std::vector<char> covered(n);
  for (std::size_t cls = 0; cls < p.k; ++cls) {
    std::fill(covered.begin(), covered.end(), 0);
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
      bool used = false;
      for (std::size_t c : p.assign[e])
        if (c == cls) { used = true; break; }
      if (!used) continue;
      for (Vertex v : h.edge(e).verts) covered[v] = 1;
    }
    for (Vertex v = 0; v < n; ++v)
      if (!covered[v]) return CoverCheck{false, CoverWitness{cls, v}};
  }
  return CoverCheck{true, std::nullopt};
}

// Dual hypergraph: one dual vertex per edge of h, one dual edge per vertex of
// h listing the edges through it. A k-cover of h is exactly a colouring of
// the dual's vertices in which every dual edge sees all k colours.
inline MultiHypergraph dualize(const MultiHypergraph& h) {
  for (const Edge& e : h.edges())
    if (e.multiplicity != 1)
      throw InputError("dualize: requires all multiplicities 1 (split copies first)");
  if (h.has_empty_edge()) throw InputError("dualize: empty edge has no dual vertex role");
  if (auto v = h.first_isolated_vertex())
    throw InputError("dualize: isolated vertex " + std::to_string(*v) +
                     " would produce an empty dual edge");
  std::vector<Edge> dual_edges(h.vertex_count());
  for (std::size_t i = 0; i < h.edge_count(); ++i)
    for (Vertex v : h.edge(i).verts) dual_edges[v].verts.push_back(i);
  return MultiHypergraph(h.edge_count(), std::move(dual_edges));
}

// Sub-hypergraph spanned by a chosen list of edge instances: same vertex set,
// one multiplicity-1 edge per instance, in the given order. prov maps each
// new edge index back to the originating instance.
struct SubInstances {
  MultiHypergraph sub;
  std::vector<EdgeInstance> prov;
};

inline SubInstances sub_by_instances(const MultiHypergraph& h,
                                     const std::vector<EdgeInstance>& picks) {
  std::vector<Edge> edges;
  edges.reserve(picks.size());
  for (const EdgeInstance& inst : picks) {
    if (inst.edge >= h.edge_count() || inst.copy >= h.edge(inst.edge).multiplicity)
      throw InputError("sub_by_instances: instance out of range");
    edges.push_back(Edge{h.edge(inst.edge).verts, 1});
  }
  return SubInstances{MultiHypergraph(h.vertex_count(), std::move(edges)), picks};
}

}  // namespace hypercover
