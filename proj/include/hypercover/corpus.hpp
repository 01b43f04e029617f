#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "hypercover/generators.hpp"

// Seeded corpus builders shared by the stress batches and the reproduction
// tables. Each returns one deterministic instance per seed, pinned to the
// degree threshold under test: the base is exactly regular and any extra
// edges avoid vertex 0, so the minimum degree never drifts upward.

namespace hypercover {

// Multigraph (edges of size 2, multiplicities allowed) with minimum degree
// exactly d and at most 10 vertices.
inline MultiHypergraph corpus_multigraph_min_degree(std::size_t d, std::uint64_t seed) {
  if (d < 1) throw InputError("corpus_multigraph_min_degree: needs d >= 1");
  std::mt19937_64 rng = make_rng(seed, "corpus/multigraph");
  std::size_t n = d % 2 == 0 ? 4 + uniform_below(rng, 7) : 4 + 2 * uniform_below(rng, 4);

  MultiHypergraph base =
      gen_random_regular_uniform(n, 2, d, derive_seed(seed, "corpus/multigraph/base"));
  std::vector<Edge> edges = base.edges();
  std::size_t extras = uniform_below(rng, 4);
  for (std::size_t i = 0; i < extras; ++i) {
    Vertex u = 1 + uniform_below(rng, n - 1);
    Vertex v = 1 + uniform_below(rng, n - 1);
    if (u == v) continue;
    edges.push_back(Edge{{std::min(u, v), std::max(u, v)}});
  }
  return MultiHypergraph(n, std::move(edges)).canonicalized();
}

// Simple graph with minimum degree exactly d and at most 20 vertices. The
// configuration model collides too often at these sizes to reject into a
// simple graph, so this starts from a d-regular circulant and mixes it with
// degree-preserving 2-switches that keep the graph simple by construction.
inline MultiHypergraph corpus_simple_graph_min_degree(std::size_t d, std::uint64_t seed) {
  if (d < 1) throw InputError("corpus_simple_graph_min_degree: needs d >= 1");
  if (d + 1 > 20) throw InputError("corpus_simple_graph_min_degree: d too large for 20 vertices");
  std::mt19937_64 rng = make_rng(seed, "corpus/simple-graph");
  std::size_t n = d + 1 + uniform_below(rng, 20 - d);
  if ((n * d) % 2 != 0) n = n + 1 <= 20 ? n + 1 : n - 1;

  auto norm = [](Vertex x, Vertex y) {
    return std::pair<Vertex, Vertex>(std::min(x, y), std::max(x, y));
  };
  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::set<std::pair<Vertex, Vertex>> present;
  auto add = [&](Vertex u, Vertex v) {
    pairs.push_back(norm(u, v));
    present.insert(norm(u, v));
  };
  for (std::size_t o = 1; o <= d / 2; ++o)
    for (Vertex v = 0; v < n; ++v) add(v, (v + o) % n);
  if (d % 2 != 0)
    for (Vertex v = 0; v < n / 2; ++v) add(v, v + n / 2);

  for (std::size_t s = 0; s < 10 * pairs.size(); ++s) {
    std::size_t i = uniform_below(rng, pairs.size());
    std::size_t j = uniform_below(rng, pairs.size());
    auto [a, b] = pairs[i];
    auto [c, e] = pairs[j];
    if (uniform_below(rng, 2) != 0) std::swap(c, e);
    if (a == c || a == e || b == c || b == e) continue;
    if (present.count(norm(a, c)) || present.count(norm(b, e))) continue;
    present.erase(pairs[i]);
    present.erase(pairs[j]);
    pairs[i] = norm(a, c);
    pairs[j] = norm(b, e);
    present.insert(pairs[i]);
    present.insert(pairs[j]);
  }

  std::size_t extras = uniform_below(rng, 4);
  for (std::size_t i = 0; i < extras; ++i) {
    Vertex u = 1 + uniform_below(rng, n - 1);
    Vertex v = 1 + uniform_below(rng, n - 1);
    if (u == v || present.count(norm(u, v))) continue;
    add(u, v);
  }

  std::vector<Edge> edges;
  for (auto [u, v] : pairs) edges.push_back(Edge{{u, v}});
  return MultiHypergraph(n, std::move(edges)).canonicalized();
}

// Simple d-regular r-uniform instance, found by redrawing the configuration
// model until no edge repeats. Suitable for dualizing.
inline MultiHypergraph corpus_simple_uniform_regular(std::size_t n, std::size_t r,
                                                     std::size_t d, std::uint64_t seed) {
  for (std::size_t attempt = 0; attempt < 500; ++attempt) {
    MultiHypergraph h = gen_random_regular_uniform(
        n, r, d, derive_seed(seed, "corpus/simple-uniform/" + std::to_string(attempt)));
    if (h.is_simple()) return h;
  }
  throw InputError("corpus_simple_uniform_regular: no simple instance found for this seed");
}

// Triple system (3-uniform) with minimum degree at least 4 and a mix of
// multiplicities. Half the corpus starts from a simple base so the repeated
// edges do not pair everything away, half from a collision-heavy one.
inline MultiHypergraph corpus_mixed_triple_system(std::uint64_t seed) {
  std::mt19937_64 rng = make_rng(seed, "corpus/triples");
  MultiHypergraph base =
      uniform_below(rng, 2) == 0
          ? corpus_simple_uniform_regular(9, 3, 4, derive_seed(seed, "corpus/triples/simple"))
          : gen_random_regular_uniform(uniform_below(rng, 2) == 0 ? 6 : 9, 3, 4,
                                       derive_seed(seed, "corpus/triples/base"));
  std::vector<Edge> edges = base.edges();
  std::size_t bumps = uniform_below(rng, 3);
  for (std::size_t i = 0; i < bumps; ++i)
    edges[uniform_below(rng, edges.size())].multiplicity += 1 + uniform_below(rng, 2);
  return MultiHypergraph(base.vertex_count(), std::move(edges));
}

// Small unstructured hypergraph with every vertex covered; edge sizes 1..4,
// optional multiplicities. The shape feeds the levelling and duality
// property batches.
inline MultiHypergraph corpus_random_hypergraph(std::uint64_t seed, bool simple_only) {
  std::mt19937_64 rng = make_rng(seed, "corpus/random-hypergraph");
  std::size_t n = 3 + uniform_below(rng, 6);
  std::size_t m = 3 + uniform_below(rng, 6);

  std::vector<Vertex> ids(n);
  for (Vertex v = 0; v < n; ++v) ids[v] = v;
  std::set<std::vector<Vertex>> present;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t s = 1 + uniform_below(rng, std::min<std::size_t>(4, n));
    shuffle_inplace(rng, ids);
    std::vector<Vertex> verts(ids.begin(), ids.begin() + s);
    std::sort(verts.begin(), verts.end());
    std::size_t mult = !simple_only && uniform_below(rng, 4) == 0 ? 2 : 1;
    if (simple_only && !present.insert(verts).second) continue;
    edges.push_back(Edge{std::move(verts), mult});
  }

  std::vector<bool> covered(n, false);
  for (const auto& e : edges)
    for (Vertex v : e.verts) covered[v] = true;
  for (Vertex v = 0; v < n; ++v)
    if (!covered[v]) edges.push_back(Edge{{v}});
  return MultiHypergraph(n, std::move(edges)).canonicalized();
}

}  // namespace hypercover
