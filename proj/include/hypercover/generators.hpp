#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <string_view>
#include <vector>

#include "hypercover/hypergraph.hpp"
#include "hypercover/rng.hpp"

// Structured instance generators: projective incidence hypergraphs, the
// half-cube construction, triangle multigraphs sitting just below the
// multigraph threshold, complete and near-regular graphs, three instance
// transformers (extend, multiply, expand), and a seeded random regular
// uniform supply for test corpora.

namespace hypercover {

namespace detail {

inline bool is_prime(std::size_t q) {
  if (q < 2) return false;
  for (std::size_t p = 2; p * p <= q; ++p)
    if (q % p == 0) return false;
  return true;
}

}  // namespace detail

struct ProjectiveParams {
  std::size_t t = 2;  // dimension, >= 1
  std::size_t q = 2;  // prime modulus
};

// Points of the projective space of dimension t over the integers mod q,
// with one edge per hyperplane {x : a.x = 0}. Points are the vectors in
// (F_q)^{t+1} whose first nonzero coordinate is 1, listed lexicographically;
// hyperplane normals run over the same list. The result is r-uniform and
// d-regular with r = d = (q^t - 1)/(q - 1).
inline MultiHypergraph gen_projective(std::size_t t, std::size_t q) {
  if (t < 1) throw InputError("gen_projective: dimension must be at least 1");
  if (!detail::is_prime(q)) throw InputError("gen_projective: modulus must be prime");

  std::vector<std::vector<std::size_t>> points;
  std::vector<std::size_t> vec(t + 1, 0);
  for (;;) {
    auto first = std::find_if(vec.begin(), vec.end(), [](std::size_t c) { return c != 0; });
    if (first != vec.end() && *first == 1) points.push_back(vec);
    std::size_t i = t + 1;
    while (i > 0 && ++vec[i - 1] == q) vec[--i] = 0;
    if (i == 0) break;
  }

  std::vector<Edge> edges;
  for (const auto& a : points) {
    Edge e;
    for (std::size_t p = 0; p < points.size(); ++p) {
      std::size_t dot = 0;
      for (std::size_t i = 0; i <= t; ++i) dot += a[i] * points[p][i];
      if (dot % q == 0) e.verts.push_back(p);
    }
    edges.push_back(std::move(e));
  }
  return MultiHypergraph(points.size(), std::move(edges)).canonicalized();
}

// Vertices are the subsets A of {1..d} with |A| >= d/2 (ordered by size then
// lexicographically); edge i collects the subsets containing i. Every vertex
// has degree >= ceil(d/2), yet no d/2 edges cover everything: the subset
// made of the unused indices is itself a vertex and stays uncovered.
inline MultiHypergraph gen_cube(std::size_t d) {
  if (d < 1) throw InputError("gen_cube: needs d >= 1");
  if (d > 20) throw InputError("gen_cube: instance would be astronomically large");

  std::vector<std::vector<std::size_t>> subsets;
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
    if (2 * static_cast<std::size_t>(std::popcount(mask)) < d) continue;
    std::vector<std::size_t> a;
    for (std::size_t i = 0; i < d; ++i)
      if (mask >> i & 1) a.push_back(i + 1);
    if (!a.empty()) subsets.push_back(std::move(a));
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });

  std::vector<Edge> edges(d);
  for (std::size_t v = 0; v < subsets.size(); ++v)
    for (std::size_t i : subsets[v]) edges[i - 1].verts.push_back(v);
  return MultiHypergraph(subsets.size(), std::move(edges)).canonicalized();
}

// Triangle multigraph with minimum degree one below the multigraph threshold
// floor((4k+1)/3) yet covering number below k: its total weight is too small
// for k classes of at least two edges each.
inline MultiHypergraph gen_triangle_multi(std::size_t k) {
  if (k < 2) throw InputError("gen_triangle_multi: needs k >= 2");
  std::size_t t = k / 3, i = k % 3;
  std::size_t heavy = 0, light = 0;
  if (i == 0) { heavy = 2 * t; light = 2 * t - 1; }
  if (i == 1) { heavy = 2 * t; light = 2 * t; }
  if (i == 2) { heavy = 2 * t + 1; light = 2 * t + 1; }
  std::vector<Edge> edges = {Edge{{0, 1}, heavy}, Edge{{0, 2}, heavy}, Edge{{1, 2}, light}};
  return MultiHypergraph(3, std::move(edges));
}

inline MultiHypergraph gen_complete(std::size_t n) {
  if (n < 2) throw InputError("gen_complete: needs n >= 2");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.push_back(Edge{{u, v}});
  return MultiHypergraph(n, std::move(edges));
}

// Graph on k+2 vertices (odd count) with one vertex of degree k+1 and the
// rest of degree k: the complete graph minus a perfect matching on vertices
// 1..k+1, matching i with i+(k+1)/2. For k=3 this is the 5-cycle abcdea plus
// chords ac, ad, be.
inline MultiHypergraph gen_odd_near_regular(std::size_t k) {
  if (k < 3 || k % 2 == 0) throw InputError("gen_odd_near_regular: needs odd k >= 3");
  const std::size_t n = k + 2, half = (k + 1) / 2;
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      if (u >= 1 && u <= half && v == u + half) continue;
      edges.push_back(Edge{{u, v}});
    }
  return MultiHypergraph(n, std::move(edges));
}

// Appends one vertex and adds it to every edge; grows uniformity by one while
// leaving old degrees alone, so thresholds can only relax.
inline MultiHypergraph extend_by_vertex(const MultiHypergraph& h) {
  const Vertex v = h.vertex_count();
  std::vector<Edge> edges = h.edges();
  for (auto& e : edges) e.verts.push_back(v);
  return MultiHypergraph(h.vertex_count() + 1, std::move(edges), std::nullopt);
}

inline MultiHypergraph multiply_edges(const MultiHypergraph& h, std::size_t s) {
  if (s < 1) throw InputError("multiply_edges: factor must be positive");
  std::vector<Edge> edges = h.edges();
  for (auto& e : edges) e.multiplicity *= s;
  return MultiHypergraph(h.vertex_count(), std::move(edges), h.r_cap());
}

struct ExpandResult {
  MultiHypergraph h;
  std::vector<Vertex> embedded;  // copy-0 images of the original vertices
};

// Replaces each edge instance by s grown copies, each with a private new
// vertex, then lays r+1 disjoint copies of the whole picture side by side
// (more generally any multiple of r+1) and ties the private vertices of a
// column together with filler edges of multiplicity s*d - 1. Old vertices end
// at degree s times their old degree, new vertices at exactly s*d, and the
// result is (r+1)-uniform.
inline ExpandResult expand(const MultiHypergraph& h, std::size_t s, std::size_t d,
                           std::size_t copies = 0) {
  auto r_opt = h.uniform_size();
  if (!r_opt) throw InputError("expand: instance must be uniform with at least one edge");
  if (s < 1 || d < 1) throw InputError("expand: s and d must be positive");
  if (h.min_degree() < d) throw InputError("expand: minimum degree below d");
  const std::size_t r = *r_opt;
  if (copies == 0) copies = r + 1;
  if (copies % (r + 1) != 0)
    throw InputError("expand: copies must be a positive multiple of r+1 for the column pairing");

  const std::size_t n = h.vertex_count();
  const std::size_t w = h.instance_count();
  const std::size_t stride = n + s * w;  // vertices per copy: old block then new block

  std::vector<Edge> edges;
  for (std::size_t c = 0; c < copies; ++c) {
    const std::size_t base = c * stride;
    for (std::size_t i = 0; i < w; ++i) {
      EdgeInstance inst = h.instance_at(i);
      for (std::size_t a = 0; a < s; ++a) {
        Edge e;
        for (Vertex v : h.edge(inst.edge).verts) e.verts.push_back(base + v);
        e.verts.push_back(base + n + i * s + a);
        edges.push_back(std::move(e));
      }
    }
  }
  if (s * d >= 2) {
    for (std::size_t j = 0; j < s * w; ++j)
      for (std::size_t b = 0; b < copies / (r + 1); ++b) {
        Edge e;
        e.multiplicity = s * d - 1;
        for (std::size_t c = b * (r + 1); c < (b + 1) * (r + 1); ++c)
          e.verts.push_back(c * stride + n + j);
        edges.push_back(std::move(e));
      }
  }

  ExpandResult out{MultiHypergraph(copies * stride, std::move(edges)).canonicalized(), {}};
  for (Vertex v = 0; v < n; ++v) out.embedded.push_back(v);
  return out;
}

// Configuration model: n*d vertex stubs shuffled and cut into groups of r,
// rejecting shuffles that put a vertex twice into one edge. Duplicate vertex
// sets merge into multiplicities, so the result is d-regular and r-uniform
// but not necessarily simple. Deterministic per seed.
inline MultiHypergraph gen_random_regular_uniform(std::size_t n, std::size_t r, std::size_t d,
                                                  std::uint64_t seed) {
  if (n == 0 || d == 0) return MultiHypergraph(n, {});
  if (r == 0 || r > n) throw InputError("gen_random_regular_uniform: needs 1 <= r <= n");
  if ((n * d) % r != 0)
    throw InputError("gen_random_regular_uniform: n*d must be divisible by r");

  std::vector<Vertex> stubs;
  stubs.reserve(n * d);
  for (Vertex v = 0; v < n; ++v) stubs.insert(stubs.end(), d, v);

  std::mt19937_64 rng = make_rng(seed, "gen/random-regular-uniform");
  for (std::size_t attempt = 0; attempt < 1000; ++attempt) {
    shuffle_inplace(rng, stubs);
    // Cut the shuffled stubs into groups of r; when a stub would repeat a
    // vertex inside its group, swap in the first later stub that fits. Only
    // a hopeless tail (all remaining stubs on one vertex) forces a redraw.
    bool ok = true;
    for (std::size_t g = 0; ok && g < stubs.size(); g += r)
      for (std::size_t p = g; ok && p < g + r; ++p) {
        auto seen_before = [&](Vertex v) {
          for (std::size_t q = g; q < p; ++q)
            if (stubs[q] == v) return true;
          return false;
        };
        if (!seen_before(stubs[p])) continue;
        std::size_t q = p + 1;
        while (q < stubs.size() && seen_before(stubs[q])) ++q;
        if (q == stubs.size()) ok = false;
        else std::swap(stubs[p], stubs[q]);
      }
    if (!ok) continue;
    std::vector<Edge> edges;
    for (std::size_t g = 0; g < stubs.size(); g += r) {
      Edge e;
      e.verts.assign(stubs.begin() + g, stubs.begin() + g + r);
      std::sort(e.verts.begin(), e.verts.end());
      edges.push_back(std::move(e));
    }
    return MultiHypergraph(n, std::move(edges)).canonicalized();
  }
  throw InputError("gen_random_regular_uniform: no repeat-free pairing found; adjust n, r, d");
}

}  // namespace hypercover
