#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hypercover/levelling.hpp"

// Constructive cover splitters for graphs and multigraphs, plus the Hall
// matching splitter for hypergraphs and the repeated-edge reduction for k=2.

namespace hypercover {

struct EdgeColouring {
  std::size_t palette_size = 1;
  std::vector<std::size_t> colours;  // by linear edge instance
};

struct Orientation {
  // (tail, head) per linear edge instance.
  std::vector<std::pair<Vertex, Vertex>> directions;
};

inline Orientation orient_outdeg_half(const MultiHypergraph& g);

namespace detail {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

inline void require_graph(const MultiHypergraph& h, const char* who) {
  for (const Edge& e : h.edges())
    if (e.verts.size() != 2)
      throw InputError(std::string(who) + ": needs a graph (every edge of size 2)");
}

}  // namespace detail

// Proper edge colouring of a simple graph with at most Delta+1 colours,
// via the fan-and-alternating-path recolouring scheme. Multigraphs are
// rejected: the Delta+1 bound does not hold for them.
inline EdgeColouring vizing_edge_colour(const MultiHypergraph& g) {
  detail::require_graph(g, "vizing_edge_colour");
  if (!g.is_simple()) throw InputError("vizing_edge_colour: needs a simple graph");

  const std::size_t n = g.vertex_count();
  const std::size_t m = g.edge_count();
  const std::size_t palette = g.max_degree() + 1;
  const std::size_t NONE = detail::kNone;

  EdgeColouring out;
  out.palette_size = palette;
  out.colours.assign(m, NONE);
  // at[v][c] = edge with colour c at v, if any.
  std::vector<std::vector<std::size_t>> at(n, std::vector<std::size_t>(palette, NONE));

  auto other_end = [&](std::size_t e, Vertex v) {
    const auto& vs = g.edge(e).verts;
    return vs[0] == v ? vs[1] : vs[0];
  };
  auto set_colour = [&](std::size_t e, std::size_t c) {
    for (Vertex v : g.edge(e).verts) {
      detail::ensure(at[v][c] == NONE, "vizing: colour clash");
      at[v][c] = e;
    }
    out.colours[e] = c;
  };
  auto unset_colour = [&](std::size_t e) {
    std::size_t c = out.colours[e];
    for (Vertex v : g.edge(e).verts) at[v][c] = NONE;
    out.colours[e] = NONE;
  };
  auto free_at = [&](Vertex v) {
    for (std::size_t c = 0; c < palette; ++c)
      if (at[v][c] == NONE) return c;
    detail::ensure(false, "vizing: no free colour");
    return NONE;
  };

  std::vector<char> in_fan(n, 0);
  for (std::size_t e0 = 0; e0 < m; ++e0) {
    const Vertex u = g.edge(e0).verts[0];

    // Maximal fan of u starting at the other endpoint: each next fan edge's
    // colour is free at the previous fan vertex. In a simple graph distinct
    // colours at u give distinct neighbours, so only membership is checked.
    std::vector<Vertex> fan{g.edge(e0).verts[1]};
    std::vector<std::size_t> fan_edge{e0};
    in_fan[fan[0]] = 1;
    for (;;) {
      Vertex last = fan.back();
      std::size_t next = NONE;
      for (std::size_t c = 0; c < palette; ++c)
        if (at[last][c] == NONE && at[u][c] != NONE && !in_fan[other_end(at[u][c], u)]) {
          next = at[u][c];
          break;
        }
      if (next == NONE) break;
      fan.push_back(other_end(next, u));
      fan_edge.push_back(next);
      in_fan[fan.back()] = 1;
    }
    for (Vertex v : fan) in_fan[v] = 0;

    const std::size_t c = free_at(u);
    const std::size_t d = free_at(fan.back());

    if (at[u][d] != NONE) {
      // d is busy at u: flip the alternating c/d path through u, freeing d
      // there. The path cannot reach fan.back() and keep d busy on it, which
      // is what the minimal-prefix scan below relies on.
      std::vector<std::size_t> path;
      Vertex cur = u;
      std::size_t col = d;
      while (at[cur][col] != NONE) {
        std::size_t e = at[cur][col];
        path.push_back(e);
        cur = other_end(e, cur);
        col = (col == d) ? c : d;
      }
      std::vector<std::size_t> swapped(path.size());
      for (std::size_t i = 0; i < path.size(); ++i)
        swapped[i] = (out.colours[path[i]] == c) ? d : c;
      for (std::size_t e : path) unset_colour(e);
      for (std::size_t i = 0; i < path.size(); ++i) set_colour(path[i], swapped[i]);
    }

    // Shortest fan prefix that is still a fan and ends where d is free.
    std::size_t w = NONE;
    for (std::size_t i = 0; i < fan.size(); ++i) {
      if (i > 0) {
        std::size_t ci = out.colours[fan_edge[i]];
        if (ci == NONE || at[fan[i - 1]][ci] != NONE) break;
      }
      if (at[fan[i]][d] == NONE) { w = i; break; }
    }
    detail::ensure(w != NONE, "vizing: no rotatable fan prefix");

    // Rotate the prefix: every fan edge takes its successor's colour, and
    // the last one takes d.
    std::vector<std::size_t> shifted(w);
    for (std::size_t i = 0; i < w; ++i) shifted[i] = out.colours[fan_edge[i + 1]];
    for (std::size_t i = w; i >= 1; --i) unset_colour(fan_edge[i]);
    for (std::size_t i = 0; i < w; ++i) set_colour(fan_edge[i], shifted[i]);
    set_colour(fan_edge[w], d);
  }
  return out;
}

// Splits a simple graph with min degree >= k+1 into k covering classes.
// Pipeline: level to (k+1)-regular, properly colour with k+2 colours, orient
// the top two colour classes E' (disjoint paths and cycles), hand every
// vertex missing a low colour that colour on its unique E' in-edge, then fold
// the top colours into class 0 and pull the partition back to the input.
inline CoverPartition cover_graph_k(const MultiHypergraph& g, std::size_t k) {
  if (k < 2) throw InputError("cover_graph_k: k must be at least 2");
  if (k > 62) throw InputError("cover_graph_k: more than 62 classes is beyond this implementation");
  detail::require_graph(g, "cover_graph_k");
  if (!g.is_simple()) throw InputError("cover_graph_k: needs a simple graph (multigraphs have a higher threshold)");
  const std::size_t d = k + 1;
  if (g.min_degree() < d)
    throw InfeasibleError("cover_graph_k: needs min degree >= " + std::to_string(d) +
                          ", got " + std::to_string(g.min_degree()));

  LevellingMap lm = level(g, 2, d);
  const MultiHypergraph& t = lm.target;
  const std::size_t tm = t.edge_count();  // target edges all have multiplicity 1
  const std::size_t NONE = detail::kNone;

  // Fully trimmed source edges level to d identical padding-only edges; their
  // endpoints meet nothing else. Colour each such bundle with d distinct
  // colours directly and run the simple-graph colouring on the rest.
  std::map<std::vector<Vertex>, std::vector<std::size_t>> groups;
  for (std::size_t e = 0; e < tm; ++e) groups[t.edge(e).verts].push_back(e);

  std::vector<std::size_t> colour(tm, NONE);
  std::vector<std::size_t> single_ids;
  for (const auto& [verts, ids] : groups) {
    if (ids.size() == 1) {
      single_ids.push_back(ids[0]);
      continue;
    }
    detail::ensure(ids.size() == d, "cover_graph_k: bundle is not a full padding bundle");
    for (Vertex v : verts)
      detail::ensure(t.degree(v) == d, "cover_graph_k: bundle endpoint leaks");
    for (std::size_t i = 0; i < ids.size(); ++i) colour[ids[i]] = i;
  }
  std::sort(single_ids.begin(), single_ids.end());

  if (!single_ids.empty()) {
    std::vector<Edge> simple_edges;
    simple_edges.reserve(single_ids.size());
    for (std::size_t e : single_ids) simple_edges.push_back(t.edge(e));
    EdgeColouring ec = vizing_edge_colour(MultiHypergraph(t.vertex_count(), std::move(simple_edges)));
    detail::ensure(ec.palette_size <= k + 2, "cover_graph_k: palette exceeded k+2");
    for (std::size_t i = 0; i < single_ids.size(); ++i) colour[single_ids[i]] = ec.colours[i];
  }

  // Each vertex has d = k+1 edges, properly coloured from k+2 colours, so it
  // misses exactly one colour and touches E' (colours k, k+1) once or twice.
  std::vector<std::uint64_t> seen(t.vertex_count(), 0);
  for (std::size_t e = 0; e < tm; ++e)
    for (Vertex v : t.edge(e).verts) {
      detail::ensure((seen[v] >> colour[e] & 1) == 0, "cover_graph_k: colouring not proper");
      seen[v] |= std::uint64_t{1} << colour[e];
    }

  std::vector<EdgeInstance> prime_picks;
  for (std::size_t e = 0; e < tm; ++e)
    if (colour[e] >= k) prime_picks.push_back(EdgeInstance{e, 0});
  SubInstances prime = sub_by_instances(t, prime_picks);
  Orientation orient = orient_outdeg_half(prime.sub);

  std::vector<std::size_t> in_edge(t.vertex_count(), NONE);   // E' edge pointing at v
  std::vector<std::size_t> in_count(t.vertex_count(), 0);
  for (std::size_t j = 0; j < orient.directions.size(); ++j) {
    Vertex head = orient.directions[j].second;
    in_edge[head] = prime_picks[j].edge;
    ++in_count[head];
  }

  std::vector<char> recoloured(tm, 0);
  for (Vertex v = 0; v < t.vertex_count(); ++v) {
    std::uint64_t missing_mask = ~seen[v] & ((std::uint64_t{1} << (k + 2)) - 1);
    detail::ensure(std::popcount(missing_mask) == 1, "cover_graph_k: vertex must miss exactly one colour");
    std::size_t missing = static_cast<std::size_t>(std::countr_zero(missing_mask));
    if (missing >= k) continue;
    // v sees both top colours, so it lies inside a directed path or on a
    // cycle of E' and owns exactly one in-edge, which no other vertex claims.
    detail::ensure(in_count[v] == 1, "cover_graph_k: deficient vertex without unique in-edge");
    detail::ensure(!recoloured[in_edge[v]], "cover_graph_k: edge recoloured twice");
    recoloured[in_edge[v]] = 1;
    colour[in_edge[v]] = missing;
  }

  CoverPartition pt = make_partition_shell(t, k);
  for (std::size_t e = 0; e < tm; ++e)
    pt.assign[e][0] = colour[e] < k ? colour[e] : 0;
  detail::ensure(static_cast<bool>(verify_cover_partition(t, pt)), "cover_graph_k: target cover invalid");
  return pull_back(lm, pt);
}

// Vertex bipartition with every vertex having at least half its edges across,
// by single-vertex flips to local optimality, lowest index first.
inline std::vector<int> max_cut_local(const MultiHypergraph& g) {
  detail::require_graph(g, "max_cut_local");
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> nbr(n);  // (other end, weight)
  for (const Edge& e : g.edges()) {
    nbr[e.verts[0]].push_back({e.verts[1], e.multiplicity});
    nbr[e.verts[1]].push_back({e.verts[0], e.multiplicity});
  }

  std::vector<int> side(n, 0);
  bool moved = true;
  while (moved) {
    moved = false;
    for (Vertex v = 0; v < n; ++v) {
      std::size_t cross = 0, same = 0;
      for (auto [u, w] : nbr[v]) (side[u] != side[v] ? cross : same) += w;
      if (cross < same) {
        side[v] = 1 - side[v];
        moved = true;
      }
    }
  }
  return side;
}

// Colours the edges of a bipartite multigraph with k colours so that every
// vertex sees min(k, its degree) distinct ones. Each vertex is split into
// pieces of degree <= k (the first piece taking min(k, degree) instances),
// and the resulting max-degree-k bipartite multigraph is properly k-edge-
// coloured by alternating-path augmentation.
inline EdgeColouring spread_colour_bipartite(const MultiHypergraph& b, std::size_t k) {
  if (k == 0) throw InputError("spread_colour_bipartite: k must be positive");
  if (k > 64) throw InputError("spread_colour_bipartite: more than 64 colours is beyond this implementation");
  detail::require_graph(b, "spread_colour_bipartite");
  const std::size_t n = b.vertex_count();
  const std::size_t NONE = detail::kNone;

  {  // two-colourability check; the path flips below rely on it
    std::vector<int> colour2(n, -1);
    std::vector<std::vector<Vertex>> adj(n);
    for (const Edge& e : b.edges()) {
      adj[e.verts[0]].push_back(e.verts[1]);
      adj[e.verts[1]].push_back(e.verts[0]);
    }
    for (Vertex s = 0; s < n; ++s) {
      if (colour2[s] != -1) continue;
      colour2[s] = 0;
      std::deque<Vertex> queue{s};
      while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (Vertex u : adj[v]) {
          if (colour2[u] == -1) {
            colour2[u] = 1 - colour2[v];
            queue.push_back(u);
          } else if (colour2[u] == colour2[v]) {
            throw InputError("spread_colour_bipartite: graph is not bipartite");
          }
        }
      }
    }
  }

  // Instance endpoints and per-vertex incidence in instance order.
  const std::size_t m = b.instance_count();
  std::vector<std::pair<Vertex, Vertex>> ends(m);
  std::vector<std::vector<std::size_t>> inc(n);
  for (std::size_t i = 0; i < m; ++i) {
    const Edge& e = b.edge(b.instance_at(i).edge);
    ends[i] = {e.verts[0], e.verts[1]};
    inc[e.verts[0]].push_back(i);
    inc[e.verts[1]].push_back(i);
  }

  // piece_of[i] for each endpoint: consecutive chunks of smallest-first
  // incident instances, chunk size k.
  std::size_t piece_count = 0;
  std::vector<std::size_t> piece_a(m), piece_b(m);
  for (Vertex v = 0; v < n; ++v) {
    for (std::size_t idx = 0; idx < inc[v].size(); ++idx) {
      std::size_t piece = piece_count + idx / k;
      std::size_t i = inc[v][idx];
      (ends[i].first == v ? piece_a[i] : piece_b[i]) = piece;
    }
    piece_count += (inc[v].size() + k - 1) / k;
  }

  std::vector<std::vector<std::size_t>> at(piece_count, std::vector<std::size_t>(k, NONE));
  std::vector<std::size_t> colour(m, NONE);

  auto other_piece = [&](std::size_t i, std::size_t piece) {
    return piece_a[i] == piece ? piece_b[i] : piece_a[i];
  };
  auto flip_path = [&](std::size_t start_piece, std::size_t c1, std::size_t c2) {
    std::vector<std::size_t> path;
    std::size_t cur = start_piece, col = c1;
    while (at[cur][col] != NONE) {
      std::size_t e = at[cur][col];
      path.push_back(e);
      cur = other_piece(e, cur);
      col = (col == c1) ? c2 : c1;
    }
    for (std::size_t e : path) {
      std::size_t c = colour[e];
      at[piece_a[e]][c] = NONE;
      at[piece_b[e]][c] = NONE;
    }
    for (std::size_t e : path) {
      std::size_t c = (colour[e] == c1) ? c2 : c1;
      detail::ensure(at[piece_a[e]][c] == NONE && at[piece_b[e]][c] == NONE,
                     "spread_colour: path flip clash");
      at[piece_a[e]][c] = e;
      at[piece_b[e]][c] = e;
      colour[e] = c;
    }
  };

  for (std::size_t i = 0; i < m; ++i) {
    std::size_t x = piece_a[i], y = piece_b[i];
    std::size_t both = NONE, cx = NONE, cy = NONE;
    for (std::size_t c = 0; c < k && both == NONE; ++c) {
      if (at[x][c] == NONE && at[y][c] == NONE) both = c;
      if (cx == NONE && at[x][c] == NONE) cx = c;
      if (cy == NONE && at[y][c] == NONE) cy = c;
    }
    std::size_t c = both;
    if (c == NONE) {
      detail::ensure(cx != NONE && cy != NONE, "spread_colour: piece over capacity");
      // cx is busy at y; flip the cx/cy path from y, freeing cx there. In a
      // bipartite graph the path cannot end at x.
      flip_path(y, cx, cy);
      c = cx;
    }
    detail::ensure(at[x][c] == NONE && at[y][c] == NONE, "spread_colour: assignment clash");
    at[x][c] = i;
    at[y][c] = i;
    colour[i] = c;
  }

  EdgeColouring out;
  out.palette_size = k;
  out.colours = std::move(colour);

  // Spreading post-condition: the first piece of each vertex already carries
  // min(k, degree) distinct colours.
  for (Vertex v = 0; v < n; ++v) {
    std::uint64_t mask = 0;
    for (std::size_t i : inc[v]) mask |= std::uint64_t{1} << out.colours[i];
    detail::ensure(static_cast<std::size_t>(std::popcount(mask)) >=
                       std::min(k, inc[v].size()),
                   "spread_colour: vertex sees too few colours");
  }
  return out;
}

// Orients every edge so that each vertex has outdegree >= floor(degree/2):
// odd-degree vertices are paired off with temporary edges, making all degrees
// even, and each component then decomposes into closed walks oriented along
// the direction of travel, which balances in- and outdegree exactly.
inline Orientation orient_outdeg_half(const MultiHypergraph& g) {
  detail::require_graph(g, "orient_outdeg_half");
  const std::size_t n = g.vertex_count();
  const std::size_t m = g.instance_count();

  std::vector<std::pair<Vertex, Vertex>> ends(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Edge& e = g.edge(g.instance_at(i).edge);
    ends[i] = {e.verts[0], e.verts[1]};
  }

  std::vector<std::size_t> deg(n, 0);
  for (auto [a, b] : ends) {
    ++deg[a];
    ++deg[b];
  }
  std::vector<Vertex> odd;
  for (Vertex v = 0; v < n; ++v)
    if (deg[v] % 2) odd.push_back(v);
  for (std::size_t i = 0; i + 1 < odd.size(); i += 2) ends.push_back({odd[i], odd[i + 1]});

  std::vector<std::vector<std::size_t>> inc(n);
  for (std::size_t i = 0; i < ends.size(); ++i) {
    inc[ends[i].first].push_back(i);
    inc[ends[i].second].push_back(i);
  }

  Orientation out;
  out.directions.assign(m, {0, 0});
  std::vector<char> used(ends.size(), 0);
  std::vector<std::size_t> cursor(n, 0);

  auto next_unused = [&](Vertex v) {
    while (cursor[v] < inc[v].size() && used[inc[v][cursor[v]]]) ++cursor[v];
    return cursor[v] < inc[v].size() ? inc[v][cursor[v]] : detail::kNone;
  };

  for (Vertex s = 0; s < n; ++s) {
    for (;;) {
      std::size_t first = next_unused(s);
      if (first == detail::kNone) break;
      // With all degrees even a walk can only get stuck back at its start.
      Vertex cur = s;
      std::size_t e = first;
      do {
        used[e] = 1;
        Vertex to = (ends[e].first == cur) ? ends[e].second : ends[e].first;
        if (e < m) out.directions[e] = {cur, to};
        cur = to;
        e = next_unused(cur);
      } while (e != detail::kNone && cur != s);
      // Walk may pass through s with edges to spare; the outer loop resumes.
      detail::ensure(cur == s, "orient_outdeg_half: walk stranded away from start");
    }
  }

  std::vector<std::size_t> outdeg(n, 0);
  for (auto [tail, head] : out.directions) ++outdeg[tail];
  for (Vertex v = 0; v < n; ++v)
    detail::ensure(outdeg[v] >= deg[v] / 2, "orient_outdeg_half: outdegree below half");
  return out;
}

// Splits a multigraph with min degree >= floor((4k+1)/3) into k covering
// classes. Pipeline: level to d-regular, cut the vertices so every vertex has
// at least ceil(d/2) cross edges, colour the cross edges so each vertex sees
// min(k, cross degree) colours, orient the within-side edges with outdegree
// >= floor(degree/2), and let each vertex stamp its missing colours onto its
// own out-edges; everything unclaimed lands in class 0.
inline CoverPartition cover_multigraph_k(const MultiHypergraph& g, std::size_t k) {
  if (k == 0) throw InputError("cover_multigraph_k: k must be positive");
  if (k > 62) throw InputError("cover_multigraph_k: more than 62 classes is beyond this implementation");
  detail::require_graph(g, "cover_multigraph_k");
  const std::size_t d = (4 * k + 1) / 3;
  {  // threshold arithmetic by residue, kept as a sanity check
    std::size_t t = k / 3;
    std::size_t expect = (k % 3 == 0) ? 4 * t : (k % 3 == 1) ? 4 * t + 1 : 4 * t + 3;
    detail::ensure(d == expect, "cover_multigraph_k: threshold arithmetic drifted");
  }
  if (g.min_degree() < d)
    throw InfeasibleError("cover_multigraph_k: needs min degree >= " + std::to_string(d) +
                          ", got " + std::to_string(g.min_degree()));

  if (k == 1) {
    CoverPartition all = make_partition_shell(g, 1);
    detail::ensure(static_cast<bool>(verify_cover_partition(g, all)),
                   "cover_multigraph_k: single class must cover");
    return all;
  }

  LevellingMap lm = level(g, 2, d);
  const MultiHypergraph& t = lm.target;
  const std::size_t tm = t.instance_count();  // levelled edges all have multiplicity 1
  const std::size_t NONE = detail::kNone;

  std::vector<int> side = max_cut_local(t);
  std::vector<EdgeInstance> cross_picks, within_picks;
  for (std::size_t e = 0; e < tm; ++e) {
    const auto& vs = t.edge(e).verts;
    (side[vs[0]] != side[vs[1]] ? cross_picks : within_picks).push_back(EdgeInstance{e, 0});
  }

  SubInstances cross = sub_by_instances(t, cross_picks);
  EdgeColouring cc = spread_colour_bipartite(cross.sub, k);

  SubInstances within = sub_by_instances(t, within_picks);
  Orientation orient = orient_outdeg_half(within.sub);

  std::vector<std::uint64_t> seen(t.vertex_count(), 0);
  for (std::size_t j = 0; j < cross_picks.size(); ++j)
    for (Vertex v : t.edge(cross_picks[j].edge).verts)
      seen[v] |= std::uint64_t{1} << cc.colours[j];

  std::vector<std::size_t> within_deg(t.vertex_count(), 0);
  std::vector<std::vector<std::size_t>> out_edges(t.vertex_count());
  for (std::size_t j = 0; j < within_picks.size(); ++j) {
    for (Vertex v : t.edge(within_picks[j].edge).verts) ++within_deg[v];
    out_edges[orient.directions[j].first].push_back(j);
  }

  std::vector<std::size_t> colour(tm, NONE);
  for (std::size_t j = 0; j < cross_picks.size(); ++j)
    colour[cross_picks[j].edge] = cc.colours[j];

  for (Vertex v = 0; v < t.vertex_count(); ++v) {
    std::size_t j = within_deg[v];
    detail::ensure(d - j >= (d + 1) / 2, "cover_multigraph_k: cut guarantee broken");
    // The threshold is chosen exactly so a vertex with j within-edges can
    // patch every colour it misses using half of them.
    detail::ensure(d - (j + 1) / 2 >= k, "cover_multigraph_k: proof inequality broken");
    std::vector<std::size_t> missing;
    for (std::size_t c = 0; c < k; ++c)
      if (!(seen[v] >> c & 1)) missing.push_back(c);
    detail::ensure(missing.size() <= j / 2 && j / 2 <= out_edges[v].size(),
                   "cover_multigraph_k: missing colours exceed outdegree");
    for (std::size_t idx = 0; idx < missing.size(); ++idx) {
      std::size_t e = within_picks[out_edges[v][idx]].edge;
      detail::ensure(colour[e] == NONE, "cover_multigraph_k: within edge claimed twice");
      colour[e] = missing[idx];
    }
  }

  CoverPartition pt = make_partition_shell(t, k);
  for (std::size_t e = 0; e < tm; ++e)
    pt.assign[e][0] = (colour[e] == NONE) ? 0 : colour[e];
  detail::ensure(static_cast<bool>(verify_cover_partition(t, pt)),
                 "cover_multigraph_k: target cover invalid");
  return pull_back(lm, pt);
}

// k-cover of any hypergraph with min degree >= (max edge size) * k: give each
// vertex k private incident instances, one per class, via bipartite matching
// of (vertex, class) slots against instances; Hall's condition holds at this
// degree, so the matching saturates all slots. Unclaimed instances go to
// class 0.
inline CoverPartition hall_cover(const MultiHypergraph& h, std::size_t k) {
  if (k == 0) throw InputError("hall_cover: k must be positive");
  const std::size_t n = h.vertex_count();
  const std::size_t r = h.max_edge_size();
  if (n > 0 && h.min_degree() < r * k)
    throw InfeasibleError("hall_cover: needs min degree >= r*k = " + std::to_string(r * k) +
                          ", got " + std::to_string(h.min_degree()));

  const std::size_t m = h.instance_count();
  std::vector<std::vector<std::size_t>> inc(n);
  for (std::size_t e = 0; e < h.edge_count(); ++e)
    for (std::size_t c = 0; c < h.edge(e).multiplicity; ++c) {
      std::size_t i = h.instance_index(EdgeInstance{e, c});
      for (Vertex v : h.edge(e).verts) inc[v].push_back(i);
    }

  const std::size_t NONE = detail::kNone;
  std::vector<std::size_t> match(m, NONE);  // instance -> slot
  std::vector<std::size_t> stamp(m, NONE);
  auto augment = [&](auto&& self, std::size_t slot, std::size_t round) -> bool {
    for (std::size_t i : inc[slot / k]) {
      if (stamp[i] == round) continue;
      stamp[i] = round;
      if (match[i] == NONE || self(self, match[i], round)) {
        match[i] = slot;
        return true;
      }
    }
    return false;
  };
  for (std::size_t slot = 0; slot < n * k; ++slot)
    detail::ensure(augment(augment, slot, slot), "hall_cover: matching failed despite degree bound");

  CoverPartition p = make_partition_shell(h, k);
  for (std::size_t i = 0; i < m; ++i) {
    if (match[i] == NONE) continue;
    EdgeInstance inst = h.instance_at(i);
    p.assign[inst.edge][inst.copy] = match[i] % k;
  }
  detail::ensure(static_cast<bool>(verify_cover_partition(h, p)), "hall_cover: cover invalid");
  return p;
}

// Two covering classes for a multihypergraph by peeling repeated edges: while
// two instances restrict to the same nonempty set of still-uncovered
// vertices, send one red and one blue and mark that set covered. The leftover
// restrictions form a simple hypergraph with undiminished degrees; it is
// levelled and handed to the callback, and its 2-cover is pulled back.
inline CoverPartition split2_multi(
    const MultiHypergraph& h,
    const std::function<CoverPartition(const MultiHypergraph&)>& solve_simple) {
  if (h.vertex_count() > 0 && h.min_degree() < 2)
    throw InfeasibleError("split2_multi: a 2-cover needs min degree >= 2, got " +
                          std::to_string(h.min_degree()));

  const std::size_t m = h.instance_count();
  std::vector<int> assigned(m, -1);
  std::vector<char> in_w(h.vertex_count(), 1);

  std::vector<std::vector<Vertex>> edge_of(m);
  for (std::size_t i = 0; i < m; ++i) edge_of[i] = h.edge(h.instance_at(i).edge).verts;
  auto restriction = [&](std::size_t i) {
    std::vector<Vertex> r;
    for (Vertex v : edge_of[i])
      if (in_w[v]) r.push_back(v);
    return r;
  };

  for (bool paired = true; paired;) {
    paired = false;
    std::map<std::vector<Vertex>, std::size_t> first;
    for (std::size_t i = 0; i < m && !paired; ++i) {
      if (assigned[i] != -1) continue;
      std::vector<Vertex> restr = restriction(i);
      if (restr.empty()) continue;
      auto [it, fresh] = first.try_emplace(std::move(restr), i);
      if (fresh) continue;
      assigned[it->second] = 0;
      assigned[i] = 1;
      for (Vertex v : edge_of[i])
        if (in_w[v]) in_w[v] = 0;  // exactly the common restriction
      paired = true;  // restrictions changed; rescan
    }
  }

  // Residual: unassigned instances with a nonempty restriction, reindexed to
  // the surviving vertex set.
  std::vector<Vertex> w_verts;
  std::vector<std::size_t> w_index(h.vertex_count(), detail::kNone);
  for (Vertex v = 0; v < h.vertex_count(); ++v)
    if (in_w[v]) {
      w_index[v] = w_verts.size();
      w_verts.push_back(v);
    }

  std::vector<std::size_t> residual_source;
  std::vector<Edge> residual_edges;
  for (std::size_t i = 0; i < m; ++i) {
    if (assigned[i] != -1) continue;
    std::vector<Vertex> restr = restriction(i);
    if (restr.empty()) {
      assigned[i] = 0;  // covers nothing that still matters
      continue;
    }
    for (Vertex& v : restr) v = w_index[v];
    residual_edges.push_back(Edge{std::move(restr), 1});
    residual_source.push_back(i);
  }

  if (!w_verts.empty()) {
    MultiHypergraph residual(w_verts.size(), std::move(residual_edges));
    detail::ensure(residual.is_simple(), "split2_multi: residual still has repeats");
    detail::ensure(residual.min_degree() >= h.min_degree(),
                   "split2_multi: residual lost degree");

    LevellingMap lm = level(residual, residual.max_edge_size(), residual.min_degree());
    CoverPartition target_part = solve_simple(lm.target);
    if (target_part.k != 2)
      throw InputError("split2_multi: callback must return a 2-class partition");
    CoverPartition res_part = pull_back(lm, target_part);  // rejects invalid covers
    for (std::size_t j = 0; j < residual_source.size(); ++j)
      assigned[residual_source[j]] = static_cast<int>(res_part.assign[j][0]);
  }

  CoverPartition out = make_partition_shell(h, 2);
  for (std::size_t i = 0; i < m; ++i) {
    EdgeInstance inst = h.instance_at(i);
    out.assign[inst.edge][inst.copy] = static_cast<std::size_t>(assigned[i]);
  }
  detail::ensure(static_cast<bool>(verify_cover_partition(h, out)), "split2_multi: cover invalid");
  return out;
}

// Largest k guaranteed by min degree alone for multigraphs; inverse of the
// floor((4k+1)/3) threshold.
inline std::size_t multigraph_cover_lower_bound(std::size_t min_degree) {
  if (min_degree == 0) throw InputError("multigraph_cover_lower_bound: degree must be positive");
  return (3 * min_degree + 1) / 4;
}

}  // namespace hypercover
