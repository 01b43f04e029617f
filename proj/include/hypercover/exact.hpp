#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hypercover/hypergraph.hpp"

// Exact solvers, intended as ground truth at desk scale. Budgets make them
// give up explicitly ("unknown") rather than ever return a wrong answer.

namespace hypercover {

struct SolverLimits {
  std::uint64_t node_budget = 50'000'000;  // search nodes before giving up
  std::uint64_t time_budget_ms = 0;        // 0 = unlimited
};

enum class Feasibility { feasible, infeasible, unknown };

inline const char* to_string(Feasibility f) {
  switch (f) {
    case Feasibility::feasible: return "feasible";
    case Feasibility::infeasible: return "infeasible";
    default: return "unknown";
  }
}

// Minimum number of edge instances whose union is the whole vertex set.
// Branch and bound over 64-bit coverage masks; repeated copies of an edge
// never help, so the search runs on distinct vertex sets.
inline std::size_t min_cover_size(const MultiHypergraph& h) {
  const std::size_t n = h.vertex_count();
  if (n == 0) return 0;
  if (n > 64) throw InputError("min_cover_size: more than 64 vertices is beyond this solver");
  if (auto v = h.first_isolated_vertex())
    throw InfeasibleError("min_cover_size: vertex " + std::to_string(*v) +
                          " lies in no edge; no cover exists");

  std::vector<std::uint64_t> masks;
  std::size_t max_size = 0;
  for (const Edge& e : h.edges()) {
    if (e.verts.empty()) continue;
    std::uint64_t m = 0;
    for (Vertex v : e.verts) m |= std::uint64_t{1} << v;
    masks.push_back(m);
    max_size = std::max(max_size, e.verts.size());
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());

  const std::uint64_t full = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);

  // Greedy upper bound.
  std::size_t best = 0;
  {
    std::uint64_t uncovered = full;
    while (uncovered) {
      std::uint64_t pick = 0;
      int gain = -1;
      for (std::uint64_t m : masks) {
        int g = std::popcount(m & uncovered);
        if (g > gain) { gain = g; pick = m; }
      }
      uncovered &= ~pick;
      ++best;
    }
  }

  // Edges covering each vertex, for the branching rule.
  std::vector<std::vector<std::uint64_t>> through(n);
  for (std::uint64_t m : masks)
    for (std::size_t v = 0; v < n; ++v)
      if (m >> v & 1) through[v].push_back(m);

  auto dfs = [&](auto&& self, std::uint64_t uncovered, std::size_t used) -> void {
    if (!uncovered) { best = std::min(best, used); return; }
    std::size_t lower = (static_cast<std::size_t>(std::popcount(uncovered)) + max_size - 1) / max_size;
    if (used + lower >= best) return;
    // Branch on the uncovered vertex with the fewest candidate edges.
    std::size_t pick = n;
    std::size_t fewest = static_cast<std::size_t>(-1);
    for (std::size_t v = 0; v < n; ++v)
      if ((uncovered >> v & 1) && through[v].size() < fewest) { fewest = through[v].size(); pick = v; }
    for (std::uint64_t m : through[pick]) self(self, uncovered & ~m, used + 1);
  };
  dfs(dfs, full, 0);
  return best;
}

struct FeasibleOutcome {
  Feasibility status = Feasibility::unknown;
  std::optional<CoverPartition> witness;
  std::uint64_t nodes = 0;
};

// Decides whether the edge instances split into k classes all covering every
// vertex. Backtracking over instances, largest edges first; a branch dies as
// soon as some vertex has fewer unassigned incident instances than missing
// classes. Class labels are canonicalized (first occurrences in increasing
// order), and the search order is fixed, so the witness is deterministic.
inline FeasibleOutcome feasible_k(const MultiHypergraph& h, std::size_t k,
                                  const SolverLimits& limits = {}) {
  if (k == 0) throw InputError("feasible_k: k must be positive");
  if (k > 64) throw InputError("feasible_k: more than 64 classes is beyond this solver");

  FeasibleOutcome out;
  const std::size_t n = h.vertex_count();
  if (n > 0) {
    if (h.first_isolated_vertex()) { out.status = Feasibility::infeasible; return out; }
    if (h.min_degree() < k) { out.status = Feasibility::infeasible; return out; }
  }

  // Linear instance ids; empty edges cannot cover anything, so they are
  // preassigned to class 0 and skipped by the search.
  const std::size_t total = h.instance_count();
  std::vector<std::size_t> order;
  order.reserve(total);
  for (std::size_t e = 0; e < h.edge_count(); ++e)
    if (!h.edge(e).verts.empty())
      for (std::size_t c = 0; c < h.edge(e).multiplicity; ++c)
        order.push_back(h.instance_index(EdgeInstance{e, c}));
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return h.edge(h.instance_at(a).edge).verts.size() > h.edge(h.instance_at(b).edge).verts.size();
  });

  const std::uint64_t full = (k == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1);
  // covered[v] has bit c set while some assigned instance through v uses
  // class c; count[v][c] makes the unassignment exact.
  std::vector<std::uint64_t> covered(n, 0);
  std::vector<std::vector<std::uint32_t>> count(n, std::vector<std::uint32_t>(k, 0));
  std::vector<std::size_t> remaining(n, 0);
  for (const Edge& e : h.edges())
    for (Vertex v : e.verts) remaining[v] += e.multiplicity;

  std::vector<std::size_t> chosen(order.size(), 0);
  const auto start = std::chrono::steady_clock::now();
  bool budget_hit = false;

  auto out_of_budget = [&]() {
    if (out.nodes > limits.node_budget) return true;
    if (limits.time_budget_ms && (out.nodes & 1023) == 0) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
      if (static_cast<std::uint64_t>(ms) > limits.time_budget_ms) return true;
    }
    return false;
  };

  auto dfs = [&](auto&& self, std::size_t pos, std::size_t classes_used) -> bool {
    if (pos == order.size()) {
      for (Vertex v = 0; v < n; ++v)
        if (covered[v] != full) return false;
      return true;
    }
    EdgeInstance inst = h.instance_at(order[pos]);
    const auto& verts = h.edge(inst.edge).verts;
    std::size_t limit = std::min(k, classes_used + 1);  // label symmetry breaking
    for (std::size_t cls = 0; cls < limit; ++cls) {
      ++out.nodes;
      if (out_of_budget()) { budget_hit = true; return false; }
      bool ok = true;
      for (Vertex v : verts) {
        if (count[v][cls]++ == 0) covered[v] |= std::uint64_t{1} << cls;
        --remaining[v];
      }
      for (Vertex v : verts) {
        std::size_t missing = k - static_cast<std::size_t>(std::popcount(covered[v]));
        if (missing > remaining[v]) { ok = false; break; }
      }
      if (ok) {
        chosen[pos] = cls;
        if (self(self, pos + 1, std::max(classes_used, cls + 1))) return true;
      }
      for (Vertex v : verts) {
        if (--count[v][cls] == 0) covered[v] &= ~(std::uint64_t{1} << cls);
        ++remaining[v];
      }
      if (budget_hit) return false;
    }
    return false;
  };

  bool found = dfs(dfs, 0, 0);
  if (found) {
    CoverPartition p = make_partition_shell(h, k);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      EdgeInstance inst = h.instance_at(order[pos]);
      p.assign[inst.edge][inst.copy] = chosen[pos];
    }
    out.status = Feasibility::feasible;
    out.witness = std::move(p);
  } else {
    out.status = budget_hit ? Feasibility::unknown : Feasibility::infeasible;
  }
  return out;
}

struct CoveringNumberOutcome {
  Feasibility status = Feasibility::unknown;  // feasible = exactly solved
  std::size_t value = 0;                      // the covering number when solved
  std::size_t lower_bound = 0;                // best k proven feasible
  std::optional<CoverPartition> witness;
  std::uint64_t nodes = 0;
};

// Largest k for which the edges split into k covering classes. Descends from
// the a-priori upper bound min(min degree, weight / min_cover_size); the
// first feasible k is the answer when everything above it was refuted, and
// only a lower bound when some larger k ran out of budget.
inline CoveringNumberOutcome covering_number_exact(const MultiHypergraph& h,
                                                   const SolverLimits& limits = {}) {
  if (h.vertex_count() == 0)
    throw InputError("covering_number_exact: no vertices; every class covers vacuously");

  CoveringNumberOutcome out;
  if (h.first_isolated_vertex()) {
    // Convention: an uncoverable vertex makes the value 0.
    out.status = Feasibility::feasible;
    return out;
  }

  std::size_t t = min_cover_size(h);
  std::size_t ub = std::min(h.min_degree(), h.instance_count() / t);
  bool capped = false;
  if (ub > 64) { ub = 64; capped = true; }

  bool any_unknown = false;
  for (std::size_t k = ub; k >= 1; --k) {
    FeasibleOutcome f = feasible_k(h, k, limits);
    out.nodes += f.nodes;
    if (f.status == Feasibility::feasible) {
      out.lower_bound = k;
      out.value = k;
      out.witness = std::move(f.witness);
      out.status = (any_unknown || (capped && k == 64)) ? Feasibility::unknown
                                                        : Feasibility::feasible;
      return out;
    }
    if (f.status == Feasibility::unknown) any_unknown = true;
  }
  if (any_unknown) {
    // Budget so tight that even k = 1 was cut off: nothing is proven.
    out.status = Feasibility::unknown;
    return out;
  }
  // k = 1 is always feasible without isolated vertices, so we cannot get here.
  throw std::logic_error("covering_number_exact: descent fell through");
}

}  // namespace hypercover
