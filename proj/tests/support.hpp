#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypercover/hypergraph.hpp"

// Shared helpers for the test binaries: tiny fixture instances, an
// independent exhaustive rainbow-colouring search used to cross-check the
// oracle through the dual, and process plumbing for driving the CLI.

namespace testsupport {

using namespace hypercover;

inline MultiHypergraph path3() {
  return MultiHypergraph(3, {Edge{{0, 1}}, Edge{{1, 2}}});
}

inline MultiHypergraph cycle(std::size_t n) {
  std::vector<Edge> es;
  for (Vertex v = 0; v < n; ++v) es.push_back(Edge{{std::min(v, (v + 1) % n), std::max(v, (v + 1) % n)}});
  return MultiHypergraph(n, std::move(es)).canonicalized();
}

// Largest k for which the instances can be k-coloured so that every vertex
// sees all k colours, found by plain odometer enumeration over all k^m
// assignments. Deliberately shares nothing with the branch-and-bound solver.
inline std::size_t max_rainbow_k_brute(const MultiHypergraph& h) {
  const std::size_t m = h.instance_count();
  if (h.first_isolated_vertex()) return 0;
  std::size_t best = 0;
  for (std::size_t k = 1; k <= m; ++k) {
    std::vector<std::size_t> colour(m, 0);
    bool found = false;
    for (;;) {
      bool all_ok = true;
      for (Vertex v = 0; all_ok && v < h.vertex_count(); ++v) {
        std::vector<bool> seen(k, false);
        for (std::size_t i = 0; i < m; ++i) {
          EdgeInstance inst = h.instance_at(i);
          if (h.edge_contains(inst.edge, v)) seen[colour[i]] = true;
        }
        for (std::size_t c = 0; c < k; ++c) all_ok = all_ok && seen[c];
      }
      if (all_ok) { found = true; break; }
      std::size_t i = 0;
      while (i < m && ++colour[i] == k) colour[i++] = 0;
      if (i == m) break;
    }
    if (!found) break;
    best = k;
  }
  return best;
}

// Whether the VERTICES can be k-coloured so that every edge instance
// contains all k colours, by plain odometer enumeration of the k^n
// assignments. Applied to a dual instance this is the mirror image of
// max_rainbow_k_brute on the primal.
inline bool rainbow_vertex_k_exists(const MultiHypergraph& h, std::size_t k) {
  const std::size_t n = h.vertex_count();
  if (h.instance_count() == 0 || h.has_empty_edge()) return false;
  std::vector<std::size_t> colour(n, 0);
  for (;;) {
    bool all_ok = true;
    for (std::size_t e = 0; all_ok && e < h.edge_count(); ++e) {
      std::vector<bool> seen(k, false);
      for (Vertex v : h.edge(e).verts) seen[colour[v]] = true;
      for (std::size_t c = 0; c < k; ++c) all_ok = all_ok && seen[c];
    }
    if (all_ok) return true;
    std::size_t i = 0;
    while (i < n && ++colour[i] == k) colour[i++] = 0;
    if (i == n) return false;
  }
}

inline std::size_t max_rainbow_vertex_k_brute(const MultiHypergraph& h) {
  std::size_t best = 0;
  while (best < h.vertex_count() && rainbow_vertex_k_exists(h, best + 1)) ++best;
  return best;
}

struct CliResult {
  int code = -1;
  std::string out;
};

inline CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(HGCOVER_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
  CliResult r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.code = status >= 0 ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

inline std::string golden_path(const std::string& name) {
  return std::string(HGCOVER_GOLDEN_DIR) + "/" + name;
}

inline std::string work_path(const std::string& name) {
  return std::string(HGCOVER_WORK_DIR) + "/" + name;
}

}  // namespace testsupport
