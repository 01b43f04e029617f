#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypercover/hypergraph.hpp"

// Text formats.
//
// Hypergraph (.hyg):
//   hyg 1
//   vertices <n>
//   edge <multiplicity> <v1> <v2> ... <vm>
// Vertex lists are strictly increasing; "edge 1" with no vertices is an empty
// edge; lines starting with '#' are comments.
//
// Cover partition (.json):
//   {"k": <int>, "classes": [[[edge_index, copy_index], ...], ...]}

namespace hypercover {

namespace detail {

inline bool parse_size(const std::string& tok, std::size_t& out) {
  if (tok.empty()) return false;
  std::size_t value = 0;
  for (char c : tok) {
    if (c < '0' || c > '9') return false;
    std::size_t digit = static_cast<std::size_t>(c - '0');
    if (value > (static_cast<std::size_t>(-1) - digit) / 10) return false;
    value = value * 10 + digit;
  }
  out = value;
  return true;
}

}  // namespace detail

inline MultiHypergraph read_hyg(std::istream& in, const std::string& source = "<stream>") {
  std::string line;
  std::size_t lineno = 0;
  bool saw_header = false, saw_vertices = false;
  std::size_t n = 0;
  std::vector<Edge> edges;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;          // blank line
    if (tok[0] == '#') continue;         // comment

    if (!saw_header) {
      std::string ver;
      if (tok != "hyg" || !(ls >> ver) || ver != "1")
        throw ParseError(source, lineno, "expected header 'hyg 1'");
      if (ls >> tok) throw ParseError(source, lineno, "trailing tokens after header");
      saw_header = true;
      continue;
    }
    if (!saw_vertices) {
      if (tok != "vertices") throw ParseError(source, lineno, "expected 'vertices <n>'");
      std::string count;
      if (!(ls >> count) || !detail::parse_size(count, n))
        throw ParseError(source, lineno, "bad vertex count");
      if (ls >> tok) throw ParseError(source, lineno, "trailing tokens after vertex count");
      saw_vertices = true;
      continue;
    }
    if (tok != "edge") throw ParseError(source, lineno, "expected 'edge <mult> <v...>'");
    std::string mtok;
    std::size_t mult = 0;
    if (!(ls >> mtok) || !detail::parse_size(mtok, mult) || mult == 0)
      throw ParseError(source, lineno, "bad multiplicity");
    Edge e;
    e.multiplicity = mult;
    std::string vtok;
    while (ls >> vtok) {
      std::size_t v = 0;
      if (!detail::parse_size(vtok, v)) throw ParseError(source, lineno, "bad vertex token '" + vtok + "'");
      if (v >= n)
        throw ParseError(source, lineno, "vertex " + vtok + " out of range (n=" + std::to_string(n) + ")");
      if (!e.verts.empty() && e.verts.back() >= v)
        throw ParseError(source, lineno, "vertex list must be strictly increasing");
      e.verts.push_back(v);
    }
    edges.push_back(std::move(e));
  }
  if (!saw_header) throw ParseError(source, lineno, "missing 'hyg 1' header");
  if (!saw_vertices) throw ParseError(source, lineno, "missing 'vertices' line");
  return MultiHypergraph(n, std::move(edges));
}

inline void write_hyg(std::ostream& out, const MultiHypergraph& h) {
  out << "hyg 1\n";
  out << "vertices " << h.vertex_count() << "\n";
  for (const Edge& e : h.edges()) {
    out << "edge " << e.multiplicity;
    for (Vertex v : e.verts) out << ' ' << v;
    out << "\n";
  }
}

inline MultiHypergraph read_hyg_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_hyg(in, path);
}

inline void write_hyg_file(const std::string& path, const MultiHypergraph& h) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  write_hyg(out, h);
}

inline nlohmann::ordered_json partition_to_json(const MultiHypergraph& h,
                                                const CoverPartition& p) {
  if (!partition_is_total(h, p))
    throw InputError("partition_to_json: partition does not match the hypergraph");
  nlohmann::ordered_json j;
  j["k"] = p.k;
  auto classes = nlohmann::ordered_json::array();
  for (std::size_t cls = 0; cls < p.k; ++cls) {
    auto members = nlohmann::ordered_json::array();
    for (std::size_t e = 0; e < h.edge_count(); ++e)
      for (std::size_t c = 0; c < p.assign[e].size(); ++c)
        if (p.assign[e][c] == cls) members.push_back({e, c});
    classes.push_back(std::move(members));
  }
  j["classes"] = std::move(classes);
  return j;
}

inline void write_partition_json(std::ostream& out, const MultiHypergraph& h,
                                 const CoverPartition& p) {
  out << partition_to_json(h, p).dump() << "\n";
}

inline void write_partition_file(const std::string& path, const MultiHypergraph& h,
                                 const CoverPartition& p) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  write_partition_json(out, h, p);
}

// Parses and validates a partition against its host hypergraph; a partial or
// doubly-assigned file is rejected as a shape error.
inline CoverPartition read_partition_json(std::istream& in, const MultiHypergraph& h,
                                          const std::string& source = "<stream>") {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source, 0, std::string("bad JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("k") || !j.contains("classes"))
    throw ParseError(source, 0, "expected object with 'k' and 'classes'");
  if (!j["k"].is_number_unsigned() || j["k"].get<std::size_t>() == 0)
    throw ParseError(source, 0, "'k' must be a positive integer");
  std::size_t k = j["k"].get<std::size_t>();
  if (!j["classes"].is_array() || j["classes"].size() != k)
    throw ParseError(source, 0, "'classes' must be an array of length k");

  CoverPartition p = make_partition_shell(h, k);
  std::vector<std::vector<char>> seen;
  seen.reserve(h.edge_count());
  for (const Edge& e : h.edges()) seen.emplace_back(e.multiplicity, 0);

  std::size_t assigned = 0;
  for (std::size_t cls = 0; cls < k; ++cls) {
    for (const auto& pair : j["classes"][cls]) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_unsigned() ||
          !pair[1].is_number_unsigned())
        throw ParseError(source, 0, "class members must be [edge_index, copy_index] pairs");
      std::size_t e = pair[0].get<std::size_t>();
      std::size_t c = pair[1].get<std::size_t>();
      if (e >= h.edge_count() || c >= h.edge(e).multiplicity)
        throw ParseError(source, 0, "edge instance [" + std::to_string(e) + ", " +
                                        std::to_string(c) + "] out of range");
      if (seen[e][c])
        throw ParseError(source, 0, "edge instance [" + std::to_string(e) + ", " +
                                        std::to_string(c) + "] assigned twice");
      seen[e][c] = 1;
      p.assign[e][c] = cls;
      ++assigned;
    }
  }
  if (assigned != h.instance_count())
    throw ParseError(source, 0, "partition covers " + std::to_string(assigned) + " of " +
                                    std::to_string(h.instance_count()) + " edge instances");
  return p;
}

inline CoverPartition read_partition_file(const std::string& path, const MultiHypergraph& h) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_partition_json(in, h, path);
}

}  // namespace hypercover
