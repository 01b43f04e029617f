#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "hypercover/corpus.hpp"
#include "hypercover/exact.hpp"
#include "hypercover/generators.hpp"
#include "hypercover/levelling.hpp"
#include "support.hpp"

using namespace hypercover;

TEST_CASE("trimming K4 to degree 2 drops largest-index incidences") {
  // Each vertex in turn loses its highest (edge, copy); the last edge empties.
  MultiHypergraph k4 = gen_complete(4);
  TrimResult t = trim_to_degree(k4, 2);
  REQUIRE(t.trimmed.edge_count() == 6);
  CHECK(t.trimmed.edge(0).verts == std::vector<Vertex>{0, 1});
  CHECK(t.trimmed.edge(1).verts == std::vector<Vertex>{0, 2});
  CHECK(t.trimmed.edge(2).verts == std::vector<Vertex>{3});
  CHECK(t.trimmed.edge(3).verts == std::vector<Vertex>{1, 2});
  CHECK(t.trimmed.edge(4).verts == std::vector<Vertex>{3});
  CHECK(t.trimmed.edge(5).verts.empty());
  for (Vertex v = 0; v < 4; ++v) CHECK(t.trimmed.degree(v) == 2);
  REQUIRE(t.provenance.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(t.provenance[i] == k4.instance_at(i));
}

TEST_CASE("trimming a star to degree 1 peels the centre") {
  MultiHypergraph star(4, {Edge{{0, 1}}, Edge{{0, 2}}, Edge{{0, 3}}});
  TrimResult t = trim_to_degree(star, 1);
  CHECK(t.trimmed.edge(0).verts == std::vector<Vertex>{0, 1});
  CHECK(t.trimmed.edge(1).verts == std::vector<Vertex>{2});
  CHECK(t.trimmed.edge(2).verts == std::vector<Vertex>{3});
}

TEST_CASE("trim rejects degrees above the minimum") {
  MultiHypergraph star(4, {Edge{{0, 1}}, Edge{{0, 2}}, Edge{{0, 3}}});
  CHECK_THROWS_AS(trim_to_degree(star, 2), InfeasibleError);
  CHECK_THROWS_AS(trim_to_degree(star, 0), InputError);
}

TEST_CASE("levelling an already regular uniform simple instance is the identity") {
  MultiHypergraph k4 = gen_complete(4);
  LevellingMap l = level(k4, 2, 3);
  CHECK(l.target == k4);
  REQUIRE(l.embedded.size() == 4);
  for (Vertex v = 0; v < 4; ++v) CHECK(l.embedded[v] == v);
  for (std::size_t i = 0; i < k4.instance_count(); ++i)
    CHECK(l.target.instance_index(l.edge_map[i]) == i);
  CHECK(is_levelling(l, 2, 3));
}

TEST_CASE("levelling the triangle into triples shares padding vertices") {
  // Trimming K3 to degree 2 is a no-op; padding to r = 3 adds one fresh
  // vertex per edge, shared by both copies, which is what lifts the pads to
  // degree d. Two copies of 3 vertices plus 3 shared pads, 6 edge instances.
  MultiHypergraph k3 = gen_complete(3);
  LevellingMap l = level(k3, 3, 2);
  CHECK(is_levelling(l, 3, 2));
  CHECK(l.target.vertex_count() == 3 * 2 + 3);
  CHECK(l.target.instance_count() == 3 * 2);
  CHECK(l.target.uniform_size() == std::size_t{3});
  CHECK(l.target.regular_degree() == std::size_t{2});
}

TEST_CASE("levelling properties hold across the corpus") {
  std::size_t done = 0;
  for (std::uint64_t seed = 0; done < 120; ++seed) {
    MultiHypergraph h = corpus_random_hypergraph(seed, false);
    if (h.instance_count() == 0 || h.min_degree() == 0) continue;
    std::size_t r = h.max_edge_size();
    std::size_t d = h.min_degree();
    LevellingMap l = level(h, r, d);
    REQUIRE(is_levelling(l, r, d));
    CHECK(l.source == h);
    CHECK(l.target.uniform_size() == r);
    CHECK(l.target.regular_degree() == d);

    // Images of distinct instances are distinct target instances.
    std::set<std::size_t> images;
    for (const EdgeInstance& inst : l.edge_map)
      images.insert(l.target.instance_index(inst));
    CHECK(images.size() == h.instance_count());

    // A cover of the target pulls back to a cover of the source.
    CoverPartition everything = make_partition_shell(l.target, 1);
    CoverPartition pulled = pull_back(l, everything);
    CHECK(verify_cover_partition(h, pulled).valid);
    ++done;
  }
}

TEST_CASE("pull_back carries class structure through the map") {
  MultiHypergraph c4 = testsupport::cycle(4);
  LevellingMap l = level(c4, 2, 2);
  REQUIRE(l.target == c4);  // identity case keeps the classes aligned
  CoverPartition p = make_partition_shell(c4, 2);
  p.assign = {{0}, {1}, {1}, {0}};
  REQUIRE(verify_cover_partition(c4, p).valid);
  CoverPartition pulled = pull_back(l, p);
  CHECK(pulled == p);
}

TEST_CASE("pull_back keeps validity on a non-identity levelling") {
  // Star with a doubled leaf edge: trimming is needed, so the target is a
  // genuine rebuild; a 2-cover found on the target must pull back valid.
  MultiHypergraph h(4, {Edge{{0, 1}}, Edge{{0, 2}, 2}, Edge{{0, 3}, 2}});
  LevellingMap l = level(h, 2, h.min_degree());
  REQUIRE(is_levelling(l, 2, h.min_degree()));
  CoveringNumberOutcome out = covering_number_exact(l.target);
  REQUIRE(out.status == Feasibility::feasible);
  REQUIRE(out.value >= 1);
  CoverPartition pulled = pull_back(l, *out.witness);
  CHECK(verify_cover_partition(h, pulled).valid);
}

TEST_CASE("levelling rejects impossible shapes") {
  MultiHypergraph k4 = gen_complete(4);
  CHECK_THROWS_AS(level(k4, 1, 3), InfeasibleError);  // r below an edge size
  CHECK_THROWS_AS(level(k4, 2, 4), InfeasibleError);  // d above the min degree
  CHECK_THROWS_AS(level(k4, 2, 0), InputError);
}

TEST_CASE("sidecar json lists the instance map and embedding") {
  MultiHypergraph k3 = gen_complete(3);
  LevellingMap l = level(k3, 3, 2);
  nlohmann::ordered_json j = levelling_sidecar_json(l, "in.hyg", "out.hyg");
  CHECK(j["source_file"] == "in.hyg");
  CHECK(j["target_file"] == "out.hyg");
  REQUIRE(j["edge_map"].size() == k3.instance_count());
  CHECK(j["edge_map"][0][0] == 0);
  CHECK(j["embedded"].size() == 3);
  std::size_t target_instances = l.target.instance_count();
  for (const auto& pair : j["edge_map"]) CHECK(pair[1].get<std::size_t>() < target_instances);
}
