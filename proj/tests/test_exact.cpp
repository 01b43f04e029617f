#include <catch2/catch_amalgamated.hpp>

#include "hypercover/corpus.hpp"
#include "hypercover/exact.hpp"
#include "hypercover/generators.hpp"
#include "support.hpp"

using namespace hypercover;

namespace {

std::size_t oracle_value(const MultiHypergraph& h) {
  CoveringNumberOutcome out = covering_number_exact(h);
  REQUIRE(out.status == Feasibility::feasible);
  REQUIRE(out.witness.has_value());
  REQUIRE(verify_cover_partition(h, *out.witness).valid);
  REQUIRE(out.witness->k == out.value);
  return out.value;
}

}  // namespace

TEST_CASE("covering numbers of pinned instances") {
  CHECK(oracle_value(gen_complete(4)) == 3);
  CHECK(oracle_value(gen_complete(5)) == 3);
  CHECK(oracle_value(testsupport::cycle(5)) == 1);
  CHECK(oracle_value(testsupport::cycle(4)) == 2);
  CHECK(oracle_value(gen_cube(4)) == 1);
  CHECK(oracle_value(gen_projective(2, 2)) == 1);
}

TEST_CASE("near regular triangle multigraphs stay below their class count") {
  // These instances have min degree matching the k-cover prerequisite less
  // one, and their covering number comes out exactly k - 1.
  for (std::size_t k = 2; k <= 6; ++k) {
    MultiHypergraph t = gen_triangle_multi(k);
    CHECK(oracle_value(t) == k - 1);
  }
}

TEST_CASE("seven point plane has no 2-cover") {
  MultiHypergraph fano = gen_projective(2, 2);
  FeasibleOutcome f = feasible_k(fano, 2);
  CHECK(f.status == Feasibility::infeasible);
  CHECK_FALSE(f.witness.has_value());
  CHECK(f.nodes >= 1);
  // The refutation is deterministic, node for node.
  FeasibleOutcome again = feasible_k(fano, 2);
  CHECK(again.nodes == f.nodes);

  FeasibleOutcome one = feasible_k(fano, 1);
  REQUIRE(one.status == Feasibility::feasible);
  CHECK(verify_cover_partition(fano, *one.witness).valid);
}

TEST_CASE("minimum cover sizes of pinned instances") {
  CHECK(min_cover_size(gen_projective(2, 2)) == 3);
  CHECK(min_cover_size(gen_projective(2, 3)) == 4);
  CHECK(min_cover_size(testsupport::cycle(4)) == 2);
  CHECK(min_cover_size(MultiHypergraph(3, {Edge{{0, 1, 2}}})) == 1);
  CHECK_THROWS_AS(min_cover_size(MultiHypergraph(2, {Edge{{0}}})), InfeasibleError);
}

TEST_CASE("covering number sits inside its a-priori sandwich") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    MultiHypergraph h = corpus_random_hypergraph(seed, false);
    if (h.first_isolated_vertex()) continue;
    CoveringNumberOutcome out = covering_number_exact(h);
    REQUIRE(out.status == Feasibility::feasible);
    CHECK(out.value >= 1);
    CHECK(out.value <= h.min_degree());
    CHECK(out.value <= h.instance_count() / min_cover_size(h));
    CHECK(out.lower_bound == out.value);
    CHECK(verify_cover_partition(h, *out.witness).valid);
  }
}

TEST_CASE("duplicating every edge cannot lower the covering number") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    MultiHypergraph h = corpus_random_hypergraph(seed, true);
    if (h.first_isolated_vertex()) continue;
    std::size_t base = oracle_value(h);
    std::size_t doubled = oracle_value(multiply_edges(h, 2));
    CHECK(doubled >= base);
  }
}

TEST_CASE("adding an apex vertex to every edge preserves the covering number") {
  // A class is valid in the extension iff it is valid downstairs: the apex
  // lies in every edge, so any nonempty class covers it for free.
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    MultiHypergraph h = corpus_random_hypergraph(seed, true);
    if (h.first_isolated_vertex()) continue;
    CHECK(oracle_value(extend_by_vertex(h)) == oracle_value(h));
  }
}

TEST_CASE("exhausted node budgets surface as unknown") {
  MultiHypergraph fano = gen_projective(2, 2);
  SolverLimits tight;
  tight.node_budget = 5;
  FeasibleOutcome f = feasible_k(fano, 2, tight);
  CHECK(f.status == Feasibility::unknown);
  CHECK(std::string(to_string(f.status)) == "unknown");

  // Room for the k = 1 pass but not for the k = 2 refutation: the result is
  // an honest lower bound, not a proof.
  SolverLimits partial;
  partial.node_budget = 20;
  CoveringNumberOutcome out = covering_number_exact(fano, partial);
  CHECK(out.status == Feasibility::unknown);
  CHECK(out.lower_bound == 1);
  CHECK(out.value == 1);
  REQUIRE(out.witness.has_value());
  CHECK(verify_cover_partition(fano, *out.witness).valid);

  // With no room at all nothing is proven.
  CoveringNumberOutcome nothing = covering_number_exact(fano, tight);
  CHECK(nothing.status == Feasibility::unknown);
  CHECK(nothing.lower_bound == 0);
  CHECK_FALSE(nothing.witness.has_value());
}

TEST_CASE("degenerate inputs follow the documented conventions") {
  // A vertex no edge touches caps the covering number at zero.
  MultiHypergraph lonely(2, {Edge{{0}}});
  CoveringNumberOutcome out = covering_number_exact(lonely);
  CHECK(out.status == Feasibility::feasible);
  CHECK(out.value == 0);
  CHECK_FALSE(out.witness.has_value());
  CHECK(feasible_k(lonely, 1).status == Feasibility::infeasible);

  CHECK_THROWS_AS(covering_number_exact(MultiHypergraph()), InputError);
  CHECK_THROWS_AS(feasible_k(gen_complete(3), 0), InputError);
  CHECK_THROWS_AS(feasible_k(gen_complete(3), 65), InputError);
}

TEST_CASE("feasibility is monotone downward in k") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    MultiHypergraph h = corpus_multigraph_min_degree(4, seed);
    std::size_t value = oracle_value(h);
    for (std::size_t k = 1; k <= value; ++k)
      CHECK(feasible_k(h, k).status == Feasibility::feasible);
    CHECK(feasible_k(h, value + 1).status != Feasibility::feasible);
  }
}
