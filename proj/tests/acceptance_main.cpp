#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypercover/corpus.hpp"
#include "hypercover/exact.hpp"
#include "hypercover/generators.hpp"
#include "hypercover/graph_cover.hpp"
#include "hypercover/levelling.hpp"
#include "hypercover/lll_cover.hpp"
#include "hypercover/tables.hpp"
#include "support.hpp"

// End-to-end acceptance checks. Each criterion prints exactly one PASS or
// FAIL line; the binary exits nonzero when anything failed. All randomness
// is seeded, so a rerun reproduces the same numbers.

using namespace hypercover;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void fail(const std::string& why) {
    ok = false;
    if (!note.empty()) note += "; ";
    note += why;
  }
};

std::size_t oracle_value(const MultiHypergraph& h, Outcome& out, const std::string& what) {
  CoveringNumberOutcome o = covering_number_exact(h);
  if (o.status != Feasibility::feasible) {
    out.fail(what + ": oracle did not finish");
    return 0;
  }
  if (o.value > 0 &&
      (!o.witness || !verify_cover_partition(h, *o.witness).valid)) {
    out.fail(what + ": oracle witness invalid");
  }
  return o.value;
}

Outcome criterion1_multigraph_table() {
  Outcome out;
  for (std::size_t k = 2; k <= 6; ++k) {
    std::size_t value = oracle_value(gen_triangle_multi(k), out, "triangle k=" + std::to_string(k));
    if (value >= k) out.fail("triangle k=" + std::to_string(k) + " covering number " +
                             std::to_string(value) + " not below k");
    std::size_t d = (4 * k + 1) / 3;
    for (std::uint64_t i = 0; i < 100; ++i) {
      MultiHypergraph g = corpus_multigraph_min_degree(d, k * 1000 + i);
      CoverPartition p = cover_multigraph_k(g, k);
      if (!verify_cover_partition(g, p).valid) {
        out.fail("multigraph cover invalid at k=" + std::to_string(k) + " seed " + std::to_string(i));
        break;
      }
    }
  }
  TableSpec spec;
  spec.id = "fm2k";
  spec.trials = 100;
  TableResult table = run_table(spec);
  if (!table.all_ok) out.fail("fm2k table reported a failing row");
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    std::size_t k = 2 + i;
    if (table.rows[i][1] != std::to_string((4 * k + 1) / 3))
      out.fail("fm2k formula mismatch at k=" + std::to_string(k));
  }
  if (out.ok) out.note = "k=2..6: triangle oracles below k, 500 corpus covers, formula row matches";
  return out;
}

Outcome criterion2_graph_covers() {
  Outcome out;
  for (std::size_t k = 2; k <= 5; ++k) {
    for (std::uint64_t i = 0; i < 100; ++i) {
      MultiHypergraph g = corpus_simple_graph_min_degree(k + 1, k * 1000 + i);
      CoverPartition p = cover_graph_k(g, k);
      if (!verify_cover_partition(g, p).valid) {
        out.fail("graph cover invalid at k=" + std::to_string(k) + " seed " + std::to_string(i));
        break;
      }
    }
    MultiHypergraph witness = (k % 2 == 0) ? gen_complete(k + 1) : gen_odd_near_regular(k);
    std::size_t value = oracle_value(witness, out, "degree-k witness k=" + std::to_string(k));
    if (value >= k)
      out.fail("degree-k witness at k=" + std::to_string(k) + " reached " + std::to_string(value));
  }
  if (out.ok) out.note = "k=2..5: 400 corpus covers verified, degree-k witnesses stay below k";
  return out;
}

Outcome criterion3_two_cover_thresholds() {
  Outcome out;
  MultiHypergraph fano = gen_projective(2, 2);
  if (oracle_value(fano, out, "7-point plane") != 1) out.fail("7-point plane covering number is not 1");
  if (feasible_k(fano, 2).status != Feasibility::infeasible)
    out.fail("7-point plane unexpectedly admits a 2-cover");

  for (std::uint64_t s = 0; s < 100; ++s) {
    std::size_t n = (s % 2) ? 9 : 6;
    MultiHypergraph h = gen_random_regular_uniform(n, 3, 4, s);
    FeasibleOutcome f = feasible_k(h, 2);
    if (f.status != Feasibility::feasible || !verify_cover_partition(h, *f.witness).valid) {
      out.fail("triple system with degree 4 missing a 2-cover at seed " + std::to_string(s));
      break;
    }
  }

  for (std::uint64_t s = 0; s < 50; ++s) {
    MultiHypergraph h = corpus_simple_uniform_regular(6 + s % 3, 4, 4, s);
    bool solver = feasible_k(h, 2).status == Feasibility::feasible;
    bool rainbow = testsupport::rainbow_vertex_k_exists(dualize(h), 2);
    if (solver != rainbow) {
      out.fail("duality cross-check disagrees at seed " + std::to_string(s));
      break;
    }
    if (!rainbow) {
      out.fail("quadruple system with degree 4 missing a rainbow 2-colouring at seed " +
               std::to_string(s));
      break;
    }
  }
  if (out.ok)
    out.note = "7-point plane pinned at 1, 100 triple systems 2-cover, 50 dual rainbow checks agree";
  return out;
}

Outcome criterion4_projective_and_cube() {
  Outcome out;
  MultiHypergraph fano = gen_projective(2, 2);
  if (fano.vertex_count() != 7 || fano.edge_count() != 7 ||
      fano.regular_degree() != std::size_t{3} || fano.uniform_size() != std::size_t{3})
    out.fail("7-point plane counts off");
  MultiHypergraph pg23 = gen_projective(2, 3);
  if (pg23.vertex_count() != 13 || pg23.edge_count() != 13 ||
      pg23.regular_degree() != std::size_t{4} || pg23.uniform_size() != std::size_t{4})
    out.fail("13-point plane counts off");
  if (min_cover_size(fano) != 3) out.fail("7-point plane minimum cover is not 3");

  for (std::size_t d : {4, 5, 6}) {
    if (oracle_value(gen_cube(d), out, "cube d=" + std::to_string(d)) != 1)
      out.fail("cube d=" + std::to_string(d) + " covering number is not 1");
  }

  for (std::size_t d = 2; d <= 8; ++d) {
    MultiHypergraph h = gen_cube(d);
    for (std::uint32_t picked = 0; picked < (1u << d); ++picked) {
      if (static_cast<std::size_t>(std::popcount(picked)) > d / 2) continue;
      bool all_covered = true;
      for (Vertex v = 0; v < h.vertex_count() && all_covered; ++v) {
        bool covered = false;
        for (std::size_t e = 0; e < d && !covered; ++e)
          if ((picked >> e & 1) && h.edge_contains(e, v)) covered = true;
        all_covered = covered;
      }
      if (all_covered) {
        out.fail("cube d=" + std::to_string(d) + ": " + std::to_string(std::popcount(picked)) +
                 " edges covered everything");
        break;
      }
    }
  }
  if (out.ok) out.note = "plane counts 7/7/3 and 13/13/4, min cover 3, cube values 1, no half-cover";
  return out;
}

Outcome criterion5_threshold_machinery() {
  Outcome out;
  for (std::size_t r = 3; r <= 128; ++r) {
    for (std::size_t k = 1; k <= 16; ++k) {
      long double lr = std::log(static_cast<long double>(r));
      long double alpha = 5.0L * std::log(lr) / lr;
      long double want = (1.0L + alpha) * static_cast<long double>(k) * lr;
      long double got = static_cast<long double>(threshold_case1(r, k));
      if (got < want - 1.0L || got > want + 2.0L) {
        out.fail("threshold off at r=" + std::to_string(r) + " k=" + std::to_string(k));
        break;
      }
    }
  }

  std::size_t resample_runs = 0;
  for (std::size_t r : {3, 4, 5}) {
    for (std::size_t k : {2, 3}) {
      std::size_t d = std::max(threshold_case1(r, k), r * k);
      for (std::uint64_t seed = 0; seed < 9; ++seed) {
        MultiHypergraph h = gen_random_regular_uniform(2 * r, r, d, seed);
        LLLParams params;
        params.seed = seed;
        ResampleOutcome res = random_cover_resample(h, k, params);
        ++resample_runs;
        if (!res.ok || !verify_cover_partition(h, res.partition).valid) {
          out.fail("resampling failed at r=" + std::to_string(r) + " k=" + std::to_string(k) +
                   " seed " + std::to_string(seed));
        }
        LllDiagnostics expect = lll_diagnostics(r, k, d);
        if (res.diagnostics.lll_product != expect.lll_product)
          out.fail("per-run diagnostics not reported faithfully");
      }
    }
  }
  if (resample_runs < 50) out.fail("fewer than 50 resampling runs");

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    MultiHypergraph h = gen_random_regular_uniform(12, 3, 12, seed);
    LLLParams params;
    params.seed = seed;
    RecursiveOutcome rec = cover_recursive(h, 4, params);
    if (!rec.ok || !verify_cover_partition(h, rec.partition).valid) {
      out.fail("recursive cover failed at seed " + std::to_string(seed));
      break;
    }
  }

  for (std::size_t r : {3, 4, 5}) {
    for (std::size_t k : {2, 3}) {
      double rk = static_cast<double>(r * k);
      std::size_t d = static_cast<std::size_t>(std::ceil(3.0 * rk * std::log(rk)));
      if (lll_diagnostics(r, k, d).lll_product >= 1.0)
        out.fail("diagnostic product not below 1 at r=" + std::to_string(r) +
                 " k=" + std::to_string(k));
    }
  }
  if (out.ok)
    out.note = "thresholds within 1, " + std::to_string(resample_runs) +
               "/54 resamples verified, 20 recursive covers, diagnostics sane";
  return out;
}

Outcome criterion6_levelling_duality() {
  Outcome out;
  std::size_t dual_involutions = 0, rainbow_checks = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    MultiHypergraph h = corpus_random_hypergraph(seed, seed % 2 == 0);
    std::size_t r = h.max_edge_size(), d = h.min_degree();
    if (r == 0 || d == 0) {
      out.fail("corpus produced a degenerate instance at seed " + std::to_string(seed));
      continue;
    }
    LevellingMap l = level(h, r, d);
    if (!is_levelling(l, r, d)) {
      out.fail("levelling conditions fail at seed " + std::to_string(seed));
      break;
    }
    CoverPartition one = make_partition_shell(l.target, 1);
    if (!verify_cover_partition(h, pull_back(l, one)).valid) {
      out.fail("pull-back of the whole-set cover fails at seed " + std::to_string(seed));
      break;
    }
    if (d >= 2) {
      FeasibleOutcome two = feasible_k(l.target, 2);
      if (two.status == Feasibility::feasible &&
          !verify_cover_partition(h, pull_back(l, *two.witness)).valid) {
        out.fail("pull-back of a 2-cover fails at seed " + std::to_string(seed));
        break;
      }
    }

    bool dualizable = h.is_simple() && !h.has_empty_edge() && !h.first_isolated_vertex();
    if (dualizable) {
      if (!(dualize(dualize(h)).canonicalized() == h.canonicalized())) {
        out.fail("double dual differs at seed " + std::to_string(seed));
        break;
      }
      ++dual_involutions;
      if (h.instance_count() <= 12) {
        std::size_t value = oracle_value(h, out, "corpus seed " + std::to_string(seed));
        if (value != testsupport::max_rainbow_vertex_k_brute(dualize(h))) {
          out.fail("dual rainbow cross-check disagrees at seed " + std::to_string(seed));
          break;
        }
        ++rainbow_checks;
      }
    }
  }
  if (dual_involutions < 40) out.fail("too few dual involution checks");
  if (rainbow_checks < 30) out.fail("too few rainbow cross-checks");
  if (out.ok)
    out.note = "200 levellings verified, " + std::to_string(dual_involutions) +
               " double duals, " + std::to_string(rainbow_checks) + " rainbow cross-checks";
  return out;
}

Outcome criterion7_two_class_splitting() {
  Outcome out;
  auto exact_two = [](const MultiHypergraph& residual) {
    FeasibleOutcome f = feasible_k(residual, 2);
    if (f.status != Feasibility::feasible)
      throw InfeasibleError("residual unexpectedly has no 2-cover");
    return *f.witness;
  };
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    MultiHypergraph h = corpus_mixed_triple_system(seed);
    if (h.min_degree() < 4) {
      out.fail("mixed corpus degree dropped below 4 at seed " + std::to_string(seed));
      break;
    }
    CoverPartition p = split2_multi(h, exact_two);
    if (p.k != 2 || !verify_cover_partition(h, p).valid) {
      out.fail("two-class split invalid at seed " + std::to_string(seed));
      break;
    }
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    MultiHypergraph doubled = multiply_edges(corpus_simple_uniform_regular(9, 3, 4, seed), 2);
    bool called = false;
    CoverPartition p = split2_multi(doubled, [&](const MultiHypergraph& residual) {
      called = true;
      return make_partition_shell(residual, 2);
    });
    if (called) {
      out.fail("doubled input invoked the delegate at seed " + std::to_string(seed));
      break;
    }
    if (!verify_cover_partition(doubled, p).valid) {
      out.fail("doubled split invalid at seed " + std::to_string(seed));
      break;
    }
  }
  if (out.ok) out.note = "100 mixed splits verified, 10 doubled inputs resolved by pairing alone";
  return out;
}

Outcome criterion8_deterministic_json() {
  Outcome out;
  std::string fano = testsupport::work_path("acc_fano.hyg");
  std::string tri = testsupport::work_path("acc_tri.hyg");
  std::string reg = testsupport::work_path("acc_reg.hyg");
  if (testsupport::run_cli("--quiet gen fano -o " + fano).code != 0 ||
      testsupport::run_cli("--quiet gen triangle --k 4 -o " + tri).code != 0 ||
      testsupport::run_cli("--quiet --seed 3 gen random --n 9 --r 3 --d 12 -o " + reg).code != 0) {
    out.fail("generator setup commands failed");
    return out;
  }

  std::vector<std::string> commands = {
      "--json --seed 11 gen fano",
      "--json --seed 11 gen random --n 9 --r 3 --d 4",
      "--json --seed 11 cover " + tri + " --algo multigraph --k 3",
      "--json --seed 11 cover " + reg + " --algo lll --k 3",
      "--json --seed 11 cover " + fano + " --algo hall --k 1",
      "--json --seed 11 exact " + fano + " --k 2",
      "--json --seed 11 exact " + tri,
      "--json --seed 11 table fm2k --trials 10",
      "--json --seed 11 level " + tri + " --r 2 --d 4",
      "--json --seed 11 dual " + fano,
  };
  for (const std::string& cmd : commands) {
    auto a = testsupport::run_cli(cmd);
    auto b = testsupport::run_cli(cmd);
    if (a.code != b.code) {
      out.fail("exit codes differ for: " + cmd);
      continue;
    }
    nlohmann::json ja, jb;
    try {
      ja = nlohmann::json::parse(a.out);
      jb = nlohmann::json::parse(b.out);
    } catch (const nlohmann::json::exception&) {
      out.fail("record is not valid json for: " + cmd);
      continue;
    }
    ja.erase("timings");
    jb.erase("timings");
    if (ja.dump() != jb.dump()) out.fail("records differ for: " + cmd);
  }
  if (out.ok) out.note = std::to_string(commands.size()) + " command pairs byte-identical";
  return out;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    double cap_seconds;
    std::function<Outcome()> run;
  };
  std::vector<Entry> entries = {
      {"multigraph covers at degree (4k+1)/3", 120, criterion1_multigraph_table},
      {"simple graph covers at degree k+1", 120, criterion2_graph_covers},
      {"two-cover thresholds for triple and quadruple systems", 300, criterion3_two_cover_thresholds},
      {"projective and halved-cube instances", 60, criterion4_projective_and_cube},
      {"threshold arithmetic and randomized covering", 180, criterion5_threshold_machinery},
      {"levelling and duality properties", 120, criterion6_levelling_duality},
      {"two-class splitting with mixed multiplicities", 60, criterion7_two_class_splitting},
      {"deterministic json records", 120, criterion8_deterministic_json},
  };

  int failures = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = entries[i].run();
    } catch (const std::exception& e) {
      out.fail(std::string("unexpected exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > entries[i].cap_seconds)
      out.fail("runtime " + std::to_string(secs) + "s exceeds the " +
               std::to_string(entries[i].cap_seconds) + "s budget");
    std::printf("%s criterion %zu: %s (%.1fs) %s\n", out.ok ? "PASS" : "FAIL", i + 1,
                entries[i].name, secs, out.note.c_str());
    std::fflush(stdout);
    if (!out.ok) ++failures;
  }
  std::printf("%d/8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
