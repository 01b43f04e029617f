// Command-line front end: generators, cover solvers, the exact oracle, the
// partition verifier, levelling, dualization, and the reproduction tables.
//
// Exit codes: 0 success, 1 verification/feasibility failure, 2 input error,
// 3 budget exhaustion.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypercover/io.hpp"
#include "hypercover/lll_cover.hpp"
#include "hypercover/tables.hpp"

namespace {

using namespace hypercover;
using nlohmann::ordered_json;

constexpr int kOk = 0, kFail = 1, kInputError = 2, kBudget = 3;

struct Session {
  bool quiet = false;
  bool json = false;
  std::uint64_t seed = 0;
  ordered_json record;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void begin(const std::string& command) {
    record["command"] = command;
    record["seed"] = seed;
    record["inputs"] = ordered_json::object();
    record["results"] = ordered_json::object();
  }
  void say(const std::string& line) {
    if (!quiet && !json) std::cout << line << "\n";
  }
  int finish(int code) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    record["exit"] = code;
    record["timings"] = ordered_json{{"total_ms", ms}};
    if (json) std::cout << record.dump(2) << "\n";
    return code;
  }
};

std::string hyg_string(const MultiHypergraph& h) {
  std::ostringstream os;
  write_hyg(os, h);
  return os.str();
}

// Write the instance to the chosen file, or to stdout (inline in json mode).
void emit_instance(Session& s, const MultiHypergraph& h, const std::string& out) {
  s.record["results"]["vertices"] = h.vertex_count();
  s.record["results"]["edges"] = h.edge_count();
  s.record["results"]["weight"] = h.instance_count();
  if (!out.empty()) {
    write_hyg_file(out, h);
    s.record["results"]["out"] = out;
    s.say("wrote " + out + " (" + std::to_string(h.vertex_count()) + " vertices, " +
          std::to_string(h.edge_count()) + " edges)");
  } else if (s.json) {
    s.record["results"]["hyg"] = hyg_string(h);
  } else {
    write_hyg(std::cout, h);
  }
}

void emit_partition(Session& s, const MultiHypergraph& h, const CoverPartition& p,
                    const std::string& out) {
  std::vector<std::size_t> sizes(p.k, 0);
  for (const auto& per_edge : p.assign)
    for (std::size_t c : per_edge) ++sizes[c];
  s.record["results"]["k"] = p.k;
  s.record["results"]["class_sizes"] = sizes;
  s.record["results"]["partition"] = partition_to_json(h, p);
  if (!out.empty()) {
    write_partition_file(out, h, p);
    s.record["results"]["partition_out"] = out;
  }
  std::string txt = "valid " + std::to_string(p.k) + "-cover; class sizes:";
  for (std::size_t c : sizes) txt += " " + std::to_string(c);
  s.say(txt);
  if (!out.empty()) s.say("wrote " + out);
}

struct GenArgs {
  std::string family, in, out;
  std::size_t t = 2, q = 2, d = 4, k = 3, n = 5, s = 2, r = 3;
  std::size_t copies = 0;
};

int run_gen(Session& ses, const GenArgs& a) {
  ses.begin("gen");
  ses.record["inputs"]["family"] = a.family;

  MultiHypergraph h(0, {});
  if (a.family == "pg") {
    h = gen_projective(a.t, a.q);
  } else if (a.family == "fano") {
    h = gen_projective(2, 2);
  } else if (a.family == "cube") {
    h = gen_cube(a.d);
  } else if (a.family == "triangle") {
    h = gen_triangle_multi(a.k);
  } else if (a.family == "complete") {
    h = gen_complete(a.n);
  } else if (a.family == "oddnear") {
    h = gen_odd_near_regular(a.k);
  } else if (a.family == "extend") {
    if (a.in.empty()) throw InputError("gen extend: needs --in instance");
    h = extend_by_vertex(read_hyg_file(a.in));
  } else if (a.family == "multiply") {
    if (a.in.empty()) throw InputError("gen multiply: needs --in instance");
    h = multiply_edges(read_hyg_file(a.in), a.s);
  } else if (a.family == "expand") {
    if (a.in.empty()) throw InputError("gen expand: needs --in instance");
    ExpandResult ex = expand(read_hyg_file(a.in), a.s, a.d, a.copies);
    ses.record["results"]["embedded"] = ex.embedded;
    h = std::move(ex.h);
  } else if (a.family == "random") {
    h = gen_random_regular_uniform(a.n, a.r, a.d, ses.seed);
  } else {
    throw InputError("unknown family '" + a.family +
                     "' (pg fano cube triangle complete oddnear extend multiply expand random)");
  }
  emit_instance(ses, h, a.out);
  return ses.finish(kOk);
}

struct CoverArgs {
  std::string file, algo = "graph", out;
  std::size_t k = 2;
  double lambda = 4.0;
  std::uint64_t budget = 0;
  bool paper_exact_balance = false;
  int force_case = 0;
};

ordered_json diagnostics_json(const LllDiagnostics& g) {
  return ordered_json{{"bad_event_bound", g.bad_event_bound},
                      {"bad_event_exp_bound", g.bad_event_exp_bound},
                      {"dependency_degree", g.dependency_degree},
                      {"lll_product", g.lll_product}};
}

int run_cover(Session& ses, const CoverArgs& a) {
  ses.begin("cover");
  ses.record["inputs"]["file"] = a.file;
  ses.record["inputs"]["algo"] = a.algo;
  ses.record["inputs"]["k"] = a.k;
  MultiHypergraph h = read_hyg_file(a.file);

  if (a.algo == "graph" || a.algo == "multigraph" || a.algo == "hall") {
    CoverPartition p = a.algo == "graph"       ? cover_graph_k(h, a.k)
                       : a.algo == "multigraph" ? cover_multigraph_k(h, a.k)
                                                : hall_cover(h, a.k);
    emit_partition(ses, h, p, a.out);
    return ses.finish(kOk);
  }
  if (a.algo == "lll") {
    LLLParams prm;
    prm.lambda_const = a.lambda;
    prm.round_budget = a.budget;
    prm.seed = ses.seed;
    prm.paper_exact_balance = a.paper_exact_balance;
    prm.force_case = a.force_case;
    RecursiveOutcome out = cover_recursive(h, a.k, prm);
    ses.record["results"]["below_threshold_warning"] = out.below_threshold_warning;
    ses.record["results"]["threshold_case2"] = out.threshold_case2;
    ses.record["results"]["leaves"] = out.leaves;
    ses.record["results"]["max_depth"] = out.max_depth;
    auto diags = ordered_json::array();
    for (const auto& g : out.leaf_diagnostics) diags.push_back(diagnostics_json(g));
    ses.record["results"]["leaf_diagnostics"] = std::move(diags);
    if (out.below_threshold_warning)
      ses.say("warning: min degree below recursive threshold " +
              std::to_string(out.threshold_case2) + "; resampling may not converge");
    for (std::size_t i = 0; i < out.leaf_diagnostics.size(); ++i) {
      const auto& g = out.leaf_diagnostics[i];
      std::ostringstream os;
      os.setf(std::ios::scientific);
      os.precision(3);
      os << "leaf " << i << ": bad-event bound " << g.bad_event_bound << ", dependency degree "
         << g.dependency_degree << ", e*p*(D+1) = " << g.lll_product;
      ses.say(os.str());
    }
    if (!out.ok) {
      ses.record["results"]["failure_path"] = out.failure_path;
      ses.record["results"]["failure_bad_vertices"] = out.failure_bad_vertices;
      std::string msg = "resampling budget exhausted at " + out.failure_path + ";" +
                        " still-bad vertices:";
      for (Vertex v : out.failure_bad_vertices) msg += " " + std::to_string(v);
      ses.say(msg);
      return ses.finish(kBudget);
    }
    emit_partition(ses, h, out.partition, a.out);
    return ses.finish(kOk);
  }
  if (a.algo == "exact") {
    SolverLimits limits;
    if (a.budget) limits.node_budget = a.budget;
    FeasibleOutcome out = feasible_k(h, a.k, limits);
    ses.record["results"]["status"] = to_string(out.status);
    ses.record["results"]["nodes"] = out.nodes;
    if (out.status == Feasibility::unknown) {
      ses.say("budget exhausted after " + std::to_string(out.nodes) + " nodes");
      return ses.finish(kBudget);
    }
    if (out.status == Feasibility::infeasible) {
      ses.say("no " + std::to_string(a.k) + "-cover: exhaustive search of " +
              std::to_string(out.nodes) + " nodes found none");
      return ses.finish(kFail);
    }
    emit_partition(ses, h, *out.witness, a.out);
    return ses.finish(kOk);
  }
  throw InputError("unknown algorithm '" + a.algo + "' (graph multigraph hall lll exact)");
}

struct ExactArgs {
  std::string file, out;
  std::optional<std::size_t> k;
  std::uint64_t budget = 0;
  bool deterministic = false;  // search is already sequential; accepted for interface stability
};

int run_exact(Session& ses, const ExactArgs& a) {
  ses.begin("exact");
  ses.record["inputs"]["file"] = a.file;
  MultiHypergraph h = read_hyg_file(a.file);
  SolverLimits limits;
  if (a.budget) limits.node_budget = a.budget;

  if (a.k) {
    ses.record["inputs"]["k"] = *a.k;
    FeasibleOutcome out = feasible_k(h, *a.k, limits);
    ses.record["results"]["status"] = to_string(out.status);
    ses.record["results"]["nodes"] = out.nodes;
    if (out.status == Feasibility::unknown) {
      ses.say("budget exhausted after " + std::to_string(out.nodes) + " nodes");
      return ses.finish(kBudget);
    }
    if (out.status == Feasibility::infeasible) {
      ses.say("no " + std::to_string(*a.k) + "-cover: exhaustive search of " +
              std::to_string(out.nodes) + " nodes found none");
      return ses.finish(kFail);
    }
    emit_partition(ses, h, *out.witness, a.out);
    return ses.finish(kOk);
  }

  CoveringNumberOutcome out = covering_number_exact(h, limits);
  ses.record["results"]["status"] = to_string(out.status);
  ses.record["results"]["nodes"] = out.nodes;
  if (out.status == Feasibility::unknown) {
    ses.record["results"]["lower_bound"] = out.lower_bound;
    ses.say("budget exhausted; covering number >= " + std::to_string(out.lower_bound));
    return ses.finish(kBudget);
  }
  ses.record["results"]["covering_number"] = out.value;
  ses.say("covering number = " + std::to_string(out.value));
  if (out.witness) {
    std::vector<std::size_t> sizes(out.witness->k, 0);
    for (const auto& per_edge : out.witness->assign)
      for (std::size_t c : per_edge) ++sizes[c];
    ses.record["results"]["class_sizes"] = sizes;
    ses.record["results"]["partition"] = partition_to_json(h, *out.witness);
    if (!a.out.empty()) {
      write_partition_file(a.out, h, *out.witness);
      ses.record["results"]["partition_out"] = a.out;
      ses.say("wrote " + a.out);
    }
  }
  return ses.finish(kOk);
}

int run_verify(Session& ses, const std::string& instance, const std::string& partition) {
  ses.begin("verify");
  ses.record["inputs"]["instance"] = instance;
  ses.record["inputs"]["partition"] = partition;
  MultiHypergraph h = read_hyg_file(instance);
  CoverPartition p = read_partition_file(partition, h);
  CoverCheck check = verify_cover_partition(h, p);
  ses.record["results"]["valid"] = check.valid;
  if (check) {
    ses.say("valid " + std::to_string(p.k) + "-cover");
    return ses.finish(kOk);
  }
  ses.record["results"]["failing_class"] = check.witness->failing_class;
  ses.record["results"]["uncovered_vertex"] = check.witness->uncovered_vertex;
  ses.say("invalid: class " + std::to_string(check.witness->failing_class) +
          " misses vertex " + std::to_string(check.witness->uncovered_vertex));
  return ses.finish(kFail);
}

struct TableArgs {
  std::string id, out;
  bool csv = false;
  std::size_t trials = 100, k_min = 2, k_max = 6;
};

int run_table_cmd(Session& ses, const TableArgs& a) {
  ses.begin("table");
  ses.record["inputs"]["table"] = a.id;
  ses.record["inputs"]["trials"] = a.trials;
  TableSpec spec;
  spec.id = a.id;
  spec.k_min = a.k_min;
  spec.k_max = a.k_max;
  spec.trials = a.trials;
  spec.seed = ses.seed;
  TableResult result = run_table(spec);
  ses.record["results"] = table_to_json(result);

  std::string rendered = a.csv ? render_table_csv(result) : render_table_text(result);
  if (!a.out.empty()) {
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw InputError("cannot write " + a.out);
    f << rendered;
    ses.say("wrote " + a.out);
  } else if (!ses.json) {
    std::cout << rendered;
  }
  if (result.any_unknown) return ses.finish(kBudget);
  return ses.finish(result.all_ok ? kOk : kFail);
}

struct LevelArgs {
  std::string file, out, map;
  std::size_t r = 0, d = 0;  // 0 = derive from the instance
};

int run_level(Session& ses, const LevelArgs& a) {
  ses.begin("level");
  ses.record["inputs"]["file"] = a.file;
  MultiHypergraph h = read_hyg_file(a.file);
  std::size_t r = a.r ? a.r : h.max_edge_size();
  std::size_t d = a.d ? a.d : h.min_degree();
  ses.record["inputs"]["r"] = r;
  ses.record["inputs"]["d"] = d;
  LevellingMap lm = level(h, r, d);
  emit_instance(ses, lm.target, a.out);
  if (!a.map.empty()) {
    std::ofstream f(a.map, std::ios::binary);
    if (!f) throw InputError("cannot write " + a.map);
    f << levelling_sidecar_json(lm, a.file, a.out.empty() ? "<stdout>" : a.out).dump(2) << "\n";
    ses.say("wrote " + a.map);
  }
  return ses.finish(kOk);
}

int run_dual(Session& ses, const std::string& file, const std::string& out) {
  ses.begin("dual");
  ses.record["inputs"]["file"] = file;
  emit_instance(ses, dualize(read_hyg_file(file)), out);
  return ses.finish(kOk);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covering-class partitions and covering numbers"};
  app.require_subcommand(1);

  Session ses;
  app.add_flag("--quiet", ses.quiet, "suppress progress text");
  app.add_flag("--json", ses.json, "emit a machine-readable run record on stdout");
  app.add_option("--seed", ses.seed, "master seed for all randomized commands")
      ->default_val(std::uint64_t{0});

  GenArgs gen;
  auto* cgen = app.add_subcommand("gen", "generate an instance");
  cgen->add_option("family", gen.family,
                   "pg fano cube triangle complete oddnear extend multiply expand random")
      ->required();
  cgen->add_option("--t", gen.t, "projective dimension");
  cgen->add_option("--q", gen.q, "prime modulus");
  cgen->add_option("--d", gen.d, "cube size / degree parameter");
  cgen->add_option("--k", gen.k, "class-count parameter");
  cgen->add_option("--n", gen.n, "vertex count");
  cgen->add_option("--s", gen.s, "multiplicity / expansion factor");
  cgen->add_option("--r", gen.r, "edge size");
  cgen->add_option("--copies", gen.copies, "expansion copies (0 = smallest valid)");
  cgen->add_option("--in", gen.in, "source instance for extend/multiply/expand");
  cgen->add_option("-o,--out", gen.out, "output .hyg file (default stdout)");

  CoverArgs cover;
  auto* ccover = app.add_subcommand("cover", "compute a k-class cover partition");
  ccover->add_option("file", cover.file, "instance .hyg file")->required();
  ccover->add_option("--algo", cover.algo, "graph multigraph hall lll exact")->required();
  ccover->add_option("--k", cover.k, "number of covering classes")->required();
  ccover->add_option("--lambda", cover.lambda, "threshold multiplier for the recursive solver");
  ccover->add_option("--budget", cover.budget,
                     "resampling rounds (lll) or search nodes (exact); 0 = default");
  ccover->add_flag("--paper-exact-balance", cover.paper_exact_balance,
                   "use the d/2 - Lambda balance criterion verbatim");
  ccover->add_option("--force-case", cover.force_case,
                     "0 auto, 1 resample only, 2 always split");
  ccover->add_option("-o,--out", cover.out, "partition JSON output file");

  ExactArgs exact;
  auto* cexact = app.add_subcommand("exact", "exact covering number / k-cover decision");
  cexact->add_option("file", exact.file, "instance .hyg file")->required();
  cexact->add_option("--k", exact.k, "decide a specific class count");
  cexact->add_option("--budget", exact.budget, "search-node budget (0 = default)");
  cexact->add_flag("--deterministic", exact.deterministic,
                   "force sequential search (already the default engine)");
  cexact->add_option("-o,--out", exact.out, "witness partition JSON output file");

  std::string verify_instance, verify_partition;
  auto* cverify = app.add_subcommand("verify", "check a partition against an instance");
  cverify->add_option("instance", verify_instance, "instance .hyg file")->required();
  cverify->add_option("partition", verify_partition, "partition JSON file")->required();

  TableArgs table;
  auto* ctable = app.add_subcommand("table", "reproduction tables");
  ctable->add_option("id", table.id, "fm2k small-values pg-bounds")->required();
  ctable->add_flag("--csv", table.csv, "emit CSV instead of aligned text");
  ctable->add_option("--trials", table.trials, "corpus size per row");
  ctable->add_option("--kmin", table.k_min, "first k row (fm2k)");
  ctable->add_option("--kmax", table.k_max, "last k row (fm2k)");
  ctable->add_option("-o,--out", table.out, "write the rendered table to a file");

  std::string dual_file, dual_out;
  auto* cdual = app.add_subcommand("dual", "dualize an instance");
  cdual->add_option("file", dual_file, "instance .hyg file")->required();
  cdual->add_option("-o,--out", dual_out, "output .hyg file (default stdout)");

  LevelArgs lvl;
  auto* clevel = app.add_subcommand("level", "level an instance to regular uniform");
  clevel->add_option("file", lvl.file, "instance .hyg file")->required();
  clevel->add_option("--r", lvl.r, "target edge size (default: max edge size)");
  clevel->add_option("--d", lvl.d, "target degree (default: min degree)");
  clevel->add_option("-o,--out", lvl.out, "target .hyg file (default stdout)");
  clevel->add_option("--map", lvl.map, "write the edge-map sidecar JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*cgen) return run_gen(ses, gen);
    if (*ccover) return run_cover(ses, cover);
    if (*cexact) return run_exact(ses, exact);
    if (*cverify) return run_verify(ses, verify_instance, verify_partition);
    if (*ctable) return run_table_cmd(ses, table);
    if (*cdual) return run_dual(ses, dual_file, dual_out);
    if (*clevel) return run_level(ses, lvl);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  } catch (const InfeasibleError& e) {
    std::cerr << e.what() << "\n";
    return kFail;
  } catch (const InputError& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
