#include "infmax/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>
#include <openssl/evp.h>

#include "infmax/errors.hpp"
#include "infmax/estimate.hpp"
#include "infmax/exact.hpp"
#include "infmax/graph.hpp"
#include "infmax/influence.hpp"
#include "infmax/io.hpp"
#include "infmax/reduction.hpp"
#include "infmax/solver.hpp"
#include "parallel.hpp"

namespace infmax::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct Common {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool timing = false;
};

struct SolveOpts {
  std::string model;
  int k = 1;
  double epsilon = 0.1;
  double delta = 0.24;
  int max_degree = 3;
  double C = 1.0;
  std::string radius = "formula";
  bool best_effort = false;
  std::size_t exact_cap = kDefaultExactCap;
  std::string out;
};

struct OracleOpts {
  std::string model;
  int k = 1;
  bool force = false;
  std::string out;
};

struct CompareOpts {
  std::vector<std::string> models;
  std::size_t random = 0;
  std::size_t n = 12;
  std::size_t n_min = 0; // 0: same as n
  std::string beta = "-0.4,0.4";
  std::string h = "-0.5,0.5";
  std::string a = "-1,1";
  SolveOpts solve;
};

struct SampleOpts {
  std::string model;
  std::string pin;
  std::uint64_t samples = 10000;
  std::int64_t burn_in = -1;
  std::int64_t thin = -1;
  std::size_t batches = 20;
  double delta = 0.24;
  int max_degree = 3;
  bool exact = false;
  std::string out;
};

struct MarginalOpts {
  std::string model;
  Vertex vertex = 0;
  int k = 1;
  double epsilon = 0.01;
  double tolerance = 0.01;
  std::string solver = "oracle";
  std::string out;
};

struct GenOpts {
  std::size_t n = 10;
  int max_degree = 3;
  std::string beta = "-0.4,0.4";
  std::string h = "-0.5,0.5";
  std::string a = "-1,1";
  std::string out;
};

Range parse_range(const std::string& text, const char* what) {
  const auto comma = text.find(',');
  Range r;
  auto parse = [&](std::string_view s, double& v) {
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    return ec == std::errc{} && p == end;
  };
  if (comma == std::string::npos || !parse(std::string_view(text).substr(0, comma), r.lo) ||
      !parse(std::string_view(text).substr(comma + 1), r.hi) || !(r.lo <= r.hi))
    throw ValidationError(std::string("--") + what + " expects lo,hi with lo <= hi, got '" + text + "'");
  return r;
}

// "0:+,3:-" -> {(0,+), (3,-)}
PartialAssignment parse_pinning(const std::string& text, const IsingModel& model) {
  std::vector<PartialAssignment::Entry> entries;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    int v = -1;
    if (colon == std::string::npos || colon + 2 != item.size() ||
        std::from_chars(item.data(), item.data() + colon, v).ec != std::errc{})
      throw ValidationError("bad pin '" + item + "', expected vertex:+ or vertex:-");
    const char s = item.back();
    if (s != '+' && s != '-') throw ValidationError("bad spin in pin '" + item + "'");
    if (!model.contains(v)) throw ValidationError("pinned vertex " + std::to_string(v) + " not in model");
    entries.emplace_back(v, s == '+' ? Spin::plus : Spin::minus);
  }
  if (entries.empty()) throw ValidationError("--pin must name at least one vertex");
  return PartialAssignment(std::move(entries));
}

std::optional<int> parse_radius(const std::string& text, const IsingModel& model) {
  if (text == "formula") return std::nullopt;
  if (text == "diameter") return max_component_diameter(model);
  int r = 0;
  const auto* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, r);
  if (ec != std::errc{} || p != end || r < 0)
    throw ValidationError("--radius expects a nonnegative integer, 'diameter' or 'formula'");
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read model file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot write " + path);
  file << text;
}

ojson assignment_json(const PartialAssignment& a) {
  auto list = ojson::array();
  for (const auto& [v, s] : a) list.push_back(ojson{{"vertex", v}, {"spin", std::string(1, symbol(s))}});
  return list;
}

ojson solution_json(const Solution& sol) {
  const auto& d = sol.diagnostics;
  ojson j;
  j["vertices"] = std::vector<Vertex>(sol.vertices.begin(), sol.vertices.end());
  j["assignment"] = assignment_json(sol.assignment);
  j["local_value"] = sol.local_value;
  j["global_value"] = sol.global_value ? ojson(*sol.global_value) : ojson(nullptr);
  j["radius_used"] = sol.radius_used;
  j["heuristic"] = d.heuristic;
  j["diagnostics"] = ojson{{"cluster_count", d.cluster_count},
                           {"cluster_graph_edges", d.cluster_graph_edges},
                           {"cluster_graph_max_degree", d.cluster_graph_max_degree},
                           {"pruned_candidates", d.pruned_candidates},
                           {"largest_region", d.largest_region},
                           {"radius_formula", d.radius_formula},
                           {"radius_effective", d.radius_effective}};
  return j;
}

std::string report(const std::string& command, const std::string& model_path, const std::string& model_bytes,
                   const ojson& config, ojson solution, double wall_time,
                   const std::vector<std::string>& warnings) {
  ojson j;
  j["command"] = command;
  j["inputs"] = ojson{{"model", model_path},
                      {"model_sha256", sha256_hex(model_bytes)},
                      {"config_sha256", sha256_hex(config.dump())}};
  j["config"] = config;
  j["solution"] = std::move(solution);
  j["wall_time"] = wall_time;
  j["warnings"] = warnings;
  return j.dump(2) + "\n";
}

SolverConfig solver_config(const SolveOpts& o, const Instance& inst, const Common& c) {
  SolverConfig cfg;
  cfg.k = o.k;
  cfg.epsilon = o.epsilon;
  cfg.decay_constant = o.C;
  cfg.radius_override = parse_radius(o.radius, inst.model);
  cfg.exact_ball_cap = o.exact_cap;
  cfg.best_effort = o.best_effort;
  cfg.threads = c.threads;
  return cfg;
}

ojson solve_config_json(const SolveOpts& o, const FamilyParams& p) {
  return ojson{{"k", o.k},          {"epsilon", o.epsilon},       {"delta", p.delta},
               {"gamma", p.gamma},  {"max_degree", p.delta_max},  {"C", o.C},
               {"radius", o.radius}, {"best_effort", o.best_effort}, {"exact_cap", o.exact_cap}};
}

void add_solve_options(CLI::App* cmd, SolveOpts& o) {
  cmd->add_option("--k", o.k, "Budget |S| <= k")->capture_default_str();
  cmd->add_option("--epsilon", o.epsilon, "Additive error target")->capture_default_str();
  cmd->add_option("--delta", o.delta, "High-temperature slack; gamma = 1 - delta")->capture_default_str();
  cmd->add_option("--max-degree", o.max_degree, "Degree bound of the family")->capture_default_str();
  cmd->add_option("--C", o.C, "Total-influence decay constant")->capture_default_str();
  cmd->add_option("--radius", o.radius, "Integer, 'diameter' or 'formula'")->capture_default_str();
  cmd->add_flag("--best-effort", o.best_effort, "Shrink the radius to fit capacity (heuristic)");
  cmd->add_option("--exact-cap", o.exact_cap, "Largest component enumerated exactly")->capture_default_str();
  cmd->add_option("--out", o.out, "Output file (default stdout)");
}

int cmd_solve(const SolveOpts& o, const Common& c, std::ostream& out) {
  const auto bytes = read_file(o.model);
  const auto inst = parse_instance(bytes);
  const auto params = FamilyParams::high_temperature(o.max_degree, o.delta);
  const auto cfg = solver_config(o, inst, c);
  auto sol = solve_infmax(inst.model, inst.weights, cfg, params);
  auto warnings = sol.diagnostics.warnings;
  if (o.best_effort && !sol.diagnostics.heuristic)
    warnings.push_back("best-effort mode enabled; the formula radius fit, so the guarantee holds");
  const double wall = c.timing ? sol.diagnostics.wall_time : 0.0;
  emit(report("solve", o.model, bytes, solve_config_json(o, params), solution_json(sol), wall, warnings),
       o.out, out);
  return kSuccess;
}

int cmd_oracle(const OracleOpts& o, const Common& c, std::ostream& out) {
  const auto bytes = read_file(o.model);
  const auto inst = parse_instance(bytes);
  if (inst.model.size() > kOracleMaxVertices && !o.force)
    throw ValidationError(fmt::format("oracle refuses n={} > {} without --force", inst.model.size(),
                                      kOracleMaxVertices));
  const auto start = std::chrono::steady_clock::now();
  std::size_t cap = kDefaultExactCap;
  if (o.force) cap = std::max(cap, inst.model.size());
  auto sol = brute_force_infmax(inst.model, inst.weights, o.k, !o.force, cap);
  const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
  std::vector<std::string> warnings;
  if (!inst.weights.one_bounded()) warnings.push_back("weights are not 1-bounded");
  emit(report("oracle", o.model, bytes, ojson{{"k", o.k}, {"force", o.force}}, solution_json(sol),
              c.timing ? took.count() : 0.0, warnings),
       o.out, out);
  return kSuccess;
}

// Shortest text that round-trips exactly.
std::string csv_number(double v) { return fmt::format("{}", v); }

int cmd_compare(const CompareOpts& o, const Common& c, std::ostream& out, std::ostream& err) {
  if (o.models.empty() == (o.random == 0))
    throw ValidationError("compare needs either model files or --random COUNT");
  struct Job {
    std::string id;
    Instance instance;
  };
  std::vector<Job> jobs;
  for (const auto& path : o.models) jobs.push_back({path, parse_instance(read_file(path))});
  if (o.random > 0) {
    const std::size_t lo = o.n_min == 0 ? o.n : o.n_min;
    if (lo > o.n || o.n == 0) throw ValidationError("--n-min must lie in [1, n]");
    const auto beta = parse_range(o.beta, "beta-range");
    const auto h = parse_range(o.h, "h-range");
    const auto a = parse_range(o.a, "a-range");
    for (std::size_t i = 0; i < o.random; ++i) {
      const std::uint64_t s = c.seed + i;
      std::mt19937_64 pick(s);
      const std::size_t n = lo + static_cast<std::size_t>(pick() % (o.n - lo + 1));
      auto model = random_instance(n, o.solve.max_degree, beta, h, s);
      auto weights = random_weights(n, a, s ^ 0x9e3779b97f4a7c15ULL);
      jobs.push_back({"seed-" + std::to_string(s), Instance{std::move(model), std::move(weights)}});
    }
  }

  const auto params = FamilyParams::high_temperature(o.solve.max_degree, o.solve.delta);
  std::vector<std::string> rows(jobs.size());
  std::vector<std::vector<std::string>> warnings(jobs.size());
  detail::parallel_for(jobs.size(), c.threads, [&](std::size_t i) {
    const auto& inst = jobs[i].instance;
    auto cfg = solver_config(o.solve, inst, c);
    cfg.threads = 1;
    const auto start = std::chrono::steady_clock::now();
    const auto sol = solve_infmax(inst.model, inst.weights, cfg, params);
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    const auto oracle = brute_force_infmax(inst.model, inst.weights, o.solve.k);
    const double solver_value =
        sol.global_value ? *sol.global_value
                         : global_influence({inst.model, inst.weights, sol.assignment, std::nullopt},
                                            std::max(o.solve.exact_cap, inst.model.size()));
    const double oracle_value = *oracle.global_value;
    rows[i] = fmt::format("{},{},{},{},{},{},{},{},{}\n", jobs[i].id, inst.model.size(), o.solve.k,
                          csv_number(o.solve.epsilon), sol.radius_used, csv_number(solver_value),
                          csv_number(oracle_value), csv_number(oracle_value - solver_value),
                          csv_number(c.timing ? took.count() : 0.0));
    for (const auto& w : sol.diagnostics.warnings) warnings[i].push_back(jobs[i].id + ": " + w);
  });

  std::string text(kCompareHeader);
  text += '\n';
  for (const auto& r : rows) text += r;
  emit(text, o.solve.out, out);
  for (const auto& list : warnings)
    for (const auto& w : list) err << "warning: " << w << '\n';
  return kSuccess;
}

int cmd_sample(const SampleOpts& o, const Common& c, std::ostream& out) {
  const auto bytes = read_file(o.model);
  const auto inst = parse_instance(bytes);
  const auto pinning = parse_pinning(o.pin, inst.model);
  const auto params = FamilyParams::high_temperature(o.max_degree, o.delta);
  EstimateOptions opts;
  opts.samples = o.samples;
  opts.batches = o.batches;
  opts.seed = c.seed;
  if (o.burn_in >= 0) opts.burn_in = static_cast<std::uint64_t>(o.burn_in);
  if (o.thin >= 0) opts.thin = static_cast<std::uint64_t>(o.thin);

  const auto start = std::chrono::steady_clock::now();
  const auto est = estimate_influence(inst.model, inst.weights, pinning, opts, params);
  const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
  ojson sol;
  sol["pinning"] = assignment_json(pinning);
  sol["estimate"] = est.value;
  sol["std_error"] = est.std_error;
  if (o.exact) sol["exact"] = global_influence({inst.model, inst.weights, pinning, std::nullopt});
  ojson config{{"pin", o.pin},
               {"samples", o.samples},
               {"burn_in", o.burn_in >= 0 ? ojson(o.burn_in) : ojson("default")},
               {"thin", o.thin >= 0 ? ojson(o.thin) : ojson("default")},
               {"batches", o.batches},
               {"seed", c.seed},
               {"delta", params.delta},
               {"max_degree", params.delta_max}};
  emit(report("sample", o.model, bytes, config, std::move(sol), c.timing ? took.count() : 0.0, est.warnings),
       o.out, out);
  return kSuccess;
}

int cmd_estimate_marginal(const MarginalOpts& o, const Common& c, std::ostream& out) {
  const auto bytes = read_file(o.model);
  const auto inst = parse_instance(bytes);
  if (!inst.model.contains(o.vertex)) throw ValidationError("vertex " + std::to_string(o.vertex) + " not in model");
  InfMaxSolver solver;
  if (o.solver == "oracle") {
    solver = [](const IsingModel& m, const WeightVector& w, int k) { return brute_force_infmax(m, w, k); };
  } else if (o.solver == "local") {
    const unsigned threads = c.threads;
    const double eps = o.epsilon;
    solver = [threads, eps](const IsingModel& m, const WeightVector& w, int k) {
      SolverConfig cfg;
      cfg.k = k;
      cfg.epsilon = eps;
      cfg.threads = threads;
      cfg.radius_override = max_component_diameter(m);
      return solve_infmax(m, w, cfg, FamilyParams::high_temperature(std::max<int>(3, static_cast<int>(m.max_degree())), 0.24));
    };
  } else {
    throw ValidationError("--solver must be 'oracle' or 'local'");
  }
  const auto start = std::chrono::steady_clock::now();
  const auto est = estimate_marginal(inst.model, o.vertex, o.k, solver, o.epsilon, o.tolerance);
  const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
  ojson sol;
  sol["vertex"] = o.vertex;
  sol["magnetization"] = est.magnetization;
  sol["plus_probability"] = est.plus_probability();
  sol["bracket"] = {est.lo, est.hi};
  auto probes = ojson::array();
  for (const auto& p : est.probes)
    probes.push_back(ojson{{"t", p.t}, {"direction", p.direction == Direction::at_least ? "at_least" : "at_most"}});
  sol["probes"] = std::move(probes);
  ojson config{{"vertex", o.vertex}, {"k", o.k}, {"epsilon", o.epsilon}, {"tolerance", o.tolerance},
               {"solver", o.solver}};
  std::vector<std::string> warnings;
  if (!probes_consistent(est.probes, o.epsilon)) warnings.push_back("probe directions are inconsistent");
  emit(report("estimate-marginal", o.model, bytes, config, std::move(sol), c.timing ? took.count() : 0.0,
              warnings),
       o.out, out);
  return kSuccess;
}

int cmd_gen(const GenOpts& o, const Common& c, std::ostream& out) {
  const auto beta = parse_range(o.beta, "beta-range");
  const auto h = parse_range(o.h, "h-range");
  const auto a = parse_range(o.a, "a-range");
  auto model = random_instance(o.n, o.max_degree, beta, h, c.seed);
  auto weights = random_weights(o.n, a, c.seed ^ 0x9e3779b97f4a7c15ULL);
  emit(serialize_instance({std::move(model), std::move(weights)}), o.out, out);
  return kSuccess;
}

} // namespace

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Budgeted influence maximization on Ising models"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI config file; flags override it");
  Common common;
  app.add_option("--seed", common.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--threads", common.threads, "Worker threads (0 = all cores)")
      ->envname("INFMAX_THREADS")
      ->capture_default_str();
  app.add_flag("--timing", common.timing, "Report wall-clock times (reports are no longer reproducible)");

  SolveOpts solve;
  auto* solve_cmd = app.add_subcommand("solve", "Localized solver");
  solve_cmd->add_option("model", solve.model, "Model file")->required();
  add_solve_options(solve_cmd, solve);

  OracleOpts oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive optimum (n <= 16)");
  oracle_cmd->add_option("model", oracle.model, "Model file")->required();
  oracle_cmd->add_option("--k", oracle.k, "Budget")->capture_default_str();
  oracle_cmd->add_flag("--force", oracle.force, "Allow n > 16");
  oracle_cmd->add_option("--out", oracle.out, "Output file");

  CompareOpts compare;
  auto* compare_cmd = app.add_subcommand("compare", "Solver vs oracle, one CSV row per instance");
  compare_cmd->add_option("models", compare.models, "Model files");
  compare_cmd->add_option("--random", compare.random, "Generate COUNT instances from --seed, --seed+1, ...");
  compare_cmd->add_option("--n", compare.n, "Vertices per random instance (max)")->capture_default_str();
  compare_cmd->add_option("--n-min", compare.n_min, "Smallest random n (default --n)");
  compare_cmd->add_option("--beta-range", compare.beta, "Coupling range lo,hi")->capture_default_str();
  compare_cmd->add_option("--h-range", compare.h, "Field range lo,hi")->capture_default_str();
  compare_cmd->add_option("--a-range", compare.a, "Weight range lo,hi")->capture_default_str();
  add_solve_options(compare_cmd, compare.solve);

  SampleOpts sample;
  auto* sample_cmd = app.add_subcommand("sample", "Glauber estimate of an influence");
  sample_cmd->add_option("model", sample.model, "Model file")->required();
  sample_cmd->add_option("--pin", sample.pin, "Pinning, e.g. 0:+,3:-")->required();
  sample_cmd->add_option("--samples", sample.samples, "Samples per chain")->capture_default_str();
  sample_cmd->add_option("--burn-in", sample.burn_in, "Burn-in steps (default 100 n ln n)");
  sample_cmd->add_option("--thin", sample.thin, "Steps between samples (default n)");
  sample_cmd->add_option("--batches", sample.batches, "Batches for the standard error")->capture_default_str();
  sample_cmd->add_option("--delta", sample.delta, "High-temperature slack")->capture_default_str();
  sample_cmd->add_option("--max-degree", sample.max_degree, "Degree bound")->capture_default_str();
  sample_cmd->add_flag("--exact", sample.exact, "Also report the exact value");
  sample_cmd->add_option("--out", sample.out, "Output file");

  MarginalOpts marginal;
  auto* marginal_cmd = app.add_subcommand("estimate-marginal", "E[X_v] through the gadget reduction");
  marginal_cmd->add_option("model", marginal.model, "Model file")->required();
  marginal_cmd->add_option("--vertex", marginal.vertex, "Target vertex")->capture_default_str();
  marginal_cmd->add_option("--k", marginal.k, "Gadget size")->capture_default_str();
  marginal_cmd->add_option("--epsilon", marginal.epsilon, "Solver accuracy")->capture_default_str();
  marginal_cmd->add_option("--tolerance", marginal.tolerance, "Search tolerance")->capture_default_str();
  marginal_cmd->add_option("--solver", marginal.solver, "oracle or local")->capture_default_str();
  marginal_cmd->add_option("--out", marginal.out, "Output file");

  GenOpts gen;
  auto* gen_cmd = app.add_subcommand("gen", "Random model file");
  gen_cmd->add_option("--n", gen.n, "Vertices")->capture_default_str();
  gen_cmd->add_option("--max-degree", gen.max_degree, "Degree bound")->capture_default_str();
  gen_cmd->add_option("--beta-range", gen.beta, "Coupling range lo,hi")->capture_default_str();
  gen_cmd->add_option("--h-range", gen.h, "Field range lo,hi")->capture_default_str();
  gen_cmd->add_option("--a-range", gen.a, "Weight range lo,hi")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output file");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalid;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve, common, out);
    if (*oracle_cmd) return cmd_oracle(oracle, common, out);
    if (*compare_cmd) return cmd_compare(compare, common, out, err);
    if (*sample_cmd) return cmd_sample(sample, common, out);
    if (*marginal_cmd) return cmd_estimate_marginal(marginal, common, out);
    if (*gen_cmd) return cmd_gen(gen, common, out);
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kCapacity;
  } catch (const ConvergenceError& e) {
    err << "no convergence: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kInvalid;
}

} // namespace infmax::cli
