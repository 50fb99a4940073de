#include "treewalk/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "treewalk/chain.hpp"
#include "treewalk/descriptor.hpp"
#include "treewalk/errors.hpp"
#include "treewalk/exact.hpp"

namespace treewalk::cli {

using nlohmann::json;

namespace {

const std::map<std::string, Command>& command_table() {
  static const std::map<std::string, Command> table{
      {"gen", Command::Gen},
      {"count", Command::Count},
      {"estimate-size", Command::EstimateSize},
      {"estimate-alpha", Command::EstimateAlpha},
      {"estimate-prob", Command::EstimateProb},
      {"sample", Command::Sample},
      {"validate", Command::Validate},
      {"conductance", Command::Conductance},
      {"mixing", Command::Mixing},
      {"bench", Command::Bench},
      {"baseline", Command::Baseline},
      {"knuth", Command::Knuth},
  };
  return table;
}

const char* kExitCodeHelp =
    "Exit codes: 0 success, 1 internal error, 2 usage error, 3 parse error (DIMACS),\n"
    "            4 cap exceeded, 5 guarantee violation (validate).";

bool in_open_unit(double v) { return v > 0 && v < 1; }
bool in_half_open_unit(double v) { return v > 0 && v <= 1; }

}  // namespace

std::string command_name(Command c) {
  for (const auto& [name, cmd] : command_table()) {
    if (cmd == c) return name;
  }
  return "?";
}

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Level-weighted Markov chain tree-size estimation and exact oracles", "treewalk"};
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string burn_in = "bound";
  std::string order;

  for (const auto& [name, cmd] : command_table()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--seed", seed, "Master seed (required)");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--delta", cfg.delta, "Failure probability");
    sub->add_option("--burn-in", burn_in, "bound or exact-measured")->check(CLI::IsMember({"bound", "exact-measured"}));
    sub->add_option("--burn-in-constant", cfg.burn_in_constant, "Constant C of the burn-in bound");
    sub->add_option("--sample-constant", cfg.sample_constant, "Constant c_m of the per-batch sample size");
    sub->add_option("--enum-cap", cfg.enum_cap, "Enumeration cap (nodes)");
    sub->add_option("--matrix-cap", cfg.matrix_cap, "Transition matrix cap (states)");
    sub->add_option("--conductance-cap", cfg.conductance_cap, "Exhaustive conductance cap (states)");
    sub->add_flag("--timing", cfg.timing, "Add wall-clock time to resource counters");
    if (cmd != Command::Bench) {
      sub->add_option("--tree", cfg.tree_descriptor, "full:<n> path:<n> comb:<n> root:<n> hash:<n>:<q>:<seed> cnf:<file>")
          ->required();
      sub->add_option("--order", order, "Comma-separated variable order for cnf trees");
    }
    switch (cmd) {
      case Command::EstimateSize:
      case Command::EstimateProb:
      case Command::Baseline:
        sub->add_option("--xi", cfg.xi, "Additive error (units of 2^n)")->required();
        break;
      case Command::EstimateAlpha:
        sub->add_option("--zeta", cfg.zeta, "Relative error")->required();
        break;
      case Command::Sample:
        sub->add_option("--m", cfg.m, "Number of samples");
        sub->add_option("--tv-epsilon", cfg.tv_epsilon, "Total-variation budget per sample");
        sub->add_option("--trace", cfg.trace_path, "Write per-step trajectories to this file");
        break;
      case Command::Mixing:
        sub->add_option("--eps", cfg.mixing_eps, "TV thresholds")->delimiter(',');
        break;
      case Command::Knuth:
        sub->add_option("--runs", cfg.runs, "Number of descents");
        break;
      case Command::Gen:
        sub->add_flag("--nodes", cfg.list_nodes, "List every node address");
        break;
      case Command::Bench:
        sub->add_option("--family", cfg.family, "full, path, comb or hash (q = 0.8)")
            ->check(CLI::IsMember({"full", "path", "comb", "hash"}));
        sub->add_option("--n-min", cfg.n_min, "Smallest height");
        sub->add_option("--n-max", cfg.n_max, "Largest height");
        sub->add_option("--xi", cfg.xi, "Additive error for size estimators (default 0.5)");
        sub->add_option("--zeta", cfg.zeta, "Relative error for the alpha estimator (default 0.2)");
        sub->add_option("--runs", cfg.runs, "Knuth descents");
        sub->add_option("--estimators", cfg.estimators, "Subset of alpha,size,uniform,knuth")->delimiter(',');
        break;
      default:
        break;
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (const auto& [name, cmd] : command_table()) {
    if (app.got_subcommand(name)) cfg.command = cmd;
  }
  if (!seed) throw UsageError("--seed is required (runs never draw ambient entropy)");
  cfg.seed = *seed;
  cfg.format = format == "csv" ? Format::Csv : Format::Json;
  cfg.burn_in_mode = burn_in == "bound" ? BurnInMode::Bound : BurnInMode::ExactMeasured;

  if (!order.empty()) {
    std::istringstream in(order);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      try {
        cfg.order.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw UsageError("bad --order entry '" + tok + "'");
      }
    }
  }

  if (!in_open_unit(cfg.delta)) throw UsageError("--delta must lie in (0, 1)");
  if (cfg.xi && !in_half_open_unit(*cfg.xi)) throw UsageError("--xi must lie in (0, 1]");
  if (cfg.zeta && !in_half_open_unit(*cfg.zeta)) throw UsageError("--zeta must lie in (0, 1]");
  if (!in_open_unit(cfg.tv_epsilon)) throw UsageError("--tv-epsilon must lie in (0, 1)");
  for (double e : cfg.mixing_eps) {
    if (!in_open_unit(e)) throw UsageError("--eps values must lie in (0, 1)");
  }
  if (!(cfg.burn_in_constant > 0)) throw UsageError("--burn-in-constant must be positive");
  if (!(cfg.sample_constant > 0)) throw UsageError("--sample-constant must be positive");
  if (cfg.m < 1 || cfg.runs < 1) throw UsageError("--m and --runs must be >= 1");
  if (cfg.enum_cap < 1 || cfg.matrix_cap < 1 || cfg.conductance_cap < 1) throw UsageError("caps must be >= 1");
  if (cfg.n_min < 0 || cfg.n_max < cfg.n_min || cfg.n_max > NodeAddr::kMaxDepth) {
    throw UsageError("need 0 <= --n-min <= --n-max <= " + std::to_string(NodeAddr::kMaxDepth));
  }
  for (const auto& e : cfg.estimators) {
    if (e != "alpha" && e != "size" && e != "uniform" && e != "knuth") throw UsageError("unknown estimator '" + e + "'");
  }
  return cfg;
}

namespace {

using Clock = std::chrono::steady_clock;

class Emitter {
 public:
  Emitter(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  // Every record carries the command, resolved parameters, seed and version.
  json record(json params, json result, json counters, Clock::time_point started) const {
    if (cfg_.timing) {
      counters["wall_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - started).count();
    }
    return json{{"command", command_name(cfg_.command)},
                {"version", TREEWALK_VERSION},
                {"seed", cfg_.seed},
                {"params", std::move(params)},
                {"result", std::move(result)},
                {"counters", std::move(counters)}};
  }

  void emit(json rec) { records_.push_back(std::move(rec)); }

  void flush() {
    if (cfg_.format == Format::Json) {
      for (const auto& r : records_) out_ << r.dump() << '\n';
    } else {
      write_csv();
    }
    records_.clear();
  }

 private:
  static void flatten(const json& j, const std::string& prefix, std::map<std::string, std::string>& row) {
    if (j.is_object()) {
      for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, row);
    } else if (j.is_array()) {
      std::string joined;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) joined += ';';
        joined += j[i].is_string() ? j[i].get<std::string>() : j[i].dump();
      }
      row[prefix] = joined;
    } else {
      row[prefix] = j.is_string() ? j.get<std::string>() : j.dump();
    }
  }

  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }

  void write_csv() {
    std::vector<std::map<std::string, std::string>> rows;
    std::set<std::string> columns;
    for (const auto& r : records_) {
      rows.emplace_back();
      flatten(r, "", rows.back());
      for (const auto& [k, v] : rows.back()) columns.insert(k);
    }
    bool first = true;
    for (const auto& c : columns) {
      out_ << (first ? "" : ",") << quote(c);
      first = false;
    }
    out_ << '\n';
    for (const auto& row : rows) {
      first = true;
      for (const auto& c : columns) {
        auto it = row.find(c);
        out_ << (first ? "" : ",") << (it == row.end() ? "" : quote(it->second));
        first = false;
      }
      out_ << '\n';
    }
  }

  const RunConfig& cfg_;
  std::ostream& out_;
  std::vector<json> records_;
};

EstimatorOptions estimator_options(const RunConfig& cfg) {
  EstimatorOptions o;
  o.burn_in = cfg.burn_in_mode;
  o.burn_in_constant = cfg.burn_in_constant;
  o.sample_constant = cfg.sample_constant;
  o.exact_state_cap = cfg.matrix_cap;
  return o;
}

std::string burn_in_name(BurnInMode m) { return m == BurnInMode::Bound ? "bound" : "exact-measured"; }

json base_params(const RunConfig& cfg, const SuccinctTree& tree) {
  json p{{"tree", cfg.tree_descriptor}, {"n", tree.level_budget()}};
  if (!cfg.order.empty()) p["order"] = cfg.order;
  return p;
}

json estimator_params(const RunConfig& cfg, const SuccinctTree& tree) {
  json p = base_params(cfg, tree);
  p["delta"] = cfg.delta;
  p["burn_in_mode"] = burn_in_name(cfg.burn_in_mode);
  p["burn_in_constant"] = cfg.burn_in_constant;
  p["sample_constant"] = cfg.sample_constant;
  return p;
}

json alpha_json(const AlphaEstimate& a) {
  return json{{"value", a.value},
              {"zeta", a.zeta},
              {"delta", a.delta},
              {"batches", a.batches},
              {"samples_per_batch", a.samples_per_batch},
              {"burn_in", a.burn_in},
              {"batch_values", a.batch_values}};
}

json size_json(const SizeEstimate& s) {
  json levels = json::array();
  for (std::size_t k = 0; k < s.per_level_alphas.size(); ++k) {
    json l = alpha_json(s.per_level_alphas[k]);
    l.erase("batch_values");
    l["level"] = k;
    levels.push_back(std::move(l));
  }
  json r{{"method", s.method}, {"value", s.value}, {"xi", s.xi}, {"delta", s.delta}};
  if (s.method != "uniform") {
    r["A_hat"] = s.A_hat;
    r["B_hat"] = s.B_hat;
    r["per_level"] = std::move(levels);
  }
  return r;
}

struct Checks {
  json results = json::object();
  bool ok = true;

  void add(const std::string& name, bool passed) {
    results[name] = passed;
    ok = ok && passed;
  }
};

int run_validate(const RunConfig& cfg, const SuccinctTree& tree, Emitter& em, Clock::time_point t0) {
  Checks c;
  const auto violation = validate_prefix_closed(tree, cfg.enum_cap, cfg.seed);
  c.add("prefix_closed", !violation);
  json result;
  if (violation) result["counterexample"] = violation->to_string();

  const ExplicitTree et = enumerate(tree, cfg.enum_cap);
  const StationaryProfile profile = stationary_exact(et);
  const int n = tree.level_budget();
  for (bool lazy : {true, false}) {
    const ExplicitChain chain = transition_matrix(et, lazy, cfg.matrix_cap);
    const std::string tag = lazy ? "_lazy" : "_nonlazy";
    c.add("rows_stochastic" + tag, rows_sum_to_one(chain));
    c.add("stationary" + tag, verify_stationary(chain, profile));
    c.add("detailed_balance" + tag, verify_detailed_balance(chain, profile));
  }

  const std::vector<BigInt> alphas = pruned_alpha_inverses(tree, cfg.enum_cap);
  c.add("telescoping_identity", size_from_alpha_inverses(alphas) == BigInt(static_cast<unsigned long>(et.size())));
  bool levels_ok = true;
  try {
    const LevelProfile lp = level_counts_from_alphas(alphas);
    const auto direct = et.level_counts();
    for (std::size_t k = 0; k < direct.size(); ++k) {
      levels_ok = levels_ok && lp.counts[k] == BigInt(static_cast<unsigned long>(direct[k]));
    }
  } catch (const InconsistentProfile&) {
    levels_ok = false;
  }
  c.add("level_recurrence", levels_ok);

  const BigInt max_alpha_inv = BigInt(n + 1) * pow2(static_cast<unsigned long>(n));
  const bool is_full = et.size() == (std::uint64_t{2} << n) - 1;
  c.add("alpha_inverse_bound", profile.alpha_inverse <= max_alpha_inv && ((profile.alpha_inverse == max_alpha_inv) == is_full));
  c.add("root_mass_bound", profile.root_prob() >= Rational(1, n + 1));

  if (et.size() >= 2 && et.size() <= cfg.conductance_cap) {
    const ExplicitChain chain = transition_matrix(et, true, cfg.matrix_cap);
    const Rational phi = conductance_exact(chain, profile, cfg.conductance_cap);
    c.add("conductance_bound", phi >= Rational(1, 4 * (n + 1)));
    result["conductance"] = to_string(phi);
  } else {
    result["conductance"] = "skipped";
  }

  result["checks"] = c.results;
  result["ok"] = c.ok;
  result["size"] = et.size();
  result["alpha_inverse"] = to_string(profile.alpha_inverse);
  json params = base_params(cfg, tree);
  params["enum_cap"] = cfg.enum_cap;
  params["matrix_cap"] = cfg.matrix_cap;
  params["conductance_cap"] = cfg.conductance_cap;
  em.emit(em.record(std::move(params), std::move(result), json{{"states", et.size()}}, t0));
  return c.ok ? kExitOk : kExitGuaranteeViolation;
}

SuccinctTree bench_tree(const std::string& family, int n, std::uint64_t seed) {
  if (family == "path") return leftmost_path(n);
  if (family == "comb") return comb(n);
  if (family == "hash") return hash_random_tree(seed, n, 0.8);
  return full_tree(n);
}

void run_bench(const RunConfig& cfg, Emitter& em) {
  const EstimatorOptions opts = estimator_options(cfg);
  const double xi = cfg.xi.value_or(0.5);
  const double zeta = cfg.zeta.value_or(0.2);
  const RandomStream master(cfg.seed, 0);
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    const SuccinctTree tree = bench_tree(cfg.family, n, cfg.seed);
    std::optional<std::uint64_t> exact;
    try {
      exact = exact_count(tree, cfg.enum_cap);
    } catch (const BudgetExceeded&) {
    }
    const RandomStream rng = master.substream(static_cast<std::uint64_t>(n));
    for (const auto& name : cfg.estimators) {
      const auto t0 = Clock::now();
      json result{{"estimator", name}};
      json counters;
      json params{{"family", cfg.family}, {"n", n}, {"delta", cfg.delta}, {"burn_in_mode", burn_in_name(cfg.burn_in_mode)}};
      if (exact) result["exact_size"] = *exact;
      if (name == "alpha") {
        const AlphaEstimate a = estimate_alpha(tree, zeta, cfg.delta, rng.substream(1), opts);
        params["zeta"] = zeta;
        result["value"] = a.value;
        counters = {{"chain_steps", a.chain_steps_total}, {"samples", a.batches * a.samples_per_batch}, {"burn_in", a.burn_in}};
      } else if (name == "size") {
        const SizeEstimate s = estimate_size_additive(tree, xi, cfg.delta, rng.substream(2), opts);
        params["xi"] = xi;
        result["value"] = s.value;
        counters = {{"chain_steps", s.chain_steps_total}, {"samples", s.samples}};
      } else if (name == "uniform") {
        const SizeEstimate s = estimate_size_uniform(tree, xi, cfg.delta, rng.substream(3));
        params["xi"] = xi;
        result["value"] = s.value;
        counters = {{"chain_steps", 0}, {"samples", s.samples}};
      } else {
        const KnuthSummary k = knuth_summary(tree, cfg.runs, rng.substream(4));
        params["runs"] = cfg.runs;
        result["value"] = k.mean;
        result["std_error"] = k.std_error;
        counters = {{"chain_steps", 0}, {"samples", k.runs}};
      }
      em.emit(em.record(std::move(params), std::move(result), std::move(counters), t0));
    }
  }
}

}  // namespace

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto t0 = Clock::now();
  Emitter em(cfg, out);
  if (cfg.command == Command::Bench) {
    run_bench(cfg, em);
    em.flush();
    return kExitOk;
  }

  const SuccinctTree tree = tree_from_descriptor(cfg.tree_descriptor, cfg.order);
  const int n = tree.level_budget();
  const RandomStream rng(cfg.seed, 0);
  const EstimatorOptions opts = estimator_options(cfg);
  int status = kExitOk;

  switch (cfg.command) {
    case Command::Gen: {
      const ExplicitTree et = enumerate(tree, cfg.enum_cap);
      json result{{"label", tree.label()},
                  {"size", et.size()},
                  {"height", et.height()},
                  {"level_counts", et.level_counts()},
                  {"alpha_inverse", to_string(stationary_exact(et).alpha_inverse)}};
      if (cfg.list_nodes) {
        json nodes = json::array();
        for (const auto& a : et.nodes()) nodes.push_back(a.to_string());
        result["nodes"] = std::move(nodes);
      }
      json params = base_params(cfg, tree);
      params["enum_cap"] = cfg.enum_cap;
      em.emit(em.record(std::move(params), std::move(result), json{{"nodes_visited", et.size()}}, t0));
      break;
    }
    case Command::Count: {
      const std::uint64_t size = exact_count(tree, cfg.enum_cap);
      json params = base_params(cfg, tree);
      params["enum_cap"] = cfg.enum_cap;
      em.emit(em.record(std::move(params), json{{"size", size}}, json{{"nodes_visited", size}}, t0));
      break;
    }
    case Command::EstimateAlpha: {
      const AlphaEstimate a = estimate_alpha(tree, *cfg.zeta, cfg.delta, rng, opts);
      json params = estimator_params(cfg, tree);
      params["zeta"] = *cfg.zeta;
      em.emit(em.record(std::move(params), alpha_json(a),
                        json{{"chain_steps", a.chain_steps_total}, {"samples", a.batches * a.samples_per_batch}}, t0));
      break;
    }
    case Command::EstimateSize: {
      const SizeEstimate s = estimate_size_additive(tree, *cfg.xi, cfg.delta, rng, opts);
      json params = estimator_params(cfg, tree);
      params["xi"] = *cfg.xi;
      em.emit(em.record(std::move(params), size_json(s),
                        json{{"chain_steps", s.chain_steps_total}, {"samples", s.samples}}, t0));
      break;
    }
    case Command::EstimateProb: {
      const ProbabilityEstimate p = estimate_probability(tree, *cfg.xi, cfg.delta, rng, opts);
      json params = estimator_params(cfg, tree);
      params["xi"] = *cfg.xi;
      json result{{"value", p.value}, {"xi", p.xi}, {"delta", p.delta}, {"size", size_json(p.size)}};
      em.emit(em.record(std::move(params), std::move(result),
                        json{{"chain_steps", p.size.chain_steps_total}, {"samples", p.size.samples}}, t0));
      break;
    }
    case Command::Baseline: {
      const SizeEstimate s = estimate_size_uniform(tree, *cfg.xi, cfg.delta, rng);
      json params = base_params(cfg, tree);
      params["xi"] = *cfg.xi;
      params["delta"] = cfg.delta;
      em.emit(em.record(std::move(params), size_json(s), json{{"samples", s.samples}}, t0));
      break;
    }
    case Command::Knuth: {
      const KnuthSummary k = knuth_summary(tree, cfg.runs, rng);
      json params = base_params(cfg, tree);
      params["runs"] = cfg.runs;
      em.emit(em.record(std::move(params),
                        json{{"mean", k.mean}, {"std_error", k.std_error}, {"min", k.min}, {"max", k.max}},
                        json{{"descents", k.runs}}, t0));
      break;
    }
    case Command::Sample: {
      const std::uint64_t steps = resolve_burn_in(tree, cfg.tv_epsilon, opts);
      const auto samples = sample_restarts(SuccinctTopology(tree), cfg.m, steps, rng, true, Exec::Parallel);
      if (!cfg.trace_path.empty()) {
        std::ofstream trace(cfg.trace_path);
        if (!trace) throw UsageError("cannot open trace file '" + cfg.trace_path + "'");
        for (std::uint64_t j = 0; j < cfg.m; ++j) {
          RandomStream s = rng.substream(j);
          run_chain(tree, steps, s, true, [&](NodeAddr a) { trace << a.to_string() << '\n'; });
          trace << '\n';
        }
      }
      std::vector<std::uint64_t> histogram(static_cast<std::size_t>(n) + 1, 0);
      json addrs = json::array();
      for (const auto& a : samples) {
        ++histogram[static_cast<std::size_t>(a.depth())];
        addrs.push_back(a.to_string());
      }
      json params = estimator_params(cfg, tree);
      params["m"] = cfg.m;
      params["tv_epsilon"] = cfg.tv_epsilon;
      em.emit(em.record(std::move(params), json{{"samples", std::move(addrs)}, {"depth_histogram", histogram}},
                        json{{"burn_in", steps}, {"chain_steps", steps * cfg.m}}, t0));
      break;
    }
    case Command::Validate:
      status = run_validate(cfg, tree, em, t0);
      break;
    case Command::Conductance: {
      const ExplicitTree et = enumerate(tree, cfg.enum_cap);
      const ExplicitChain chain = transition_matrix(et, true, cfg.matrix_cap);
      const Rational phi = conductance_exact(chain, stationary_exact(et), cfg.conductance_cap);
      const Rational bound(1, 4 * (n + 1));
      json params = base_params(cfg, tree);
      params["conductance_cap"] = cfg.conductance_cap;
      em.emit(em.record(std::move(params),
                        json{{"conductance", to_string(phi)},
                             {"conductance_value", phi.get_d()},
                             {"bound", to_string(bound)},
                             {"bound_ok", phi >= bound}},
                        json{{"states", et.size()}, {"subsets", (std::uint64_t{1} << et.size()) - 1}}, t0));
      break;
    }
    case Command::Mixing: {
      const ExplicitTree et = enumerate(tree, cfg.enum_cap);
      const ExplicitChain chain = transition_matrix(et, true, cfg.matrix_cap);
      const StationaryProfile profile = stationary_exact(et);
      json rows = json::array();
      for (double eps : cfg.mixing_eps) {
        const std::uint64_t t = mixing_time_exact(chain, profile, Rational(eps));
        const double inv_cond = 4.0 * (n + 1);
        const double bound = cfg.burn_in_constant * inv_cond * inv_cond * (std::log(n + 1.0) + std::log(1.0 / eps));
        rows.push_back(json{{"eps", eps}, {"mixing_time", t}, {"bound", bound}, {"within_bound", t <= bound}});
      }
      json params = base_params(cfg, tree);
      params["burn_in_constant"] = cfg.burn_in_constant;
      em.emit(em.record(std::move(params), json{{"mixing", std::move(rows)}}, json{{"states", et.size()}}, t0));
      break;
    }
    case Command::Bench:
      break;
  }
  em.flush();
  if (status != kExitOk) err << "validate: at least one check failed\n";
  return status;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.text;
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n(run with --help for usage)\n";
    return kExitUsage;
  }
  try {
    return execute(cfg, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const BudgetExceeded& e) {
    err << "cap exceeded: " << e.what() << " (partial count " << e.partial_count() << ")\n";
    return kExitCapExceeded;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {  // out-of-range, domain and degenerate inputs
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace treewalk::cli
