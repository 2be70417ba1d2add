#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "ftlab/bounds.hpp"
#include "ftlab/config.hpp"
#include "ftlab/csv.hpp"
#include "ftlab/drift.hpp"
#include "ftlab/ea.hpp"
#include "ftlab/graph.hpp"
#include "ftlab/harness.hpp"
#include "ftlab/markov.hpp"
#include "ftlab/problems.hpp"

namespace {

using namespace ftlab;

MutationModel make_model(const Settings& s, std::size_t dimension) {
  double p = s.p > 0.0 ? s.p : 1.0 / static_cast<double>(dimension);
  if (s.model == "rls") return MutationModel::rls();
  if (s.model == "rls2") return MutationModel::rls2();
  if (s.model == "sbm") return MutationModel::sbm(p);
  if (s.model == "shift") return MutationModel::shift(p);
  if (s.model == "resample") return MutationModel::resample(p);
  if (s.model == "fast") return MutationModel::fast(s.beta);
  if (s.model == "shift02") return MutationModel::shift02(p);
  throw std::invalid_argument("unknown mutation model '" + s.model +
                              "' (expected rls|rls2|sbm|shift|resample|fast|shift02)");
}

// Start distribution over fitness levels for the chain-based commands.
std::vector<double> chain_init(const Settings& s) {
  if (s.init == "worst") return point_init(s.n + 1, 0);
  if (s.init == "random")
    return s.problem == "leadingones" ? leadingones_uniform_init(s.n)
                                      : onemax_uniform_init(s.n);
  throw std::invalid_argument("unknown init '" + s.init + "' (expected worst|random)");
}

// Start state for the simulator. "worst" selects no edges for the
// spanning-tree problem would be disconnected with weight zero, which is the
// *best* weight; all edges selected is the natural pessimistic start there.
InitModel ea_init(const Settings& s, const WeightedGraph* graph) {
  if (s.init == "random") return InitModel::uniform_random();
  if (s.init == "worst") return graph ? InitModel::all_ones() : InitModel::all_zeros();
  if (s.init == "maxtree" && graph) return InitModel::fixed(maximum_spanning_tree(*graph));
  throw std::invalid_argument("unknown init '" + s.init + "' (expected worst|random" +
                              std::string(graph ? "|maxtree" : "") + ")");
}

ExperimentConfig experiment_config(const Settings& s, MutationModel model, InitModel init) {
  ExperimentConfig c;
  c.ea.mu = s.mu;
  c.ea.lambda = s.lambda;
  c.ea.mutation = model;
  c.ea.init = std::move(init);
  c.ea.max_evaluations = s.budget;
  c.runs = s.runs;
  c.base_seed = s.seed;
  return c;
}

void require_settings(const Settings& s) {
  std::vector<std::string> missing = missing_required(s);
  if (!missing.empty()) {
    std::string msg = "missing required settings:";
    for (const auto& key : missing) msg += " " + key;
    throw std::invalid_argument(msg);
  }
  if (s.problem != "onemax" && s.problem != "leadingones" && s.problem != "binval" &&
      s.problem != "mst")
    throw std::invalid_argument("unknown problem '" + s.problem +
                                "' (expected onemax|leadingones|binval|mst)");
}

void emit_text(const Settings& s, const std::string& text) {
  if (s.out.empty()) {
    std::cout << text;
  } else {
    write_text_atomic(s.out, text);
    std::cerr << "wrote " << s.out << "\n";
  }
}

void emit_csv(const Settings& s, const CsvTable& table) { emit_text(s, to_string(table)); }

std::vector<std::int64_t> decile_targets(std::size_t n, std::size_t k) {
  if (k) return {static_cast<std::int64_t>(k)};
  std::vector<std::int64_t> targets;
  for (std::size_t j = 1; j <= 10; ++j) {
    auto v = static_cast<std::int64_t>((n * j + 5) / 10);
    if (v < 1) v = 1;
    if (targets.empty() || targets.back() != v) targets.push_back(v);
  }
  return targets;
}

int run_simulate(const Settings& s) {
  require_settings(s);
  if (s.problem == "onemax" || s.problem == "leadingones") {
    if (s.k > s.n) throw std::invalid_argument("simulate: k must be at most n");
    ExperimentConfig cfg = experiment_config(s, make_model(s, s.n), ea_init(s, nullptr));
    std::vector<std::int64_t> targets = decile_targets(s.n, s.k);
    RuntimeProfile profile;
    if (s.problem == "onemax") {
      profile = run_experiment(OneMax{s.n}, cfg, targets);
    } else {
      profile = run_experiment(LeadingOnes{s.n}, cfg, targets);
    }
    emit_csv(s, profile_csv(profile));
    return 0;
  }
  if (s.problem == "binval") {
    BinVal problem{s.n};
    ExperimentConfig cfg = experiment_config(s, make_model(s, s.n), ea_init(s, nullptr));
    std::vector<BigUint> targets = {problem.target_for_gap_exponent(s.s)};
    emit_csv(s, profile_csv(run_experiment(problem, cfg, targets)));
    return 0;
  }
  MstProblem problem(WeightedGraph::load(s.graph));
  ExperimentConfig cfg =
      experiment_config(s, make_model(s, problem.dimension()), ea_init(s, &problem.graph));
  std::vector<std::int64_t> targets;
  if (s.k) {
    targets.push_back(static_cast<std::int64_t>(s.k));
  } else {
    // connectivity (any spanning subgraph), then a minimum spanning tree
    targets.push_back(static_cast<std::int64_t>(problem.penalty) - 1);
    targets.push_back(problem.optimum());
  }
  emit_csv(s, profile_csv(run_experiment(problem, cfg, targets)));
  return 0;
}

int run_exact(const Settings& s) {
  require_settings(s);
  if (s.problem != "onemax" && s.problem != "leadingones")
    throw std::invalid_argument(
        "exact: closed chains exist for onemax and leadingones only; "
        "use simulate or bounds for the other problems");
  if (s.k > s.n) throw std::invalid_argument("exact: k must be at most n");
  MutationModel model = make_model(s, s.n);
  MarkovKernel kernel =
      s.problem == "onemax" ? onemax_kernel(s.n, model) : leadingones_kernel(s.n, model);
  std::vector<double> profile = fixed_target_profile(kernel, chain_init(s));
  CsvTable table;
  table.header = {"target", "k_relative", "exact_expectation"};
  auto row = [&](std::size_t k) {
    table.rows.push_back({std::to_string(k),
                          format_double(static_cast<double>(k) / static_cast<double>(s.n)),
                          format_double(profile[k])});
  };
  if (s.k)
    row(s.k);
  else
    for (std::size_t k = 1; k <= s.n; ++k) row(k);
  emit_csv(s, table);
  return 0;
}

int run_bounds(const Settings& s, std::int64_t excess) {
  require_settings(s);
  CsvTable table;
  table.header = {"bound", "n", "target", "value", "kind", "status", "note"};
  auto add = [&](const std::string& name, std::size_t n, const std::string& target,
                 const BoundResult& b) {
    table.rows.push_back({name, std::to_string(n), target,
                          std::isnan(b.value) ? "" : format_double(b.value), to_string(b.kind),
                          to_string(b.status), b.note});
  };
  if (s.problem == "onemax") {
    if (s.k < 1 || s.k > s.n)
      throw std::invalid_argument("bounds: onemax requires 1 <= k <= n");
    MutationModel model = make_model(s, s.n);
    double q = one_bit_q(model, s.n);
    const std::string kt = std::to_string(s.k);
    add("om_upper_worst", s.n, kt, om_upper_worst(q, s.n, s.k));
    add("om_upper_random", s.n, kt, om_upper_random(q, s.n, s.k));
    if (model.kind == MutationKind::sbm) {
      add("om_lower_levels", s.n, kt, om_lower_levels(model.p, s.n, s.k));
      if (std::abs(model.p * static_cast<double>(s.n) - 1.0) < 1e-12) {
        add("om_lower_lengler", s.n, kt, om_lower_lengler(s.n, s.k));
        add("om_lower_drift", s.n, kt, om_lower_drift(s.n, s.k));
      }
      add("om_mu1_upper", s.n, kt, om_mu1_upper(s.mu, model.p, s.n, s.k));
    }
    if (model.kind == MutationKind::resample) {
      add("om_upper_random_resample", s.n, kt, om_upper_random_resample(model.p, s.n, s.k));
      add("om_lower_resample", s.n, kt, om_lower_resample(model.p, s.n, s.k));
    }
  } else if (s.problem == "leadingones") {
    if (s.k > s.n) throw std::invalid_argument("bounds: leadingones requires k <= n");
    MutationModel model = make_model(s, s.n);
    const std::string kt = std::to_string(s.k);
    BoundResult closed = lo_exact(model, s.n, s.k);
    add("lo_exact", s.n, kt, closed);
    if (!closed.usable()) add("lo_exact_general", s.n, kt, lo_exact_general(model, s.n, s.k));
    add("lo_mu1_upper", s.n, kt, lo_mu1_upper(s.mu, s.n, s.k));
  } else if (s.problem == "binval") {
    double p = s.p > 0.0 ? s.p : 1.0 / static_cast<double>(s.n);
    const std::string st = std::to_string(s.s);
    add("binval_lower", s.n, st, binval_lower(p, s.n, s.s));
    add("binval_upper", s.n, st, binval_upper(p, s.n, s.s, s.alpha));
  } else {
    WeightedGraph graph = WeightedGraph::load(s.graph);
    graph.validate();
    const std::size_t m = graph.n_edges();
    MutationModel model = make_model(s, m);
    std::size_t kc = s.k ? s.k : 1;
    add("mst_components_upper", m, std::to_string(kc),
        mst_components_upper(one_bit_q(model, m), m, kc));
    add("mst_weight_upper", m, std::to_string(excess),
        mst_weight_upper(two_bit_q(model, m), graph.n_vertices,
                         static_cast<std::int64_t>(graph.max_weight()), excess));
  }
  emit_csv(s, table);
  return 0;
}

int run_compare(const Settings& s) {
  require_settings(s);
  if (s.problem != "onemax" && s.problem != "leadingones")
    throw std::invalid_argument("compare: supported problems are onemax and leadingones");
  if (s.k > s.n) throw std::invalid_argument("compare: k must be at most n");
  MutationModel model = make_model(s, s.n);
  MarkovKernel kernel =
      s.problem == "onemax" ? onemax_kernel(s.n, model) : leadingones_kernel(s.n, model);
  std::vector<double> profile = fixed_target_profile(kernel, chain_init(s));

  std::vector<std::size_t> ks;
  if (s.k)
    ks.push_back(s.k);
  else
    for (std::size_t k = 1; k <= s.n; ++k) ks.push_back(k);
  std::vector<double> targets(ks.size()), reference(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    targets[i] = static_cast<double>(ks[i]);
    reference[i] = profile[ks[i]];
  }

  std::vector<ComparisonRow> rows;
  auto family = [&](const std::string& name, const std::function<BoundResult(std::size_t)>& f) {
    std::vector<BoundResult> bounds;
    bounds.reserve(ks.size());
    for (std::size_t k : ks) bounds.push_back(f(k));
    auto part = compare_rows(targets, reference, name, bounds);
    rows.insert(rows.end(), part.begin(), part.end());
  };

  const bool random_init = s.init == "random";
  if (s.problem == "onemax") {
    double q = one_bit_q(model, s.n);
    family("om_upper_worst", [&](std::size_t k) { return om_upper_worst(q, s.n, k); });
    if (random_init)
      family("om_upper_random", [&](std::size_t k) { return om_upper_random(q, s.n, k); });
    if (model.kind == MutationKind::sbm) {
      family("om_lower_levels",
             [&](std::size_t k) { return om_lower_levels(model.p, s.n, k); });
      if (std::abs(model.p * static_cast<double>(s.n) - 1.0) < 1e-12) {
        family("om_lower_lengler", [&](std::size_t k) { return om_lower_lengler(s.n, k); });
        family("om_lower_drift", [&](std::size_t k) { return om_lower_drift(s.n, k); });
      }
    }
    if (model.kind == MutationKind::resample) {
      if (random_init)
        family("om_upper_random_resample",
               [&](std::size_t k) { return om_upper_random_resample(model.p, s.n, k); });
      family("om_lower_resample",
             [&](std::size_t k) { return om_lower_resample(model.p, s.n, k); });
    }
  } else {
    if (random_init)
      family("lo_exact", [&](std::size_t k) { return lo_exact(model, s.n, k); });
    if (s.mu == 1)
      family("lo_mu1_upper", [&](std::size_t k) { return lo_mu1_upper(1, s.n, k); });
  }
  emit_csv(s, comparison_csv(rows, static_cast<double>(s.n)));
  return 0;
}

int run_verify_drift(const Settings& s, const std::string& chain_name, std::size_t start,
                     bool start_given) {
  if (s.n == 0) throw std::invalid_argument("verify-drift: --n is required");
  DenseChain chain;
  double threshold = 0.0;
  std::size_t st = start;
  if (chain_name == "example6") {
    chain = example6_chain(s.n);
    if (!start_given) st = 1;
  } else if (chain_name == "onemax" || chain_name == "leadingones") {
    std::size_t k = s.k ? s.k : s.n;
    if (k > s.n) throw std::invalid_argument("verify-drift: k must be at most n");
    Settings sc = s;
    sc.problem = chain_name;
    MutationModel model = make_model(sc, s.n);
    MarkovKernel kernel =
        chain_name == "onemax" ? onemax_kernel(s.n, model) : leadingones_kernel(s.n, model);
    chain = chain_from_kernel(kernel, k);
    threshold = static_cast<double>(s.n - k);
    if (!start_given) st = 0;
  } else {
    throw std::invalid_argument("unknown chain '" + chain_name +
                                "' (expected example6|onemax|leadingones)");
  }
  DriftReport report = verify_drift_on_chain(chain, st, threshold);
  emit_text(s, report.to_json_string() + "\n");
  return report.all_ok() ? 0 : 1;
}

int run_table2(const Settings& s) {
  if (s.n == 0) throw std::invalid_argument("table2: --n is required");
  if (!s.problem.empty() && s.problem != "onemax")
    throw std::invalid_argument("table2: the tightness table is defined for onemax");
  MutationModel model = make_model(s, s.n);
  RatioTableRow row = s.init == "random" ? ratio_table(s.n, model, onemax_uniform_init(s.n))
                                         : ratio_table(s.n, model);
  CsvTable table;
  table.header = {"n",          "max_ratio",  "argmax_k",   "ge2.5_from",
                  "ge2.5_to",   "ge1.5_from", "ge1.5_to"};
  auto end = [](const RatioWindow& w, bool upper) {
    return w.empty ? std::string() : std::to_string(upper ? w.hi : w.lo);
  };
  table.rows.push_back({std::to_string(row.n), format_double(row.max_ratio),
                        std::to_string(row.argmax_target), end(row.above_2_5, false),
                        end(row.above_2_5, true), end(row.above_1_5, false),
                        end(row.above_1_5, true)});
  emit_csv(s, table);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fixed-target runtime analysis for simple evolutionary algorithms"};
  app.require_subcommand(1);

  Settings cli;  // raw flag values, merged over config-file settings
  std::string config_path;
  double p_over_n = 0.0;
  std::int64_t excess = 0;
  std::string chain_name = "example6";
  std::size_t start_state = 0;

  struct Binding {
    CLI::Option* opt;
    std::function<void(Settings&)> apply;
  };
  std::vector<Binding> bindings;
  std::vector<CLI::Option*> config_opts, p_over_n_opts;

  auto add_common = [&](CLI::App* cmd) {
    auto bind = [&bindings, &cli, cmd](const char* name, auto field, const char* desc) {
      CLI::Option* opt = cmd->add_option(name, cli.*field, desc);
      bindings.push_back({opt, [&cli, field](Settings& out) { out.*field = cli.*field; }});
    };
    bind("--problem", &Settings::problem, "onemax | leadingones | binval | mst");
    bind("--n", &Settings::n, "problem dimension (bit count)");
    bind("--k", &Settings::k, "fitness target (0 = problem default)");
    bind("--model", &Settings::model, "rls | rls2 | sbm | shift | resample | fast | shift02");
    bind("--p", &Settings::p, "mutation rate (0 = 1/n)");
    bind("--beta", &Settings::beta, "heavy-tail exponent for the fast model");
    bind("--mu", &Settings::mu, "parent population size");
    bind("--lambda", &Settings::lambda, "offspring per generation");
    bind("--init", &Settings::init, "worst | random (mst also: maxtree)");
    bind("--runs", &Settings::runs, "number of replications");
    bind("--seed", &Settings::seed, "base seed; replication i uses a mix of seed and i");
    bind("--budget", &Settings::budget, "evaluation budget per run (0 = default)");
    bind("--out", &Settings::out, "output file, written atomically (default: stdout)");
    bind("--graph", &Settings::graph, "edge-list file for the spanning-tree problem");
    bind("--s", &Settings::s, "gap exponent for the binary-value problem");
    bind("--alpha", &Settings::alpha, "free parameter of the binary-value upper bound");
    config_opts.push_back(
        cmd->add_option("--config", config_path, "key = value settings file; flags override"));
    p_over_n_opts.push_back(
        cmd->add_option("--p-over-n", p_over_n, "mutation rate as a multiple of 1/n"));
  };

  CLI::App* c_simulate =
      app.add_subcommand("simulate", "Monte Carlo fixed-target runtime profile");
  CLI::App* c_exact =
      app.add_subcommand("exact", "exact expected fixed-target times from the fitness chain");
  CLI::App* c_bounds = app.add_subcommand("bounds", "evaluate closed-form fixed-target bounds");
  CLI::App* c_compare =
      app.add_subcommand("compare", "closed-form bounds against the exact curve, per target");
  CLI::App* c_drift = app.add_subcommand(
      "verify-drift", "check drift-theorem bounds against an exactly solved chain");
  CLI::App* c_table2 =
      app.add_subcommand("table2", "tightness ratios of the harmonic upper bound");
  for (CLI::App* cmd : {c_simulate, c_exact, c_bounds, c_compare, c_drift, c_table2})
    add_common(cmd);
  c_bounds->add_option("--excess", excess, "weight-excess target for the spanning-tree bound");
  c_drift->add_option("--chain", chain_name, "example6 | onemax | leadingones");
  CLI::Option* start_opt = c_drift->add_option("--start", start_state, "start state index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    Settings s;
    bool have_config = false;
    for (CLI::Option* o : config_opts) have_config = have_config || o->count() > 0;
    if (have_config) s = load_settings(config_path, s);
    for (const Binding& b : bindings)
      if (b.opt->count() > 0) b.apply(s);
    bool have_p_over_n = false;
    for (CLI::Option* o : p_over_n_opts) have_p_over_n = have_p_over_n || o->count() > 0;
    if (have_p_over_n) {
      if (s.n == 0) throw std::invalid_argument("--p-over-n requires n");
      s.p = p_over_n / static_cast<double>(s.n);
    }

    if (c_simulate->parsed()) return run_simulate(s);
    if (c_exact->parsed()) return run_exact(s);
    if (c_bounds->parsed()) return run_bounds(s, excess);
    if (c_compare->parsed()) return run_compare(s);
    if (c_drift->parsed()) return run_verify_drift(s, chain_name, start_state, start_opt->count() > 0);
    if (c_table2->parsed()) return run_table2(s);
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
