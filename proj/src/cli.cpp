#include "antta/cli.hpp"

#include "antta/oracle.hpp"
#include "antta/stats.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace antta::cli {

namespace {

constexpr std::string_view kFilePrefix = "file:";

bool is_file_kind(const std::string& kind) { return kind.starts_with(kFilePrefix); }

std::string file_path_of(const std::string& kind) { return kind.substr(kFilePrefix.size()); }

WorkerSelection parse_selection(const std::string& text) {
  if (text == "stable") return WorkerSelection::Stable;
  if (text == "random") return WorkerSelection::Random;
  throw ScenarioError("selection must be 'stable' or 'random'");
}

std::string fraction_text(IdleFraction f) {
  return f.is_zero() ? "0" : std::to_string(f.num) + "/" + std::to_string(f.den);
}

std::string scenario_label(const std::string& kind, IdleFraction idle) {
  std::string label = is_file_kind(kind) ? "file" : kind;
  if (!idle.is_zero()) label += "[idle=" + fraction_text(idle) + "]";
  return label;
}

bool distribution_kind(const std::string& kind) { return kind == "idle-distribution-lb"; }

ModelParams params_for(const Scenario& s, std::size_t R, std::size_t th) {
  ModelParams p;
  p.n = s.colony_size();
  p.t = s.tasks();
  p.R = R;
  p.th = th;
  return p;
}

IdleDistributionGoal unit_goal(const Scenario& s) {
  return IdleDistributionGoal{std::vector<std::size_t>(s.tasks(), 1)};
}

nlohmann::json opt_json(const std::optional<std::size_t>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string opt_csv(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : ""; }

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ScenarioError("cannot write '" + path + "'");
  f << content;
}

struct RunArgs {
  std::string scenario;
  std::size_t n = 0;
  std::size_t t = 4;
  std::size_t R = 1;
  std::size_t th = 1;
  std::string idle = "0";
  std::uint64_t seed = 0;
  std::size_t max_rounds = 0;
  std::string trajectory;
  std::string format = "csv";
  std::string selection = "stable";
  std::string mode;
  std::vector<std::size_t> targets;
  bool force = false;
};

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
  const IdleFraction idle = parse_idle_fraction(a.idle);
  const Scenario scenario = build_scenario(a.scenario, a.n, a.t, idle, err);
  const ModelParams params = params_for(scenario, a.R, a.th);
  params.check();

  const std::string mode = a.mode.empty() ? (distribution_kind(a.scenario) ? "distribute" : "allocate")
                                          : a.mode;
  RunOptions options;
  options.max_rounds = a.max_rounds;
  options.record = !a.trajectory.empty();
  options.selection = parse_selection(a.selection);
  options.allow_unsatisfiable = a.force;

  RunResult result;
  if (mode == "allocate") {
    result = run(scenario, params, a.seed, options);
  } else if (mode == "distribute") {
    IdleDistributionGoal goal = a.targets.empty() ? unit_goal(scenario) : IdleDistributionGoal{a.targets};
    result = run_idle_distribution(scenario, goal, params, a.seed, options);
  } else {
    throw ScenarioError("mode must be 'allocate' or 'distribute'");
  }

  if (result.trajectory) {
    std::ostringstream csv;
    write_trajectory_csv(csv, *result.trajectory, scenario.idle_total() > 0);
    write_text_file(a.trajectory, csv.str());
  }

  const std::string label = scenario_label(a.scenario, idle);
  if (a.format == "json") {
    nlohmann::json doc{{"scenario", label},
                       {"mode", mode},
                       {"n", params.n},
                       {"t", params.t},
                       {"R", params.R},
                       {"th", params.th},
                       {"seed", a.seed},
                       {"terminated", result.terminated},
                       {"rounds", result.rounds},
                       {"first_switch_round", opt_json(result.first_switch_round)},
                       {"first_contact_round", opt_json(result.first_contact_round)}};
    out << doc.dump() << '\n';
  } else if (a.format == "csv") {
    out << "scenario,mode,n,t,R,th,seed,terminated,rounds,first_switch_round,first_contact_round\n"
        << label << ',' << mode << ',' << params.n << ',' << params.t << ',' << params.R << ','
        << params.th << ',' << a.seed << ',' << (result.terminated ? "true" : "false") << ','
        << result.rounds << ',' << opt_csv(result.first_switch_round) << ','
        << opt_csv(result.first_contact_round) << '\n';
  } else {
    throw ScenarioError("format must be 'csv' or 'json'");
  }
  return result.terminated ? kExitOk : kExitTimeout;
}

int cmd_recruit_p(std::size_t w, std::size_t n, std::size_t R, std::size_t th, std::ostream& out) {
  const double p = recruit_probability(w, n, R, th);
  out << nlohmann::json{{"w", w}, {"n", n}, {"R", R}, {"th", th}, {"probability", p}}.dump() << '\n';
  return kExitOk;
}

int cmd_hitting_time(const std::string& path, std::size_t R, std::size_t th, std::ostream& out) {
  const Scenario s = load_scenario(path);
  const double e = expected_hitting_time(s, params_for(s, R, th));
  out << nlohmann::json{{"scenario", to_json(s)}, {"R", R}, {"th", th}, {"expected_rounds", e}}.dump()
      << '\n';
  return kExitOk;
}

int cmd_validate(const std::string& path, std::ostream& out) {
  const Scenario s = load_scenario(path);
  const auto verdict = validate(s);
  out << to_json(verdict).dump() << '\n';
  return verdict.satisfiable ? kExitOk : kExitUnsatisfiable;
}

int cmd_gap(const std::string& no_idle_path, const std::string& with_idle_path, std::ostream& out) {
  auto load = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open '" + path + "'");
    std::vector<TrialSummary> rows;
    for (const auto& cell : read_sweep_csv(in)) {
      if (cell.timed_out) throw ScenarioError("'" + path + "' contains timed-out cells");
      rows.push_back(cell.summary);
    }
    return rows;
  };
  const auto a = load(no_idle_path);
  const auto b = load(with_idle_path);
  write_gap_csv(out, gap_report(a, b));
  return kExitOk;
}

}  // namespace

void SweepConfig::check() const {
  if (trials < 1) throw ScenarioError("trials must be at least 1");
  if (n_values.empty()) throw ScenarioError("n_values must not be empty");
  for (std::size_t i = 1; i < n_values.size(); ++i) {
    if (n_values[i] <= n_values[i - 1]) throw ScenarioError("n_values must be strictly increasing");
  }
  if (output_path.empty()) throw ScenarioError("an output path is required");
}

SweepConfig sweep_config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ScenarioError("sweep config must be a JSON object");
  SweepConfig c;
  try {
    if (doc.contains("scenario")) c.scenario_kind = doc.at("scenario").get<std::string>();
    if (doc.contains("n_values")) c.n_values = doc.at("n_values").get<std::vector<std::size_t>>();
    if (doc.contains("t")) c.t = doc.at("t").get<std::size_t>();
    if (doc.contains("R")) c.R = doc.at("R").get<std::size_t>();
    if (doc.contains("th")) c.th = doc.at("th").get<std::size_t>();
    if (doc.contains("idle")) c.idle_fraction = parse_idle_fraction(doc.at("idle").get<std::string>());
    if (doc.contains("trials")) c.trials = doc.at("trials").get<std::size_t>();
    if (doc.contains("seed")) c.master_seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("max_rounds")) c.max_rounds = doc.at("max_rounds").get<std::size_t>();
    if (doc.contains("out")) c.output_path = doc.at("out").get<std::string>();
    if (doc.contains("fit")) c.fit_path = doc.at("fit").get<std::string>();
    if (doc.contains("selection")) c.selection = parse_selection(doc.at("selection").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioError(std::string("bad sweep config: ") + e.what());
  }
  return c;
}

Scenario build_scenario(const std::string& kind, std::size_t n, std::size_t t, IdleFraction idle,
                        std::ostream& warn) {
  if (is_file_kind(kind)) {
    if (!idle.is_zero()) throw ScenarioError("--idle does not apply to scenario files");
    Scenario s = load_scenario(file_path_of(kind));
    if (n != 0 && n != s.colony_size()) {
      throw ScenarioError("--n " + std::to_string(n) + " disagrees with the file's n = " +
                          std::to_string(s.colony_size()));
    }
    return s;
  }
  if (kind == "idle-distribution-lb") {
    if (!idle.is_zero()) throw ScenarioError("--idle does not apply to idle-distribution-lb");
    return make_idle_distribution_lb(n);
  }

  std::size_t tasks = 0;
  if (kind == "upper-worst") {
    tasks = 3;
  } else if (kind == "lowerbound-chain") {
    tasks = t;
  } else {
    throw ScenarioError("unknown scenario kind '" + kind + "'");
  }
  if (idle.is_zero()) {
    return kind == "upper-worst" ? make_upper_worstcase(n) : make_lowerbound_chain(n, t);
  }
  const std::size_t per_task = idle.per_task(n);
  if (!idle.divides_exactly(n)) {
    warn << "warning: idle fraction " << fraction_text(idle) << " of n=" << n << " rounds down to "
         << per_task << " idle ants per task\n";
  }
  if (tasks * per_task >= n) throw ScenarioError("idle fraction leaves no room for workers");
  const std::size_t workers = n - tasks * per_task;
  Scenario base = kind == "upper-worst" ? make_upper_worstcase(workers)
                                        : make_lowerbound_chain(workers, t);
  const std::vector<std::size_t> idle_counts(tasks, per_task);
  return add_idle(std::move(base), idle_counts);
}

int cmd_sweep(const SweepConfig& config, std::ostream& out, std::ostream& err) {
  config.check();
  const std::size_t threads = default_thread_count();
  std::vector<SweepCell> cells;
  std::vector<ScalingPoint> points;
  bool any_timeout = false;

  for (std::size_t n : config.n_values) {
    const Scenario scenario = build_scenario(config.scenario_kind, n, config.t, config.idle_fraction, err);
    const ModelParams params = params_for(scenario, config.R, config.th);
    params.check();
    RunOptions options;
    options.max_rounds = config.max_rounds;
    options.selection = config.selection;
    const bool distribute = distribution_kind(config.scenario_kind);
    const IdleDistributionGoal goal = unit_goal(scenario);

    // Fail fast on unsatisfiable input before spawning workers.
    if (!distribute) {
      auto verdict = validate(scenario, params);
      if (!verdict.satisfiable) throw UnsatisfiableError(std::move(verdict));
    }

    const auto results = run_trials(config.trials, trial_seed(config.master_seed, n), threads,
                                    [&](std::uint64_t seed) {
                                      return distribute
                                                 ? run_idle_distribution(scenario, goal, params, seed, options)
                                                 : run(scenario, params, seed, options);
                                    });
    SweepCell cell;
    cell.scenario = scenario_label(config.scenario_kind, config.idle_fraction);
    cell.summary.n = params.n;
    cell.summary.trials = config.trials;
    cell.timed_out = std::any_of(results.begin(), results.end(),
                                 [](const RunResult& r) { return !r.terminated; });
    if (cell.timed_out) {
      any_timeout = true;
    } else if (config.trials >= 2) {
      cell.summary = summarize(params.n, results);
      points.push_back({static_cast<double>(params.n), cell.summary.mean});
    } else {
      cell.summary.mean = static_cast<double>(results.front().rounds);
      cell.summary.ci_low = cell.summary.ci_high = cell.summary.mean;
      points.push_back({static_cast<double>(params.n), cell.summary.mean});
    }
    cells.push_back(std::move(cell));
  }

  std::ostringstream csv;
  write_sweep_csv(csv, cells);
  write_text_file(config.output_path, csv.str());

  nlohmann::json fit_doc;
  std::string best = "none";
  if (points.size() >= 4) {
    const ScalingFit fit = fit_scaling(points);
    fit_doc = to_json(fit);
    best = std::string(display_name(fit.best_model));
  } else {
    fit_doc = {{"models", nlohmann::json::object()}, {"best_model", nullptr}};
  }
  std::string fit_path = config.fit_path;
  if (fit_path.empty()) {
    fit_path = std::filesystem::path(config.output_path).replace_extension(".fit.json").string();
  }
  write_text_file(fit_path, fit_doc.dump(2) + "\n");

  out << "best_model=" << best << '\n';
  return any_timeout ? kExitTimeout : kExitOk;
}

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ant colony task-allocation simulator"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Run one trial");
  run_cmd->add_option("--scenario", run_args.scenario,
                      "upper-worst | lowerbound-chain | idle-distribution-lb | file:<path>")
      ->required();
  run_cmd->add_option("--n", run_args.n, "Colony size (optional for file scenarios)");
  run_cmd->add_option("--t", run_args.t, "Task count for lowerbound-chain");
  run_cmd->add_option("--R", run_args.R, "Interactions per ant per round");
  run_cmd->add_option("--th", run_args.th, "Recruitment threshold");
  run_cmd->add_option("--idle", run_args.idle, "Idle fraction per task, a/b");
  run_cmd->add_option("--seed", run_args.seed, "Random seed")->required();
  run_cmd->add_option("--max-rounds", run_args.max_rounds, "Round cap (default 50 n ln(n+1))");
  run_cmd->add_option("--trajectory", run_args.trajectory, "Write the per-round CSV here");
  run_cmd->add_option("--format", run_args.format, "csv | json");
  run_cmd->add_option("--selection", run_args.selection, "stable | random worker selection");
  run_cmd->add_option("--mode", run_args.mode, "allocate | distribute");
  run_cmd->add_option("--targets", run_args.targets, "Idle targets per task (distribute mode)")
      ->delimiter(',');
  run_cmd->add_flag("--force", run_args.force, "Run even if the scenario is unsatisfiable");

  SweepConfig sweep;
  std::string sweep_config_path;
  std::string sweep_idle;
  std::string sweep_selection;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run trials across colony sizes and fit scaling laws");
  sweep_cmd->add_option("--config", sweep_config_path, "JSON config; flags override its fields");
  auto* o_kind = sweep_cmd->add_option("--scenario", sweep.scenario_kind, "Scenario kind");
  auto* o_n = sweep_cmd->add_option("--n", sweep.n_values, "Colony sizes, comma separated")->delimiter(',');
  auto* o_t = sweep_cmd->add_option("--t", sweep.t, "Task count for lowerbound-chain");
  auto* o_R = sweep_cmd->add_option("--R", sweep.R, "Interactions per ant per round");
  auto* o_th = sweep_cmd->add_option("--th", sweep.th, "Recruitment threshold");
  auto* o_idle = sweep_cmd->add_option("--idle", sweep_idle, "Idle fraction per task, a/b");
  auto* o_trials = sweep_cmd->add_option("--trials", sweep.trials, "Trials per colony size");
  auto* o_seed = sweep_cmd->add_option("--seed", sweep.master_seed, "Master seed");
  auto* o_max = sweep_cmd->add_option("--max-rounds", sweep.max_rounds, "Round cap");
  auto* o_out = sweep_cmd->add_option("--out", sweep.output_path, "Sweep CSV path");
  auto* o_fit = sweep_cmd->add_option("--fit", sweep.fit_path, "Fit JSON path");
  auto* o_sel = sweep_cmd->add_option("--selection", sweep_selection, "stable | random");

  auto* oracle_cmd = app.add_subcommand("oracle", "Exact probabilities and hitting times");
  oracle_cmd->require_subcommand(1);
  std::size_t rp_w = 0, rp_n = 2, rp_R = 1, rp_th = 1;
  auto* rp_cmd = oracle_cmd->add_subcommand("recruit-p", "Per-round recruit probability");
  rp_cmd->add_option("--w", rp_w, "Recruiters in the next task")->required();
  rp_cmd->add_option("--n", rp_n, "Colony size")->required();
  rp_cmd->add_option("--R", rp_R, "Interactions per round");
  rp_cmd->add_option("--th", rp_th, "Threshold");
  std::string ht_path;
  std::size_t ht_R = 1, ht_th = 1;
  auto* ht_cmd = oracle_cmd->add_subcommand("hitting-time", "Expected rounds to meet the demand");
  ht_cmd->add_option("--scenario", ht_path, "Scenario JSON file")->required();
  ht_cmd->add_option("--R", ht_R, "Interactions per round");
  ht_cmd->add_option("--th", ht_th, "Threshold");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file for satisfiability");
  validate_cmd->add_option("--scenario", validate_path, "Scenario JSON file")->required();

  std::string gap_a, gap_b;
  auto* gap_cmd = app.add_subcommand("gap", "Ratio table between two sweep CSVs");
  gap_cmd->add_option("--no-idle", gap_a, "Sweep CSV without idle ants")->required();
  gap_cmd->add_option("--with-idle", gap_b, "Sweep CSV with idle ants")->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (run_cmd->parsed()) {
      if (run_args.scenario.ends_with(".json") && !is_file_kind(run_args.scenario)) {
        run_args.scenario = std::string(kFilePrefix) + run_args.scenario;
      }
      return cmd_run(run_args, out, err);
    }
    if (sweep_cmd->parsed()) {
      SweepConfig config;
      if (!sweep_config_path.empty()) {
        std::ifstream in(sweep_config_path);
        if (!in) throw ScenarioError("cannot open '" + sweep_config_path + "'");
        nlohmann::json doc;
        try {
          doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
          throw ScenarioError(std::string("malformed sweep config: ") + e.what());
        }
        config = sweep_config_from_json(doc);
      }
      if (o_kind->count()) config.scenario_kind = sweep.scenario_kind;
      if (o_n->count()) config.n_values = sweep.n_values;
      if (o_t->count()) config.t = sweep.t;
      if (o_R->count()) config.R = sweep.R;
      if (o_th->count()) config.th = sweep.th;
      if (o_idle->count()) config.idle_fraction = parse_idle_fraction(sweep_idle);
      if (o_trials->count()) config.trials = sweep.trials;
      if (o_seed->count()) config.master_seed = sweep.master_seed;
      if (o_max->count()) config.max_rounds = sweep.max_rounds;
      if (o_out->count()) config.output_path = sweep.output_path;
      if (o_fit->count()) config.fit_path = sweep.fit_path;
      if (o_sel->count()) config.selection = parse_selection(sweep_selection);
      return cmd_sweep(config, out, err);
    }
    if (rp_cmd->parsed()) return cmd_recruit_p(rp_w, rp_n, rp_R, rp_th, out);
    if (ht_cmd->parsed()) return cmd_hitting_time(ht_path, ht_R, ht_th, out);
    if (validate_cmd->parsed()) return cmd_validate(validate_path, out);
    if (gap_cmd->parsed()) return cmd_gap(gap_a, gap_b, out);
  } catch (const UnsatisfiableError& e) {
    out << to_json(e.verdict()).dump() << '\n';
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace antta::cli
