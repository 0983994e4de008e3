#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "dosefind/config.hpp"
#include "dosefind/report.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int sims = 0;
  int threads = -1;
  std::string out_dir;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "Run configuration file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", opts.seed, "Override the configured master seed")
      ->each([&opts](const std::string&) { opts.seed_set = true; });
  cmd->add_option("--sims", opts.sims, "Override the configured replication count");
  cmd->add_option("--threads", opts.threads, "Worker threads (0 = hardware concurrency)");
  cmd->add_option("--out", opts.out_dir, "Output directory (overrides the configured one)");
}

dosefind::RunConfig load(const CommonOpts& opts) {
  dosefind::RunConfig cfg = dosefind::load_config(opts.config_path);
  if (opts.seed_set) cfg.seed = opts.seed;
  if (opts.sims > 0) cfg.n_sims = opts.sims;
  if (opts.threads >= 0) cfg.threads = opts.threads;
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
  dosefind::validate_run_config(cfg);
  return cfg;
}

void print_files(const std::vector<std::string>& files) {
  for (const std::string& f : files) std::printf("wrote %s\n", f.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and calibration engine for a seamless dose-finding platform design"};
  app.require_subcommand(1);

  CommonOpts sim_opts, bound_opts, prior_opts, one_opts;
  int one_safety = -1, one_efficacy = -1;
  std::uint64_t one_rep = 0;

  CLI::App* simulate = app.add_subcommand("simulate", "Run the configured scenario matrix");
  add_common(simulate, sim_opts);

  CLI::App* bound = app.add_subcommand("calibrate-boundaries",
                                       "Derive efficacy stopping boundaries for a stage structure");
  add_common(bound, bound_opts);

  CLI::App* prior = app.add_subcommand("calibrate-prior",
                                       "Score safety-prior hyperparameters over scenarios");
  add_common(prior, prior_opts);

  CLI::App* one = app.add_subcommand("run-one", "Run a single replication with a verbose trace");
  add_common(one, one_opts);
  one->add_option("--safety", one_safety, "Safety scenario id (default: first configured)");
  one->add_option("--efficacy", one_efficacy, "Efficacy scenario id (default: first configured)");
  one->add_option("--rep", one_rep, "Replication index within the cell stream");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      const dosefind::RunConfig cfg = load(sim_opts);
      const dosefind::MatrixResult results = dosefind::run_scenario_matrix(cfg);
      for (const dosefind::CellResult& c : results.cells) {
        std::printf("%-10s any-recommend %5.1f%%  any-desirable %5.1f%%  mean n %6.1f\n",
                    c.label.c_str(), c.oc.any_recommend_pct, c.oc.any_desirable_pct, c.oc.mean_n);
      }
      print_files(dosefind::emit_reports(results, cfg, cfg.out_dir));
    } else if (bound->parsed()) {
      const dosefind::RunConfig cfg = load(bound_opts);
      const dosefind::BoundarySearchResult result =
          dosefind::optimize_boundaries(cfg.boundary, cfg.seed);
      if (result.feasible) {
        std::printf("boundaries (l, u) = (%.3f, %.3f)  type-I %.4f  power %.4f\n",
                    result.best.lower, result.best.upper, result.best.type1, result.best.power);
      } else {
        std::printf("no boundary pair meets the type-I cap on the configured grid\n");
      }
      print_files(dosefind::emit_boundary_report(result, cfg, cfg.out_dir));
    } else if (prior->parsed()) {
      const dosefind::RunConfig cfg = load(prior_opts);
      if (cfg.prior_grid.dle_increment.empty())
        throw std::runtime_error("calibrate-prior requires a prior_grid block in the config");
      const dosefind::PriorCalibrationResult result =
          dosefind::calibrate_safety_prior(cfg.prior_grid, cfg.trial, cfg.seed, cfg.threads);
      std::printf(
          "selected prior: dle_increment %.4f  log_slope_mean %.4f  intercept_var %.4f  "
          "log_slope_var %.4f\n",
          result.selected.dle_increment, result.selected.log_slope_mean,
          result.selected.intercept_var, result.selected.log_slope_var);
      print_files(dosefind::emit_prior_report(result, cfg, cfg.out_dir));
    } else if (one->parsed()) {
      const dosefind::RunConfig cfg = load(one_opts);
      std::unique_ptr<dosefind::SafetyModel> model;
      if (cfg.mode == dosefind::DesignMode::Single) {
        model = dosefind::make_mono_safety_model(cfg.prior, cfg.doses, cfg.trial.policy,
                                                 cfg.trial.quadrature);
      } else {
        model = dosefind::make_combo_safety_model(cfg.prior_combo, cfg.combo_grid,
                                                  cfg.trial.policy, cfg.trial.qmc);
      }
      dosefind::Scenario scenario;
      int sid = 0, eid = 0;
      if (!cfg.custom_scenarios.empty()) {
        sid = one_safety >= 0 ? one_safety : 0;
        if (sid >= static_cast<int>(cfg.custom_scenarios.size()))
          throw std::runtime_error("run-one: --safety exceeds the custom scenario list");
        scenario = cfg.custom_scenarios[static_cast<std::size_t>(sid)];
      } else {
        sid = one_safety >= 0 ? one_safety : cfg.safety_scenarios.front();
        eid = one_efficacy >= 0 ? one_efficacy : cfg.efficacy_scenarios.front();
        scenario = cfg.mode == dosefind::DesignMode::Single
                       ? dosefind::make_single_scenario(sid, eid)
                       : dosefind::make_combo_scenario(sid, eid);
      }
      dosefind::TrialLog log;
      const dosefind::TrialResult result = dosefind::run_trial(
          scenario, cfg.trial, *model, dosefind::cell_seed(cfg.seed, sid, eid), one_rep, &log);
      for (const std::string& line : log.lines) std::printf("%s\n", line.c_str());
      std::printf("total enrolled %d, duration %.1f weeks\n", result.total_enrolled,
                  result.duration_weeks);
      std::vector<std::string> labels;
      for (int arm = 1; arm <= model->active_arms(); ++arm)
        labels.push_back(model->arm_label(arm));
      print_files(dosefind::emit_single_run(result, log, labels, cfg, cfg.out_dir));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
