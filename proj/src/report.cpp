#include "dosefind/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#ifndef DOSEFIND_VERSION
#define DOSEFIND_VERSION "0.0.0"
#endif

namespace dosefind {

namespace {

using json = nlohmann::ordered_json;

std::string fmt(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
  return std::string(buf);
}

// Monte Carlo standard error of a percentage estimated from n replications.
double pct_se(double pct, int n) {
  const double p = pct / 100.0;
  return n > 0 ? 100.0 * std::sqrt(p * (1.0 - p) / n) : 0.0;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string(buf);
}

class FileSet {
 public:
  explicit FileSet(const std::string& out_dir) : dir_(out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw std::runtime_error(out_dir + ": cannot create output directory");
  }

  void write(const std::string& name, const std::string& content) {
    const std::filesystem::path path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path.string() + ": cannot write");
    out << content;
    if (!out) throw std::runtime_error(path.string() + ": write failed");
    written_.push_back(path.string());
  }

  std::vector<std::string> paths() const { return written_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> written_;
};

// Wide table: rows = safety scenario, columns = efficacy scenario.
std::string wide_table(const MatrixResult& r, double (*metric)(const CellResult&), int decimals) {
  std::string out = "safety";
  for (int eid : r.efficacy_ids) out += ",e" + std::to_string(eid);
  out += "\n";
  const std::size_t n_e = r.efficacy_ids.size();
  for (std::size_t i = 0; i < r.safety_ids.size(); ++i) {
    out += "s" + std::to_string(r.safety_ids[i]);
    for (std::size_t j = 0; j < n_e; ++j) out += "," + fmt(metric(r.cells[i * n_e + j]), decimals);
    out += "\n";
  }
  return out;
}

json cell_json(const MatrixResult& r, const CellResult& c) {
  json arms = json::array();
  for (std::size_t a = 0; a < r.arm_labels.size(); ++a) {
    arms.push_back({{"arm", r.arm_labels[a]},
                    {"class", class_name(c.classes[a])},
                    {"recommend_pct", c.oc.recommend_pct[a]},
                    {"recommend_se", pct_se(c.oc.recommend_pct[a], c.oc.n_sims)}});
  }
  return json{{"safety", c.safety_id},
              {"efficacy", c.efficacy_id},
              {"label", c.label},
              {"seed", c.seed},
              {"n_sims", c.oc.n_sims},
              {"is_null", c.is_null},
              {"arms", arms},
              {"any_recommend_pct", c.oc.any_recommend_pct},
              {"any_recommend_se", pct_se(c.oc.any_recommend_pct, c.oc.n_sims)},
              {"any_desirable_pct", c.oc.any_desirable_pct},
              {"any_desirable_se", pct_se(c.oc.any_desirable_pct, c.oc.n_sims)},
              {"all_desirable_pct", c.oc.all_desirable_pct},
              {"all_desirable_se", pct_se(c.oc.all_desirable_pct, c.oc.n_sims)},
              {"safety_stop_pct", c.oc.safety_stop_pct},
              {"mean_n", c.oc.mean_n},
              {"mean_n_se", c.oc.n_sims > 0 ? c.oc.sd_n / std::sqrt(c.oc.n_sims) : 0.0},
              {"sd_n", c.oc.sd_n},
              {"median_n", c.oc.median_n},
              {"q10_n", c.oc.q10_n},
              {"q90_n", c.oc.q90_n},
              {"min_n", c.oc.min_n},
              {"max_n", c.oc.max_n},
              {"mean_duration_weeks", c.oc.mean_duration_weeks},
              {"duration_se",
               c.oc.n_sims > 0 ? c.oc.sd_duration_weeks / std::sqrt(c.oc.n_sims) : 0.0},
              {"n_above_150", c.oc.count_n_above_150}};
}

json run_header(const RunConfig& cfg) {
  return json{{"version", artifact_version()},
              {"generated_at", timestamp()},
              {"seed", cfg.seed},
              {"config", json::parse(config_echo(cfg))}};
}

}  // namespace

std::string artifact_version() { return DOSEFIND_VERSION; }

std::string phase_name(DosePhase phase) {
  switch (phase) {
    case DosePhase::Escalation: return "escalation";
    case DosePhase::Graduated: return "graduated";
    case DosePhase::Exhausted: return "exhausted";
    case DosePhase::StoppedSafety: return "stopped_safety";
    case DosePhase::StoppedFutility: return "stopped_futility";
    case DosePhase::StoppedEfficacy: return "stopped_efficacy";
  }
  return "unknown";
}

std::string class_name(DoseClass cls) {
  switch (cls) {
    case DoseClass::Incorrect: return "incorrect";
    case DoseClass::Undesirable: return "undesirable";
    case DoseClass::Acceptable: return "acceptable";
    case DoseClass::Desirable: return "desirable";
  }
  return "unknown";
}

MatrixResult run_scenario_matrix(const RunConfig& cfg) {
  validate_run_config(cfg);
  std::unique_ptr<SafetyModel> model;
  if (cfg.mode == DesignMode::Single) {
    model = make_mono_safety_model(cfg.prior, cfg.doses, cfg.trial.policy, cfg.trial.quadrature);
  } else {
    model =
        make_combo_safety_model(cfg.prior_combo, cfg.combo_grid, cfg.trial.policy, cfg.trial.qmc);
  }

  MatrixResult result;
  for (int arm = 1; arm <= model->active_arms(); ++arm)
    result.arm_labels.push_back(model->arm_label(arm));

  struct Cell {
    Scenario scenario;
    int safety_id;
    int efficacy_id;
  };
  std::vector<Cell> todo;
  if (!cfg.custom_scenarios.empty()) {
    for (std::size_t i = 0; i < cfg.custom_scenarios.size(); ++i)
      todo.push_back({cfg.custom_scenarios[i], static_cast<int>(i), 0});
  } else {
    result.safety_ids = cfg.safety_scenarios;
    result.efficacy_ids = cfg.efficacy_scenarios;
    for (int sid : cfg.safety_scenarios) {
      for (int eid : cfg.efficacy_scenarios) {
        const Scenario sc = cfg.mode == DesignMode::Single ? make_single_scenario(sid, eid)
                                                           : make_combo_scenario(sid, eid);
        todo.push_back({sc, sid, eid});
      }
    }
  }

  for (const Cell& cell : todo) {
    CellResult out;
    out.safety_id = cell.safety_id;
    out.efficacy_id = cell.efficacy_id;
    out.label = cell.scenario.name;
    out.seed = cell_seed(cfg.seed, cell.safety_id, cell.efficacy_id);
    out.is_null = true;
    for (std::size_t a = 1; a < cell.scenario.arms.size(); ++a) {
      if (cell.scenario.arms[a].hazard_ratio != 1.0) out.is_null = false;
    }
    out.classes = classify_doses(cell.scenario);
    try {
      const BatchResult batch =
          run_batch(cell.scenario, cfg.trial, *model, cfg.n_sims, out.seed, cfg.threads);
      out.oc = summarize(batch, out.classes);
    } catch (const std::exception& e) {
      throw std::runtime_error("scenario " + cell.scenario.name + ": " + e.what());
    }
    result.cells.push_back(std::move(out));
  }
  return result;
}

std::vector<std::string> emit_reports(const MatrixResult& results, const RunConfig& cfg,
                                      const std::string& out_dir) {
  FileSet files(out_dir);
  const bool matrix = !results.safety_ids.empty();

  if (matrix) {
    const auto wide = [&](const std::string& name, double (*metric)(const CellResult&),
                          int decimals) { files.write(name, wide_table(results, metric, decimals)); };
    wide("wide_any_recommend.csv", [](const CellResult& c) { return c.oc.any_recommend_pct; }, 1);
    wide("wide_any_desirable.csv", [](const CellResult& c) { return c.oc.any_desirable_pct; }, 1);
    wide("wide_all_desirable.csv", [](const CellResult& c) { return c.oc.all_desirable_pct; }, 1);
    wide("wide_safety_stop.csv", [](const CellResult& c) { return c.oc.safety_stop_pct; }, 1);
    wide("wide_mean_n.csv", [](const CellResult& c) { return c.oc.mean_n; }, 1);
    wide("wide_mean_duration_weeks.csv",
         [](const CellResult& c) { return c.oc.mean_duration_weeks; }, 1);
  }

  // Per-arm recommendation percentages, long format.
  {
    std::string out = "safety,efficacy,label,arm,class,recommend_pct,recommend_se\n";
    for (const CellResult& c : results.cells) {
      for (std::size_t a = 0; a < results.arm_labels.size(); ++a) {
        out += std::to_string(c.safety_id) + "," + std::to_string(c.efficacy_id) + "," + c.label +
               "," + results.arm_labels[a] + "," + class_name(c.classes[a]) + "," +
               fmt(c.oc.recommend_pct[a], 1) + "," + fmt(pct_se(c.oc.recommend_pct[a], c.oc.n_sims), 3) +
               "\n";
      }
    }
    files.write("cells_long.csv", out);
  }

  // Per-cell scalar metrics, long format.
  {
    std::string out =
        "safety,efficacy,label,is_null,n_sims,any_recommend_pct,any_desirable_pct,"
        "all_desirable_pct,safety_stop_pct,mean_n,sd_n,median_n,q10_n,q90_n,min_n,max_n,"
        "mean_duration_weeks,n_above_150\n";
    for (const CellResult& c : results.cells) {
      out += std::to_string(c.safety_id) + "," + std::to_string(c.efficacy_id) + "," + c.label +
             "," + (c.is_null ? "1" : "0") + "," + std::to_string(c.oc.n_sims) + "," +
             fmt(c.oc.any_recommend_pct, 1) + "," + fmt(c.oc.any_desirable_pct, 1) + "," +
             fmt(c.oc.all_desirable_pct, 1) + "," + fmt(c.oc.safety_stop_pct, 1) + "," +
             fmt(c.oc.mean_n, 1) + "," + fmt(c.oc.sd_n, 1) + "," + fmt(c.oc.median_n, 1) + "," +
             fmt(c.oc.q10_n, 1) + "," + fmt(c.oc.q90_n, 1) + "," + std::to_string(c.oc.min_n) +
             "," + std::to_string(c.oc.max_n) + "," + fmt(c.oc.mean_duration_weeks, 1) + "," +
             std::to_string(c.oc.count_n_above_150) + "\n";
    }
    files.write("cells_summary.csv", out);
  }

  // Plot series (x = scenario label).
  const auto series = [&](const std::string& name, double (*metric)(const CellResult&)) {
    std::string out = "x,y\n";
    for (const CellResult& c : results.cells) out += c.label + "," + fmt(metric(c), 4) + "\n";
    files.write(name, out);
  };
  series("plot_any_desirable.csv", [](const CellResult& c) { return c.oc.any_desirable_pct; });
  series("plot_all_desirable.csv", [](const CellResult& c) { return c.oc.all_desirable_pct; });
  series("plot_mean_n.csv", [](const CellResult& c) { return c.oc.mean_n; });

  // Full-precision structured summary.
  {
    json root = run_header(cfg);
    root["mode"] = cfg.mode == DesignMode::Single ? "single" : "combination";
    root["arms"] = results.arm_labels;
    json cells = json::array();
    for (const CellResult& c : results.cells) cells.push_back(cell_json(results, c));
    root["cells"] = cells;
    files.write("summary.json", root.dump(2) + "\n");
  }

  return files.paths();
}

std::vector<std::string> emit_boundary_report(const BoundarySearchResult& result,
                                              const RunConfig& cfg, const std::string& out_dir) {
  FileSet files(out_dir);
  {
    std::string out = "lower,upper,type1,power,expected_n_null,expected_n_alt,criterion\n";
    for (const BoundaryOperatingCharacteristics& oc : result.frontier) {
      out += fmt(oc.lower, 3) + "," + fmt(oc.upper, 3) + "," + fmt(oc.type1, 4) + "," +
             fmt(oc.power, 4) + "," + fmt(oc.expected_n_null, 2) + "," +
             fmt(oc.expected_n_alt, 2) + "," + fmt(oc.criterion, 4) + "\n";
    }
    files.write("boundary_frontier.csv", out);
  }
  {
    json root = run_header(cfg);
    root["feasible"] = result.feasible;
    root["best"] = {{"lower", result.best.lower},
                    {"upper", result.best.upper},
                    {"type1", result.best.type1},
                    {"power", result.best.power},
                    {"expected_n_null", result.best.expected_n_null},
                    {"expected_n_alt", result.best.expected_n_alt},
                    {"criterion", result.best.criterion}};
    root["trajectories_per_hypothesis"] = cfg.boundary.trajectories;
    // Split-half stability of the selected boundaries, a direct Monte Carlo
    // error probe for the search.
    root["split_half_lower_delta"] = result.half_lower_delta;
    root["split_half_upper_delta"] = result.half_upper_delta;
    files.write("boundary_summary.json", root.dump(2) + "\n");
  }
  return files.paths();
}

std::vector<std::string> emit_prior_report(const PriorCalibrationResult& result,
                                           const RunConfig& cfg, const std::string& out_dir) {
  FileSet files(out_dir);
  {
    std::string out = "dle_increment,log_slope_mean,intercept_var,log_slope_var";
    for (int sid : cfg.prior_grid.scenario_ids) out += ",rate_s" + std::to_string(sid);
    out += ",score\n";
    for (const PriorGridPoint& p : result.grid) {
      out += fmt(p.prior.dle_increment, 4) + "," + fmt(p.prior.log_slope_mean, 4) + "," +
             fmt(p.prior.intercept_var, 4) + "," + fmt(p.prior.log_slope_var, 4);
      for (double r : p.selection_rate) out += "," + fmt(r, 4);
      out += "," + fmt(p.score, 4) + "\n";
    }
    files.write("prior_grid.csv", out);
  }
  {
    json root = run_header(cfg);
    const SafetyPriorMono& sp = result.selected;
    root["selected_index"] = result.selected_index;
    root["selected"] = {{"control_dle", sp.control_dle},
                        {"dle_increment", sp.dle_increment},
                        {"intercept_mean", sp.intercept_mean},
                        {"log_slope_mean", sp.log_slope_mean},
                        {"intercept_var", sp.intercept_var},
                        {"log_slope_var", sp.log_slope_var},
                        {"cross_cov", sp.cross_cov}};
    root["selected_rates"] = result.grid.at(result.selected_index).selection_rate;
    root["selected_score"] = result.grid.at(result.selected_index).score;
    files.write("prior_summary.json", root.dump(2) + "\n");
  }
  return files.paths();
}

std::vector<std::string> emit_single_run(const TrialResult& result, const TrialLog& log,
                                         const std::vector<std::string>& arm_labels,
                                         const RunConfig& cfg, const std::string& out_dir) {
  FileSet files(out_dir);
  {
    std::string out;
    for (const std::string& line : log.lines) out += line + "\n";
    files.write("trace.txt", out);
  }
  {
    json root = run_header(cfg);
    json arms = json::array();
    for (std::size_t a = 0; a < result.arms.size(); ++a) {
      const DoseOutcome& d = result.arms[a];
      arms.push_back({{"arm", arm_labels.at(a)},
                      {"phase", phase_name(d.phase)},
                      {"ever_graduated", d.ever_graduated},
                      {"recommended", d.recommended},
                      {"cohorts", d.cohorts},
                      {"reviews", d.reviews},
                      {"last_posterior", d.last_posterior}});
    }
    root["arms"] = arms;
    root["total_enrolled"] = result.total_enrolled;
    root["duration_weeks"] = result.duration_weeks;
    root["stopped_for_safety"] = result.stopped_for_safety;
    files.write("single_run.json", root.dump(2) + "\n");
  }
  return files.paths();
}

}  // namespace dosefind
