#include "dosefind/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dosefind {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& origin, const std::string& message) {
  throw std::runtime_error(origin + ": " + message);
}

// Blocks must carry exactly the expected keys: unknown keys are rejected and
// missing ones reported, so a file never silently half-applies.
void require_exact(const json& obj, const std::vector<std::string>& keys,
                   const std::string& origin, const std::string& block) {
  if (!obj.is_object()) fail(origin, block + " must be an object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const std::string& k : keys) {
      if (item.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) fail(origin, block + ": unknown key \"" + item.key() + "\"");
  }
  for (const std::string& k : keys) {
    if (!obj.contains(k)) fail(origin, block + ": missing key \"" + k + "\"");
  }
}

void allow_only(const json& obj, const std::vector<std::string>& keys, const std::string& origin) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const std::string& k : keys) {
      if (item.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) fail(origin, "unknown key \"" + item.key() + "\"");
  }
}

double get_num(const json& obj, const std::string& key, const std::string& origin) {
  const json& v = obj.at(key);
  if (!v.is_number()) fail(origin, "\"" + key + "\" must be a number");
  return v.get<double>();
}

int get_int(const json& obj, const std::string& key, const std::string& origin) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(origin, "\"" + key + "\" must be an integer");
  return v.get<int>();
}

std::uint64_t get_u64(const json& obj, const std::string& key, const std::string& origin) {
  const json& v = obj.at(key);
  if (!(v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0)))
    fail(origin, "\"" + key + "\" must be a non-negative integer");
  return v.get<std::uint64_t>();
}

bool get_bool(const json& obj, const std::string& key, const std::string& origin) {
  const json& v = obj.at(key);
  if (!v.is_boolean()) fail(origin, "\"" + key + "\" must be a boolean");
  return v.get<bool>();
}

std::string get_str(const json& obj, const std::string& key, const std::string& origin) {
  const json& v = obj.at(key);
  if (!v.is_string()) fail(origin, "\"" + key + "\" must be a string");
  return v.get<std::string>();
}

std::vector<double> get_num_list(const json& obj, const std::string& key,
                                 const std::string& origin) {
  const json& v = obj.at(key);
  if (!v.is_array()) fail(origin, "\"" + key + "\" must be an array");
  std::vector<double> out;
  for (const json& e : v) {
    if (!e.is_number()) fail(origin, "\"" + key + "\" must contain only numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<int> get_int_list(const json& obj, const std::string& key, const std::string& origin) {
  const json& v = obj.at(key);
  if (!v.is_array()) fail(origin, "\"" + key + "\" must be an array");
  std::vector<int> out;
  for (const json& e : v) {
    if (!e.is_number_integer()) fail(origin, "\"" + key + "\" must contain only integers");
    out.push_back(e.get<int>());
  }
  return out;
}

RunConfig parse_config_json(const json& root, const std::string& origin) {
  if (!root.is_object()) fail(origin, "configuration must be a JSON object");
  // A structured summary embeds the configuration under "config".
  const json& c = root.contains("config") && root.at("config").is_object() ? root.at("config")
                                                                           : root;

  allow_only(c, {"mode", "seed", "n_sims", "threads", "out_dir", "grid", "scenarios",
                 "custom_scenarios", "trial", "policy", "efficacy", "prior", "prior_combo",
                 "quadrature", "qmc", "boundary_search", "prior_grid"},
             origin);
  if (!c.contains("seed")) fail(origin, "missing mandatory field: seed");

  RunConfig cfg;
  cfg.seed = get_u64(c, "seed", origin);

  if (c.contains("mode")) {
    const std::string m = get_str(c, "mode", origin);
    if (m == "single") {
      cfg.mode = DesignMode::Single;
    } else if (m == "combination") {
      cfg.mode = DesignMode::Combination;
    } else {
      fail(origin, "mode must be \"single\" or \"combination\"");
    }
  }
  if (c.contains("n_sims")) cfg.n_sims = get_int(c, "n_sims", origin);
  if (c.contains("threads")) cfg.threads = get_int(c, "threads", origin);
  if (c.contains("out_dir")) cfg.out_dir = get_str(c, "out_dir", origin);

  if (c.contains("grid")) {
    const json& g = c.at("grid");
    if (cfg.mode == DesignMode::Single) {
      require_exact(g, {"doses"}, origin, "grid");
      cfg.doses = get_int(g, "doses", origin);
    } else {
      require_exact(g, {"doses_a", "doses_b"}, origin, "grid");
      cfg.combo_grid.doses_a = get_int(g, "doses_a", origin);
      cfg.combo_grid.doses_b = get_int(g, "doses_b", origin);
    }
  }

  if (c.contains("scenarios")) {
    const json& s = c.at("scenarios");
    require_exact(s, {"safety", "efficacy"}, origin, "scenarios");
    cfg.safety_scenarios = get_int_list(s, "safety", origin);
    cfg.efficacy_scenarios = get_int_list(s, "efficacy", origin);
  } else if (cfg.mode == DesignMode::Combination) {
    cfg.safety_scenarios = {0, 1, 2, 3};
    cfg.efficacy_scenarios = {0, 1, 2, 3};
  }

  if (c.contains("custom_scenarios")) {
    const json& arr = c.at("custom_scenarios");
    if (!arr.is_array()) fail(origin, "custom_scenarios must be an array");
    for (const json& e : arr) {
      require_exact(e,
                    {"name", "arms", "weibull_rate", "weibull_shape", "correlation",
                     "tox_improve_link"},
                    origin, "custom scenario");
      Scenario sc;
      sc.name = get_str(e, "name", origin);
      const json& arms = e.at("arms");
      if (!arms.is_array()) fail(origin, "custom scenario arms must be an array");
      for (const json& a : arms) {
        require_exact(a, {"dle_probability", "hazard_ratio"}, origin, "scenario arm");
        sc.arms.push_back({get_num(a, "dle_probability", origin), get_num(a, "hazard_ratio", origin)});
      }
      sc.weibull_rate = get_num(e, "weibull_rate", origin);
      sc.weibull_shape = get_num(e, "weibull_shape", origin);
      sc.correlation = get_num(e, "correlation", origin);
      sc.tox_improve_link = get_int(e, "tox_improve_link", origin);
      cfg.custom_scenarios.push_back(std::move(sc));
    }
  }

  if (c.contains("trial")) {
    const json& t = c.at("trial");
    require_exact(t,
                  {"cohort_active", "cohort_control", "level_cap", "safety_window_days",
                   "cohort_interval_days", "share_controls"},
                  origin, "trial");
    cfg.trial.cohort_active = get_int(t, "cohort_active", origin);
    cfg.trial.cohort_control = get_int(t, "cohort_control", origin);
    cfg.trial.level_cap = get_int(t, "level_cap", origin);
    cfg.trial.safety_window_days = get_num(t, "safety_window_days", origin);
    cfg.trial.cohort_interval_days = get_num(t, "cohort_interval_days", origin);
    cfg.trial.share_controls = get_bool(t, "share_controls", origin);
  }

  if (c.contains("policy")) {
    const json& p = c.at("policy");
    require_exact(p, {"target_excess", "interval_halfwidth", "overdose_threshold"}, origin,
                  "policy");
    cfg.trial.policy.target_excess = get_num(p, "target_excess", origin);
    cfg.trial.policy.interval_halfwidth = get_num(p, "interval_halfwidth", origin);
    cfg.trial.policy.overdose_threshold = get_num(p, "overdose_threshold", origin);
  }

  if (c.contains("efficacy")) {
    const json& e = c.at("efficacy");
    require_exact(e,
                  {"target_hazard_ratio", "prior_probability", "lower", "upper", "max_stages",
                   "shared_controls", "followup_days"},
                  origin, "efficacy");
    cfg.trial.efficacy.target_hazard_ratio = get_num(e, "target_hazard_ratio", origin);
    cfg.trial.efficacy.prior_probability = get_num(e, "prior_probability", origin);
    cfg.trial.efficacy.lower = get_num(e, "lower", origin);
    cfg.trial.efficacy.upper = get_num(e, "upper", origin);
    cfg.trial.efficacy.max_stages = get_int(e, "max_stages", origin);
    cfg.trial.efficacy.shared_controls = get_int(e, "shared_controls", origin);
    cfg.trial.efficacy.followup_days = get_num(e, "followup_days", origin);
  }

  if (c.contains("prior")) {
    const json& p = c.at("prior");
    require_exact(p,
                  {"control_dle", "dle_increment", "log_slope_mean", "intercept_var",
                   "log_slope_var", "cross_cov"},
                  origin, "prior");
    cfg.prior = make_mono_prior(get_num(p, "control_dle", origin),
                                get_num(p, "dle_increment", origin),
                                get_num(p, "log_slope_mean", origin),
                                get_num(p, "intercept_var", origin),
                                get_num(p, "log_slope_var", origin),
                                get_num(p, "cross_cov", origin));
  }

  if (c.contains("prior_combo")) {
    const json& p = c.at("prior_combo");
    require_exact(p,
                  {"control_dle", "increment_a", "increment_b", "log_slope_a_mean",
                   "log_slope_b_mean", "interaction_mean", "intercept_var", "log_slope_a_var",
                   "log_slope_b_var", "interaction_var", "cov_intercept_slope_a",
                   "cov_intercept_slope_b"},
                  origin, "prior_combo");
    cfg.prior_combo = make_combo_prior(
        get_num(p, "control_dle", origin), get_num(p, "increment_a", origin),
        get_num(p, "increment_b", origin), get_num(p, "log_slope_a_mean", origin),
        get_num(p, "log_slope_b_mean", origin), get_num(p, "intercept_var", origin),
        get_num(p, "log_slope_a_var", origin), get_num(p, "log_slope_b_var", origin),
        get_num(p, "interaction_var", origin), get_num(p, "interaction_mean", origin),
        get_num(p, "cov_intercept_slope_a", origin), get_num(p, "cov_intercept_slope_b", origin));
  }

  if (c.contains("quadrature")) {
    const json& q = c.at("quadrature");
    require_exact(q, {"nodes"}, origin, "quadrature");
    cfg.trial.quadrature.nodes = get_int(q, "nodes", origin);
  }

  if (c.contains("qmc")) {
    const json& q = c.at("qmc");
    require_exact(q, {"draws", "scramble_seed"}, origin, "qmc");
    cfg.trial.qmc.draws = get_int(q, "draws", origin);
    cfg.trial.qmc.scramble_seed = get_u64(q, "scramble_seed", origin);
  }

  if (c.contains("boundary_search")) {
    const json& b = c.at("boundary_search");
    require_exact(b,
                  {"structure", "target_hazard_ratio", "null_recovery", "followup_days",
                   "type1_cap", "trade_off", "trajectories", "l_min", "l_max", "u_min", "u_max",
                   "step"},
                  origin, "boundary_search");
    const json& s = b.at("structure");
    require_exact(s, {"cohort_active", "cohort_control", "shared_controls", "max_stages"}, origin,
                  "boundary_search.structure");
    cfg.boundary.structure.cohort_active = get_int(s, "cohort_active", origin);
    cfg.boundary.structure.cohort_control = get_int(s, "cohort_control", origin);
    cfg.boundary.structure.shared_controls = get_int(s, "shared_controls", origin);
    cfg.boundary.structure.max_stages = get_int(s, "max_stages", origin);
    cfg.boundary.target_hazard_ratio = get_num(b, "target_hazard_ratio", origin);
    cfg.boundary.null_recovery = get_num(b, "null_recovery", origin);
    cfg.boundary.followup_days = get_num(b, "followup_days", origin);
    cfg.boundary.type1_cap = get_num(b, "type1_cap", origin);
    cfg.boundary.trade_off = get_num(b, "trade_off", origin);
    cfg.boundary.trajectories = get_int(b, "trajectories", origin);
    cfg.boundary.l_min = get_num(b, "l_min", origin);
    cfg.boundary.l_max = get_num(b, "l_max", origin);
    cfg.boundary.u_min = get_num(b, "u_min", origin);
    cfg.boundary.u_max = get_num(b, "u_max", origin);
    cfg.boundary.step = get_num(b, "step", origin);
  }

  if (c.contains("prior_grid")) {
    const json& g = c.at("prior_grid");
    require_exact(g,
                  {"dle_increment", "log_slope_mean", "intercept_var", "log_slope_var",
                   "sims_per_scenario", "scenario_ids", "cohorts"},
                  origin, "prior_grid");
    cfg.prior_grid.dle_increment = get_num_list(g, "dle_increment", origin);
    cfg.prior_grid.log_slope_mean = get_num_list(g, "log_slope_mean", origin);
    cfg.prior_grid.intercept_var = get_num_list(g, "intercept_var", origin);
    cfg.prior_grid.log_slope_var = get_num_list(g, "log_slope_var", origin);
    cfg.prior_grid.sims_per_scenario = get_int(g, "sims_per_scenario", origin);
    cfg.prior_grid.scenario_ids = get_int_list(g, "scenario_ids", origin);
    cfg.prior_grid.cohorts = get_int(g, "cohorts", origin);
  }

  validate_run_config(cfg);
  return cfg;
}

}  // namespace

void validate_run_config(const RunConfig& cfg) {
  if (cfg.n_sims < 1) throw std::invalid_argument("run config: n_sims must be positive");
  if (cfg.threads < 0) throw std::invalid_argument("run config: threads must be non-negative");
  if (cfg.out_dir.empty()) throw std::invalid_argument("run config: out_dir must be non-empty");

  const int active_arms =
      cfg.mode == DesignMode::Single ? cfg.doses : cfg.combo_grid.active_arms();
  if (cfg.mode == DesignMode::Single) {
    if (cfg.doses < 1) throw std::invalid_argument("run config: doses must be positive");
  } else {
    if (cfg.combo_grid.doses_a < 1 || cfg.combo_grid.doses_b < 1)
      throw std::invalid_argument("run config: combination grid must be at least 1 x 1");
  }

  if (cfg.custom_scenarios.empty()) {
    const int count =
        cfg.mode == DesignMode::Single ? builtin_single_count() : builtin_combo_count();
    if (cfg.safety_scenarios.empty() || cfg.efficacy_scenarios.empty())
      throw std::invalid_argument("run config: empty scenario selection");
    for (int id : cfg.safety_scenarios) {
      if (id < 0 || id >= count)
        throw std::invalid_argument("run config: safety scenario id out of range");
    }
    for (int id : cfg.efficacy_scenarios) {
      if (id < 0 || id >= count)
        throw std::invalid_argument("run config: efficacy scenario id out of range");
    }
    // The built-in matrices are defined on fixed grids.
    if (cfg.mode == DesignMode::Single && cfg.doses != 3)
      throw std::invalid_argument(
          "run config: built-in single-agent scenarios require a 3-dose grid");
    if (cfg.mode == DesignMode::Combination &&
        (cfg.combo_grid.doses_a != 2 || cfg.combo_grid.doses_b != 3))
      throw std::invalid_argument(
          "run config: built-in combination scenarios require a 2 x 3 grid");
  } else {
    for (const Scenario& sc : cfg.custom_scenarios) {
      if (sc.name.empty()) throw std::invalid_argument("run config: scenario without a name");
      if (static_cast<int>(sc.arms.size()) != active_arms + 1)
        throw std::invalid_argument("run config: scenario \"" + sc.name +
                                    "\" must define control plus every active arm");
      for (const ArmTruth& a : sc.arms) {
        if (!(a.dle_probability >= 0.0 && a.dle_probability <= 1.0))
          throw std::invalid_argument("run config: DLE probability outside [0,1] in \"" +
                                      sc.name + "\"");
        if (!(a.hazard_ratio > 0.0))
          throw std::invalid_argument("run config: hazard ratio must be positive in \"" +
                                      sc.name + "\"");
      }
      if (!(sc.weibull_rate > 0.0 && sc.weibull_shape > 0.0))
        throw std::invalid_argument("run config: improvement-time parameters must be positive");
      if (!(sc.correlation > -1.0 && sc.correlation < 1.0))
        throw std::invalid_argument("run config: correlation must be inside (-1,1)");
      if (sc.tox_improve_link != 1 && sc.tox_improve_link != -1)
        throw std::invalid_argument("run config: tox_improve_link must be +1 or -1");
    }
  }

  validate_trial_config(cfg.trial);
  validate_mono_prior(cfg.prior);
  validate_combo_prior(cfg.prior_combo);
  validate_boundary_search_config(cfg.boundary);

  const bool grid_any = !cfg.prior_grid.dle_increment.empty() ||
                        !cfg.prior_grid.log_slope_mean.empty() ||
                        !cfg.prior_grid.intercept_var.empty() ||
                        !cfg.prior_grid.log_slope_var.empty();
  if (grid_any) {
    if (cfg.prior_grid.dle_increment.empty() || cfg.prior_grid.log_slope_mean.empty() ||
        cfg.prior_grid.intercept_var.empty() || cfg.prior_grid.log_slope_var.empty())
      throw std::invalid_argument("run config: prior_grid axes must all be non-empty");
    if (cfg.prior_grid.sims_per_scenario < 1)
      throw std::invalid_argument("run config: prior_grid.sims_per_scenario must be positive");
    if (cfg.prior_grid.cohorts < 1)
      throw std::invalid_argument("run config: prior_grid.cohorts must be positive");
    if (cfg.prior_grid.scenario_ids.empty())
      throw std::invalid_argument("run config: prior_grid.scenario_ids must be non-empty");
    for (int id : cfg.prior_grid.scenario_ids) {
      if (id < 0 || id >= builtin_single_count())
        throw std::invalid_argument("run config: prior_grid scenario id out of range");
    }
  }
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(origin, std::string("parse error: ") + e.what());
  }
  return parse_config_json(root, origin);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open configuration file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

std::string config_echo(const RunConfig& cfg) {
  json c;
  c["mode"] = cfg.mode == DesignMode::Single ? "single" : "combination";
  c["seed"] = cfg.seed;
  c["n_sims"] = cfg.n_sims;
  c["threads"] = cfg.threads;
  c["out_dir"] = cfg.out_dir;
  if (cfg.mode == DesignMode::Single) {
    c["grid"] = {{"doses", cfg.doses}};
  } else {
    c["grid"] = {{"doses_a", cfg.combo_grid.doses_a}, {"doses_b", cfg.combo_grid.doses_b}};
  }
  c["scenarios"] = {{"safety", cfg.safety_scenarios}, {"efficacy", cfg.efficacy_scenarios}};
  if (!cfg.custom_scenarios.empty()) {
    json arr = json::array();
    for (const Scenario& sc : cfg.custom_scenarios) {
      json arms = json::array();
      for (const ArmTruth& a : sc.arms) {
        arms.push_back({{"dle_probability", a.dle_probability}, {"hazard_ratio", a.hazard_ratio}});
      }
      arr.push_back({{"name", sc.name},
                     {"arms", arms},
                     {"weibull_rate", sc.weibull_rate},
                     {"weibull_shape", sc.weibull_shape},
                     {"correlation", sc.correlation},
                     {"tox_improve_link", sc.tox_improve_link}});
    }
    c["custom_scenarios"] = arr;
  }
  c["trial"] = {{"cohort_active", cfg.trial.cohort_active},
                {"cohort_control", cfg.trial.cohort_control},
                {"level_cap", cfg.trial.level_cap},
                {"safety_window_days", cfg.trial.safety_window_days},
                {"cohort_interval_days", cfg.trial.cohort_interval_days},
                {"share_controls", cfg.trial.share_controls}};
  c["policy"] = {{"target_excess", cfg.trial.policy.target_excess},
                 {"interval_halfwidth", cfg.trial.policy.interval_halfwidth},
                 {"overdose_threshold", cfg.trial.policy.overdose_threshold}};
  c["efficacy"] = {{"target_hazard_ratio", cfg.trial.efficacy.target_hazard_ratio},
                   {"prior_probability", cfg.trial.efficacy.prior_probability},
                   {"lower", cfg.trial.efficacy.lower},
                   {"upper", cfg.trial.efficacy.upper},
                   {"max_stages", cfg.trial.efficacy.max_stages},
                   {"shared_controls", cfg.trial.efficacy.shared_controls},
                   {"followup_days", cfg.trial.efficacy.followup_days}};
  c["prior"] = {{"control_dle", cfg.prior.control_dle},
                {"dle_increment", cfg.prior.dle_increment},
                {"log_slope_mean", cfg.prior.log_slope_mean},
                {"intercept_var", cfg.prior.intercept_var},
                {"log_slope_var", cfg.prior.log_slope_var},
                {"cross_cov", cfg.prior.cross_cov}};
  c["prior_combo"] = {{"control_dle", cfg.prior_combo.control_dle},
                      {"increment_a", cfg.prior_combo.increment_a},
                      {"increment_b", cfg.prior_combo.increment_b},
                      {"log_slope_a_mean", cfg.prior_combo.log_slope_a_mean},
                      {"log_slope_b_mean", cfg.prior_combo.log_slope_b_mean},
                      {"interaction_mean", cfg.prior_combo.interaction_mean},
                      {"intercept_var", cfg.prior_combo.intercept_var},
                      {"log_slope_a_var", cfg.prior_combo.log_slope_a_var},
                      {"log_slope_b_var", cfg.prior_combo.log_slope_b_var},
                      {"interaction_var", cfg.prior_combo.interaction_var},
                      {"cov_intercept_slope_a", cfg.prior_combo.cov_intercept_slope_a},
                      {"cov_intercept_slope_b", cfg.prior_combo.cov_intercept_slope_b}};
  c["quadrature"] = {{"nodes", cfg.trial.quadrature.nodes}};
  c["qmc"] = {{"draws", cfg.trial.qmc.draws}, {"scramble_seed", cfg.trial.qmc.scramble_seed}};
  c["boundary_search"] = {
      {"structure",
       {{"cohort_active", cfg.boundary.structure.cohort_active},
        {"cohort_control", cfg.boundary.structure.cohort_control},
        {"shared_controls", cfg.boundary.structure.shared_controls},
        {"max_stages", cfg.boundary.structure.max_stages}}},
      {"target_hazard_ratio", cfg.boundary.target_hazard_ratio},
      {"null_recovery", cfg.boundary.null_recovery},
      {"followup_days", cfg.boundary.followup_days},
      {"type1_cap", cfg.boundary.type1_cap},
      {"trade_off", cfg.boundary.trade_off},
      {"trajectories", cfg.boundary.trajectories},
      {"l_min", cfg.boundary.l_min},
      {"l_max", cfg.boundary.l_max},
      {"u_min", cfg.boundary.u_min},
      {"u_max", cfg.boundary.u_max},
      {"step", cfg.boundary.step}};
  if (!cfg.prior_grid.dle_increment.empty()) {
    c["prior_grid"] = {{"dle_increment", cfg.prior_grid.dle_increment},
                       {"log_slope_mean", cfg.prior_grid.log_slope_mean},
                       {"intercept_var", cfg.prior_grid.intercept_var},
                       {"log_slope_var", cfg.prior_grid.log_slope_var},
                       {"sims_per_scenario", cfg.prior_grid.sims_per_scenario},
                       {"scenario_ids", cfg.prior_grid.scenario_ids},
                       {"cohorts", cfg.prior_grid.cohorts}};
  }
  return c.dump(2);
}

}  // namespace dosefind
