// Python bindings for the dosefind engine: posterior assessment, escalation,
// sequential efficacy, single trials, batch operating characteristics, and
// boundary derivation. Functions take and return plain python types; heavier
// entry points accept the same JSON configuration text as the command line.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dosefind/calibration.hpp"
#include "dosefind/config.hpp"
#include "dosefind/report.hpp"
#include "dosefind/trial_engine.hpp"

namespace py = pybind11;
using namespace dosefind;

namespace {

SafetyDataMono counts_to_data(const std::vector<int>& n, const std::vector<int>& events) {
  if (n.size() != events.size() || n.empty())
    throw std::invalid_argument("n and events must be equally sized and non-empty");
  SafetyDataMono data(static_cast<int>(n.size()));
  for (std::size_t arm = 0; arm < n.size(); ++arm) {
    if (events[arm] < 0 || events[arm] > n[arm])
      throw std::invalid_argument("events must lie in [0, n] per arm");
    for (int i = 0; i < n[arm]; ++i) data.add(static_cast<int>(arm), i < events[arm]);
  }
  return data;
}

SurvivalDataset subjects_to_data(const std::vector<int>& z, const std::vector<double>& time,
                                 const std::vector<bool>& event) {
  if (z.size() != time.size() || z.size() != event.size())
    throw std::invalid_argument("z, time and event must be equally sized");
  SurvivalDataset data;
  data.reserve(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) data.push_back({z[i], time[i], event[i]});
  return data;
}

py::dict summary_to_dict(const SafetySummary& s) {
  py::dict out;
  out["overdose"] = s.overdose;
  out["target"] = s.target;
  return out;
}

const char* action_name(StageAction a) {
  switch (a) {
    case StageAction::Continue: return "continue";
    case StageAction::StopFutility: return "stop_futility";
    default: return "stop_efficacy";
  }
}

const char* next_kind_name(NextDoseKind k) {
  switch (k) {
    case NextDoseKind::StopSafety: return "stop_safety";
    case NextDoseKind::Stay: return "stay";
    default: return "move";
  }
}

Scenario scenario_for(const RunConfig& cfg, int safety_id, int efficacy_id) {
  return cfg.mode == DesignMode::Single ? make_single_scenario(safety_id, efficacy_id)
                                        : make_combo_scenario(safety_id, efficacy_id);
}

std::unique_ptr<SafetyModel> model_for(const RunConfig& cfg) {
  if (cfg.mode == DesignMode::Single)
    return make_mono_safety_model(cfg.prior, cfg.doses, cfg.trial.policy, cfg.trial.quadrature);
  return make_combo_safety_model(cfg.prior_combo, cfg.combo_grid, cfg.trial.policy, cfg.trial.qmc);
}

py::dict oc_to_dict(const OperatingCharacteristics& oc) {
  py::dict out;
  out["n_sims"] = oc.n_sims;
  out["recommend_pct"] = oc.recommend_pct;
  out["any_recommend_pct"] = oc.any_recommend_pct;
  out["any_desirable_pct"] = oc.any_desirable_pct;
  out["all_desirable_pct"] = oc.all_desirable_pct;
  out["safety_stop_pct"] = oc.safety_stop_pct;
  out["mean_n"] = oc.mean_n;
  out["sd_n"] = oc.sd_n;
  out["median_n"] = oc.median_n;
  out["q10_n"] = oc.q10_n;
  out["q90_n"] = oc.q90_n;
  out["min_n"] = oc.min_n;
  out["max_n"] = oc.max_n;
  out["mean_duration_weeks"] = oc.mean_duration_weeks;
  out["sd_duration_weeks"] = oc.sd_duration_weeks;
  out["count_n_above_150"] = oc.count_n_above_150;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Simulation and calibration engine for seamless dose-finding platform trials";

  m.def("version", [] { return artifact_version(); });

  // --- safety: standardized grids and posterior assessment -----------------

  m.def(
      "build_skeleton",
      [](int doses, double control_dle, double dle_increment, double log_slope_mean,
         double intercept_var, double log_slope_var) {
        const SafetyPriorMono prior =
            make_mono_prior(control_dle, dle_increment, log_slope_mean, intercept_var,
                            log_slope_var);
        return build_skeleton(prior, doses).levels;
      },
      py::arg("doses"), py::arg("control_dle") = 0.10, py::arg("dle_increment") = 0.125,
      py::arg("log_slope_mean") = -0.25, py::arg("intercept_var") = 1.40,
      py::arg("log_slope_var") = 0.35,
      "Standardized dose levels (control anchored at 0) for the two-parameter model.");

  m.def(
      "assess_safety",
      [](const std::vector<int>& n, const std::vector<int>& events, double control_dle,
         double dle_increment, double log_slope_mean, double intercept_var, double log_slope_var,
         double target_excess, double interval_halfwidth, double overdose_threshold, int nodes) {
        const SafetyPriorMono prior = make_mono_prior(control_dle, dle_increment, log_slope_mean,
                                                      intercept_var, log_slope_var);
        const StandardizedDoses skeleton =
            build_skeleton(prior, static_cast<int>(n.size()) - 1);
        EscalationPolicy policy{target_excess, interval_halfwidth, overdose_threshold};
        validate_policy(policy);
        const MonoPosterior post(prior, skeleton, nodes);
        const SafetyDataMono data = counts_to_data(n, events);
        const SafetySummary summary = post.assess(data, policy);
        py::dict out = summary_to_dict(summary);
        out["safe"] = safe_dose_set(summary.overdose, policy.overdose_threshold);
        return out;
      },
      py::arg("n"), py::arg("events"), py::arg("control_dle") = 0.10,
      py::arg("dle_increment") = 0.125, py::arg("log_slope_mean") = -0.25,
      py::arg("intercept_var") = 1.40, py::arg("log_slope_var") = 0.35,
      py::arg("target_excess") = 0.20, py::arg("interval_halfwidth") = 0.05,
      py::arg("overdose_threshold") = 0.25, py::arg("nodes") = 40,
      "Posterior overdose/target probabilities per dose from per-arm counts (arm 0 = control).");

  m.def(
      "assess_safety_combo",
      [](const std::vector<int>& n, const std::vector<int>& events, int doses_a, int doses_b,
         double control_dle, double increment_a, double increment_b, double intercept_var,
         double log_slope_a_var, double log_slope_b_var, double interaction_var, int draws,
         std::uint64_t scramble_seed) {
        const ComboGrid grid{doses_a, doses_b};
        if (static_cast<int>(n.size()) != grid.active_arms() + 1)
          throw std::invalid_argument("expected one control arm plus doses_a*doses_b active arms");
        const SafetyPriorCombo prior =
            make_combo_prior(control_dle, increment_a, increment_b, 0.0, 0.0, intercept_var,
                             log_slope_a_var, log_slope_b_var, interaction_var);
        const ComboPosterior post(prior, grid, QmcSettings{draws, scramble_seed});
        const SafetyDataMono data = counts_to_data(n, events);
        return summary_to_dict(post.assess(data, EscalationPolicy{}));
      },
      py::arg("n"), py::arg("events"), py::arg("doses_a") = 2, py::arg("doses_b") = 3,
      py::arg("control_dle") = 0.10, py::arg("increment_a") = 0.075,
      py::arg("increment_b") = 0.075, py::arg("intercept_var") = 0.6,
      py::arg("log_slope_a_var") = 0.25, py::arg("log_slope_b_var") = 0.25,
      py::arg("interaction_var") = 0.10, py::arg("draws") = 1 << 14,
      py::arg("scramble_seed") = std::uint64_t{77724869},
      "Posterior summaries for the four-parameter combination model.");

  m.def(
      "safe_dose_set",
      [](const std::vector<double>& overdose, double threshold) {
        return safe_dose_set(overdose, threshold);
      },
      py::arg("overdose"), py::arg("threshold") = 0.25);

  m.def(
      "select_next_dose",
      [](int current, const std::vector<int>& safe, const std::vector<double>& target_probs) {
        const NextDose nd = select_next_dose(current, safe, target_probs);
        return py::make_tuple(next_kind_name(nd.kind), nd.dose);
      },
      py::arg("current"), py::arg("safe"), py::arg("target_probs"),
      "Next assignment: ('stop_safety' | 'stay' | 'move', dose).");

  // --- sequential efficacy --------------------------------------------------

  m.def(
      "cox_log_partial_likelihood",
      [](const std::vector<int>& z, const std::vector<double>& time,
         const std::vector<bool>& event, double hazard_ratio) {
        return cox_log_partial_likelihood(subjects_to_data(z, time, event), hazard_ratio);
      },
      py::arg("z"), py::arg("time"), py::arg("event"), py::arg("hazard_ratio"));

  m.def(
      "efficacy_posterior",
      [](const std::vector<int>& z, const std::vector<double>& time,
         const std::vector<bool>& event, double target_hazard_ratio, double prior_probability) {
        EfficacyConfig cfg;
        cfg.target_hazard_ratio = target_hazard_ratio;
        cfg.prior_probability = prior_probability;
        return posterior_efficacy_probability(subjects_to_data(z, time, event), cfg);
      },
      py::arg("z"), py::arg("time"), py::arg("event"), py::arg("target_hazard_ratio") = 1.75,
      py::arg("prior_probability") = 0.5,
      "Posterior probability that the hazard ratio equals the target.");

  m.def(
      "stage_decision",
      [](double posterior, int stage, double lower, double upper, int max_stages) {
        EfficacyConfig cfg;
        cfg.lower = lower;
        cfg.upper = upper;
        cfg.max_stages = max_stages;
        return std::string(action_name(stage_decision(posterior, stage, cfg)));
      },
      py::arg("posterior"), py::arg("stage"), py::arg("lower") = 0.224, py::arg("upper") = 0.839,
      py::arg("max_stages") = 12);

  m.def(
      "translate_boundaries",
      [](double lower, double upper, double prior_old, double prior_new) {
        const auto [l, u] = translate_boundaries(lower, upper, prior_old, prior_new);
        return py::make_tuple(l, u);
      },
      py::arg("lower"), py::arg("upper"), py::arg("prior_old"), py::arg("prior_new"));

  // --- configuration --------------------------------------------------------

  m.def(
      "parse_config",
      [](const std::string& text) {
        const RunConfig cfg = parse_config_text(text, "<python>");
        validate_run_config(cfg);
        return config_echo(cfg);
      },
      py::arg("text"),
      "Validate a JSON configuration and return its full-precision echo.");

  // --- simulation -----------------------------------------------------------

  m.def(
      "run_trial",
      [](const std::string& config_text, int safety_id, int efficacy_id,
         std::uint64_t replication, bool with_log) {
        const RunConfig cfg = parse_config_text(config_text, "<python>");
        validate_run_config(cfg);
        const auto model = model_for(cfg);
        const Scenario sc = scenario_for(cfg, safety_id, efficacy_id);
        TrialLog log;
        const TrialResult res = run_trial(sc, cfg.trial, *model,
                                          cell_seed(cfg.seed, safety_id, efficacy_id), replication,
                                          with_log ? &log : nullptr);
        py::dict out;
        out["total_enrolled"] = res.total_enrolled;
        out["duration_weeks"] = res.duration_weeks;
        out["stopped_for_safety"] = res.stopped_for_safety;
        out["final_target"] = res.final_target;
        py::list arms;
        for (std::size_t i = 0; i < res.arms.size(); ++i) {
          const DoseOutcome& a = res.arms[i];
          py::dict arm;
          arm["arm"] = model->arm_label(static_cast<int>(i) + 1);
          arm["phase"] = phase_name(a.phase);
          arm["recommended"] = a.recommended;
          arm["ever_graduated"] = a.ever_graduated;
          arm["cohorts"] = a.cohorts;
          arm["reviews"] = a.reviews;
          arm["last_posterior"] = a.last_posterior;
          arms.append(arm);
        }
        out["arms"] = arms;
        if (with_log) out["log"] = log.lines;
        return out;
      },
      py::arg("config_text"), py::arg("safety_id") = 0, py::arg("efficacy_id") = 0,
      py::arg("replication") = std::uint64_t{0}, py::arg("with_log") = false,
      "One replication of the platform trial under a built-in scenario cell.");

  m.def(
      "run_cell",
      [](const std::string& config_text, int safety_id, int efficacy_id) {
        const RunConfig cfg = parse_config_text(config_text, "<python>");
        validate_run_config(cfg);
        const auto model = model_for(cfg);
        const Scenario sc = scenario_for(cfg, safety_id, efficacy_id);
        const BatchResult batch =
            run_batch(sc, cfg.trial, *model, cfg.n_sims,
                      cell_seed(cfg.seed, safety_id, efficacy_id), cfg.threads);
        py::dict out = oc_to_dict(summarize(batch, classify_doses(sc)));
        out["scenario"] = sc.name;
        return out;
      },
      py::arg("config_text"), py::arg("safety_id") = 0, py::arg("efficacy_id") = 0,
      "Operating characteristics of one scenario cell at the configured size.");

  m.def(
      "run_matrix",
      [](const std::string& config_text, const std::string& out_dir) {
        RunConfig cfg = parse_config_text(config_text, "<python>");
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        validate_run_config(cfg);
        const MatrixResult res = run_scenario_matrix(cfg);
        return emit_reports(res, cfg, cfg.out_dir);
      },
      py::arg("config_text"), py::arg("out_dir") = std::string{},
      "Full scenario matrix with report files written; returns the file list.");

  // --- boundary derivation ---------------------------------------------------

  m.def(
      "optimize_boundaries",
      [](int cohort_active, int cohort_control, int shared_controls, int max_stages,
         double target_hazard_ratio, double null_recovery, double type1_cap, double trade_off,
         int trajectories, double l_min, double l_max, double u_min, double u_max, double step,
         std::uint64_t seed) {
        BoundarySearchConfig cfg;
        cfg.structure = {cohort_active, cohort_control, shared_controls, max_stages};
        cfg.target_hazard_ratio = target_hazard_ratio;
        cfg.null_recovery = null_recovery;
        cfg.type1_cap = type1_cap;
        cfg.trade_off = trade_off;
        cfg.trajectories = trajectories;
        cfg.l_min = l_min;
        cfg.l_max = l_max;
        cfg.u_min = u_min;
        cfg.u_max = u_max;
        cfg.step = step;
        validate_boundary_search_config(cfg);
        const BoundarySearchResult res = optimize_boundaries(cfg, seed);
        py::dict out;
        out["feasible"] = res.feasible;
        out["lower"] = res.best.lower;
        out["upper"] = res.best.upper;
        out["type1"] = res.best.type1;
        out["power"] = res.best.power;
        out["expected_n_null"] = res.best.expected_n_null;
        out["expected_n_alt"] = res.best.expected_n_alt;
        out["criterion"] = res.best.criterion;
        out["half_lower_delta"] = res.half_lower_delta;
        out["half_upper_delta"] = res.half_upper_delta;
        return out;
      },
      py::arg("cohort_active") = 4, py::arg("cohort_control") = 2, py::arg("shared_controls") = 30,
      py::arg("max_stages") = 12, py::arg("target_hazard_ratio") = 1.75,
      py::arg("null_recovery") = 0.70, py::arg("type1_cap") = 0.10,
      py::arg("trade_off") = 1.0 / 320.0, py::arg("trajectories") = 20000,
      py::arg("l_min") = 0.01, py::arg("l_max") = 0.50, py::arg("u_min") = 0.50,
      py::arg("u_max") = 0.99, py::arg("step") = 0.001, py::arg("seed") = std::uint64_t{1},
      "Derive sequential stopping boundaries for a stage structure.");
}
