#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dosefind/efficacy.hpp"
#include "dosefind/outcomes.hpp"
#include "dosefind/safety_combo.hpp"
#include "dosefind/safety_mono.hpp"

namespace dosefind {

struct QuadratureSettings {
  int nodes = 40;
};

struct TrialConfig {
  int cohort_active = 4;
  int cohort_control = 2;
  int level_cap = 72;  // active + control intake per dose level
  double safety_window_days = 7.0;
  double cohort_interval_days = 7.0;
  bool share_controls = true;
  // Safety-only mode runs escalation without efficacy reviews for a fixed
  // number of cohorts and reports the final targeted dose (used by prior
  // calibration).
  bool safety_only = false;
  int safety_only_cohorts = 12;
  EscalationPolicy policy;
  EfficacyConfig efficacy;
  QuadratureSettings quadrature;
  QmcSettings qmc;

  int max_cohorts_per_arm() const { return level_cap / (cohort_active + cohort_control); }
};

void validate_trial_config(const TrialConfig& cfg);

// Posterior safety assessment plus dose-grid topology, shared by the
// single-agent and combination designs.
class SafetyModel {
 public:
  virtual ~SafetyModel() = default;
  virtual int active_arms() const = 0;
  virtual SafetySummary assess(const SafetyDataMono& data) const = 0;
  // Arms reachable from the current one, including staying put.
  virtual std::vector<int> moves(int current_arm) const = 0;
  virtual int distance(int arm_a, int arm_b) const = 0;
  // Lower rank wins ties between equal target probabilities.
  virtual long tie_rank(int arm) const = 0;
  virtual std::string arm_label(int arm) const = 0;
};

std::unique_ptr<SafetyModel> make_mono_safety_model(const SafetyPriorMono& prior, int doses,
                                                    const EscalationPolicy& policy,
                                                    const QuadratureSettings& quadrature);
std::unique_ptr<SafetyModel> make_combo_safety_model(const SafetyPriorCombo& prior,
                                                     const ComboGrid& grid,
                                                     const EscalationPolicy& policy,
                                                     const QmcSettings& qmc);

// Generic next-assignment rule over a safe candidate set (see
// select_next_dose / select_next_combo for the per-design entry points).
NextDose select_next_arm(int current, const std::vector<int>& safe,
                         std::span<const double> target_probs, const SafetyModel& model);

enum class DosePhase {
  Escalation,       // collecting safety data, not yet graduated
  Graduated,        // under efficacy evaluation
  Exhausted,        // intake cap reached, reviews pending
  StoppedSafety,
  StoppedFutility,
  StoppedEfficacy
};

struct DoseOutcome {
  DosePhase phase = DosePhase::Escalation;
  bool ever_graduated = false;
  bool recommended = false;
  int cohorts = 0;
  int reviews = 0;
  double last_posterior = -1.0;  // negative when never reviewed
};

struct TrialResult {
  std::vector<DoseOutcome> arms;  // active arms, index arm-1
  int total_enrolled = 0;
  double duration_weeks = 0.0;
  bool stopped_for_safety = false;  // trial-wide stop
  int final_target = -1;            // safety-only mode: targeted dose at the end
};

// Optional human-readable event trace of a single replication.
struct TrialLog {
  std::vector<std::string> lines;
};

TrialResult run_trial(const Scenario& scenario, const TrialConfig& cfg, const SafetyModel& model,
                      std::uint64_t master_seed, std::uint64_t replication,
                      TrialLog* log = nullptr);

// Compact per-replication record kept by batch runs.
struct RepRecord {
  int total_enrolled = 0;
  float duration_weeks = 0.0f;
  std::uint32_t recommended_mask = 0;
  bool stopped_for_safety = false;
  std::int8_t final_target = -1;
};

struct BatchResult {
  std::vector<RepRecord> reps;
};

// Runs n_sims independent replications. Replication r uses the stream
// derived from (seed, r), results are reduced in replication order, and the
// outcome is independent of the thread count.
BatchResult run_batch(const Scenario& scenario, const TrialConfig& cfg, const SafetyModel& model,
                      int n_sims, std::uint64_t seed, int threads = 0);

enum class DoseClass { Incorrect, Undesirable, Acceptable, Desirable };

// True-state classification: an arm with excess DLE risk above max_excess or
// no improvement effect is incorrect; otherwise the hazard ratio grades it.
std::vector<DoseClass> classify_doses(const Scenario& scenario, double max_excess = 0.30);

struct OperatingCharacteristics {
  int n_sims = 0;
  std::vector<double> recommend_pct;  // per active arm
  double any_recommend_pct = 0.0;
  double any_desirable_pct = 0.0;
  double all_desirable_pct = 0.0;
  double safety_stop_pct = 0.0;
  double mean_n = 0.0;
  double sd_n = 0.0;
  double median_n = 0.0;
  double q10_n = 0.0;
  double q90_n = 0.0;
  int min_n = 0;
  int max_n = 0;
  double mean_duration_weeks = 0.0;
  double sd_duration_weeks = 0.0;
  int count_n_above_150 = 0;
};

OperatingCharacteristics summarize(const BatchResult& batch, const std::vector<DoseClass>& classes);

// Deterministic per-cell seed for scenario-matrix runs.
std::uint64_t cell_seed(std::uint64_t master, int safety_id, int efficacy_id);

}  // namespace dosefind
