#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dosefind/efficacy.hpp"
#include "dosefind/safety_mono.hpp"

namespace dosefind {

// Stage layout used when deriving stopping boundaries: at stage k the dose
// has k cohorts of (cohort_active + cohort_control) subjects with complete
// follow-up plus shared_controls external controls available throughout.
struct StageStructure {
  int cohort_active = 4;
  int cohort_control = 2;
  int shared_controls = 30;
  int max_stages = 12;
};

struct BoundarySearchConfig {
  StageStructure structure;
  double target_hazard_ratio = 1.75;
  double null_recovery = 0.70;   // P(improvement by followup) on control
  double followup_days = 28.0;
  double type1_cap = 0.10;
  double trade_off = 1.0 / 320.0;  // sample-size penalty per patient
  int trajectories = 20000;        // per hypothesis
  double l_min = 0.01, l_max = 0.50;
  double u_min = 0.50, u_max = 0.99;
  double step = 0.001;
};

void validate_boundary_search_config(const BoundarySearchConfig& cfg);

// Posterior-probability paths: row-major trajectories x max_stages.
struct TrajectorySet {
  int stages = 0;
  int count = 0;
  std::vector<double> posterior;
};

// Simulate posterior paths under HR = 1 (alternative = false) or the target
// hazard ratio (alternative = true). Event times are exponential, matched to
// the configured null recovery proportion; only event ranks matter.
TrajectorySet simulate_likelihood_trajectories(const BoundarySearchConfig& cfg, bool alternative,
                                               std::uint64_t seed);

struct BoundaryOperatingCharacteristics {
  double lower = 0.0, upper = 0.0;
  double type1 = 0.0, power = 0.0;
  double expected_n_null = 0.0, expected_n_alt = 0.0;
  double criterion = 0.0;
};

BoundaryOperatingCharacteristics evaluate_boundaries(const TrajectorySet& null_paths,
                                                     const TrajectorySet& alt_paths, double lower,
                                                     double upper,
                                                     const BoundarySearchConfig& cfg);

struct BoundarySearchResult {
  bool feasible = false;
  BoundaryOperatingCharacteristics best;
  // Feasibility frontier: for each lower boundary on the grid, the smallest
  // upper boundary meeting the type-I cap (pairs above it are dominated).
  std::vector<BoundaryOperatingCharacteristics> frontier;
  // Split-half repeat of the search, as a Monte Carlo stability probe.
  double half_lower_delta = 0.0, half_upper_delta = 0.0;
};

BoundarySearchResult optimize_boundaries(const BoundarySearchConfig& cfg, std::uint64_t seed);

// Hyperparameter calibration for the single-agent safety prior: every grid
// point is scored by the geometric mean, across scenarios, of how often
// safety-only escalation ends targeting the scenario's correct dose.
struct PriorGridMono {
  std::vector<double> dle_increment;
  std::vector<double> log_slope_mean;
  std::vector<double> intercept_var;
  std::vector<double> log_slope_var;
  int sims_per_scenario = 500;
  std::vector<int> scenario_ids = {1, 2, 3};  // built-in safety scenarios
  int cohorts = 12;                           // escalation horizon per trial
};

struct PriorGridPoint {
  SafetyPriorMono prior;
  std::vector<double> selection_rate;  // per scenario
  double score = 0.0;                  // geometric mean
};

struct PriorCalibrationResult {
  SafetyPriorMono selected;
  std::size_t selected_index = 0;
  std::vector<PriorGridPoint> grid;
};

struct TrialConfig;  // defined in trial_engine.hpp

PriorCalibrationResult calibrate_safety_prior(const PriorGridMono& grid, const TrialConfig& base,
                                              std::uint64_t seed, int threads = 0);

}  // namespace dosefind
