#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dosefind/calibration.hpp"
#include "dosefind/outcomes.hpp"
#include "dosefind/safety_combo.hpp"
#include "dosefind/trial_engine.hpp"

namespace dosefind {

enum class DesignMode { Single, Combination };

// One run configuration: design shape, scenario selection, and every
// parameter block used by simulation and calibration. Loaded from JSON;
// every block, when present, must be complete and free of unknown keys.
struct RunConfig {
  DesignMode mode = DesignMode::Single;
  int doses = 3;        // single-agent active dose count
  ComboGrid combo_grid;  // combination grid shape
  // Built-in scenario matrix selection (ignored when custom_scenarios given).
  std::vector<int> safety_scenarios = {0, 1, 2, 3, 4};
  std::vector<int> efficacy_scenarios = {0, 1, 2, 3, 4};
  // Inline scenario definitions; each one becomes a single result cell.
  std::vector<Scenario> custom_scenarios;
  int n_sims = 10000;
  std::uint64_t seed = 0;  // mandatory in configuration files
  int threads = 0;         // 0 = hardware concurrency
  std::string out_dir = "results";
  TrialConfig trial;
  SafetyPriorMono prior = make_mono_prior(0.10, 0.125, -0.25, 1.40, 0.35);
  SafetyPriorCombo prior_combo =
      make_combo_prior(0.10, 0.075, 0.075, 0.0, 0.0, 0.6, 0.25, 0.25, 0.10);
  BoundarySearchConfig boundary;
  PriorGridMono prior_grid;
};

void validate_run_config(const RunConfig& cfg);

// Parse a JSON run configuration. A structured summary produced by the
// report writer is accepted too (its "config" member is used), so summaries
// round-trip back into configurations. origin names the source in errors.
RunConfig parse_config_text(const std::string& text, const std::string& origin);
RunConfig load_config(const std::string& path);

// Full-precision JSON echo; parsing the echo reproduces the configuration.
std::string config_echo(const RunConfig& cfg);

}  // namespace dosefind
