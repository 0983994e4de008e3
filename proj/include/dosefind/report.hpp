#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dosefind/config.hpp"

namespace dosefind {

// One scenario cell of a simulation run.
struct CellResult {
  int safety_id = 0;
  int efficacy_id = 0;
  std::string label;
  std::uint64_t seed = 0;  // per-cell stream seed
  bool is_null = false;    // every arm at hazard ratio 1
  std::vector<DoseClass> classes;
  OperatingCharacteristics oc;
};

struct MatrixResult {
  std::vector<std::string> arm_labels;  // active arms in grid order
  std::vector<int> safety_ids;          // empty for custom-scenario runs
  std::vector<int> efficacy_ids;
  std::vector<CellResult> cells;  // row-major: safety outer, efficacy inner
};

// Runs every configured scenario cell with the per-cell seed derived from
// the master seed; a failing cell aborts with the scenario identified.
MatrixResult run_scenario_matrix(const RunConfig& cfg);

// Report writers return the list of files written under out_dir:
// comma-separated tables at one decimal, a full-precision structured summary
// (JSON with Monte Carlo errors, config echo, seed, version), and x/y plot
// series.
std::vector<std::string> emit_reports(const MatrixResult& results, const RunConfig& cfg,
                                      const std::string& out_dir);
std::vector<std::string> emit_boundary_report(const BoundarySearchResult& result,
                                              const RunConfig& cfg, const std::string& out_dir);
std::vector<std::string> emit_prior_report(const PriorCalibrationResult& result,
                                           const RunConfig& cfg, const std::string& out_dir);
std::vector<std::string> emit_single_run(const TrialResult& result, const TrialLog& log,
                                         const std::vector<std::string>& arm_labels,
                                         const RunConfig& cfg, const std::string& out_dir);

std::string artifact_version();
std::string phase_name(DosePhase phase);
std::string class_name(DoseClass cls);

}  // namespace dosefind
