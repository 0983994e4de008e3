#pragma once

#include <deque>
#include <utility>
#include <vector>

namespace dosefind {

// One analysis-ready subject: z = 1 for the active dose, 0 for control;
// time is days to improvement or censoring, event marks an observed
// improvement within follow-up.
struct Subject {
  int z = 0;
  double time = 0.0;
  bool event = false;
};

using SurvivalDataset = std::vector<Subject>;

struct EfficacyConfig {
  double target_hazard_ratio = 1.75;  // alternative evaluated against HR 1
  double prior_probability = 0.5;     // point-prior mass on the alternative
  double lower = 0.224;               // futility boundary on the posterior
  double upper = 0.839;               // efficacy boundary on the posterior
  int max_stages = 12;
  int shared_controls = 30;           // most recent external controls usable
  double followup_days = 28.0;
};

// Cox partial log-likelihood at a fixed hazard ratio, Breslow tie handling.
double cox_log_partial_likelihood(const SurvivalDataset& data, double hazard_ratio);

// Posterior probability that the true hazard ratio equals the target, under
// a two-point prior on {1, target}.
double posterior_efficacy_probability(const SurvivalDataset& data, const EfficacyConfig& cfg);

enum class StageAction { Continue, StopFutility, StopEfficacy };

// Sequential decision at stage k (1-based): efficacy above the upper
// boundary, futility below the lower one, and at the final stage efficacy
// must be established or the dose is dropped.
StageAction stage_decision(double posterior, int stage, const EfficacyConfig& cfg);

// Shift (lower, upper) so that decisions are unchanged when the point-prior
// probability moves from prior_old to prior_new.
std::pair<double, double> translate_boundaries(double lower, double upper, double prior_old,
                                               double prior_new);

// A control subject shared across doses.
struct ControlRecord {
  int subject_id = 0;
  double enroll_day = 0.0;
  double time = 0.0;
  bool event = false;
};

// Bounded queue of shared control records ordered by enrollment day;
// once capacity is exceeded the oldest records are evicted first.
class ControlBuffer {
 public:
  explicit ControlBuffer(std::size_t capacity);

  void add(const ControlRecord& rec);
  const std::deque<ControlRecord>& records() const { return records_; }
  std::size_t capacity() const { return capacity_; }

 private:
  std::size_t capacity_;
  std::deque<ControlRecord> records_;
};

// A dose's own subjects (treated and concurrent controls) with identity and
// enrollment retained for deduplication against the shared buffer.
struct OwnSubject {
  int subject_id = 0;
  int z = 0;
  double enroll_day = 0.0;
  double time = 0.0;
  bool event = false;
};

struct DoseEfficacyData {
  std::vector<OwnSubject> subjects;
};

// Merge a dose's own subjects with the shared external controls. Only
// subjects whose follow-up is complete by analysis_day enter the set, and a
// subject appearing both ways is included once.
SurvivalDataset assemble_analysis_set(const DoseEfficacyData& own, const ControlBuffer& externals,
                                      double analysis_day, double followup_days);

}  // namespace dosefind
