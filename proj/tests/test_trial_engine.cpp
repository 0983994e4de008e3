#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "dosefind/trial_engine.hpp"

using namespace dosefind;

namespace {

TrialConfig base_config() {
  TrialConfig cfg;
  validate_trial_config(cfg);
  return cfg;
}

std::unique_ptr<SafetyModel> base_model(const TrialConfig& cfg) {
  const SafetyPriorMono prior = make_mono_prior(0.10, 0.125, -0.25, 1.40, 0.35);
  return make_mono_safety_model(prior, 3, cfg.policy, cfg.quadrature);
}

bool same_result(const TrialResult& a, const TrialResult& b) {
  if (a.total_enrolled != b.total_enrolled || a.duration_weeks != b.duration_weeks ||
      a.stopped_for_safety != b.stopped_for_safety || a.final_target != b.final_target ||
      a.arms.size() != b.arms.size())
    return false;
  for (std::size_t i = 0; i < a.arms.size(); ++i) {
    const DoseOutcome& x = a.arms[i];
    const DoseOutcome& y = b.arms[i];
    if (x.phase != y.phase || x.ever_graduated != y.ever_graduated ||
        x.recommended != y.recommended || x.cohorts != y.cohorts || x.reviews != y.reviews ||
        x.last_posterior != y.last_posterior)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("config validation catches bad shapes") {
  TrialConfig cfg = base_config();
  cfg.cohort_active = 0;
  CHECK_THROWS_AS(validate_trial_config(cfg), std::invalid_argument);
  cfg = base_config();
  cfg.level_cap = 3;  // below one cohort
  CHECK_THROWS_AS(validate_trial_config(cfg), std::invalid_argument);
  cfg = base_config();
  cfg.efficacy.lower = 0.9;  // boundaries out of order
  cfg.efficacy.upper = 0.1;
  CHECK_THROWS_AS(validate_trial_config(cfg), std::invalid_argument);
}

TEST_CASE("replications are reproducible") {
  const TrialConfig cfg = base_config();
  const auto model = base_model(cfg);
  const Scenario sc = make_single_scenario(1, 1);
  const TrialResult a = run_trial(sc, cfg, *model, 20260816, 5);
  const TrialResult b = run_trial(sc, cfg, *model, 20260816, 5);
  CHECK(same_result(a, b));
  const TrialResult c = run_trial(sc, cfg, *model, 20260816, 6);
  CHECK(!same_result(a, c));
}

TEST_CASE("the event trace records replication activity") {
  const TrialConfig cfg = base_config();
  const auto model = base_model(cfg);
  TrialLog log;
  const TrialResult r = run_trial(make_single_scenario(1, 1), cfg, *model, 20260816, 5, &log);
  CHECK(!log.lines.empty());
  CHECK(r.total_enrolled > 0);
  CHECK(r.duration_weeks > 0.0);
}

TEST_CASE("batches are identical across thread counts") {
  const TrialConfig cfg = base_config();
  const auto model = base_model(cfg);
  const Scenario sc = make_single_scenario(1, 1);
  const BatchResult one = run_batch(sc, cfg, *model, 48, 20260816, 1);
  const BatchResult four = run_batch(sc, cfg, *model, 48, 20260816, 4);
  REQUIRE(one.reps.size() == four.reps.size());
  for (std::size_t i = 0; i < one.reps.size(); ++i) {
    CHECK(one.reps[i].total_enrolled == four.reps[i].total_enrolled);
    CHECK(one.reps[i].duration_weeks == four.reps[i].duration_weeks);
    CHECK(one.reps[i].recommended_mask == four.reps[i].recommended_mask);
    CHECK(one.reps[i].stopped_for_safety == four.reps[i].stopped_for_safety);
    CHECK(one.reps[i].final_target == four.reps[i].final_target);
  }
}

TEST_CASE("per-dose intake respects the cap") {
  const TrialConfig cfg = base_config();
  const auto model = base_model(cfg);
  const Scenario sc = make_single_scenario(0, 0);  // everything safe, nothing works
  const int max_cohorts = cfg.max_cohorts_per_arm();
  for (int rep = 0; rep < 25; ++rep) {
    const TrialResult r = run_trial(sc, cfg, *model, 99, static_cast<std::uint64_t>(rep));
    for (const DoseOutcome& d : r.arms) CHECK(d.cohorts <= max_cohorts);
    CHECK(r.total_enrolled <= 3 * cfg.level_cap);
  }
}

TEST_CASE("an all-unsafe scenario stops the trial early") {
  const TrialConfig cfg = base_config();
  const auto model = base_model(cfg);
  const Scenario sc = make_single_scenario(4, 0);
  const BatchResult batch = run_batch(sc, cfg, *model, 200, 31114, 0);
  const OperatingCharacteristics oc = summarize(batch, classify_doses(sc));
  CHECK(oc.safety_stop_pct > 50.0);
  CHECK(oc.mean_n < 60.0);
  CHECK(oc.any_recommend_pct < 20.0);
}

TEST_CASE("safety-only mode reports a final target") {
  TrialConfig cfg = base_config();
  cfg.safety_only = true;
  cfg.safety_only_cohorts = 12;
  const auto model = base_model(cfg);
  const Scenario sc = make_single_scenario(1, 0);  // dose 3 carries the target excess
  const BatchResult batch = run_batch(sc, cfg, *model, 100, 2233, 0);
  int targeted = 0, dose3 = 0;
  for (const RepRecord& r : batch.reps) {
    CHECK(r.final_target >= -1);
    CHECK(r.final_target <= 3);
    if (r.final_target > 0) ++targeted;
    if (r.final_target == 3) ++dose3;
    CHECK(r.recommended_mask == 0);  // no efficacy reviews in this mode
  }
  CHECK(targeted > 80);
  CHECK(dose3 > 30);
}

TEST_CASE("dose classification follows safety and effect size") {
  // All safe and highly effective.
  const std::vector<DoseClass> all_good = classify_doses(make_single_scenario(1, 4));
  REQUIRE(all_good.size() == 3);
  for (DoseClass c : all_good) CHECK(c == DoseClass::Desirable);

  // Unsafe arms are incorrect regardless of effect.
  const std::vector<DoseClass> mixed = classify_doses(make_single_scenario(3, 2));
  CHECK(mixed[0] == DoseClass::Acceptable);  // excess 0.20, hazard ratio 1.5
  CHECK(mixed[1] == DoseClass::Incorrect);   // excess 0.35
  CHECK(mixed[2] == DoseClass::Incorrect);   // excess 0.50

  // No effect (hazard ratio 1) is incorrect even when safe.
  for (DoseClass c : classify_doses(make_single_scenario(0, 0))) CHECK(c == DoseClass::Incorrect);

  // The combination ladder exercises every class.
  const std::vector<DoseClass> combo = classify_doses(make_combo_scenario(0, 1));
  REQUIRE(combo.size() == 6);
  CHECK(combo[0] == DoseClass::Incorrect);    // (1,1) hazard ratio 1.00
  CHECK(combo[1] == DoseClass::Undesirable);  // (1,2) 1.25
  CHECK(combo[2] == DoseClass::Acceptable);   // (1,3) 1.50
  CHECK(combo[3] == DoseClass::Undesirable);  // (2,1) 1.25
  CHECK(combo[4] == DoseClass::Acceptable);   // (2,2) 1.50
  CHECK(combo[5] == DoseClass::Desirable);    // (2,3) 1.75
}

TEST_CASE("summaries aggregate hand-checkable records") {
  BatchResult batch;
  batch.reps = {
      {10, 5.0f, 0b010, false, -1},
      {20, 6.0f, 0b000, true, -1},
      {30, 7.0f, 0b110, false, -1},
      {40, 8.0f, 0b001, false, -1},
  };
  const std::vector<DoseClass> classes = {DoseClass::Incorrect, DoseClass::Desirable,
                                          DoseClass::Desirable};
  const OperatingCharacteristics oc = summarize(batch, classes);
  CHECK(oc.n_sims == 4);
  CHECK(oc.recommend_pct[0] == 25.0);
  CHECK(oc.recommend_pct[1] == 50.0);
  CHECK(oc.recommend_pct[2] == 25.0);
  CHECK(oc.any_recommend_pct == 75.0);
  CHECK(oc.any_desirable_pct == 50.0);
  CHECK(oc.all_desirable_pct == 25.0);
  CHECK(oc.safety_stop_pct == 25.0);
  CHECK(oc.mean_n == 25.0);
  CHECK(oc.median_n == 25.0);
  CHECK(oc.min_n == 10);
  CHECK(oc.max_n == 40);
  CHECK(oc.q10_n == 10.0);
  CHECK(oc.q90_n == 40.0);
  CHECK(oc.sd_n == doctest::Approx(std::sqrt(500.0 / 3.0)).epsilon(1e-12));
  CHECK(oc.mean_duration_weeks == doctest::Approx(6.5).epsilon(1e-12));
  CHECK(oc.count_n_above_150 == 0);
}

TEST_CASE("cell seeds separate the scenario grid") {
  std::set<std::uint64_t> seen;
  for (int s = 0; s < 5; ++s) {
    for (int e = 0; e < 5; ++e) seen.insert(cell_seed(20260816, s, e));
  }
  CHECK(seen.size() == 25);
  CHECK(cell_seed(1, 2, 3) == cell_seed(1, 2, 3));
  CHECK(cell_seed(1, 2, 3) != cell_seed(2, 2, 3));
}

TEST_CASE("combination engine runs end to end") {
  TrialConfig cfg = base_config();
  const ComboGrid grid{2, 3};
  const auto model = make_combo_safety_model(
      make_combo_prior(0.10, 0.075, 0.075, 0.0, 0.0, 0.6, 0.25, 0.25, 0.10), grid, cfg.policy,
      cfg.qmc);
  CHECK(model->active_arms() == 6);
  const Scenario sc = make_combo_scenario(0, 2);
  const TrialResult r = run_trial(sc, cfg, *model, 777, 0);
  CHECK(r.total_enrolled > 0);
  CHECK(r.arms.size() == 6);
  const BatchResult batch = run_batch(sc, cfg, *model, 8, 777, 2);
  CHECK(batch.reps.size() == 8);
}
