#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dosefind/efficacy.hpp"

using namespace dosefind;

namespace {

// Product-form partial likelihood for tie-free data: walk events in time
// order and divide by the running risk-set total.
double oracle_log_pl(SurvivalDataset data, double hr) {
  std::sort(data.begin(), data.end(),
            [](const Subject& a, const Subject& b) { return a.time < b.time; });
  double loglik = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!data[i].event) continue;
    double risk = 0.0;
    for (std::size_t j = i; j < data.size(); ++j) risk += data[j].z ? hr : 1.0;
    loglik += (data[i].z ? std::log(hr) : 0.0) - std::log(risk);
  }
  return loglik;
}

SurvivalDataset random_tie_free(std::mt19937_64& gen, int n) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> times(n);
  for (int i = 0; i < n; ++i) times[i] = 1.0 + i * 0.37;  // distinct by construction
  std::shuffle(times.begin(), times.end(), gen);
  SurvivalDataset data(n);
  for (int i = 0; i < n; ++i) {
    data[i].time = times[i];
    data[i].z = unif(gen) < 0.5 ? 1 : 0;
    data[i].event = unif(gen) < 0.8;
  }
  return data;
}

SurvivalDataset random_with_ties(std::mt19937_64& gen, int n) {
  std::uniform_int_distribution<int> day(1, 10);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  SurvivalDataset data(n);
  for (int i = 0; i < n; ++i) {
    data[i].time = day(gen);
    data[i].z = unif(gen) < 0.5 ? 1 : 0;
    data[i].event = unif(gen) < 0.8;
  }
  return data;
}

}  // namespace

TEST_CASE("partial likelihood matches the product form on tie-free data") {
  std::mt19937_64 gen(5150);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 1 + static_cast<int>(gen() % 40);
    const SurvivalDataset data = random_tie_free(gen, n);
    for (double hr : {0.5, 1.0, 1.75, 3.2}) {
      const double got = cox_log_partial_likelihood(data, hr);
      const double want = oracle_log_pl(data, hr);
      CHECK(std::fabs(got - want) < 1e-10);
    }
  }
}

TEST_CASE("tied events share the pre-event risk set") {
  // Two events at t=2 and one at t=5; both early events see all three
  // subjects at risk.
  const SurvivalDataset data = {{1, 2.0, true}, {0, 2.0, true}, {1, 5.0, true}};
  const double hr = 1.75;
  const double want = std::log(hr) - 2.0 * std::log(2.0 * hr + 1.0);
  CHECK(cox_log_partial_likelihood(data, hr) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("censored subjects contribute risk only") {
  const SurvivalDataset a = {{1, 3.0, true}, {0, 7.0, false}};
  CHECK(cox_log_partial_likelihood(a, 1.75) ==
        doctest::Approx(std::log(1.75 / 2.75)).epsilon(1e-12));
  // A subject censored before the only event never enters its risk set.
  const SurvivalDataset b = {{0, 3.0, false}, {1, 7.0, true}};
  CHECK(cox_log_partial_likelihood(b, 1.75) == doctest::Approx(0.0));
  // No events at all: flat likelihood.
  const SurvivalDataset c = {{0, 3.0, false}, {1, 7.0, false}};
  CHECK(cox_log_partial_likelihood(c, 1.75) == 0.0);
  CHECK(cox_log_partial_likelihood({}, 1.75) == 0.0);
}

TEST_CASE("hand-computed two-subject posterior") {
  const SurvivalDataset data = {{1, 3.0, true}, {0, 7.0, true}};
  const EfficacyConfig cfg;  // prior 0.5, target 1.75
  // L(1.75)/[L(1.75)+L(1)] = (7/11) / (7/11 + 1/2) = 14/25
  CHECK(posterior_efficacy_probability(data, cfg) == doctest::Approx(0.5600).epsilon(1e-12));
}

TEST_CASE("only event ranks matter") {
  std::mt19937_64 gen(77);
  for (int rep = 0; rep < 100; ++rep) {
    const SurvivalDataset data = random_tie_free(gen, 25);
    SurvivalDataset cubed = data, shifted = data;
    for (Subject& s : cubed) s.time = s.time * s.time * s.time;
    for (Subject& s : shifted) s.time += 17.0;
    const double base = cox_log_partial_likelihood(data, 1.75);
    CHECK(cox_log_partial_likelihood(cubed, 1.75) == doctest::Approx(base).epsilon(1e-12));
    CHECK(cox_log_partial_likelihood(shifted, 1.75) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("stage decisions respect the boundaries") {
  EfficacyConfig cfg;
  cfg.lower = 0.224;
  cfg.upper = 0.839;
  cfg.max_stages = 12;
  CHECK(stage_decision(0.90, 1, cfg) == StageAction::StopEfficacy);
  CHECK(stage_decision(0.10, 1, cfg) == StageAction::StopFutility);
  CHECK(stage_decision(0.50, 1, cfg) == StageAction::Continue);
  CHECK(stage_decision(0.50, 11, cfg) == StageAction::Continue);
  // At the final stage efficacy must be established.
  CHECK(stage_decision(0.50, 12, cfg) == StageAction::StopFutility);
  CHECK(stage_decision(0.90, 12, cfg) == StageAction::StopEfficacy);
  // Boundaries are strict: sitting exactly on one does not cross it.
  CHECK(stage_decision(cfg.upper, 3, cfg) == StageAction::Continue);
  CHECK(stage_decision(cfg.lower, 3, cfg) == StageAction::Continue);
  CHECK(stage_decision(cfg.upper, 12, cfg) == StageAction::StopFutility);
  CHECK_THROWS_AS(stage_decision(0.5, 0, cfg), std::invalid_argument);
}

TEST_CASE("prior translation leaves decisions unchanged") {
  std::mt19937_64 gen(90210);
  EfficacyConfig old_cfg;
  old_cfg.prior_probability = 0.5;
  EfficacyConfig new_cfg = old_cfg;
  new_cfg.prior_probability = 0.3;
  const auto [l2, u2] = translate_boundaries(old_cfg.lower, old_cfg.upper, 0.5, 0.3);
  new_cfg.lower = l2;
  new_cfg.upper = u2;

  int crossings = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const SurvivalDataset data = random_with_ties(gen, 6 + static_cast<int>(gen() % 30));
    const double post_old = posterior_efficacy_probability(data, old_cfg);
    const double post_new = posterior_efficacy_probability(data, new_cfg);
    for (int stage : {1, 6, 12}) {
      const StageAction a = stage_decision(post_old, stage, old_cfg);
      const StageAction b = stage_decision(post_new, stage, new_cfg);
      CHECK(a == b);
      if (a != StageAction::Continue) ++crossings;
    }
  }
  // The sample must actually exercise both boundary crossings.
  CHECK(crossings > 100);
  const auto [l3, u3] = translate_boundaries(0.224, 0.839, 0.5, 0.5);
  CHECK(l3 == doctest::Approx(0.224).epsilon(1e-12));
  CHECK(u3 == doctest::Approx(0.839).epsilon(1e-12));
}

TEST_CASE("degenerate priors pin the posterior") {
  const SurvivalDataset data = {{1, 3.0, true}, {0, 7.0, true}};
  EfficacyConfig cfg;
  cfg.prior_probability = 0.0;
  CHECK(posterior_efficacy_probability(data, cfg) == 0.0);
  cfg.prior_probability = 1.0;
  CHECK(posterior_efficacy_probability(data, cfg) == 1.0);
}

TEST_CASE("control buffer keeps the most recent records") {
  ControlBuffer buf(3);
  buf.add({1, 5.0, 10.0, true});
  buf.add({2, 1.0, 11.0, false});
  buf.add({3, 9.0, 12.0, true});
  REQUIRE(buf.records().size() == 3);
  CHECK(buf.records()[0].subject_id == 2);
  CHECK(buf.records()[2].subject_id == 3);
  buf.add({4, 3.0, 13.0, true});  // evicts the oldest (day 1), not the newest
  REQUIRE(buf.records().size() == 3);
  CHECK(buf.records()[0].subject_id == 4);
  CHECK(buf.records()[1].subject_id == 1);
  CHECK(buf.records()[2].subject_id == 3);

  ControlBuffer none(0);
  none.add({1, 1.0, 1.0, true});
  CHECK(none.records().empty());
}

TEST_CASE("analysis sets require complete follow-up and deduplicate") {
  DoseEfficacyData own;
  own.subjects = {
      {101, 1, 10.0, 14.0, true},   // complete by day 40
      {102, 0, 12.0, 28.0, false},  // complete by day 40
      {103, 1, 13.0, 9.0, true},    // 13 + 28 > 40: still in follow-up
  };
  ControlBuffer externals(30);
  externals.add({102, 12.0, 28.0, false});  // already in the dose's own set
  externals.add({201, 1.0, 7.0, true});
  externals.add({202, 20.0, 5.0, true});  // 20 + 28 > 40: still in follow-up
  externals.add({203, 4.0, 28.0, false});

  const SurvivalDataset set = assemble_analysis_set(own, externals, 40.0, 28.0);
  REQUIRE(set.size() == 4);
  int active = 0, controls = 0, events = 0;
  for (const Subject& s : set) {
    (s.z ? active : controls)++;
    if (s.event) ++events;
  }
  CHECK(active == 1);
  CHECK(controls == 3);
  CHECK(events == 2);

  // Exactly at the completion boundary the subject is usable.
  const SurvivalDataset edge = assemble_analysis_set(own, externals, 41.0, 28.0);
  CHECK(edge.size() == 5);
}
