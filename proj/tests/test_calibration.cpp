#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstddef>

#include "dosefind/calibration.hpp"
#include "dosefind/rng.hpp"
#include "dosefind/trial_engine.hpp"

using namespace dosefind;

namespace {

BoundarySearchConfig small_search() {
  BoundarySearchConfig cfg;
  cfg.structure = {4, 2, 30, 6};
  cfg.trajectories = 4000;
  cfg.step = 0.005;
  cfg.l_min = 0.05;
  cfg.l_max = 0.35;
  cfg.u_min = 0.70;
  cfg.u_max = 0.95;
  return cfg;
}

TrajectorySet paths_of(int stages, std::vector<std::vector<double>> rows) {
  TrajectorySet out;
  out.stages = stages;
  out.count = static_cast<int>(rows.size());
  for (const auto& row : rows) {
    REQUIRE(static_cast<int>(row.size()) == stages);
    out.posterior.insert(out.posterior.end(), row.begin(), row.end());
  }
  return out;
}

}  // namespace

TEST_CASE("config validation rejects malformed searches") {
  BoundarySearchConfig cfg = small_search();
  validate_boundary_search_config(cfg);  // baseline is fine
  cfg.l_max = 0.80;                      // lower grid overlaps upper grid
  CHECK_THROWS_AS(validate_boundary_search_config(cfg), std::invalid_argument);
  cfg = small_search();
  cfg.trajectories = 1;
  CHECK_THROWS_AS(validate_boundary_search_config(cfg), std::invalid_argument);
  cfg = small_search();
  cfg.step = 0.0;
  CHECK_THROWS_AS(validate_boundary_search_config(cfg), std::invalid_argument);
  cfg = small_search();
  cfg.null_recovery = 1.0;
  CHECK_THROWS_AS(validate_boundary_search_config(cfg), std::invalid_argument);
}

TEST_CASE("boundary evaluation matches a hand-walked example") {
  BoundarySearchConfig cfg;
  cfg.structure = {4, 2, 30, 3};  // cohort of 6, three stages
  const TrajectorySet null_paths = paths_of(3, {
                                                   {0.9, 0.0, 0.0},  // success at stage 1
                                                   {0.5, 0.9, 0.0},  // success at stage 2
                                                   {0.1, 0.0, 0.0},  // futility at stage 1
                                                   {0.5, 0.5, 0.5},  // runs out at stage 3
                                               });
  const TrajectorySet alt_paths = paths_of(3, {
                                                  {0.9, 0.0, 0.0},  // success at stage 1
                                                  {0.5, 0.1, 0.0},  // futility at stage 2
                                              });
  const BoundaryOperatingCharacteristics oc =
      evaluate_boundaries(null_paths, alt_paths, 0.2, 0.8, cfg);
  CHECK(oc.type1 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(oc.power == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(oc.expected_n_null == doctest::Approx(10.5).epsilon(1e-12));  // mean stage 1.75 x 6
  CHECK(oc.expected_n_alt == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(oc.criterion == doctest::Approx(0.5 - 19.5 / 320.0).epsilon(1e-12));

  TrajectorySet short_paths = paths_of(2, {{0.5, 0.5}});
  CHECK_THROWS_AS(evaluate_boundaries(short_paths, alt_paths, 0.2, 0.8, cfg),
                  std::invalid_argument);
}

TEST_CASE("boundary crossings are strict") {
  BoundarySearchConfig cfg;
  cfg.structure = {4, 2, 30, 3};
  // Sitting exactly on the upper boundary is not a success: the path runs to
  // the final stage and ends in futility.
  const TrajectorySet on_upper = paths_of(3, {{0.8, 0.8, 0.8}});
  const TrajectorySet dummy = paths_of(3, {{0.5, 0.5, 0.5}});
  BoundaryOperatingCharacteristics oc = evaluate_boundaries(on_upper, dummy, 0.2, 0.8, cfg);
  CHECK(oc.type1 == 0.0);
  CHECK(oc.expected_n_null == doctest::Approx(18.0).epsilon(1e-12));

  // Sitting exactly on the lower boundary is not a futility stop: the path
  // continues and may still cross later.
  const TrajectorySet on_lower = paths_of(3, {{0.2, 0.9, 0.0}});
  oc = evaluate_boundaries(on_lower, dummy, 0.2, 0.8, cfg);
  CHECK(oc.type1 == 1.0);
  CHECK(oc.expected_n_null == doctest::Approx(12.0).epsilon(1e-12));
}

TEST_CASE("posterior trajectories are reproducible and ordered by the truth") {
  BoundarySearchConfig cfg = small_search();
  cfg.structure.max_stages = 4;
  cfg.trajectories = 64;

  const TrajectorySet null_a = simulate_likelihood_trajectories(cfg, false, 991);
  const TrajectorySet null_b = simulate_likelihood_trajectories(cfg, false, 991);
  CHECK(null_a.count == 64);
  CHECK(null_a.stages == 4);
  REQUIRE(null_a.posterior.size() == 64 * 4);
  CHECK(null_a.posterior == null_b.posterior);

  const TrajectorySet alt = simulate_likelihood_trajectories(cfg, true, 991);
  for (double p : null_a.posterior) CHECK((p > 0.0 && p < 1.0));
  for (double p : alt.posterior) CHECK((p > 0.0 && p < 1.0));

  // With the target hazard ratio true, final-stage posteriors concentrate
  // higher than under the null.
  double mean_null = 0.0, mean_alt = 0.0;
  for (int r = 0; r < 64; ++r) {
    mean_null += null_a.posterior[static_cast<std::size_t>(r) * 4 + 3];
    mean_alt += alt.posterior[static_cast<std::size_t>(r) * 4 + 3];
  }
  CHECK(mean_alt / 64.0 > mean_null / 64.0 + 0.2);
}

TEST_CASE("the boundary search returns a consistent frontier") {
  const BoundarySearchConfig cfg = small_search();
  const BoundarySearchResult res = optimize_boundaries(cfg, 411817);
  REQUIRE(res.feasible);
  REQUIRE(!res.frontier.empty());

  double best_criterion = -1e30;
  double prev_l = -1.0, prev_u = 2.0;
  for (const BoundaryOperatingCharacteristics& row : res.frontier) {
    CHECK(row.type1 <= cfg.type1_cap + 1e-12);
    CHECK(row.lower >= cfg.l_min - 1e-12);
    CHECK(row.upper <= cfg.u_max + 1e-12);
    // The minimal admissible upper boundary cannot rise as the futility
    // boundary tightens.
    CHECK(row.lower > prev_l);
    CHECK(row.upper <= prev_u + 1e-12);
    prev_l = row.lower;
    prev_u = row.upper;
    const double expect =
        row.power - cfg.trade_off * (row.expected_n_null + row.expected_n_alt);
    CHECK(row.criterion == doctest::Approx(expect).epsilon(1e-12));
    best_criterion = std::max(best_criterion, row.criterion);
  }
  CHECK(res.best.criterion == doctest::Approx(best_criterion).epsilon(1e-12));
  CHECK(res.best.type1 <= cfg.type1_cap + 1e-12);
  CHECK(res.best.power > 0.4);

  CHECK(std::isfinite(res.half_lower_delta));
  CHECK(std::isfinite(res.half_upper_delta));

  const BoundarySearchResult again = optimize_boundaries(cfg, 411817);
  CHECK(again.best.lower == res.best.lower);
  CHECK(again.best.upper == res.best.upper);
  CHECK(again.best.criterion == res.best.criterion);
}

TEST_CASE("prior calibration scores a grid deterministically") {
  PriorGridMono grid;
  grid.dle_increment = {0.10, 0.125};
  grid.log_slope_mean = {-0.25};
  grid.intercept_var = {1.40};
  grid.log_slope_var = {0.35};
  grid.sims_per_scenario = 40;
  grid.scenario_ids = {1};
  grid.cohorts = 6;

  TrialConfig base;
  const PriorCalibrationResult a = calibrate_safety_prior(grid, base, 5150, 1);
  REQUIRE(a.grid.size() == 2);
  for (const PriorGridPoint& p : a.grid) {
    REQUIRE(p.selection_rate.size() == 1);
    CHECK(p.selection_rate[0] >= 0.0);
    CHECK(p.selection_rate[0] <= 1.0);
    CHECK(p.score == doctest::Approx(p.selection_rate[0]).epsilon(1e-12));
  }
  CHECK(a.grid[a.selected_index].score ==
        std::max(a.grid[0].score, a.grid[1].score));
  CHECK(a.selected.dle_increment == a.grid[a.selected_index].prior.dle_increment);

  const PriorCalibrationResult b = calibrate_safety_prior(grid, base, 5150, 1);
  CHECK(b.selected_index == a.selected_index);
  for (std::size_t i = 0; i < a.grid.size(); ++i) {
    CHECK(b.grid[i].selection_rate[0] == a.grid[i].selection_rate[0]);
  }

  PriorGridMono bad = grid;
  bad.intercept_var.clear();
  CHECK_THROWS_AS(calibrate_safety_prior(bad, base, 5150, 1), std::invalid_argument);
}
