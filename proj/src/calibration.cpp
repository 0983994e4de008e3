#include "dosefind/calibration.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "dosefind/outcomes.hpp"
#include "dosefind/rng.hpp"
#include "dosefind/trial_engine.hpp"

namespace dosefind {

void validate_boundary_search_config(const BoundarySearchConfig& cfg) {
  const StageStructure& s = cfg.structure;
  if (s.cohort_active < 1 || s.cohort_control < 0 || s.shared_controls < 0 || s.max_stages < 1)
    throw std::invalid_argument("boundary search: bad stage structure");
  if (!(cfg.target_hazard_ratio > 1.0))
    throw std::invalid_argument("boundary search: target hazard ratio must exceed 1");
  if (!(cfg.null_recovery > 0.0 && cfg.null_recovery < 1.0))
    throw std::invalid_argument("boundary search: null recovery must be in (0,1)");
  if (!(cfg.followup_days > 0.0))
    throw std::invalid_argument("boundary search: follow-up must be positive");
  if (!(cfg.type1_cap > 0.0 && cfg.type1_cap < 1.0))
    throw std::invalid_argument("boundary search: type-I cap must be in (0,1)");
  if (cfg.trajectories < 2) throw std::invalid_argument("boundary search: too few trajectories");
  if (!(cfg.step > 0.0) || !(cfg.l_min > 0.0) || !(cfg.l_min <= cfg.l_max) ||
      !(cfg.u_min <= cfg.u_max) || !(cfg.l_max <= cfg.u_min) || !(cfg.u_max < 1.0))
    throw std::invalid_argument("boundary search: bad boundary grid");
}

namespace {

// Outcome of one posterior path under boundaries (l, u): whether efficacy was
// declared and the stage the dose stopped at (final stage when no crossing).
struct PathOutcome {
  bool success;
  int stage;
};

PathOutcome walk_path(const double* p, int stages, double lower, double upper) {
  for (int k = 0; k < stages; ++k) {
    if (p[k] > upper) return {true, k + 1};
    if (p[k] < lower) return {false, k + 1};
  }
  return {false, stages};
}

// Success rate and mean stopping stage over a trajectory set.
std::pair<double, double> crossing_stats(const TrajectorySet& paths, double lower, double upper) {
  long successes = 0;
  long long stage_sum = 0;
  for (int r = 0; r < paths.count; ++r) {
    const PathOutcome o = walk_path(&paths.posterior[static_cast<std::size_t>(r) * paths.stages],
                                    paths.stages, lower, upper);
    if (o.success) ++successes;
    stage_sum += o.stage;
  }
  const double n = static_cast<double>(paths.count);
  return {successes / n, stage_sum / n};
}

TrajectorySet subset(const TrajectorySet& paths, int begin, int end) {
  TrajectorySet out;
  out.stages = paths.stages;
  out.count = end - begin;
  out.posterior.assign(
      paths.posterior.begin() + static_cast<std::ptrdiff_t>(begin) * paths.stages,
      paths.posterior.begin() + static_cast<std::ptrdiff_t>(end) * paths.stages);
  return out;
}

struct SearchOutcome {
  bool feasible = false;
  BoundaryOperatingCharacteristics best;
  std::vector<BoundaryOperatingCharacteristics> frontier;
};

SearchOutcome search_grid(const TrajectorySet& null_paths, const TrajectorySet& alt_paths,
                          const BoundarySearchConfig& cfg) {
  SearchOutcome out;
  const int n_l = static_cast<int>(std::floor((cfg.l_max - cfg.l_min) / cfg.step + 1e-9)) + 1;
  const int n_u = static_cast<int>(std::floor((cfg.u_max - cfg.u_min) / cfg.step + 1e-9)) + 1;
  for (int i = 0; i < n_l; ++i) {
    const double l = cfg.l_min + i * cfg.step;
    // The type-I rate is non-increasing in u for fixed l (raising u can only
    // turn efficacy declarations into futility stops), so the smallest
    // admissible u is found by bisection; larger u only lose power and add
    // patients, so it is also the best u for this l.
    int lo = 0, hi = n_u - 1;
    const double type1_at_max = crossing_stats(null_paths, l, cfg.u_min + hi * cfg.step).first;
    if (type1_at_max > cfg.type1_cap) continue;
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      const double t1 = crossing_stats(null_paths, l, cfg.u_min + mid * cfg.step).first;
      if (t1 <= cfg.type1_cap) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    const double u = cfg.u_min + lo * cfg.step;
    const BoundaryOperatingCharacteristics oc =
        evaluate_boundaries(null_paths, alt_paths, l, u, cfg);
    out.frontier.push_back(oc);
    if (!out.feasible || oc.criterion > out.best.criterion) {
      out.feasible = true;
      out.best = oc;
    }
  }
  return out;
}

}  // namespace

TrajectorySet simulate_likelihood_trajectories(const BoundarySearchConfig& cfg, bool alternative,
                                               std::uint64_t seed) {
  validate_boundary_search_config(cfg);
  const StageStructure& s = cfg.structure;
  const int stages = s.max_stages;
  const int cohort = s.cohort_active + s.cohort_control;
  // Event times are exponential with the control rate matched to the null
  // recovery proportion at follow-up; proportional hazards scales the rate on
  // the active arm. Only the ranks enter the partial likelihood.
  const double control_rate = -std::log1p(-cfg.null_recovery) / cfg.followup_days;
  const double active_rate =
      (alternative ? cfg.target_hazard_ratio : 1.0) * control_rate;

  EfficacyConfig ecfg;
  ecfg.target_hazard_ratio = cfg.target_hazard_ratio;
  ecfg.followup_days = cfg.followup_days;

  TrajectorySet out;
  out.stages = stages;
  out.count = cfg.trajectories;
  out.posterior.assign(static_cast<std::size_t>(cfg.trajectories) * stages, 0.0);

  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    std::vector<Subject> subjects;
    SurvivalDataset stage_data;
    for (;;) {
      const int r = next.fetch_add(1);
      if (r >= cfg.trajectories) return;
      try {
        // Stream layout: externals first, then cohort by cohort (actives
        // before controls), so the stage-k analysis set is a prefix.
        Rng rng(seed, 2 * static_cast<std::uint64_t>(r) + (alternative ? 1 : 0));
        subjects.clear();
        auto draw = [&](int z, double rate) {
          const double t = -std::log1p(-rng.uniform01()) / rate;
          const bool event = t <= cfg.followup_days;
          subjects.push_back({z, event ? t : cfg.followup_days, event});
        };
        for (int i = 0; i < s.shared_controls; ++i) draw(0, control_rate);
        for (int k = 0; k < stages; ++k) {
          for (int i = 0; i < s.cohort_active; ++i) draw(1, active_rate);
          for (int i = 0; i < s.cohort_control; ++i) draw(0, control_rate);
        }
        for (int k = 1; k <= stages; ++k) {
          stage_data.assign(subjects.begin(), subjects.begin() + s.shared_controls + k * cohort);
          out.posterior[static_cast<std::size_t>(r) * stages + (k - 1)] =
              posterior_efficacy_probability(stage_data, ecfg);
        }
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  const unsigned hw = std::thread::hardware_concurrency();
  const int threads = std::max(1, std::min<int>(static_cast<int>(hw), cfg.trajectories));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

BoundaryOperatingCharacteristics evaluate_boundaries(const TrajectorySet& null_paths,
                                                     const TrajectorySet& alt_paths, double lower,
                                                     double upper,
                                                     const BoundarySearchConfig& cfg) {
  if (null_paths.stages != alt_paths.stages)
    throw std::invalid_argument("evaluate_boundaries: stage mismatch");
  const int cohort = cfg.structure.cohort_active + cfg.structure.cohort_control;
  const auto [type1, mean_stage_null] = crossing_stats(null_paths, lower, upper);
  const auto [power, mean_stage_alt] = crossing_stats(alt_paths, lower, upper);
  BoundaryOperatingCharacteristics oc;
  oc.lower = lower;
  oc.upper = upper;
  oc.type1 = type1;
  oc.power = power;
  // Expected commitment counts the dose's own intake, not the shared
  // externals.
  oc.expected_n_null = mean_stage_null * cohort;
  oc.expected_n_alt = mean_stage_alt * cohort;
  oc.criterion = power - cfg.trade_off * (oc.expected_n_null + oc.expected_n_alt);
  return oc;
}

BoundarySearchResult optimize_boundaries(const BoundarySearchConfig& cfg, std::uint64_t seed) {
  validate_boundary_search_config(cfg);
  const TrajectorySet null_paths = simulate_likelihood_trajectories(cfg, false, seed);
  const TrajectorySet alt_paths = simulate_likelihood_trajectories(cfg, true, seed);

  const SearchOutcome full = search_grid(null_paths, alt_paths, cfg);
  BoundarySearchResult result;
  result.feasible = full.feasible;
  result.best = full.best;
  result.frontier = full.frontier;
  result.half_lower_delta = std::numeric_limits<double>::quiet_NaN();
  result.half_upper_delta = std::numeric_limits<double>::quiet_NaN();

  const int half = cfg.trajectories / 2;
  if (half >= 1) {
    const SearchOutcome a = search_grid(subset(null_paths, 0, half), subset(alt_paths, 0, half), cfg);
    const SearchOutcome b = search_grid(subset(null_paths, half, cfg.trajectories),
                                        subset(alt_paths, half, cfg.trajectories), cfg);
    if (a.feasible && b.feasible) {
      result.half_lower_delta = std::abs(a.best.lower - b.best.lower);
      result.half_upper_delta = std::abs(a.best.upper - b.best.upper);
    }
  }
  return result;
}

PriorCalibrationResult calibrate_safety_prior(const PriorGridMono& grid, const TrialConfig& base,
                                              std::uint64_t seed, int threads) {
  if (grid.dle_increment.empty() || grid.log_slope_mean.empty() || grid.intercept_var.empty() ||
      grid.log_slope_var.empty())
    throw std::invalid_argument("prior calibration: empty grid axis");
  if (grid.sims_per_scenario < 1)
    throw std::invalid_argument("prior calibration: sims_per_scenario must be positive");
  if (grid.cohorts < 1) throw std::invalid_argument("prior calibration: cohorts must be positive");
  if (grid.scenario_ids.empty())
    throw std::invalid_argument("prior calibration: no scenarios to score");

  TrialConfig cfg = base;
  cfg.safety_only = true;
  cfg.safety_only_cohorts = grid.cohorts;
  validate_trial_config(cfg);

  const double anticipated_control = SafetyPriorMono{}.control_dle;

  // Correct dose per scenario: the one whose true excess risk is closest to
  // the aimed-for excess (ties to the lower dose).
  std::vector<Scenario> scenarios;
  std::vector<int> correct;
  for (int sid : grid.scenario_ids) {
    Scenario sc = make_single_scenario(sid, 0);
    const double control = sc.arms[0].dle_probability;
    int best = 1;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t a = 1; a < sc.arms.size(); ++a) {
      const double gap =
          std::abs(sc.arms[a].dle_probability - control - cfg.policy.target_excess);
      if (gap < best_gap - 1e-12) {
        best_gap = gap;
        best = static_cast<int>(a);
      }
    }
    scenarios.push_back(std::move(sc));
    correct.push_back(best);
  }
  const int doses = static_cast<int>(scenarios.front().arms.size()) - 1;

  PriorCalibrationResult result;
  for (double inc : grid.dle_increment) {
    for (double lsm : grid.log_slope_mean) {
      for (double iv : grid.intercept_var) {
        for (double lsv : grid.log_slope_var) {
          PriorGridPoint point;
          point.prior = make_mono_prior(anticipated_control, inc, lsm, iv, lsv);
          const auto model =
              make_mono_safety_model(point.prior, doses, cfg.policy, cfg.quadrature);
          double log_sum = 0.0;
          bool zero = false;
          for (std::size_t s = 0; s < scenarios.size(); ++s) {
            // Common random numbers across grid points: the stream depends
            // only on the scenario, so points differ by prior alone.
            const BatchResult batch =
                run_batch(scenarios[s], cfg, *model, grid.sims_per_scenario,
                          mix_seed(seed, static_cast<std::uint64_t>(grid.scenario_ids[s])),
                          threads);
            int hits = 0;
            for (const RepRecord& r : batch.reps) {
              if (r.final_target == correct[s]) ++hits;
            }
            const double rate = static_cast<double>(hits) / grid.sims_per_scenario;
            point.selection_rate.push_back(rate);
            if (rate <= 0.0) {
              zero = true;
            } else {
              log_sum += std::log(rate);
            }
          }
          point.score = zero ? 0.0 : std::exp(log_sum / static_cast<double>(scenarios.size()));
          result.grid.push_back(std::move(point));
        }
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < result.grid.size(); ++i) {
    if (result.grid[i].score > result.grid[best].score) best = i;
  }
  result.selected = result.grid[best].prior;
  result.selected_index = best;
  return result;
}

}  // namespace dosefind
