#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dosefind/safety_mono.hpp"

namespace dosefind {

// Dual-agent dose grid: doses_a levels of agent A crossed with doses_b
// levels of agent B. Active arms are numbered 1..doses_a*doses_b; arm 0 is
// control (neither agent).
struct ComboGrid {
  int doses_a = 2;
  int doses_b = 3;

  int active_arms() const { return doses_a * doses_b; }
  int arm_index(int j, int l) const { return (j - 1) * doses_b + l; }
  std::pair<int, int> arm_levels(int arm) const {
    return {(arm - 1) / doses_b + 1, (arm - 1) % doses_b + 1};
  }
};

// Four-parameter combination dose-toxicity model: a shared intercept, one
// log slope per agent, and an odds-multiplicative interaction. The shared
// intercept mean is logit(control_dle / 2) so that under independence the
// prior-mean control risk is close to control_dle.
struct SafetyPriorCombo {
  double control_dle = 0.10;
  double increment_a = 0.075;
  double increment_b = 0.075;
  double intercept_mean = 0.0;  // logit(control_dle / 2), set by make_combo_prior
  double log_slope_a_mean = 0.0;
  double log_slope_b_mean = 0.0;
  double interaction_mean = 0.0;
  double intercept_var = 0.6;
  double log_slope_a_var = 0.25;
  double log_slope_b_var = 0.25;
  double interaction_var = 0.10;
  double cov_intercept_slope_a = 0.0;
  double cov_intercept_slope_b = 0.0;
};

SafetyPriorCombo make_combo_prior(double control_dle, double increment_a, double increment_b,
                                  double log_slope_a_mean, double log_slope_b_mean,
                                  double intercept_var, double log_slope_a_var,
                                  double log_slope_b_var, double interaction_var,
                                  double interaction_mean = 0.0, double cov_intercept_slope_a = 0.0,
                                  double cov_intercept_slope_b = 0.0);
void validate_combo_prior(const SafetyPriorCombo& prior);

// DLE risk at standardized levels (level_a, level_b): agent marginals are
// combined under independence and the odds of the combination are then
// multiplied by exp(eta * level_a * level_b).
double combo_dle_probability(double intercept, double slope_a, double slope_b, double eta,
                             double level_a, double level_b);

// Per-agent standardized levels solved so that, at the prior parameter
// means, the model risk of dose j of one agent alone (other agent absent)
// equals control_dle + increment * j.
std::pair<StandardizedDoses, StandardizedDoses> build_combo_skeletons(const SafetyPriorCombo& prior,
                                                                      const ComboGrid& grid);

struct QmcSettings {
  int draws = 1 << 14;
  std::uint64_t scramble_seed = 77724869;
};

// Posterior over (intercept, log slope A, log slope B, interaction) by
// self-normalized importance sampling on a fixed scrambled low-discrepancy
// prior sample.
class ComboPosterior {
 public:
  ComboPosterior(const SafetyPriorCombo& prior, const ComboGrid& grid,
                 const QmcSettings& qmc = {});

  std::vector<double> expectations(const SafetyDataMono& data,
                                   std::span<const ProbQuery> queries) const;
  SafetySummary assess(const SafetyDataMono& data, const EscalationPolicy& policy) const;

  const ComboGrid& grid() const { return grid_; }
  const StandardizedDoses& levels_a() const { return levels_a_; }
  const StandardizedDoses& levels_b() const { return levels_b_; }

 private:
  void weights(const SafetyDataMono& data, std::vector<double>& w) const;

  ComboGrid grid_;
  StandardizedDoses levels_a_;
  StandardizedDoses levels_b_;
  int arms_;
  int draw_count_;
  std::vector<double> prob_;
  std::vector<double> logp_;
  std::vector<double> log1mp_;
  std::vector<double> excess_;
};

// Combinations reachable from the current one: stay, or move one level of
// exactly one agent. Ties prefer the lower total level j + l, then lower j.
NextDose select_next_combo(int current_arm, const std::vector<int>& safe,
                           std::span<const double> target_probs, const ComboGrid& grid);

}  // namespace dosefind
