#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dosefind/rng.hpp"

namespace dosefind {

// True state of one arm: DLE risk and improvement hazard ratio vs control.
struct ArmTruth {
  double dle_probability = 0.10;
  double hazard_ratio = 1.0;
};

// A simulation scenario. arms[0] is control; for combination designs the
// active arms follow ComboGrid::arm_index order.
struct Scenario {
  std::string name;
  std::vector<ArmTruth> arms;
  double weibull_rate = 0.085;   // control improvement-time scale
  double weibull_shape = 0.797;  // control improvement-time shape
  double correlation = 0.8;      // latent toxicity/improvement correlation
  // +1: toxicity-prone patients improve earlier under positive correlation;
  // -1 flips the improvement latent.
  int tox_improve_link = 1;
};

struct PatientOutcome {
  bool dle = false;
  double improve_day = 0.0;
  bool improve_event = false;
};

// Invert a uniform draw through the improvement-time distribution with
// survival exp(-hr * rate * t^shape), round up to whole days, and censor at
// followup_days.
std::pair<double, bool> weibull_improvement_time(double rate, double shape, double hazard_ratio,
                                                 double u, double followup_days);

// Joint toxicity/improvement outcome through a Gaussian copula.
PatientOutcome correlated_outcome(double p_tox, double hazard_ratio, const Scenario& scenario,
                                  double followup_days, Rng& rng);

// Built-in single-agent scenario matrix (three active doses).
int builtin_single_count();
Scenario make_single_scenario(int safety_id, int efficacy_id);

// Built-in combination scenario matrix (2 x 3 active combinations).
int builtin_combo_count();
Scenario make_combo_scenario(int safety_id, int efficacy_id);

}  // namespace dosefind
