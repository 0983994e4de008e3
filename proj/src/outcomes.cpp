#include "dosefind/outcomes.hpp"

#include <cmath>
#include <stdexcept>

#include "dosefind/math.hpp"

namespace dosefind {

std::pair<double, bool> weibull_improvement_time(double rate, double shape, double hazard_ratio,
                                                 double u, double followup_days) {
  if (!(rate > 0.0 && shape > 0.0 && hazard_ratio > 0.0))
    throw std::invalid_argument("weibull_improvement_time: parameters must be positive");
  if (!(u > 0.0 && u < 1.0))
    throw std::invalid_argument("weibull_improvement_time: u outside (0,1)");
  // S(t) = exp(-hr * rate * t^shape); low u maps to early improvement.
  const double t = std::pow(-std::log1p(-u) / (hazard_ratio * rate), 1.0 / shape);
  const double day = std::ceil(t);
  if (day > followup_days) return {followup_days, false};
  return {day, true};
}

PatientOutcome correlated_outcome(double p_tox, double hazard_ratio, const Scenario& scenario,
                                  double followup_days, Rng& rng) {
  if (!(p_tox >= 0.0 && p_tox <= 1.0))
    throw std::invalid_argument("correlated_outcome: p_tox outside [0,1]");
  const double rho = scenario.correlation;
  if (!(rho > -1.0 && rho < 1.0))
    throw std::invalid_argument("correlated_outcome: correlation outside (-1,1)");
  const double z1 = rng.normal();
  double z2 = rho * z1 + std::sqrt(1.0 - rho * rho) * rng.normal();
  if (scenario.tox_improve_link < 0) z2 = -z2;
  PatientOutcome out;
  out.dle = num::normal_cdf(z1) < p_tox;
  const auto [day, event] = weibull_improvement_time(scenario.weibull_rate, scenario.weibull_shape,
                                                     hazard_ratio, num::normal_cdf(z2),
                                                     followup_days);
  out.improve_day = day;
  out.improve_event = event;
  return out;
}

namespace {

constexpr double kSingleSafety[5][4] = {
    {0.10, 0.12, 0.13, 0.15},
    {0.10, 0.12, 0.15, 0.30},
    {0.10, 0.15, 0.30, 0.45},
    {0.10, 0.30, 0.45, 0.60},
    {0.10, 0.45, 0.60, 0.60},
};

constexpr double kSingleEfficacy[5][4] = {
    {1.00, 1.00, 1.00, 1.00},
    {1.00, 1.00, 1.75, 1.75},
    {1.00, 1.50, 1.75, 1.75},
    {1.00, 1.50, 1.75, 2.00},
    {1.00, 1.75, 2.00, 2.00},
};

// Rows are agent-B levels s1..s3, columns agent-A levels d1..d2.
constexpr double kComboSafety[4][3][2] = {
    {{0.10, 0.12}, {0.13, 0.15}, {0.15, 0.18}},
    {{0.10, 0.12}, {0.25, 0.30}, {0.50, 0.55}},
    {{0.15, 0.30}, {0.25, 0.35}, {0.30, 0.45}},
    {{0.40, 0.45}, {0.45, 0.50}, {0.50, 0.55}},
};

constexpr double kComboEfficacy[4][3][2] = {
    {{1.00, 1.00}, {1.00, 1.00}, {1.00, 1.00}},
    {{1.00, 1.25}, {1.25, 1.50}, {1.50, 1.75}},
    {{1.00, 1.50}, {1.25, 1.75}, {1.50, 2.00}},
    {{1.00, 1.50}, {1.50, 1.75}, {1.75, 1.75}},
};

constexpr double kComboControlDle = 0.10;

}  // namespace

int builtin_single_count() { return 5; }

Scenario make_single_scenario(int safety_id, int efficacy_id) {
  if (safety_id < 0 || safety_id >= 5 || efficacy_id < 0 || efficacy_id >= 5)
    throw std::out_of_range("make_single_scenario: scenario id outside 0..4");
  Scenario s;
  s.name = "s" + std::to_string(safety_id) + "-e" + std::to_string(efficacy_id);
  s.arms.resize(4);
  for (int a = 0; a < 4; ++a) {
    s.arms[a].dle_probability = kSingleSafety[safety_id][a];
    s.arms[a].hazard_ratio = kSingleEfficacy[efficacy_id][a];
  }
  return s;
}

int builtin_combo_count() { return 4; }

Scenario make_combo_scenario(int safety_id, int efficacy_id) {
  if (safety_id < 0 || safety_id >= 4 || efficacy_id < 0 || efficacy_id >= 4)
    throw std::out_of_range("make_combo_scenario: scenario id outside 0..3");
  Scenario s;
  s.name = "c" + std::to_string(safety_id) + "-e" + std::to_string(efficacy_id);
  s.arms.resize(7);
  s.arms[0] = {kComboControlDle, 1.0};
  // Active arm order matches ComboGrid::arm_index for a 2 x 3 grid.
  for (int j = 1; j <= 2; ++j) {
    for (int l = 1; l <= 3; ++l) {
      const int arm = (j - 1) * 3 + l;
      s.arms[arm].dle_probability = kComboSafety[safety_id][l - 1][j - 1];
      s.arms[arm].hazard_ratio = kComboEfficacy[efficacy_id][l - 1][j - 1];
    }
  }
  return s;
}

}  // namespace dosefind
