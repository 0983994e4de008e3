#include "dosefind/safety_combo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dosefind/math.hpp"
#include "dosefind/qmc.hpp"

namespace dosefind {

SafetyPriorCombo make_combo_prior(double control_dle, double increment_a, double increment_b,
                                  double log_slope_a_mean, double log_slope_b_mean,
                                  double intercept_var, double log_slope_a_var,
                                  double log_slope_b_var, double interaction_var,
                                  double interaction_mean, double cov_intercept_slope_a,
                                  double cov_intercept_slope_b) {
  SafetyPriorCombo prior;
  prior.control_dle = control_dle;
  prior.increment_a = increment_a;
  prior.increment_b = increment_b;
  prior.intercept_mean = num::logit(control_dle / 2.0);
  prior.log_slope_a_mean = log_slope_a_mean;
  prior.log_slope_b_mean = log_slope_b_mean;
  prior.interaction_mean = interaction_mean;
  prior.intercept_var = intercept_var;
  prior.log_slope_a_var = log_slope_a_var;
  prior.log_slope_b_var = log_slope_b_var;
  prior.interaction_var = interaction_var;
  prior.cov_intercept_slope_a = cov_intercept_slope_a;
  prior.cov_intercept_slope_b = cov_intercept_slope_b;
  validate_combo_prior(prior);
  return prior;
}

void validate_combo_prior(const SafetyPriorCombo& prior) {
  if (!(prior.control_dle > 0.0 && prior.control_dle < 1.0))
    throw std::invalid_argument("combo prior: control_dle outside (0,1)");
  if (!(prior.increment_a > 0.0 && prior.increment_b > 0.0))
    throw std::invalid_argument("combo prior: increments must be positive");
  if (!(prior.intercept_var > 0.0 && prior.log_slope_a_var > 0.0 &&
        prior.log_slope_b_var > 0.0 && prior.interaction_var > 0.0))
    throw std::invalid_argument("combo prior: variances must be positive");
  if (std::fabs(prior.intercept_mean - num::logit(prior.control_dle / 2.0)) > 1e-9)
    throw std::invalid_argument("combo prior: intercept_mean must equal logit(control_dle/2)");
}

double combo_dle_probability(double intercept, double slope_a, double slope_b, double eta,
                             double level_a, double level_b) {
  if (!(slope_a > 0.0 && slope_b > 0.0))
    throw std::invalid_argument("combo_dle_probability: slopes must be positive");
  const double sa = intercept + slope_a * level_a;
  const double sb = intercept + slope_b * level_b;
  // log(1 - p_indep) = log(1 - p_a) + log(1 - p_b)
  const double log_surv = num::log1m_invlogit(sa) + num::log1m_invlogit(sb);
  const double p_indep = -std::expm1(log_surv);
  const double log_odds = std::log(p_indep) - log_surv + eta * level_a * level_b;
  return num::invlogit(log_odds);
}

std::pair<StandardizedDoses, StandardizedDoses> build_combo_skeletons(const SafetyPriorCombo& prior,
                                                                      const ComboGrid& grid) {
  if (grid.doses_a < 1 || grid.doses_b < 1)
    throw std::invalid_argument("build_combo_skeletons: grid must have at least one level per agent");
  // With the other agent absent and the interaction term vanishing at level 0,
  // the single-agent risk is 1 - (1 - p_agent)(1 - q) with q the control
  // half-risk, so each rung solves in closed form.
  const double q = num::invlogit(prior.intercept_mean);
  auto solve = [&](double increment, double slope_mean, int count) {
    StandardizedDoses out;
    out.levels.resize(count + 1);
    out.levels[0] = 0.0;
    const double slope = std::exp(slope_mean);
    for (int j = 1; j <= count; ++j) {
      const double anticipated = prior.control_dle + increment * j;
      if (!(anticipated < 1.0))
        throw std::invalid_argument("build_combo_skeletons: anticipated DLE risk reaches 1");
      const double marginal = (anticipated - q) / (1.0 - q);
      if (!(marginal > 0.0))
        throw std::invalid_argument("build_combo_skeletons: anticipated risk below control half-risk");
      out.levels[j] = (num::logit(marginal) - prior.intercept_mean) / slope;
    }
    return out;
  };
  return {solve(prior.increment_a, prior.log_slope_a_mean, grid.doses_a),
          solve(prior.increment_b, prior.log_slope_b_mean, grid.doses_b)};
}

ComboPosterior::ComboPosterior(const SafetyPriorCombo& prior, const ComboGrid& grid,
                               const QmcSettings& qmc)
    : grid_(grid) {
  validate_combo_prior(prior);
  if (qmc.draws < 16) throw std::invalid_argument("ComboPosterior: too few draws");
  auto skeletons = build_combo_skeletons(prior, grid);
  levels_a_ = std::move(skeletons.first);
  levels_b_ = std::move(skeletons.second);
  arms_ = grid.active_arms() + 1;
  draw_count_ = qmc.draws;

  // Prior covariance over (intercept, log slope A, log slope B, interaction).
  const std::vector<double> cov = {
      prior.intercept_var, prior.cov_intercept_slope_a, prior.cov_intercept_slope_b, 0.0,
      prior.cov_intercept_slope_a, prior.log_slope_a_var, 0.0, 0.0,
      prior.cov_intercept_slope_b, 0.0, prior.log_slope_b_var, 0.0,
      0.0, 0.0, 0.0, prior.interaction_var};
  const std::vector<double> l = num::cholesky(cov, 4);
  const double mean[4] = {prior.intercept_mean, prior.log_slope_a_mean, prior.log_slope_b_mean,
                          prior.interaction_mean};

  const num::SobolSequence sobol(4, qmc.scramble_seed);
  const std::vector<double> u = sobol.generate(draw_count_);

  prob_.resize(static_cast<std::size_t>(draw_count_) * arms_);
  logp_.resize(prob_.size());
  log1mp_.resize(prob_.size());
  excess_.resize(static_cast<std::size_t>(draw_count_) * (arms_ - 1));
  for (int i = 0; i < draw_count_; ++i) {
    double z[4];
    for (int d = 0; d < 4; ++d) z[d] = num::normal_quantile(u[static_cast<std::size_t>(i) * 4 + d]);
    double theta[4];
    for (int r = 0; r < 4; ++r) {
      double s = mean[r];
      for (int c = 0; c <= r; ++c) s += l[r * 4 + c] * z[c];
      theta[r] = s;
    }
    const double slope_a = std::exp(theta[1]);
    const double slope_b = std::exp(theta[2]);
    for (int arm = 0; arm < arms_; ++arm) {
      double la = 0.0, lb = 0.0;
      if (arm > 0) {
        const auto [j, lev] = grid.arm_levels(arm);
        la = levels_a_.levels[j];
        lb = levels_b_.levels[lev];
      }
      const double sa = theta[0] + slope_a * la;
      const double sb = theta[0] + slope_b * lb;
      const double log_surv = num::log1m_invlogit(sa) + num::log1m_invlogit(sb);
      const double p_indep = -std::expm1(log_surv);
      const double s = std::log(p_indep) - log_surv + theta[3] * la * lb;
      const std::size_t at = static_cast<std::size_t>(i) * arms_ + arm;
      prob_[at] = num::invlogit(s);
      logp_[at] = num::log_invlogit(s);
      log1mp_[at] = num::log1m_invlogit(s);
    }
    for (int j = 1; j < arms_; ++j) {
      excess_[static_cast<std::size_t>(i) * (arms_ - 1) + (j - 1)] =
          prob_[static_cast<std::size_t>(i) * arms_ + j] - prob_[static_cast<std::size_t>(i) * arms_];
    }
  }
}

void ComboPosterior::weights(const SafetyDataMono& data, std::vector<double>& w) const {
  if (data.arms() != arms_) throw std::invalid_argument("ComboPosterior: data arm count mismatch");
  const std::vector<int>& n = data.n();
  const std::vector<int>& ev = data.events();
  w.resize(draw_count_);
  double max_ll = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < draw_count_; ++i) {
    double ll = 0.0;
    const double* lp = &logp_[static_cast<std::size_t>(i) * arms_];
    const double* lq = &log1mp_[static_cast<std::size_t>(i) * arms_];
    for (int arm = 0; arm < arms_; ++arm) {
      if (n[arm] == 0) continue;
      ll += ev[arm] * lp[arm] + (n[arm] - ev[arm]) * lq[arm];
    }
    w[i] = ll;
    if (ll > max_ll) max_ll = ll;
  }
  double total = 0.0;
  for (int i = 0; i < draw_count_; ++i) {
    w[i] = std::exp(w[i] - max_ll);
    total += w[i];
  }
  if (!(total > 0.0) || !std::isfinite(total))
    throw std::runtime_error("ComboPosterior: posterior mass vanished or is not finite");
  const double inv = 1.0 / total;
  for (double& x : w) x *= inv;
}

std::vector<double> ComboPosterior::expectations(const SafetyDataMono& data,
                                                 std::span<const ProbQuery> queries) const {
  std::vector<double> w;
  weights(data, w);
  std::vector<double> out(queries.size(), 0.0);
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const ProbQuery& query = queries[q];
    if (query.arm < 0 || query.arm >= arms_)
      throw std::out_of_range("posterior query: bad arm index");
    if (query.kind == QueryKind::ExcessOverControl && query.arm == 0) {
      out[q] = (query.lo <= 0.0 && 0.0 <= query.hi) ? 1.0 : 0.0;
      continue;
    }
    double acc = 0.0;
    if (query.kind == QueryKind::Level) {
      for (int i = 0; i < draw_count_; ++i) {
        const double p = prob_[static_cast<std::size_t>(i) * arms_ + query.arm];
        if (p >= query.lo && p <= query.hi) acc += w[i];
      }
    } else {
      for (int i = 0; i < draw_count_; ++i) {
        const double e = excess_[static_cast<std::size_t>(i) * (arms_ - 1) + (query.arm - 1)];
        if (e >= query.lo && e <= query.hi) acc += w[i];
      }
    }
    out[q] = acc;
  }
  return out;
}

SafetySummary ComboPosterior::assess(const SafetyDataMono& data,
                                     const EscalationPolicy& policy) const {
  std::vector<double> w;
  weights(data, w);
  const int m = arms_ - 1;
  SafetySummary out;
  out.overdose.assign(m, 0.0);
  out.target.assign(m, 0.0);
  const double over = policy.overdose_excess();
  const double lo = policy.target_lo();
  const double hi = policy.target_hi();
  for (int i = 0; i < draw_count_; ++i) {
    const double wi = w[i];
    const double* e = &excess_[static_cast<std::size_t>(i) * m];
    for (int j = 0; j < m; ++j) {
      if (e[j] >= over) out.overdose[j] += wi;
      if (e[j] >= lo && e[j] <= hi) out.target[j] += wi;
    }
  }
  return out;
}

NextDose select_next_combo(int current_arm, const std::vector<int>& safe,
                           std::span<const double> target_probs, const ComboGrid& grid) {
  if (safe.empty()) return {NextDoseKind::StopSafety, 0};
  if (safe.size() == 1 && safe[0] == current_arm) return {NextDoseKind::Stay, current_arm};

  const auto [cj, cl] = grid.arm_levels(current_arm);
  auto manhattan = [&](int arm) {
    const auto [j, l] = grid.arm_levels(arm);
    return std::abs(j - cj) + std::abs(l - cl);
  };
  // One agent moves by at most one level per step.
  auto reachable = [&](int arm) {
    const auto [j, l] = grid.arm_levels(arm);
    return (j == cj && std::abs(l - cl) <= 1) || (l == cl && std::abs(j - cj) <= 1);
  };

  std::vector<int> candidates;
  for (int arm : safe) {
    if (reachable(arm)) candidates.push_back(arm);
  }
  if (candidates.empty()) {
    int best = std::numeric_limits<int>::max();
    for (int arm : safe) best = std::min(best, manhattan(arm));
    for (int arm : safe) {
      if (manhattan(arm) == best) candidates.push_back(arm);
    }
  }
  int chosen = -1;
  double best_prob = -1.0;
  long best_rank = std::numeric_limits<long>::max();
  for (int arm : candidates) {
    const auto [j, l] = grid.arm_levels(arm);
    const long rank = static_cast<long>(j + l) * 1024 + j;
    const double p = target_probs[arm - 1];
    if (p > best_prob || (p == best_prob && rank < best_rank)) {
      best_prob = p;
      best_rank = rank;
      chosen = arm;
    }
  }
  return {chosen == current_arm ? NextDoseKind::Stay : NextDoseKind::Move, chosen};
}

}  // namespace dosefind
