#include "dosefind/safety_mono.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>

#include "dosefind/math.hpp"

namespace dosefind {

void validate_policy(const EscalationPolicy& policy) {
  if (!(policy.target_excess > 0.0 && policy.target_excess < 1.0))
    throw std::invalid_argument("policy: target_excess outside (0,1)");
  if (!(policy.interval_halfwidth > 0.0 && policy.interval_halfwidth < policy.target_excess))
    throw std::invalid_argument("policy: interval_halfwidth outside (0, target_excess)");
  if (!(policy.overdose_threshold > 0.0 && policy.overdose_threshold < 1.0))
    throw std::invalid_argument("policy: overdose_threshold outside (0,1)");
}

SafetyPriorMono make_mono_prior(double control_dle, double dle_increment, double log_slope_mean,
                                double intercept_var, double log_slope_var, double cross_cov) {
  SafetyPriorMono prior;
  prior.control_dle = control_dle;
  prior.dle_increment = dle_increment;
  prior.intercept_mean = num::logit(control_dle);
  prior.log_slope_mean = log_slope_mean;
  prior.intercept_var = intercept_var;
  prior.log_slope_var = log_slope_var;
  prior.cross_cov = cross_cov;
  validate_mono_prior(prior);
  return prior;
}

void validate_mono_prior(const SafetyPriorMono& prior) {
  if (!(prior.control_dle > 0.0 && prior.control_dle < 1.0))
    throw std::invalid_argument("prior: control_dle outside (0,1)");
  if (!(prior.dle_increment > 0.0))
    throw std::invalid_argument("prior: dle_increment must be positive");
  if (!(prior.intercept_var > 0.0 && prior.log_slope_var > 0.0))
    throw std::invalid_argument("prior: variances must be positive");
  const double det =
      prior.intercept_var * prior.log_slope_var - prior.cross_cov * prior.cross_cov;
  if (!(det > 0.0)) throw std::invalid_argument("prior: covariance matrix not positive definite");
  if (std::fabs(prior.intercept_mean - num::logit(prior.control_dle)) > 1e-9)
    throw std::invalid_argument("prior: intercept_mean must equal logit(control_dle)");
}

StandardizedDoses build_skeleton(const SafetyPriorMono& prior, int doses) {
  if (doses < 1) throw std::invalid_argument("build_skeleton: need at least one dose");
  StandardizedDoses out;
  out.levels.resize(doses + 1);
  out.levels[0] = 0.0;
  const double slope = std::exp(prior.log_slope_mean);
  for (int j = 1; j <= doses; ++j) {
    const double anticipated = prior.control_dle + prior.dle_increment * j;
    if (!(anticipated < 1.0))
      throw std::invalid_argument("build_skeleton: anticipated DLE risk reaches 1");
    out.levels[j] = (num::logit(anticipated) - prior.intercept_mean) / slope;
  }
  return out;
}

double dle_probability(double intercept, double slope, double level) {
  if (!(slope > 0.0)) throw std::invalid_argument("dle_probability: slope must be positive");
  return num::invlogit(intercept + slope * level);
}

void SafetyDataMono::add(int arm, bool dle) {
  if (arm < 0 || arm >= arms()) throw std::out_of_range("SafetyDataMono::add: bad arm");
  ++n_[arm];
  if (dle) ++events_[arm];
}

namespace {

// Clip for intercept intervals, in units of the conditional Gauss-Hermite
// variable u (intercept = mean + sqrt(2) * sd * u); beyond this the prior
// slice carries less than ~1e-17 of its mass.
constexpr double kStripUMax = 6.2;
constexpr double kStripPanelWidth = 0.6;

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr double kGL8Node[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                0.7966664774136267,  0.9602898564975363};
constexpr double kGL8Weight[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                  0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                  0.2223810344533745, 0.1012285362903763};

// Intercepts where invlogit(a + m) - invlogit(a) == c, for m > 0 and
// c in (0, max excess); the maximum excess over a is tanh(m/4). Substituting
// x = exp(a) gives the quadratic c*M*x^2 + (c*(M+1) - (M-1))*x + c = 0 with
// M = exp(m); the excess exceeds c exactly between the two positive roots.
bool excess_interval(double m, double c, double& a_lo, double& a_hi) {
  if (!(c > 0.0) || c >= 1.0) return false;
  if (m > 500.0) {
    // exp(m) overflows; the two curve ends decouple (corrections O(exp(-m/2))).
    a_lo = num::logit(c) - m;
    a_hi = num::logit(1.0 - c);
    return true;
  }
  const double max_excess = std::tanh(0.25 * m);
  if (c >= max_excess) return false;
  const double big_m = std::exp(m);
  const double quad_a = c * big_m;
  const double quad_b = c * (big_m + 1.0) - (big_m - 1.0);  // negative when c < max excess
  const double disc = quad_b * quad_b - 4.0 * quad_a * c;
  if (!(disc > 0.0)) return false;
  const double x_hi = (-quad_b + std::sqrt(disc)) / (2.0 * quad_a);
  const double x_lo = 1.0 / (big_m * x_hi);  // product of roots is 1/M
  a_lo = std::log(x_lo);
  a_hi = std::log(x_hi);
  return true;
}

}  // namespace

MonoPosterior::MonoPosterior(const SafetyPriorMono& prior, const StandardizedDoses& skeleton,
                             int nodes) {
  validate_mono_prior(prior);
  if (nodes < 2) throw std::invalid_argument("MonoPosterior: need at least 2 nodes per axis");
  if (skeleton.levels.size() < 2 || skeleton.levels[0] != 0.0)
    throw std::invalid_argument("MonoPosterior: skeleton must anchor control at level 0");
  arms_ = static_cast<int>(skeleton.levels.size());
  levels_ = skeleton.levels;

  mu_a_ = prior.intercept_mean;
  mu_b_ = prior.log_slope_mean;
  sd_b_ = std::sqrt(prior.log_slope_var);
  cond_coef_ = prior.cross_cov / prior.log_slope_var;
  cond_sd_ = std::sqrt(prior.intercept_var - prior.cross_cov * cond_coef_);

  const double s2 = std::sqrt(2.0);

  // Composite Gauss-Legendre over the standardized log-slope range. A fixed
  // prior-scaled Gauss-Hermite rule cannot resolve the marginal once the data
  // concentrate it well below the prior scale; panels this size keep the
  // error negligible down to features a quarter of a panel wide.
  const int panels = std::max(2, (nodes + 1) / 2);
  const double width = 2.0 * kStripUMax / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = -kStripUMax + (p + 0.5) * width;
    const double half = 0.5 * width;
    for (int g = 0; g < 8; ++g) {
      const double u = mid + half * kGL8Node[g];
      const double log_slope = mu_b_ + s2 * sd_b_ * u;
      outer_slope_.push_back(std::exp(log_slope));
      outer_mean_.push_back(mu_a_ + cond_coef_ * (log_slope - mu_b_));
      outer_weight_.push_back(half * kGL8Weight[g] * std::exp(-u * u));
    }
  }
  nodes_ = static_cast<int>(outer_slope_.size());
  full_ = build_strip(0, false, 0.0, 1.0);
}

void MonoPosterior::point_loglik(const SafetyDataMono& data, const std::vector<double>& logp,
                                 const std::vector<double>& log1mp, int points,
                                 std::vector<double>& ll) const {
  const std::vector<int>& n = data.n();
  const std::vector<int>& ev = data.events();
  ll.assign(points, 0.0);
  for (int idx = 0; idx < points; ++idx) {
    double acc = 0.0;
    const double* lp = &logp[static_cast<std::size_t>(idx) * arms_];
    const double* lq = &log1mp[static_cast<std::size_t>(idx) * arms_];
    for (int arm = 0; arm < arms_; ++arm) {
      if (n[arm] == 0) continue;
      acc += ev[arm] * lp[arm] + (n[arm] - ev[arm]) * lq[arm];
    }
    ll[idx] = acc;
  }
}

// Builds the quadrature point set for one query: per outer log-slope node,
// the intercept interval where the query holds, integrated by panels of
// Gauss-Legendre points against the conditional prior slice.
MonoPosterior::Strip MonoPosterior::build_strip(int arm, bool excess_kind, double lo,
                                                double hi) const {
  Strip strip;
  const double s2 = std::sqrt(2.0);
  for (int k = 0; k < nodes_; ++k) {
    double a_lo, a_hi;
    if (excess_kind) {
      // Region excess >= lo; hi is unused (tail strips subtract).
      const double m = outer_slope_[k] * levels_[arm];
      if (!excess_interval(m, lo, a_lo, a_hi)) continue;
    } else {
      const double m = outer_slope_[k] * levels_[arm];
      a_lo = lo <= 0.0 ? -std::numeric_limits<double>::infinity() : num::logit(lo) - m;
      a_hi = hi >= 1.0 ? std::numeric_limits<double>::infinity() : num::logit(hi) - m;
    }
    double u_lo = (a_lo - outer_mean_[k]) / (s2 * cond_sd_);
    double u_hi = (a_hi - outer_mean_[k]) / (s2 * cond_sd_);
    u_lo = std::max(u_lo, -kStripUMax);
    u_hi = std::min(u_hi, kStripUMax);
    if (!(u_lo < u_hi)) continue;
    const int panels = std::max(1, static_cast<int>(std::ceil((u_hi - u_lo) / kStripPanelWidth)));
    const double width = (u_hi - u_lo) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = u_lo + (p + 0.5) * width;
      const double half = 0.5 * width;
      for (int g = 0; g < 8; ++g) {
        const double u = mid + half * kGL8Node[g];
        const double intercept = outer_mean_[k] + s2 * cond_sd_ * u;
        strip.weight.push_back(outer_weight_[k] * half * kGL8Weight[g] * std::exp(-u * u));
        for (int a = 0; a < arms_; ++a) {
          const double s = intercept + outer_slope_[k] * levels_[a];
          strip.logp.push_back(num::log_invlogit(s));
          strip.log1mp.push_back(num::log1m_invlogit(s));
        }
      }
    }
  }
  strip.points = static_cast<int>(strip.weight.size());
  return strip;
}

const MonoPosterior::Strip& MonoPosterior::cached_strip(int arm, bool excess_kind, double lo,
                                                        double hi) const {
  const std::tuple<int, int, double, double> key{arm, excess_kind ? 1 : 0, lo, hi};
  {
    std::shared_lock lock(strip_mutex_);
    const auto it = strips_.find(key);
    if (it != strips_.end()) return it->second;
  }
  Strip built = build_strip(arm, excess_kind, lo, hi);
  std::unique_lock lock(strip_mutex_);
  return strips_.try_emplace(key, std::move(built)).first->second;
}

double MonoPosterior::strip_mass(const Strip& strip, const SafetyDataMono& data,
                                 double max_ll) const {
  std::vector<double> ll;
  point_loglik(data, strip.logp, strip.log1mp, strip.points, ll);
  double acc = 0.0;
  for (int idx = 0; idx < strip.points; ++idx) acc += strip.weight[idx] * std::exp(ll[idx] - max_ll);
  return acc;
}

double MonoPosterior::excess_tail(int arm, double c, const SafetyDataMono& data, double max_ll,
                                  double total) const {
  if (c <= 0.0) return 1.0;  // the excess is positive for any positive slope
  const Strip& strip = cached_strip(arm, true, c, 0.0);
  if (strip.points == 0) return 0.0;
  return std::min(1.0, strip_mass(strip, data, max_ll) / total);
}

std::vector<double> MonoPosterior::expectations(const SafetyDataMono& data,
                                                std::span<const ProbQuery> queries) const {
  if (data.arms() != arms_) throw std::invalid_argument("MonoPosterior: data arm count mismatch");
  std::vector<double> ll;
  point_loglik(data, full_.logp, full_.log1mp, full_.points, ll);
  double max_ll = -std::numeric_limits<double>::infinity();
  for (double v : ll) max_ll = std::max(max_ll, v);
  double total = 0.0;
  for (int idx = 0; idx < full_.points; ++idx) total += full_.weight[idx] * std::exp(ll[idx] - max_ll);
  if (!(total > 0.0) || !std::isfinite(total))
    throw std::runtime_error("MonoPosterior: posterior mass vanished or is not finite");

  std::vector<double> out(queries.size(), 0.0);
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const ProbQuery& query = queries[q];
    if (query.arm < 0 || query.arm >= arms_)
      throw std::out_of_range("posterior query: bad arm index");
    if (query.lo > query.hi) continue;
    if (query.kind == QueryKind::ExcessOverControl) {
      if (query.arm == 0) {
        out[q] = (query.lo <= 0.0 && 0.0 <= query.hi) ? 1.0 : 0.0;
        continue;
      }
      if (query.hi <= 0.0) continue;
      const double upper_tail = excess_tail(query.arm, query.lo, data, max_ll, total);
      const double beyond = query.hi >= 1.0
                                ? 0.0
                                : excess_tail(query.arm, query.hi, data, max_ll, total);
      out[q] = std::max(0.0, upper_tail - beyond);
    } else {
      if (query.hi <= 0.0 || query.lo >= 1.0) continue;
      const Strip& strip = cached_strip(query.arm, false, query.lo, query.hi);
      if (strip.points == 0) continue;
      out[q] = std::min(1.0, strip_mass(strip, data, max_ll) / total);
    }
  }
  return out;
}

SafetySummary MonoPosterior::assess(const SafetyDataMono& data,
                                    const EscalationPolicy& policy) const {
  if (data.arms() != arms_) throw std::invalid_argument("MonoPosterior: data arm count mismatch");
  std::vector<double> ll;
  point_loglik(data, full_.logp, full_.log1mp, full_.points, ll);
  double max_ll = -std::numeric_limits<double>::infinity();
  for (double v : ll) max_ll = std::max(max_ll, v);
  double total = 0.0;
  for (int idx = 0; idx < full_.points; ++idx) total += full_.weight[idx] * std::exp(ll[idx] - max_ll);
  if (!(total > 0.0) || !std::isfinite(total))
    throw std::runtime_error("MonoPosterior: posterior mass vanished or is not finite");

  const int m = arms_ - 1;
  SafetySummary out;
  out.overdose.assign(m, 0.0);
  out.target.assign(m, 0.0);
  for (int j = 1; j <= m; ++j) {
    out.overdose[j - 1] = excess_tail(j, policy.overdose_excess(), data, max_ll, total);
    const double lo_tail = excess_tail(j, policy.target_lo(), data, max_ll, total);
    const double hi_tail = excess_tail(j, policy.target_hi(), data, max_ll, total);
    out.target[j - 1] = std::max(0.0, lo_tail - hi_tail);
  }
  return out;
}

std::vector<double> posterior_expectations(const SafetyPriorMono& prior,
                                           const StandardizedDoses& skeleton,
                                           const SafetyDataMono& data,
                                           std::span<const ProbQuery> queries, int nodes) {
  return MonoPosterior(prior, skeleton, nodes).expectations(data, queries);
}

std::vector<int> safe_dose_set(std::span<const double> overdose_probs, double threshold) {
  std::vector<int> safe;
  for (std::size_t j = 0; j < overdose_probs.size(); ++j) {
    if (overdose_probs[j] < threshold) safe.push_back(static_cast<int>(j) + 1);
  }
  return safe;
}

NextDose select_next_dose(int current, const std::vector<int>& safe,
                          std::span<const double> target_probs) {
  if (safe.empty()) return {NextDoseKind::StopSafety, 0};
  if (safe.size() == 1 && safe[0] == current) return {NextDoseKind::Stay, current};

  std::vector<int> candidates;
  for (int j : safe) {
    if (std::abs(j - current) <= 1) candidates.push_back(j);
  }
  if (candidates.empty()) {
    int best = std::numeric_limits<int>::max();
    for (int j : safe) best = std::min(best, std::abs(j - current));
    for (int j : safe) {
      if (std::abs(j - current) == best) candidates.push_back(j);
    }
  }
  int chosen = -1;
  double best_prob = -1.0;
  for (int j : candidates) {
    const double p = target_probs[j - 1];
    if (p > best_prob || (p == best_prob && j < chosen)) {
      best_prob = p;
      chosen = j;
    }
  }
  return {chosen == current ? NextDoseKind::Stay : NextDoseKind::Move, chosen};
}

}  // namespace dosefind
