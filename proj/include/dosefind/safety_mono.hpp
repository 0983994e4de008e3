#pragma once

#include <cstdint>
#include <map>
#include <shared_mutex>
#include <span>
#include <tuple>
#include <vector>

namespace dosefind {

// Escalation rules on the excess DLE risk over control, p_j - p_0.
struct EscalationPolicy {
  double target_excess = 0.20;       // aimed-for excess risk
  double interval_halfwidth = 0.05;  // target window half-width
  double overdose_threshold = 0.25;  // admissible P(excess >= target + 2*halfwidth)

  double overdose_excess() const { return target_excess + 2.0 * interval_halfwidth; }
  double target_lo() const { return target_excess - interval_halfwidth; }
  double target_hi() const { return target_excess + interval_halfwidth; }
};

void validate_policy(const EscalationPolicy& policy);

// Two-parameter logistic dose-toxicity model. The sampling-model parameters
// are (intercept, log slope), jointly Gaussian a priori; the control arm sits
// at standardized dose 0 so the intercept mean pins the control DLE risk.
struct SafetyPriorMono {
  double control_dle = 0.10;      // anticipated control-arm DLE risk
  double dle_increment = 0.125;   // anticipated per-level rise in DLE risk
  double intercept_mean = 0.0;    // logit(control_dle), set by make_mono_prior
  double log_slope_mean = -0.25;
  double intercept_var = 1.40;
  double log_slope_var = 0.35;
  double cross_cov = 0.0;
};

SafetyPriorMono make_mono_prior(double control_dle, double dle_increment, double log_slope_mean,
                                double intercept_var, double log_slope_var, double cross_cov = 0.0);
void validate_mono_prior(const SafetyPriorMono& prior);

// Standardized dose levels; level[0] == 0 is the control anchor.
struct StandardizedDoses {
  std::vector<double> levels;
};

// Levels chosen so the prior-mean DLE risk at dose j equals
// control_dle + dle_increment * j.
StandardizedDoses build_skeleton(const SafetyPriorMono& prior, int doses);

// DLE risk at a standardized level for given intercept and slope (> 0).
double dle_probability(double intercept, double slope, double level);

// Per-arm toxicity counts; arm 0 is control.
class SafetyDataMono {
 public:
  explicit SafetyDataMono(int arms) : n_(arms, 0), events_(arms, 0) {}

  void add(int arm, bool dle);
  int arms() const { return static_cast<int>(n_.size()); }
  const std::vector<int>& n() const { return n_; }
  const std::vector<int>& events() const { return events_; }

 private:
  std::vector<int> n_;
  std::vector<int> events_;
};

enum class QueryKind {
  Level,             // P(p_arm in [lo, hi])
  ExcessOverControl  // P(p_arm - p_0 in [lo, hi])
};

struct ProbQuery {
  QueryKind kind = QueryKind::ExcessOverControl;
  int arm = 1;
  double lo = 0.0;
  double hi = 1.0;
};

struct SafetySummary {
  std::vector<double> overdose;  // P(excess >= policy.overdose_excess()), doses 1..m
  std::vector<double> target;    // P(excess in target window), doses 1..m
};

// Posterior over (intercept, log slope), factored as the log-slope marginal
// (Gauss-Hermite, prior-centered) times the intercept conditional (composite
// Gauss-Legendre over an explicit interval). Probability queries are
// exact-interval strips: at a fixed log slope, the region where an
// excess-risk or risk-level query holds is a closed-form intercept interval.
// A whole-domain strip built the same way normalizes every query, so the
// shared outer rule cancels in the ratio. Node evaluations that do not
// depend on the data are cached (strips lazily, once per queried bound).
class MonoPosterior {
 public:
  // `nodes` sets the log-slope resolution: the marginal rule uses about
  // nodes/2 panels of 8 points each across the prior range.
  MonoPosterior(const SafetyPriorMono& prior, const StandardizedDoses& skeleton, int nodes = 40);

  std::vector<double> expectations(const SafetyDataMono& data,
                                   std::span<const ProbQuery> queries) const;
  SafetySummary assess(const SafetyDataMono& data, const EscalationPolicy& policy) const;

  int active_doses() const { return arms_ - 1; }

 private:
  struct Strip {
    int points = 0;
    std::vector<double> weight;  // prior x quadrature weight per point
    std::vector<double> logp;    // point-major, per arm
    std::vector<double> log1mp;
  };

  // Per-point log likelihood of the data over a cached point set.
  void point_loglik(const SafetyDataMono& data, const std::vector<double>& logp,
                    const std::vector<double>& log1mp, int points, std::vector<double>& ll) const;
  // Builds the caches for one intercept interval family; empty bounds allowed.
  Strip build_strip(int arm, bool excess_kind, double lo, double hi) const;
  const Strip& cached_strip(int arm, bool excess_kind, double lo, double hi) const;
  double strip_mass(const Strip& strip, const SafetyDataMono& data, double max_ll) const;
  // P(excess_arm >= c) over normalizing mass `total` under log shift max_ll.
  double excess_tail(int arm, double c, const SafetyDataMono& data, double max_ll,
                     double total) const;

  int arms_;
  int nodes_;
  std::vector<double> levels_;       // skeleton copy
  double mu_a_ = 0.0, mu_b_ = 0.0;   // prior means (intercept, log slope)
  double sd_b_ = 1.0;                // log-slope marginal sd
  double cond_coef_ = 0.0;           // intercept-given-log-slope regression slope
  double cond_sd_ = 1.0;             // intercept conditional sd
  std::vector<double> outer_slope_;  // per outer node: slope value
  std::vector<double> outer_mean_;   // per outer node: conditional intercept mean
  std::vector<double> outer_weight_;
  Strip full_;  // whole-domain strip; shares quadrature with every query strip

  mutable std::shared_mutex strip_mutex_;
  mutable std::map<std::tuple<int, int, double, double>, Strip> strips_;
};

// Free-function form of the posterior queries.
std::vector<double> posterior_expectations(const SafetyPriorMono& prior,
                                           const StandardizedDoses& skeleton,
                                           const SafetyDataMono& data,
                                           std::span<const ProbQuery> queries, int nodes = 40);

// Doses (1-based) whose overdose probability is strictly below the threshold.
std::vector<int> safe_dose_set(std::span<const double> overdose_probs, double threshold);

enum class NextDoseKind { StopSafety, Stay, Move };

struct NextDose {
  NextDoseKind kind = NextDoseKind::StopSafety;
  int dose = 0;
};

// Next assignment among safe doses reachable from the current one (one level
// up or down). If no safe dose is within one level, the nearest safe doses
// are considered instead. Ties prefer the lower dose.
NextDose select_next_dose(int current, const std::vector<int>& safe,
                          std::span<const double> target_probs);

}  // namespace dosefind
