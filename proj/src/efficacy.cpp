#include "dosefind/efficacy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "dosefind/math.hpp"

namespace dosefind {

double cox_log_partial_likelihood(const SurvivalDataset& data, double hazard_ratio) {
  if (hazard_ratio <= 0.0) throw std::invalid_argument("cox: hazard ratio must be positive");
  if (data.empty()) return 0.0;

  std::vector<int> order(data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return data[a].time > data[b].time; });

  const double log_hr = std::log(hazard_ratio);
  double risk_sum = 0.0;  // sum of hr^z over subjects with time >= current
  double loglik = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double t = data[order[i]].time;
    std::size_t j = i;
    // Everyone tied at t joins the risk set before any event at t scores.
    while (j < order.size() && data[order[j]].time == t) {
      risk_sum += data[order[j]].z ? hazard_ratio : 1.0;
      ++j;
    }
    const double log_risk = std::log(risk_sum);
    for (std::size_t k = i; k < j; ++k) {
      const Subject& s = data[order[k]];
      if (s.event) loglik += (s.z ? log_hr : 0.0) - log_risk;
    }
    i = j;
  }
  return loglik;
}

double posterior_efficacy_probability(const SurvivalDataset& data, const EfficacyConfig& cfg) {
  const double pe = cfg.prior_probability;
  if (pe <= 0.0) return 0.0;
  if (pe >= 1.0) return 1.0;
  const double log_ratio = cox_log_partial_likelihood(data, cfg.target_hazard_ratio) -
                           cox_log_partial_likelihood(data, 1.0);
  return num::invlogit(num::logit(pe) + log_ratio);
}

StageAction stage_decision(double posterior, int stage, const EfficacyConfig& cfg) {
  if (stage < 1) throw std::invalid_argument("stage_decision: stage must be >= 1");
  if (posterior > cfg.upper) return StageAction::StopEfficacy;
  if (posterior < cfg.lower) return StageAction::StopFutility;
  return stage < cfg.max_stages ? StageAction::Continue : StageAction::StopFutility;
}

std::pair<double, double> translate_boundaries(double lower, double upper, double prior_old,
                                               double prior_new) {
  const double shift = num::logit(prior_new) - num::logit(prior_old);
  return {num::invlogit(num::logit(lower) + shift), num::invlogit(num::logit(upper) + shift)};
}

ControlBuffer::ControlBuffer(std::size_t capacity) : capacity_(capacity) {}

void ControlBuffer::add(const ControlRecord& rec) {
  if (capacity_ == 0) return;
  auto pos = std::upper_bound(records_.begin(), records_.end(), rec,
                              [](const ControlRecord& a, const ControlRecord& b) {
                                return a.enroll_day < b.enroll_day;
                              });
  records_.insert(pos, rec);
  while (records_.size() > capacity_) records_.pop_front();
}

SurvivalDataset assemble_analysis_set(const DoseEfficacyData& own, const ControlBuffer& externals,
                                      double analysis_day, double followup_days) {
  SurvivalDataset out;
  std::unordered_set<int> seen;
  for (const OwnSubject& s : own.subjects) {
    if (s.enroll_day + followup_days > analysis_day) continue;
    out.push_back({s.z, s.time, s.event});
    seen.insert(s.subject_id);
  }
  for (const ControlRecord& c : externals.records()) {
    if (c.enroll_day + followup_days > analysis_day) continue;
    if (!seen.insert(c.subject_id).second) continue;
    out.push_back({0, c.time, c.event});
  }
  return out;
}

}  // namespace dosefind
