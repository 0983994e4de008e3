#include "dosefind/trial_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace dosefind {

void validate_trial_config(const TrialConfig& cfg) {
  if (cfg.cohort_active < 1 || cfg.cohort_control < 0)
    throw std::invalid_argument("trial config: bad cohort sizes");
  const int cohort = cfg.cohort_active + cfg.cohort_control;
  if (cfg.level_cap < cohort || cfg.level_cap % cohort != 0)
    throw std::invalid_argument("trial config: level_cap must be a positive multiple of the cohort size");
  if (!(cfg.safety_window_days > 0.0) || !(cfg.cohort_interval_days > 0.0))
    throw std::invalid_argument("trial config: windows must be positive");
  if (cfg.safety_window_days > cfg.efficacy.followup_days)
    throw std::invalid_argument("trial config: safety window exceeds follow-up");
  if (!(cfg.efficacy.lower >= 0.0 && cfg.efficacy.lower < cfg.efficacy.upper &&
        cfg.efficacy.upper <= 1.0))
    throw std::invalid_argument("trial config: efficacy boundaries must satisfy 0 <= l < u <= 1");
  if (cfg.efficacy.shared_controls < 0)
    throw std::invalid_argument("trial config: shared_controls must be non-negative");
  if (cfg.safety_only && cfg.safety_only_cohorts < 1)
    throw std::invalid_argument("trial config: safety_only_cohorts must be positive");
  validate_policy(cfg.policy);
}

namespace {

class MonoSafetyModel final : public SafetyModel {
 public:
  MonoSafetyModel(const SafetyPriorMono& prior, int doses, const EscalationPolicy& policy,
                  const QuadratureSettings& quadrature)
      : policy_(policy), posterior_(prior, build_skeleton(prior, doses), quadrature.nodes) {}

  int active_arms() const override { return posterior_.active_doses(); }

  SafetySummary assess(const SafetyDataMono& data) const override {
    return posterior_.assess(data, policy_);
  }

  std::vector<int> moves(int current) const override {
    std::vector<int> out;
    for (int j = current - 1; j <= current + 1; ++j) {
      if (j >= 1 && j <= active_arms()) out.push_back(j);
    }
    return out;
  }

  int distance(int a, int b) const override { return std::abs(a - b); }

  long tie_rank(int arm) const override { return arm; }

  std::string arm_label(int arm) const override { return "d" + std::to_string(arm); }

 private:
  EscalationPolicy policy_;
  MonoPosterior posterior_;
};

class ComboSafetyModel final : public SafetyModel {
 public:
  ComboSafetyModel(const SafetyPriorCombo& prior, const ComboGrid& grid,
                   const EscalationPolicy& policy, const QmcSettings& qmc)
      : policy_(policy), grid_(grid), posterior_(prior, grid, qmc) {}

  int active_arms() const override { return grid_.active_arms(); }

  SafetySummary assess(const SafetyDataMono& data) const override {
    return posterior_.assess(data, policy_);
  }

  std::vector<int> moves(int current) const override {
    const auto [cj, cl] = grid_.arm_levels(current);
    std::vector<int> out;
    for (int arm = 1; arm <= active_arms(); ++arm) {
      const auto [j, l] = grid_.arm_levels(arm);
      if ((j == cj && std::abs(l - cl) <= 1) || (l == cl && std::abs(j - cj) <= 1))
        out.push_back(arm);
    }
    return out;
  }

  int distance(int a, int b) const override {
    const auto [ja, la] = grid_.arm_levels(a);
    const auto [jb, lb] = grid_.arm_levels(b);
    return std::abs(ja - jb) + std::abs(la - lb);
  }

  long tie_rank(int arm) const override {
    const auto [j, l] = grid_.arm_levels(arm);
    return static_cast<long>(j + l) * 1024 + j;
  }

  std::string arm_label(int arm) const override {
    const auto [j, l] = grid_.arm_levels(arm);
    return "a" + std::to_string(j) + "b" + std::to_string(l);
  }

 private:
  EscalationPolicy policy_;
  ComboGrid grid_;
  ComboPosterior posterior_;
};

}  // namespace

std::unique_ptr<SafetyModel> make_mono_safety_model(const SafetyPriorMono& prior, int doses,
                                                    const EscalationPolicy& policy,
                                                    const QuadratureSettings& quadrature) {
  return std::make_unique<MonoSafetyModel>(prior, doses, policy, quadrature);
}

std::unique_ptr<SafetyModel> make_combo_safety_model(const SafetyPriorCombo& prior,
                                                     const ComboGrid& grid,
                                                     const EscalationPolicy& policy,
                                                     const QmcSettings& qmc) {
  return std::make_unique<ComboSafetyModel>(prior, grid, policy, qmc);
}

NextDose select_next_arm(int current, const std::vector<int>& safe,
                         std::span<const double> target_probs, const SafetyModel& model) {
  if (safe.empty()) return {NextDoseKind::StopSafety, 0};
  if (safe.size() == 1 && safe[0] == current) return {NextDoseKind::Stay, current};

  std::vector<int> candidates;
  {
    const std::vector<int> reachable = model.moves(current);
    for (int arm : safe) {
      if (std::find(reachable.begin(), reachable.end(), arm) != reachable.end())
        candidates.push_back(arm);
    }
  }
  if (candidates.empty()) {
    int best = std::numeric_limits<int>::max();
    for (int arm : safe) best = std::min(best, model.distance(arm, current));
    for (int arm : safe) {
      if (model.distance(arm, current) == best) candidates.push_back(arm);
    }
  }
  int chosen = -1;
  double best_prob = -1.0;
  long best_rank = std::numeric_limits<long>::max();
  for (int arm : candidates) {
    const double p = target_probs[arm - 1];
    const long rank = model.tie_rank(arm);
    if (p > best_prob || (p == best_prob && rank < best_rank)) {
      best_prob = p;
      best_rank = rank;
      chosen = arm;
    }
  }
  return {chosen == current ? NextDoseKind::Stay : NextDoseKind::Move, chosen};
}

namespace {

struct PatientRow {
  int id;
  int arm;      // 0 = control
  int context;  // active arm whose cohort enrolled this patient
  double enroll_day;
  bool dle;
  double improve_day;
  bool improve_event;
};

struct SharedControl {
  ControlRecord record;
  int context;  // cohort context the control was enrolled under
};

struct CohortRow {
  int arm;
  double day;
  bool safety_ingested = false;
  bool followup_complete = false;
};

struct ArmState {
  DosePhase phase = DosePhase::Escalation;
  bool ever_graduated = false;
  int cohorts_enrolled = 0;
  int cohorts_complete = 0;
  int reviews = 0;
  int last_reviewed_complete = 0;
  double last_posterior = -1.0;
};

bool terminal(DosePhase p) {
  return p == DosePhase::StoppedSafety || p == DosePhase::StoppedFutility ||
         p == DosePhase::StoppedEfficacy;
}

}  // namespace

TrialResult run_trial(const Scenario& scenario, const TrialConfig& cfg, const SafetyModel& model,
                      std::uint64_t master_seed, std::uint64_t replication, TrialLog* log) {
  validate_trial_config(cfg);
  const int arms = model.active_arms();
  if (static_cast<int>(scenario.arms.size()) != arms + 1)
    throw std::invalid_argument("run_trial: scenario arm count does not match the dose grid");

  Rng rng(master_seed, replication);
  const int max_cohorts = cfg.max_cohorts_per_arm();
  const double followup = cfg.efficacy.followup_days;

  std::vector<PatientRow> patients;
  std::vector<CohortRow> cohorts;
  std::vector<ArmState> state(arms);
  SafetyDataMono safety(arms + 1);
  std::vector<SharedControl> completed_controls;  // chronological by completion
  int next_id = 0;
  int current = 1;
  bool enrollment_open = true;
  bool trial_safety_stop = false;
  double end_day = 0.0;
  int total_cohorts = 0;
  int final_target = -1;

  auto note = [&](int week, const std::string& text) {
    if (log) log->lines.push_back("week " + std::to_string(week) + ": " + text);
  };
  auto fmt4 = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", x);
    return std::string(buf);
  };

  auto enroll = [&](int arm, double day) {
    cohorts.push_back({arm, day});
    ++state[arm - 1].cohorts_enrolled;
    ++total_cohorts;
    for (int i = 0; i < cfg.cohort_active; ++i) {
      const PatientOutcome o = correlated_outcome(scenario.arms[arm].dle_probability,
                                                  scenario.arms[arm].hazard_ratio, scenario,
                                                  followup, rng);
      patients.push_back({next_id++, arm, arm, day, o.dle, o.improve_day, o.improve_event});
    }
    for (int i = 0; i < cfg.cohort_control; ++i) {
      const PatientOutcome o = correlated_outcome(scenario.arms[0].dle_probability,
                                                  scenario.arms[0].hazard_ratio, scenario,
                                                  followup, rng);
      patients.push_back({next_id++, 0, arm, day, o.dle, o.improve_day, o.improve_event});
    }
  };

  auto review = [&](int arm, double day, bool force_final) {
    ArmState& st = state[arm - 1];
    DoseEfficacyData own;
    for (const PatientRow& p : patients) {
      if (p.context != arm) continue;
      own.subjects.push_back(
          {p.id, p.arm == arm ? 1 : 0, p.enroll_day, p.improve_day, p.improve_event});
    }
    // The shared buffer carries the most recently enrolled completed controls
    // from other doses' cohorts; the dose's own controls are already in its
    // data.
    ControlBuffer externals(
        cfg.share_controls ? static_cast<std::size_t>(cfg.efficacy.shared_controls) : 0);
    for (const SharedControl& c : completed_controls) {
      if (c.context != arm) externals.add(c.record);
    }
    const SurvivalDataset ds = assemble_analysis_set(own, externals, day, followup);
    const double pi = posterior_efficacy_probability(ds, cfg.efficacy);
    const int k = st.reviews + 1;
    const bool in_flight = st.cohorts_enrolled > st.cohorts_complete;
    const bool can_enroll_more =
        enrollment_open && st.cohorts_enrolled < max_cohorts && !terminal(st.phase);
    const bool more_data_possible = !force_final && (in_flight || can_enroll_more);
    EfficacyConfig stage_cfg = cfg.efficacy;
    stage_cfg.max_stages = more_data_possible ? k + 1 : k;
    const StageAction action = stage_decision(pi, k, stage_cfg);
    st.reviews = k;
    st.last_posterior = pi;
    st.last_reviewed_complete = st.cohorts_complete;
    if (action == StageAction::StopEfficacy) {
      st.phase = DosePhase::StoppedEfficacy;
    } else if (action == StageAction::StopFutility) {
      st.phase = DosePhase::StoppedFutility;
    }
    if (log) {
      const int week = static_cast<int>(day / cfg.cohort_interval_days + 0.5);
      const char* verdict = action == StageAction::Continue
                                ? "continue"
                                : (action == StageAction::StopEfficacy ? "stop for efficacy"
                                                                       : "stop for futility");
      note(week, model.arm_label(arm) + " review " + std::to_string(k) + " on " +
                     std::to_string(ds.size()) + " subjects: posterior " + fmt4(pi) +
                     (more_data_possible ? "" : " (final)") + " -> " + verdict);
    }
  };

  for (int week = 0;; ++week) {
    const double day = week * cfg.cohort_interval_days;
    end_day = day;

    // 1. Ingest matured safety outcomes and completed follow-up.
    for (CohortRow& c : cohorts) {
      if (!c.safety_ingested && c.day + cfg.safety_window_days <= day) {
        c.safety_ingested = true;
        for (const PatientRow& p : patients) {
          if (p.enroll_day == c.day && p.context == c.arm) safety.add(p.arm, p.dle);
        }
      }
      if (!c.followup_complete && c.day + followup <= day) {
        c.followup_complete = true;
        ++state[c.arm - 1].cohorts_complete;
        for (const PatientRow& p : patients) {
          if (p.enroll_day == c.day && p.context == c.arm && p.arm == 0)
            completed_controls.push_back(
                {{p.id, p.enroll_day, p.improve_day, p.improve_event}, p.context});
        }
      }
    }

    const bool have_safety_data =
        std::any_of(safety.n().begin(), safety.n().end(), [](int n) { return n > 0; });

    std::vector<int> safe;
    SafetySummary summary;
    if (have_safety_data) {
      summary = model.assess(safety);
      safe = safe_dose_set(summary.overdose, cfg.policy.overdose_threshold);

      // 2. Trial-wide safety stop: nothing is currently safe.
      if (safe.empty()) {
        trial_safety_stop = true;
        for (ArmState& st : state) {
          if (!terminal(st.phase)) st.phase = DosePhase::StoppedSafety;
        }
        note(week, "no dose is considered safe; trial stopped");
        break;
      }

      if (!cfg.safety_only) {
        // 3. Safety monitoring overrides efficacy evaluation: a dose that has
        // graduated but is no longer considered safe is dropped.
        for (int arm = 1; arm <= arms; ++arm) {
          ArmState& st = state[arm - 1];
          if (terminal(st.phase) || !st.ever_graduated) continue;
          if (std::find(safe.begin(), safe.end(), arm) == safe.end()) {
            st.phase = DosePhase::StoppedSafety;
            note(week, model.arm_label(arm) + " left the safe set; dropped");
          }
        }

        // 4. Graduation: safe doses with two cohorts fully followed up move
        // to efficacy evaluation.
        for (int arm : safe) {
          ArmState& st = state[arm - 1];
          if (st.phase == DosePhase::Escalation && st.cohorts_complete >= 2) {
            st.phase = DosePhase::Graduated;
            st.ever_graduated = true;
            note(week, model.arm_label(arm) + " graduated to efficacy evaluation");
          }
        }

        // 5. Efficacy reviews triggered by newly completed own cohorts.
        for (int arm = 1; arm <= arms; ++arm) {
          ArmState& st = state[arm - 1];
          if (terminal(st.phase) || !st.ever_graduated) continue;
          if (st.cohorts_complete > st.last_reviewed_complete) review(arm, day, false);
        }
      }
    }

    // 6. Weekly enrollment: one cohort at the dose targeting the aimed-for
    // excess risk among safe doses that can still take patients.
    bool enrolled = false;
    if (enrollment_open) {
      if (week == 0) {
        enroll(1, day);
        enrolled = true;
        current = 1;
        note(week, "enrolled first cohort at " + model.arm_label(1));
      } else if (cfg.safety_only && total_cohorts >= cfg.safety_only_cohorts) {
        enrollment_open = false;
        note(week, "escalation horizon reached; enrollment closed");
      } else if (have_safety_data) {
        std::vector<int> eligible;
        for (int arm : safe) {
          const ArmState& st = state[arm - 1];
          if (!terminal(st.phase) && st.cohorts_enrolled < max_cohorts) eligible.push_back(arm);
        }
        if (eligible.empty()) {
          enrollment_open = false;
          note(week, "no safe dose can take further patients; enrollment closed");
        } else {
          const NextDose next = select_next_arm(current, eligible, summary.target, model);
          enroll(next.dose, day);
          enrolled = true;
          current = next.dose;
          note(week, "enrolled cohort " + std::to_string(total_cohorts) + " at " +
                         model.arm_label(next.dose));
        }
      }
      // Without matured safety data (and past week 0) enrollment waits.
    }

    if (cfg.safety_only && !enrollment_open) {
      // Safety-only runs end once every cohort's safety window has matured;
      // the final targeted dose is read off the last assessment.
      const bool all_ingested = std::all_of(
          cohorts.begin(), cohorts.end(), [](const CohortRow& c) { return c.safety_ingested; });
      if (all_ingested && have_safety_data) {
        int chosen = -1;
        double best = -1.0;
        long best_rank = std::numeric_limits<long>::max();
        for (int arm : safe) {
          const double p = summary.target[arm - 1];
          const long rank = model.tie_rank(arm);
          if (p > best || (p == best && rank < best_rank)) {
            best = p;
            best_rank = rank;
            chosen = arm;
          }
        }
        final_target = chosen;
        note(week, "escalation ended targeting " +
                       (chosen >= 1 ? model.arm_label(chosen) : std::string("no dose")));
        break;
      }
    }

    if (!cfg.safety_only && !enrolled && !enrollment_open) {
      const bool all_complete = std::all_of(
          cohorts.begin(), cohorts.end(), [](const CohortRow& c) { return c.followup_complete; });
      bool reviews_pending = false;
      for (int arm = 1; arm <= arms; ++arm) {
        const ArmState& st = state[arm - 1];
        if (!terminal(st.phase) && st.ever_graduated &&
            st.cohorts_complete > st.last_reviewed_complete)
          reviews_pending = true;
      }
      if (all_complete && !reviews_pending) {
        // Wind-down: doses still waiting on data that will never come get a
        // final look at everything accumulated.
        for (int arm = 1; arm <= arms; ++arm) {
          ArmState& st = state[arm - 1];
          if (!terminal(st.phase) && st.ever_graduated) {
            note(week, "wind-down review for " + model.arm_label(arm));
            review(arm, day, true);
          }
        }
        note(week, "trial complete");
        break;
      }
    }

    // Doses at their intake cap keep their pending reviews; mark them so the
    // final state reads correctly.
    for (ArmState& st : state) {
      if (st.phase == DosePhase::Graduated && st.cohorts_enrolled >= max_cohorts)
        st.phase = DosePhase::Exhausted;
    }

    if (week > 4000) throw std::runtime_error("run_trial: failed to terminate");
  }

  TrialResult result;
  result.arms.resize(arms);
  for (int arm = 1; arm <= arms; ++arm) {
    const ArmState& st = state[arm - 1];
    DoseOutcome& out = result.arms[arm - 1];
    out.phase = st.phase;
    out.ever_graduated = st.ever_graduated;
    out.recommended = st.phase == DosePhase::StoppedEfficacy;
    out.cohorts = st.cohorts_enrolled;
    out.reviews = st.reviews;
    out.last_posterior = st.last_posterior;
  }
  result.total_enrolled = static_cast<int>(patients.size());
  result.duration_weeks = end_day / 7.0;
  result.stopped_for_safety = trial_safety_stop;
  result.final_target = final_target;
  return result;
}

BatchResult run_batch(const Scenario& scenario, const TrialConfig& cfg, const SafetyModel& model,
                      int n_sims, std::uint64_t seed, int threads) {
  if (n_sims < 1) throw std::invalid_argument("run_batch: n_sims must be positive");
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, n_sims));

  BatchResult out;
  out.reps.resize(static_cast<std::size_t>(n_sims));
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const int r = next.fetch_add(1);
      if (r >= n_sims) return;
      try {
        const TrialResult tr =
            run_trial(scenario, cfg, model, seed, static_cast<std::uint64_t>(r));
        RepRecord rec;
        rec.total_enrolled = tr.total_enrolled;
        rec.duration_weeks = static_cast<float>(tr.duration_weeks);
        rec.stopped_for_safety = tr.stopped_for_safety;
        rec.final_target = static_cast<std::int8_t>(tr.final_target);
        for (std::size_t a = 0; a < tr.arms.size(); ++a) {
          if (tr.arms[a].recommended) rec.recommended_mask |= 1u << a;
        }
        out.reps[static_cast<std::size_t>(r)] = rec;
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
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

std::vector<DoseClass> classify_doses(const Scenario& scenario, double max_excess) {
  std::vector<DoseClass> out;
  const double control = scenario.arms.at(0).dle_probability;
  for (std::size_t a = 1; a < scenario.arms.size(); ++a) {
    const ArmTruth& t = scenario.arms[a];
    const bool unsafe = t.dle_probability - control > max_excess + 1e-12;
    const double hr = t.hazard_ratio;
    DoseClass c;
    if (unsafe || hr < 1.25 - 1e-9) {
      c = DoseClass::Incorrect;
    } else if (hr < 1.5 - 1e-9) {
      c = DoseClass::Undesirable;
    } else if (hr < 1.75 - 1e-9) {
      c = DoseClass::Acceptable;
    } else {
      c = DoseClass::Desirable;
    }
    out.push_back(c);
  }
  return out;
}

OperatingCharacteristics summarize(const BatchResult& batch,
                                   const std::vector<DoseClass>& classes) {
  OperatingCharacteristics oc;
  oc.n_sims = static_cast<int>(batch.reps.size());
  const int arms = static_cast<int>(classes.size());
  oc.recommend_pct.assign(arms, 0.0);
  if (oc.n_sims == 0) return oc;

  std::uint32_t desirable_mask = 0;
  for (int a = 0; a < arms; ++a) {
    if (classes[a] == DoseClass::Desirable) desirable_mask |= 1u << a;
  }

  std::vector<int> ns;
  ns.reserve(batch.reps.size());
  long long sum_n = 0, sum_n2 = 0;
  double sum_dur = 0.0, sum_dur2 = 0.0;
  int any_rec = 0, any_des = 0, all_des = 0, safety_stops = 0;
  oc.min_n = std::numeric_limits<int>::max();
  for (const RepRecord& r : batch.reps) {
    for (int a = 0; a < arms; ++a) {
      if (r.recommended_mask & (1u << a)) oc.recommend_pct[a] += 1.0;
    }
    if (r.recommended_mask != 0) ++any_rec;
    if (r.recommended_mask & desirable_mask) ++any_des;
    if (desirable_mask != 0 && (r.recommended_mask & desirable_mask) == desirable_mask) ++all_des;
    if (r.stopped_for_safety) ++safety_stops;
    if (r.total_enrolled > 150) ++oc.count_n_above_150;
    sum_n += r.total_enrolled;
    sum_n2 += static_cast<long long>(r.total_enrolled) * r.total_enrolled;
    sum_dur += r.duration_weeks;
    sum_dur2 += static_cast<double>(r.duration_weeks) * r.duration_weeks;
    ns.push_back(r.total_enrolled);
    oc.min_n = std::min(oc.min_n, r.total_enrolled);
    oc.max_n = std::max(oc.max_n, r.total_enrolled);
  }
  const double n = static_cast<double>(oc.n_sims);
  for (int a = 0; a < arms; ++a) oc.recommend_pct[a] *= 100.0 / n;
  oc.any_recommend_pct = 100.0 * any_rec / n;
  oc.any_desirable_pct = 100.0 * any_des / n;
  oc.all_desirable_pct = 100.0 * all_des / n;
  oc.safety_stop_pct = 100.0 * safety_stops / n;
  oc.mean_n = static_cast<double>(sum_n) / n;
  const double var =
      (static_cast<double>(sum_n2) - n * oc.mean_n * oc.mean_n) / std::max(1.0, n - 1.0);
  oc.sd_n = std::sqrt(std::max(0.0, var));
  std::sort(ns.begin(), ns.end());
  oc.median_n = (oc.n_sims % 2 == 1)
                    ? ns[static_cast<std::size_t>(oc.n_sims / 2)]
                    : 0.5 * (ns[static_cast<std::size_t>(oc.n_sims / 2 - 1)] +
                             ns[static_cast<std::size_t>(oc.n_sims / 2)]);
  // Nearest-rank quantiles.
  auto quantile = [&](double q) {
    const int rank = std::max(1, static_cast<int>(std::ceil(q * oc.n_sims)));
    return static_cast<double>(ns[static_cast<std::size_t>(rank - 1)]);
  };
  oc.q10_n = quantile(0.10);
  oc.q90_n = quantile(0.90);
  oc.mean_duration_weeks = sum_dur / n;
  const double dvar =
      (sum_dur2 - n * oc.mean_duration_weeks * oc.mean_duration_weeks) / std::max(1.0, n - 1.0);
  oc.sd_duration_weeks = std::sqrt(std::max(0.0, dvar));
  return oc;
}

std::uint64_t cell_seed(std::uint64_t master, int safety_id, int efficacy_id) {
  return mix_seed(master, static_cast<std::uint64_t>(safety_id) * 0x10001ULL +
                              static_cast<std::uint64_t>(efficacy_id));
}

}  // namespace dosefind
