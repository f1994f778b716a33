#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dduet/error.hpp"
#include "dduet/kgs.hpp"
#include "dduet/norms.hpp"
#include "dduet/picard.hpp"
#include "dduet/zakharov.hpp"

namespace dduet {

enum class System { Zakharov, KGS };

inline const char* to_string(System s) { return s == System::Zakharov ? "zakharov" : "kgs"; }

/// Step-size exponents: Delta = c_step min((1+|u|)^-gamma, (1+|n|)^-beta, 1).
/// delta_exp is the exponent of Delta in the per-step growth of the n-norm.
struct ScheduleParams {
  double gamma_exp = 2.0;
  double beta_exp = 2.0;
  double delta_exp = 0.5;
  double c_step = 0.5;
  double min_step = 1e-8;

  static ScheduleParams defaults(System s) {
    if (s == System::Zakharov) return {2.0, 2.0, 0.5, 0.5, 1e-8};
    return {4.0, 4.0, 0.75, 0.5, 1e-8};
  }

  void validate() const {
    require(gamma_exp > 0 && beta_exp > 0 && delta_exp > 0, ErrorCode::InvalidArgument,
            "schedule exponents must be positive");
    require(c_step > 0 && c_step <= 1, ErrorCode::InvalidArgument, "c_step must lie in (0, 1]");
    require(min_step > 0, ErrorCode::InvalidArgument, "min_step must be positive");
  }
};

inline double step_size(double u_norm, double n_norm, const ScheduleParams& p) {
  require(u_norm >= 0 && n_norm >= 0, ErrorCode::InvalidArgument, "norms must be nonnegative");
  const double d = p.c_step * std::min({std::pow(1.0 + u_norm, -p.gamma_exp),
                                        std::pow(1.0 + n_norm, -p.beta_exp), 1.0});
  require(d >= p.min_step, ErrorCode::StepUnderflow,
          "step size " + std::to_string(d) + " below min_step");
  return d;
}

/// Number of steps of size Delta before the n-norm can double:
///   Zakharov  m = |n| / (Delta^{1/2} (|u|^2 + 1)),
///   KGS       m = |n| / (Delta^{3/4} |u|^2).
inline double predicted_doubling_count(double n_norm, double u_norm, double delta, System system) {
  require(delta > 0.0, ErrorCode::InvalidArgument, "step must be positive");
  const double u2 = u_norm * u_norm;
  if (system == System::Zakharov) return n_norm / (std::sqrt(delta) * (u2 + 1.0));
  if (u2 == 0.0) return std::numeric_limits<double>::infinity();
  return n_norm / (std::pow(delta, 0.75) * u2);
}

/// 1 - beta + delta beta; the scheme globalizes when this is >= 0.
inline double globalization_exponent(const ScheduleParams& p) {
  return 1.0 - p.beta_exp + p.delta_exp * p.beta_exp;
}

struct StepRecord {
  double time = 0.0;
  double dt = 0.0;
  double u_norm = 0.0;
  double n_norm = 0.0;
  double mass = 0.0;
  double mass_drift = 0.0;  // running max of |M(t) - M(0)| / M(0)
  double hamiltonian = 0.0;
  int picard_iters = 0;
  int retries = 0;
  bool doubled = false;  // n-norm exceeded twice its value at the super-interval start
};

struct RunLog {
  std::vector<StepRecord> records;

  bool empty() const { return records.empty(); }
  const StepRecord& back() const { return records.back(); }
  double max_mass_drift() const { return records.empty() ? 0.0 : records.back().mass_drift; }
};

enum class RunStatus { Completed, NoContraction, StepUnderflow };

inline const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Completed: return "completed";
    case RunStatus::NoContraction: return "no_contraction";
    case RunStatus::StepUnderflow: return "step_underflow";
  }
  return "unknown";
}

template <class State>
struct RunResult {
  RunLog log;
  State final_state;
  RunStatus status = RunStatus::Completed;
  std::string message;

  bool ok() const { return status == RunStatus::Completed; }
};

template <class State>
struct SystemTraits;

template <>
struct SystemTraits<zakharov::ZakharovState> {
  static constexpr System kind = System::Zakharov;
  using Options = zakharov::Model;

  static double mass(const zakharov::ZakharovState& s) { return zakharov::mass(s.u); }
  static double n_norm(const zakharov::ZakharovState& s) { return w_norm(s.wave); }
  static double hamiltonian(const zakharov::ZakharovState& s, const Options& o) {
    try {
      return zakharov::hamiltonian(s, o);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonzeroMeanVelocity) throw;
      return std::numeric_limits<double>::quiet_NaN();
    }
  }
  static LocalSolution<zakharov::ZakharovState> solve(const zakharov::ZakharovState& s, double dt,
                                                      const PicardParams& p, const Options& o) {
    return zakharov::local_solve(s, dt, p, o);
  }
};

template <>
struct SystemTraits<kgs::KGSState> {
  static constexpr System kind = System::KGS;
  struct Options {};

  static double mass(const kgs::KGSState& s) { return kgs::mass(s.u); }
  static double n_norm(const kgs::KGSState& s) { return g_norm(s.wave); }
  static double hamiltonian(const kgs::KGSState& s, const Options&) {
    if (s.couplings.beta == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return kgs::hamiltonian(s);
  }
  static LocalSolution<kgs::KGSState> solve(const kgs::KGSState& s, double dt, const PicardParams& p,
                                            const Options&) {
    return kgs::local_solve(s, dt, p);
  }
};

inline constexpr int kMaxRetries = 8;

/// Advances by norm-driven local solves until t_end. A failed local solve is
/// retried with half the step, at most kMaxRetries times. Failures end the run
/// with a status; the log up to that point is kept.
template <class State, class Traits = SystemTraits<State>>
RunResult<State> run(const State& initial, double t_end, const ScheduleParams& schedule,
                     const PicardParams& picard, const typename Traits::Options& options = {}) {
  schedule.validate();
  picard.validate();
  require(t_end > initial.time, ErrorCode::InvalidArgument, "t_end must exceed the initial time");

  RunResult<State> result;
  result.final_state = initial;
  State& state = result.final_state;
  const double mass0 = Traits::mass(initial);
  double reference_n = Traits::n_norm(initial);
  double drift = 0.0;

  auto make_record = [&](const State& s, double dt, int iters, int retries) {
    StepRecord r;
    r.time = s.time;
    r.dt = dt;
    r.mass = Traits::mass(s);
    r.u_norm = std::sqrt(r.mass);
    r.n_norm = Traits::n_norm(s);
    if (mass0 > 0.0) drift = std::max(drift, std::abs(r.mass - mass0) / mass0);
    r.mass_drift = drift;
    r.hamiltonian = Traits::hamiltonian(s, options);
    r.picard_iters = iters;
    r.retries = retries;
    if (r.n_norm > 2.0 * reference_n && reference_n > 0.0) {
      r.doubled = true;
      reference_n = r.n_norm;
    } else if (reference_n == 0.0 && r.n_norm > 0.0) {
      reference_n = r.n_norm;
    }
    return r;
  };
  result.log.records.push_back(make_record(state, 0.0, 0, 0));

  const double time_slack = 1e-12 * std::max(1.0, std::abs(t_end));
  while (state.time < t_end - time_slack) {
    const StepRecord& last = result.log.back();
    double dt;
    try {
      dt = step_size(last.u_norm, last.n_norm, schedule);
    } catch (const Error& e) {
      result.status = RunStatus::StepUnderflow;
      result.message = e.what();
      return result;
    }
    int retries = 0;
    while (true) {
      const double remaining = t_end - state.time;
      const bool last_step = dt >= remaining - time_slack;
      const double T = last_step ? remaining : dt;
      try {
        auto local = Traits::solve(state, T, picard, options);
        State next = local.final_state();
        if (last_step) next.time = t_end;
        state = std::move(next);
        result.log.records.push_back(make_record(state, T, local.iterations, retries));
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoContraction) throw;
        if (retries == kMaxRetries) {
          result.status = RunStatus::NoContraction;
          result.message = e.what();
          return result;
        }
        ++retries;
        dt *= 0.5;
        if (dt < schedule.min_step) {
          result.status = RunStatus::StepUnderflow;
          result.message = "step halved below min_step after NoContraction";
          return result;
        }
      }
    }
  }
  return result;
}

struct BoundFit {
  double c = 0.0;
  double base = 0.0;
  bool pass = false;
};

/// Smallest c >= 0 with n(t) <= exp(c t m0) max(n0, m0) on every record, t measured
/// from the first record. Passes when c is finite and the last record, extrapolated
/// one step at its own geometric growth rate, stays under the envelope.
inline BoundFit bound_check(const RunLog& log, double u0_mass, double n0_norm) {
  require(!log.empty(), ErrorCode::EmptyLog, "run log has no records");
  BoundFit fit;
  fit.base = std::max(n0_norm, u0_mass);
  const double t0 = log.records.front().time;
  const double inf = std::numeric_limits<double>::infinity();
  for (const auto& r : log.records) {
    if (r.n_norm <= fit.base) continue;
    const double elapsed = r.time - t0;
    if (elapsed <= 0.0 || u0_mass <= 0.0 || fit.base <= 0.0) {
      fit.c = inf;
      break;
    }
    fit.c = std::max(fit.c, std::log(r.n_norm / fit.base) / (elapsed * u0_mass));
  }
  fit.pass = std::isfinite(fit.c);
  if (fit.pass && log.records.size() >= 2) {
    const auto& last = log.records.back();
    const auto& prev = log.records[log.records.size() - 2];
    if (prev.n_norm > 0.0 && last.dt > 0.0) {
      const double next_n = last.n_norm * (last.n_norm / prev.n_norm);
      const double next_t = last.time + last.dt - t0;
      const double envelope = std::exp(fit.c * next_t * u0_mass) * fit.base;
      fit.pass = next_n <= envelope * (1.0 + 1e-12);
    }
  }
  return fit;
}

}  // namespace dduet
