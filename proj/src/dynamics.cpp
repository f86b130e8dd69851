#include "crncomp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace crncomp {

void IntegratorConfig::validate() const {
  if (!(rtol > 0.0) || !(atol > 0.0) || !(ss_tol > 0.0) || !(ss_window > 0.0))
    throw std::invalid_argument("integrator tolerances must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be positive");
  if (max_steps == 0) throw std::invalid_argument("max_steps must be positive");
  if (max_step < 0.0) throw std::invalid_argument("max_step must be nonnegative");
  if (sample_times.empty() && samples == 0) throw std::invalid_argument("need at least one sample interval");
  for (double t : sample_times)
    if (t < 0.0 || t > t_end) throw std::invalid_argument("sample time outside [0, t_end]");
}

std::vector<double> IntegratorConfig::resolved_sample_times() const {
  std::vector<double> out;
  if (!sample_times.empty()) {
    out = sample_times;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  out.reserve(samples + 1);
  for (std::size_t k = 0; k <= samples; ++k)
    out.push_back(k == samples ? t_end : t_end * static_cast<double>(k) / static_cast<double>(samples));
  return out;
}

std::size_t SimulationTrace::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < species.size(); ++i)
    if (species[i] == name) return i;
  throw std::out_of_range("species not in trace: " + std::string(name));
}

std::vector<double> SimulationTrace::series(std::size_t species_index) const {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(s.at(species_index));
  return out;
}

const std::vector<double>& SimulationTrace::state_at(double t) const {
  auto it = std::lower_bound(times.begin(), times.end(), t - 1e-12 * std::max(1.0, std::abs(t)));
  if (it == times.end()) return states.back();
  return states[static_cast<std::size_t>(it - times.begin())];
}

KineticModel KineticModel::from_crn(const Crn& crn) {
  KineticModel m;
  m.species_ = crn.species_names();
  for (const auto& r : crn.reactions()) {
    if (!r.rate.is_constant())
      throw std::invalid_argument("network has time-varying rates; bind its inputs or freeze them first");
    Term t;
    t.k = r.rate.coefficient();
    for (const auto& [id, c] : r.reactant.terms()) t.monomial.emplace_back(id, c);
    for_each_net_change(r, [&](SpeciesId id, std::int64_t d) { t.change.emplace_back(id, d); });
    m.terms_.push_back(std::move(t));
  }
  return m;
}

KineticModel KineticModel::from_reduced(const ReducedSystem& reduced, const Crn& driver) {
  KineticModel m = from_crn(driver);
  const std::size_t offset = driver.species_count();
  std::vector<std::size_t> input_slot;
  for (const auto& name : reduced.input_names()) {
    auto id = driver.find(name);
    if (!id) throw std::invalid_argument("driver network does not provide input species " + name);
    input_slot.push_back(*id);
  }
  for (const auto& name : reduced.base().species_names()) {
    if (driver.find(name)) throw std::invalid_argument("reduced species also present in driver: " + name);
    m.species_.push_back(name);
  }
  for (const auto& r : reduced.base().reactions()) {
    Term t;
    t.k = r.rate.coefficient();
    for (const auto& f : r.rate.factors()) t.monomial.emplace_back(input_slot[f.external], f.exponent);
    for (const auto& [id, c] : r.reactant.terms()) t.monomial.emplace_back(offset + id, c);
    for_each_net_change(r, [&](SpeciesId id, std::int64_t d) { t.change.emplace_back(offset + id, d); });
    m.terms_.push_back(std::move(t));
  }
  return m;
}

void KineticModel::rhs(std::span<const double> s, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& t : terms_) {
    double flux = t.k;
    for (const auto& [i, e] : t.monomial) {
      const double x = s[i];
      for (Coefficient p = 0; p < e; ++p) flux *= x;
    }
    if (flux == 0.0) continue;
    for (const auto& [i, d] : t.change) out[i] += flux * static_cast<double>(d);
  }
}

std::vector<double> KineticModel::rhs(std::span<const double> s) const {
  std::vector<double> out(dimension());
  rhs(s, out);
  return out;
}

namespace {

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

/// Tracks the most recent run of residuals below tolerance.
class SteadyMonitor {
 public:
  SteadyMonitor(double tol, double window) : tol_(tol), window_(window) {}

  void observe(double t, double residual) {
    if (residual <= tol_) {
      if (std::isnan(start_)) start_ = t;
    } else {
      start_ = std::numeric_limits<double>::quiet_NaN();
    }
    last_t_ = t;
  }

  std::optional<SteadyState> result(const std::vector<double>& final_state, double final_residual) const {
    if (std::isnan(start_) || last_t_ - start_ < window_) return std::nullopt;
    return SteadyState{final_state, final_residual, start_};
  }

 private:
  double tol_;
  double window_;
  /// Start of the current run of small residuals, NaN outside one.
  double start_ = std::numeric_limits<double>::quiet_NaN();
  double last_t_ = 0.0;
};

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;
// Continuous extension coefficients.
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;
// Step bound as a multiple of 1 / |dominant eigenvalue|.
constexpr double kStabilityMargin = 2.6;

}  // namespace

SimulationTrace simulate(const KineticModel& model, std::span<const double> s0, const IntegratorConfig& cfg) {
  cfg.validate();
  const std::size_t n = model.dimension();
  if (s0.size() != n) throw std::invalid_argument("initial state dimension mismatch");
  for (double x : s0)
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("initial state must be finite and nonnegative");

  SimulationTrace trace;
  trace.species = model.species();
  const auto sample_times = cfg.resolved_sample_times();
  std::size_t next_sample = 0;

  std::vector<double> y(s0.begin(), s0.end()), y_new(n), y_stage(n), err(n);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  double t = 0.0;
  model.rhs(y, k1);

  SteadyMonitor monitor(cfg.ss_tol, cfg.ss_window);
  monitor.observe(t, inf_norm(k1));

  auto log_event = [&](IntegrationEvent::Kind kind, double at, std::size_t i, double value) {
    if (trace.events.size() < SimulationTrace::kMaxLoggedEvents) trace.events.push_back({kind, at, i, value});
  };
  auto emit_sample = [&](double ts, std::vector<double> state) {
    for (std::size_t i = 0; i < n; ++i)
      if (state[i] < 0.0) {
        log_event(IntegrationEvent::Kind::Clamp, ts, i, state[i]);
        ++trace.clamp_count;
        state[i] = 0.0;
      }
    trace.times.push_back(ts);
    trace.states.push_back(std::move(state));
  };
  while (next_sample < sample_times.size() && sample_times[next_sample] <= 0.0)
    emit_sample(sample_times[next_sample++], y);

  auto scale = [&](double a, double b) {
    return cfg.atol + cfg.rtol * std::max(std::abs(a), std::abs(b));
  };

  // Initial step size (Hairer, Norsett & Wanner, II.4).
  double h;
  {
    double d0 = 0.0, d1n = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = scale(y[i], y[i]);
      d0 += (y[i] / sc) * (y[i] / sc);
      d1n += (k1[i] / sc) * (k1[i] / sc);
    }
    d0 = std::sqrt(d0 / std::max<std::size_t>(n, 1));
    d1n = std::sqrt(d1n / std::max<std::size_t>(n, 1));
    double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h0 = std::min(h0, cfg.t_end);
    for (std::size_t i = 0; i < n; ++i) y_stage[i] = y[i] + h0 * k1[i];
    model.rhs(y_stage, k2);
    double d2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = scale(y[i], y[i]);
      d2 += ((k2[i] - k1[i]) / sc) * ((k2[i] - k1[i]) / sc);
    }
    d2 = std::sqrt(d2 / std::max<std::size_t>(n, 1)) / h0;
    const double dm = std::max(d1n, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 1.0 / 5.0);
    h = std::min(100.0 * h0, h1);
  }

  std::size_t steps = 0;
  while (t < cfg.t_end) {
    if (steps++ >= cfg.max_steps)
      throw IntegrationError(IntegrationError::Kind::MaxStepsExceeded, t,
                             "maximum number of steps exceeded at t = " + std::to_string(t));
    bool last = false;
    if (cfg.max_step > 0.0) h = std::min(h, cfg.max_step);
    if (t + h >= cfg.t_end || cfg.t_end - (t + h) < 1e-12 * cfg.t_end) {
      h = cfg.t_end - t;
      last = true;
    }
    if (h <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
      throw IntegrationError(IntegrationError::Kind::StepSizeUnderflow, t,
                             "step size underflow at t = " + std::to_string(t) + " (stiff system?)");

    for (std::size_t i = 0; i < n; ++i) y_stage[i] = y[i] + h * a21 * k1[i];
    model.rhs(y_stage, k2);
    for (std::size_t i = 0; i < n; ++i) y_stage[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    model.rhs(y_stage, k3);
    for (std::size_t i = 0; i < n; ++i) y_stage[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    model.rhs(y_stage, k4);
    for (std::size_t i = 0; i < n; ++i)
      y_stage[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    model.rhs(y_stage, k5);
    for (std::size_t i = 0; i < n; ++i)
      y_stage[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    model.rhs(y_stage, k6);
    for (std::size_t i = 0; i < n; ++i)
      y_new[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    model.rhs(y_new, k7);

    // Dominant eigenvalue estimate from the last two stages (same abscissa).
    double stiff_num = 0.0, stiff_den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      stiff_num += (k7[i] - k6[i]) * (k7[i] - k6[i]);
      stiff_den += (y_new[i] - y_stage[i]) * (y_new[i] - y_stage[i]);
    }
    const double rho = stiff_den > 0.0 ? std::sqrt(stiff_num / stiff_den) : 0.0;

    double err_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double r = err[i] / scale(y[i], y_new[i]);
      err_norm += r * r;
    }
    err_norm = std::sqrt(err_norm / std::max<std::size_t>(n, 1));
    if (!std::isfinite(err_norm)) err_norm = 1e10;

    if (err_norm > 1.0) {
      ++trace.steps_rejected;
      h *= std::max(0.2, 0.9 * std::pow(err_norm, -0.2));
      continue;
    }
    std::size_t negative = n;
    for (std::size_t i = 0; i < n; ++i)
      if (y_new[i] < -cfg.atol) {
        negative = i;
        break;
      }
    if (negative < n) {
      ++trace.steps_rejected;
      log_event(IntegrationEvent::Kind::NegativeRejection, t + h, negative, y_new[negative]);
      h *= 0.5;
      continue;
    }

    const double t_new = last ? cfg.t_end : t + h;
    while (next_sample < sample_times.size() && sample_times[next_sample] <= t_new) {
      const double ts = sample_times[next_sample++];
      const double theta = std::clamp((ts - t) / h, 0.0, 1.0);
      const double theta1 = 1.0 - theta;
      std::vector<double> ys(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double ydiff = y_new[i] - y[i];
        const double bspl = h * k1[i] - ydiff;
        const double r4 = ydiff - h * k7[i] - bspl;
        const double r5 = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
        ys[i] = y[i] + theta * (ydiff + theta1 * (bspl + theta * (r4 + theta1 * r5)));
      }
      emit_sample(ts, std::move(ys));
    }

    bool clamped = false;
    for (std::size_t i = 0; i < n; ++i)
      if (y_new[i] < 0.0) {
        log_event(IntegrationEvent::Kind::Clamp, t_new, i, y_new[i]);
        ++trace.clamp_count;
        y_new[i] = 0.0;
        clamped = true;
      }
    if (clamped) model.rhs(y_new, k7);

    t = t_new;
    std::swap(y, y_new);
    std::swap(k1, k7);
    ++trace.steps_accepted;
    monitor.observe(t, inf_norm(k1));

    const double fac = err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
    h *= fac;
    // Stay inside the real stability interval (about -3.3) so decaying modes
    // keep decaying instead of hovering at the error tolerance.
    if (rho > 0.0) h = std::min(h, kStabilityMargin / rho);
  }

  trace.steady_state = monitor.result(y, inf_norm(k1));
  return trace;
}

SimulationTrace simulate(const Crn& mas, std::span<const double> s0, const IntegratorConfig& cfg) {
  return simulate(KineticModel::from_crn(mas), s0, cfg);
}

SimulationTrace simulate(const MsCrc& c, std::span<const double> s0, const IntegratorConfig& cfg) {
  return simulate(c.crn(), s0, cfg);
}

SimulationTrace simulate(const CoupledSystem& c, std::span<const double> s0, const IntegratorConfig& cfg) {
  return simulate(c.mscrc.crn(), s0, cfg);
}

SimulationTrace simulate(const ReducedSystem& reduced, const Crn& driver, std::span<const double> s0,
                         const IntegratorConfig& cfg) {
  return simulate(KineticModel::from_reduced(reduced, driver), s0, cfg);
}

std::optional<SteadyState> detect_steady_state(const SimulationTrace& trace, const KineticModel& model,
                                               const IntegratorConfig& cfg) {
  if (trace.states.empty()) return std::nullopt;
  SteadyMonitor monitor(cfg.ss_tol, cfg.ss_window);
  double residual = 0.0;
  for (std::size_t k = 0; k < trace.states.size(); ++k) {
    residual = inf_norm(model.rhs(trace.states[k]));
    monitor.observe(trace.times[k], residual);
  }
  return monitor.result(trace.states.back(), residual);
}

std::vector<bool> check_persistence(const SimulationTrace& trace, double threshold, double tail_fraction) {
  if (trace.states.empty()) throw std::invalid_argument("check_persistence: empty trace");
  if (!(tail_fraction > 0.0) || tail_fraction > 1.0)
    throw std::invalid_argument("check_persistence: tail_fraction must lie in (0, 1]");
  const double t0 = trace.times.front();
  const double t1 = trace.times.back();
  const double cut = t1 - tail_fraction * (t1 - t0);
  const std::size_t n = trace.species.size();
  std::vector<double> low(n, std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < trace.states.size(); ++k) {
    if (trace.times[k] < cut) continue;
    for (std::size_t i = 0; i < n; ++i) low[i] = std::min(low[i], trace.states[k][i]);
  }
  std::vector<bool> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = low[i] >= threshold;
  return out;
}

double pseudo_helmholtz(std::span<const double> s, std::span<const double> sbar) {
  if (s.size() != sbar.size()) throw std::invalid_argument("pseudo_helmholtz: dimension mismatch");
  double v = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (!(s[j] > 0.0) || !(sbar[j] > 0.0)) throw std::domain_error("pseudo_helmholtz needs positive arguments");
    v += s[j] * (std::log(s[j]) - std::log(sbar[j]) - 1.0) + sbar[j];
  }
  return v;
}

double conservation_residual(const SimulationTrace& trace, std::span<const double> v) {
  if (trace.states.empty()) return 0.0;
  if (v.size() != trace.species.size()) throw std::invalid_argument("conservation_residual: dimension mismatch");
  auto dot = [&](const std::vector<double>& s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) acc += v[i] * s[i];
    return acc;
  };
  const double base = dot(trace.states.front());
  double worst = 0.0;
  for (const auto& s : trace.states) worst = std::max(worst, std::abs(dot(s) - base));
  return worst;
}

}  // namespace crncomp
