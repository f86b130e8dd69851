#include "crncomp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "crncomp/composability.hpp"
#include "crncomp/compose.hpp"

namespace crncomp {

namespace {

std::vector<double> assemble_state(const MsCrc& c, std::span<const double> x0, std::span<const double> y0) {
  if (x0.size() != c.inputs().size())
    throw std::invalid_argument("expected " + std::to_string(c.inputs().size()) + " input values");
  if (y0.size() != c.outputs().size())
    throw std::invalid_argument("expected " + std::to_string(c.outputs().size()) + " output values");
  std::vector<double> s(c.crn().species_count(), 0.0);
  for (std::size_t k = 0; k < x0.size(); ++k) s[c.inputs()[k]] = x0[k];
  for (std::size_t k = 0; k < y0.size(); ++k) s[c.outputs()[k]] = y0[k];
  return s;
}

/// Limit of a trace: the steady-state estimate when detected, otherwise the
/// final state (flagged by the caller).
const std::vector<double>& limit_of(const SimulationTrace& tr) {
  return tr.steady_state ? tr.steady_state->estimate : tr.final_state();
}

void compare(VerificationReport& rep, const std::string& name, double target, double achieved) {
  const double e = std::abs(target - achieved);
  rep.comparisons.push_back({name, target, achieved, e});
  rep.max_error = std::max(rep.max_error, e);
}

void finish(VerificationReport& rep) {
  rep.passed = rep.steady_states_detected && rep.max_error <= rep.tolerance && std::isfinite(rep.max_error);
  if (rep.max_error > rep.tolerance)
    rep.failures.push_back("max error " + std::to_string(rep.max_error) + " exceeds tolerance " +
                           std::to_string(rep.tolerance));
}

}  // namespace

const char* to_string(LimitOutcome o) {
  switch (o) {
    case LimitOutcome::ConvergedToEquilibrium: return "converged_to_equilibrium";
    case LimitOutcome::ApproachedBoundary: return "approached_boundary";
    case LimitOutcome::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

VerificationReport verify_dynamic_computation(const MsCrc& c, std::span<const double> x0, std::span<const double> y0,
                                              std::span<const double> target, const VerifyOptions& options,
                                              const IntegratorConfig& cfg) {
  if (target.size() != c.outputs().size()) throw std::invalid_argument("target dimension must match outputs");
  VerificationReport rep;
  rep.kind = "dynamic_computation";
  rep.tolerance = options.tolerance;
  const auto s0 = assemble_state(c, x0, y0);
  auto trace = simulate(c, s0, cfg);
  rep.steady_states_detected = trace.steady_state.has_value();
  if (!rep.steady_states_detected) rep.failures.push_back("steady state not reached within t_end");
  const auto& lim = limit_of(trace);
  const auto persistent = check_persistence(trace, options.persistence_threshold, options.tail_fraction);
  for (std::size_t k = 0; k < c.outputs().size(); ++k) {
    const auto id = c.outputs()[k];
    compare(rep, c.crn().name(id), target[k], lim[id]);
    rep.persistence.emplace_back(c.crn().name(id), persistent[id]);
  }
  rep.traces.emplace_back("computation", std::move(trace));
  finish(rep);
  return rep;
}

VerificationReport verify_composition_numeric(const MsCrc& c1, const MsCrc& c2, std::span<const double> x0,
                                              std::span<const double> y0_1, std::span<const double> y0_2,
                                              const VerifyOptions& options, const IntegratorConfig& cfg) {
  const CoupledSystem coupled = couple(c1, c2);
  if (y0_2.size() != c2.outputs().size())
    throw std::invalid_argument("expected " + std::to_string(c2.outputs().size()) + " downstream output values");

  VerificationReport rep;
  rep.kind = "composition";
  rep.tolerance = options.tolerance;

  const auto s1 = assemble_state(c1, x0, y0_1);
  std::vector<double> s_coupled = s1;
  s_coupled.insert(s_coupled.end(), y0_2.begin(), y0_2.end());

  // Upstream and coupled runs are independent.
  auto upstream_job = std::async(std::launch::async, [&] { return simulate(c1, s1, cfg); });
  auto coupled_trace = simulate(coupled, s_coupled, cfg);
  auto upstream_trace = upstream_job.get();

  rep.steady_states_detected = true;
  if (!upstream_trace.steady_state) {
    rep.steady_states_detected = false;
    rep.failures.push_back("upstream network did not reach a steady state");
  }
  const auto& y1_lim = limit_of(upstream_trace);
  for (auto id : c1.outputs()) rep.upstream_baseline.push_back({c1.crn().name(id), y1_lim[id]});

  // Downstream baseline: reduced c2 with inputs frozen at the upstream limits.
  const ReducedSystem reduced = reduce_mscrc(c2);
  std::vector<double> xbar;
  for (const auto& name : reduced.input_names()) xbar.push_back(y1_lim[*c1.crn().find(name)]);
  std::optional<SimulationTrace> baseline_trace;
  try {
    baseline_trace = simulate(freeze_inputs(reduced, xbar), y0_2, cfg);
  } catch (const std::invalid_argument& e) {
    rep.steady_states_detected = false;
    rep.failures.push_back(std::string("cannot freeze downstream inputs: ") + e.what());
  }
  if (baseline_trace) {
    if (!baseline_trace->steady_state) {
      rep.steady_states_detected = false;
      rep.failures.push_back("frozen-input downstream system did not reach a steady state");
    }
    const auto& y2_lim = limit_of(*baseline_trace);
    for (std::size_t k = 0; k < y2_lim.size(); ++k)
      rep.downstream_baseline.push_back({reduced.base().name(k), y2_lim[k]});
  }

  if (!coupled_trace.steady_state) {
    rep.steady_states_detected = false;
    rep.failures.push_back("coupled system did not reach a steady state");
  }
  const auto& lim = limit_of(coupled_trace);
  const auto persistent = check_persistence(coupled_trace, options.persistence_threshold, options.tail_fraction);
  for (std::size_t k = 0; k < coupled.upstream_outputs.size(); ++k) {
    const auto id = coupled.upstream_outputs[k];
    compare(rep, coupled.mscrc.crn().name(id), rep.upstream_baseline[k].value, lim[id]);
    rep.persistence.emplace_back(coupled.mscrc.crn().name(id), persistent[id]);
  }
  if (baseline_trace) {
    for (std::size_t k = 0; k < coupled.downstream_outputs.size(); ++k) {
      const auto id = coupled.downstream_outputs[k];
      compare(rep, coupled.mscrc.crn().name(id), rep.downstream_baseline[k].value, lim[id]);
      rep.persistence.emplace_back(coupled.mscrc.crn().name(id), persistent[id]);
    }
  } else {
    rep.max_error = std::numeric_limits<double>::infinity();
  }

  rep.traces.emplace_back("upstream", std::move(upstream_trace));
  if (baseline_trace) rep.traces.emplace_back("downstream_frozen", std::move(*baseline_trace));
  rep.traces.emplace_back("coupled", std::move(coupled_trace));
  finish(rep);
  return rep;
}

DescentProbeReport lyapunov_descent_probe(const ReducedSystem& reduced, const Crn& driver,
                                          std::span<const double> driver_s0, std::span<const double> y0,
                                          std::span<const double> sbar, const DescentProbeOptions& options,
                                          const IntegratorConfig& cfg) {
  const std::size_t nd = driver.species_count();
  const std::size_t ny = reduced.base().species_count();
  if (driver_s0.size() != nd || y0.size() != ny || sbar.size() != ny)
    throw std::invalid_argument("lyapunov_descent_probe: dimension mismatch");
  std::vector<double> s0(driver_s0.begin(), driver_s0.end());
  s0.insert(s0.end(), y0.begin(), y0.end());
  const auto trace = simulate(reduced, driver, s0, cfg);

  std::vector<std::size_t> input_slots;
  for (const auto& name : reduced.input_names()) input_slots.push_back(*driver.find(name));

  DescentProbeReport rep;
  const std::size_t m = trace.states.size();
  rep.times = trace.times;
  rep.values.resize(m);
  std::vector<double> dist(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::span<const double> y(trace.states[k].data() + nd, ny);
    double d = 0.0;
    for (std::size_t i = 0; i < ny; ++i) d = std::max(d, std::abs(y[i] - sbar[i]));
    dist[k] = d;
    const bool positive = std::all_of(y.begin(), y.end(), [](double v) { return v > 0.0; });
    rep.values[k] = positive ? pseudo_helmholtz(y, sbar) : std::numeric_limits<double>::quiet_NaN();
  }

  // Settle time: from here on the input stays near its final value.
  const auto& final_state = trace.final_state();
  std::size_t settle = m - 1;
  for (std::size_t k = m; k-- > 0;) {
    bool near = true;
    for (auto slot : input_slots) near &= std::abs(trace.states[k][slot] - final_state[slot]) <= options.settle_tol;
    if (!near) break;
    settle = k;
  }
  rep.input_settle_time = trace.times[settle];

  auto violation = [&](std::size_t k) {
    if (dist[k] < options.eta) return false;
    if (std::isnan(rep.values[k]) || std::isnan(rep.values[k + 1])) return false;
    return rep.values[k + 1] > rep.values[k] + options.slack;
  };
  rep.descent_after_settle = true;
  std::size_t onset = 0;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    if (!violation(k)) continue;
    onset = k + 1;
    if (k >= settle) rep.descent_after_settle = false;
  }
  rep.descent_onset = trace.times[onset];

  const auto persistent = check_persistence(trace, options.persistence_threshold, options.tail_fraction);
  rep.persistent.assign(persistent.begin() + static_cast<std::ptrdiff_t>(nd), persistent.end());
  rep.final_distance = dist.back();
  const bool all_persistent = std::all_of(rep.persistent.begin(), rep.persistent.end(), [](bool b) { return b; });
  if (!all_persistent)
    rep.outcome = LimitOutcome::ApproachedBoundary;
  else if (rep.final_distance <= options.eta)
    rep.outcome = LimitOutcome::ConvergedToEquilibrium;
  else
    rep.outcome = LimitOutcome::Inconclusive;
  return rep;
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json j;
  j["kind"] = report.kind;
  j["passed"] = report.passed;
  j["tolerance"] = report.tolerance;
  j["max_error"] = std::isfinite(report.max_error) ? nlohmann::json(report.max_error) : nlohmann::json(nullptr);
  j["steady_states_detected"] = report.steady_states_detected;
  auto cmp = nlohmann::json::array();
  for (const auto& c : report.comparisons)
    cmp.push_back({{"species", c.species}, {"target", c.target}, {"achieved", c.achieved}, {"abs_error", c.abs_error}});
  j["outputs"] = cmp;
  auto pers = nlohmann::json::object();
  for (const auto& [name, ok] : report.persistence) pers[name] = ok;
  j["persistence"] = pers;
  j["failures"] = report.failures;
  auto named = [](const std::vector<NamedValue>& v) {
    auto o = nlohmann::json::object();
    for (const auto& nv : v) o[nv.species] = nv.value;
    return o;
  };
  if (report.kind == "composition") {
    j["upstream_baseline"] = named(report.upstream_baseline);
    j["downstream_baseline"] = named(report.downstream_baseline);
  }
  auto traces = nlohmann::json::array();
  for (const auto& [name, tr] : report.traces) {
    nlohmann::json t{{"name", name},
                     {"samples", tr.times.size()},
                     {"t_end", tr.times.empty() ? 0.0 : tr.times.back()},
                     {"steps_accepted", tr.steps_accepted},
                     {"steps_rejected", tr.steps_rejected},
                     {"clamps", tr.clamp_count}};
    t["steady_state_t_reached"] = tr.steady_state ? nlohmann::json(tr.steady_state->t_reached) : nlohmann::json(nullptr);
    traces.push_back(t);
  }
  j["traces"] = traces;
  return j;
}

nlohmann::json to_json(const DescentProbeReport& report) {
  return {{"input_settle_time", report.input_settle_time},
          {"descent_after_settle", report.descent_after_settle},
          {"descent_onset", report.descent_onset},
          {"outcome", to_string(report.outcome)},
          {"persistent", report.persistent},
          {"final_distance", report.final_distance}};
}

}  // namespace crncomp
