#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "crncomp/core.hpp"
#include "crncomp/dynamics.hpp"
#include "crncomp/reduction.hpp"

namespace crncomp {

struct OutputComparison {
  std::string species;
  double target = 0.0;
  double achieved = 0.0;
  double abs_error = 0.0;
};

struct NamedValue {
  std::string species;
  double value = 0.0;
};

struct VerifyOptions {
  double tolerance = 1e-4;
  double persistence_threshold = 1e-3;
  double tail_fraction = 0.2;
};

/// Numerical evidence for a computation or a composition. `passed` holds
/// iff every steady state was detected and max_error <= tolerance.
struct VerificationReport {
  std::string kind;
  bool passed = false;
  double tolerance = 0.0;
  double max_error = 0.0;
  bool steady_states_detected = false;
  std::vector<OutputComparison> comparisons;
  /// Persistence of the compared output species (informational).
  std::vector<std::pair<std::string, bool>> persistence;
  std::vector<std::string> failures;
  /// Layer-by-layer limits: upstream outputs, then the downstream outputs
  /// of the frozen-input reduced system.
  std::vector<NamedValue> upstream_baseline;
  std::vector<NamedValue> downstream_baseline;
  std::vector<std::pair<std::string, SimulationTrace>> traces;
};

/// Simulates `c` from (x0, y0) (ordered as c.inputs(), c.outputs()) and
/// compares the steady outputs with `target`.
VerificationReport verify_dynamic_computation(const MsCrc& c, std::span<const double> x0, std::span<const double> y0,
                                              std::span<const double> target, const VerifyOptions& options = {},
                                              const IntegratorConfig& cfg = {});

/// Three runs: c1 alone (upstream limits), the reduced c2 with inputs frozen
/// at those limits (downstream baseline), and the coupled system. Passes iff
/// the coupled limits reproduce both baselines. x0 and y0_1 follow c1's
/// inputs and outputs, y0_2 follows c2's outputs. Throws WiringError when
/// the networks cannot be coupled.
VerificationReport verify_composition_numeric(const MsCrc& c1, const MsCrc& c2, std::span<const double> x0,
                                              std::span<const double> y0_1, std::span<const double> y0_2,
                                              const VerifyOptions& options = {}, const IntegratorConfig& cfg = {});

enum class LimitOutcome { ConvergedToEquilibrium, ApproachedBoundary, Inconclusive };

const char* to_string(LimitOutcome o);

struct DescentProbeOptions {
  /// Descent is only required while the distance to the equilibrium is >= eta.
  double eta = 1e-3;
  /// The input counts as settled once it stays within settle_tol of its
  /// final value.
  double settle_tol = 1e-3;
  double slack = 1e-10;
  double persistence_threshold = 1e-3;
  double tail_fraction = 0.2;
};

struct DescentProbeReport {
  std::vector<double> times;
  /// V(y(t), sbar); NaN where some component of y(t) is zero.
  std::vector<double> values;
  double input_settle_time = 0.0;
  /// V nonincreasing (within slack) after the input settled, while away
  /// from the equilibrium.
  bool descent_after_settle = false;
  /// Earliest sample time from which the descent condition holds.
  double descent_onset = 0.0;
  LimitOutcome outcome = LimitOutcome::Inconclusive;
  std::vector<bool> persistent;
  double final_distance = 0.0;
};

/// Runs the reduced system with its inputs driven by `driver` and checks
/// the pseudo-Helmholtz function against `sbar`, the equilibrium of the
/// reduced system with inputs frozen at their limit. `driver_s0` and `y0`
/// follow the driver species and the reduced species.
DescentProbeReport lyapunov_descent_probe(const ReducedSystem& reduced, const Crn& driver,
                                          std::span<const double> driver_s0, std::span<const double> y0,
                                          std::span<const double> sbar, const DescentProbeOptions& options = {},
                                          const IntegratorConfig& cfg = {});

nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const DescentProbeReport& report);

}  // namespace crncomp
