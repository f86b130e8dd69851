#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crncomp/compose.hpp"
#include "crncomp/core.hpp"
#include "crncomp/reduction.hpp"

namespace crncomp {

struct IntegratorConfig {
  double rtol = 1e-8;
  double atol = 1e-10;
  double t_end = 100.0;
  std::size_t max_steps = 10'000'000;
  /// Steady state: ||rhs||_inf <= ss_tol held for at least ss_window.
  double ss_tol = 1e-9;
  double ss_window = 5.0;
  /// Uniform sample intervals over [0, t_end]; ignored when sample_times
  /// is non-empty.
  std::size_t samples = 1000;
  std::vector<double> sample_times;
  /// Upper bound on the step size, keeps the steady-state monitor sampling
  /// the residual often enough. 0 disables the bound.
  double max_step = 1.0;

  /// Throws std::invalid_argument on nonpositive tolerances or horizon.
  void validate() const;
  std::vector<double> resolved_sample_times() const;
};

struct SteadyState {
  std::vector<double> estimate;
  double residual = 0.0;
  /// Start of the window over which the residual stayed below ss_tol.
  double t_reached = 0.0;
};

struct IntegrationEvent {
  enum class Kind { Clamp, NegativeRejection };
  Kind kind = Kind::Clamp;
  double t = 0.0;
  std::size_t species = 0;
  double value = 0.0;
};

struct SimulationTrace {
  std::vector<std::string> species;
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::optional<SteadyState> steady_state;
  /// At most kMaxLoggedEvents entries; the counters below are exact.
  std::vector<IntegrationEvent> events;
  std::size_t clamp_count = 0;
  std::size_t steps_accepted = 0;
  std::size_t steps_rejected = 0;

  static constexpr std::size_t kMaxLoggedEvents = 10000;

  std::size_t index_of(std::string_view name) const;
  std::vector<double> series(std::size_t species_index) const;
  const std::vector<double>& final_state() const { return states.back(); }
  /// Sampled state at the first sample time >= t.
  const std::vector<double>& state_at(double t) const;
};

class IntegrationError : public std::runtime_error {
 public:
  enum class Kind { MaxStepsExceeded, StepSizeUnderflow };

  IntegrationError(Kind kind, double t, const std::string& message)
      : std::runtime_error(message), kind_(kind), t_(t) {}

  Kind kind() const { return kind_; }
  double time() const { return t_; }

 private:
  Kind kind_;
  double t_;
};

/// Flattened ODE right-hand side sum_j k_j * s^m_j * d_j, where m_j is the
/// rate monomial (reactant plus any input factors) and d_j the net change.
class KineticModel {
 public:
  /// Requires constant rates.
  static KineticModel from_crn(const Crn& crn);

  /// Reduced system co-integrated with a driver network that produces its
  /// inputs. State layout: driver species, then the reduced outputs.
  static KineticModel from_reduced(const ReducedSystem& reduced, const Crn& driver);

  const std::vector<std::string>& species() const { return species_; }
  std::size_t dimension() const { return species_.size(); }

  void rhs(std::span<const double> state, std::span<double> out) const;
  std::vector<double> rhs(std::span<const double> state) const;

 private:
  struct Term {
    double k = 0.0;
    std::vector<std::pair<std::size_t, Coefficient>> monomial;
    std::vector<std::pair<std::size_t, std::int64_t>> change;
  };

  std::vector<std::string> species_;
  std::vector<Term> terms_;
};

/// Adaptive Dormand-Prince 5(4) integration with dense output at the sample
/// times. Proposed steps with a component below -atol are rejected; values
/// in [-atol, 0) are clamped to 0 and logged. Throws IntegrationError.
SimulationTrace simulate(const KineticModel& model, std::span<const double> s0, const IntegratorConfig& cfg = {});
SimulationTrace simulate(const Crn& mas, std::span<const double> s0, const IntegratorConfig& cfg = {});
SimulationTrace simulate(const MsCrc& c, std::span<const double> s0, const IntegratorConfig& cfg = {});
SimulationTrace simulate(const CoupledSystem& c, std::span<const double> s0, const IntegratorConfig& cfg = {});
/// Reduced system with its inputs bound to a co-simulated driver network.
/// `s0` covers the driver species followed by the reduced species.
SimulationTrace simulate(const ReducedSystem& reduced, const Crn& driver, std::span<const double> s0,
                         const IntegratorConfig& cfg = {});

/// Offline steady-state scan over the sampled states of a trace.
std::optional<SteadyState> detect_steady_state(const SimulationTrace& trace, const KineticModel& model,
                                               const IntegratorConfig& cfg);

/// Per species: min over the trailing `tail_fraction` of the time span >=
/// threshold.
std::vector<bool> check_persistence(const SimulationTrace& trace, double threshold, double tail_fraction);

/// sum_j s_j (ln s_j - ln sbar_j - 1) + sbar_j. Zero at s == sbar and
/// positive elsewhere. Throws std::domain_error on a nonpositive component.
double pseudo_helmholtz(std::span<const double> s, std::span<const double> sbar);

/// max_t |v . s(t) - v . s(0)| over the sampled states.
double conservation_residual(const SimulationTrace& trace, std::span<const double> v);

}  // namespace crncomp
