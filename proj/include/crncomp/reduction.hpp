#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crncomp/core.hpp"

namespace crncomp {

/// kappa_j and the input-species exponents of reaction j's reactant: the
/// reduced rate is kappa_j * prod_i x_i(t)^e_i.
struct RateSpec {
  double kappa = 0.0;
  std::vector<std::pair<std::string, Coefficient>> input_exponents;
};

/// A reaction whose projection onto the outputs has zero net change.
struct DroppedReaction {
  std::size_t original_index = 0;
  Complex projected;  // over the reduced species
};

/// Reduced system of an msCRC: the network projected onto its output
/// species, with input concentrations absorbed into time-varying rates.
///
/// base() is a generalized mass-action network over the outputs. Its rate
/// laws are monomials over the external species input_names(), so
/// mass_action_rhs(base(), y, x) gives the output dynamics for input state x.
class ReducedSystem {
 public:
  ReducedSystem(Crn base, std::vector<std::string> input_names, std::vector<std::size_t> origin,
                std::vector<DroppedReaction> dropped);

  const Crn& base() const { return base_; }
  const std::vector<std::string>& input_names() const { return input_names_; }
  /// Original reaction index of each reduced reaction.
  const std::vector<std::size_t>& origin() const { return origin_; }
  const std::vector<DroppedReaction>& dropped() const { return dropped_; }

  RateSpec rate_spec(std::size_t reaction) const;

 private:
  Crn base_;
  std::vector<std::string> input_names_;
  std::vector<std::size_t> origin_;
  std::vector<DroppedReaction> dropped_;
};

ReducedSystem reduce_mscrc(const MsCrc& c);

/// Constant-rate network obtained by holding the inputs at `xbar` (ordered
/// as input_names()). Throws std::invalid_argument on a dimension mismatch
/// or a nonpositive component.
Crn freeze_inputs(const ReducedSystem& r, std::span<const double> xbar);

/// Human-readable rate, e.g. "1 * Y1^2 * Y3".
std::string describe_rate(const ReducedSystem& r, std::size_t reaction);

}  // namespace crncomp
