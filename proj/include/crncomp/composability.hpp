#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "crncomp/core.hpp"
#include "crncomp/reduction.hpp"
#include "crncomp/structure.hpp"

namespace crncomp {

enum class Outcome { Pass, Fail, Undetermined };

const char* to_string(Outcome o);

/// Structural check of the wiring assumptions between an upstream msCRC
/// c1 and a downstream msCRC c2:
///  - interface: outputs of c1 are exactly the inputs of c2 (by name) and
///    no output of c2 is an input of c1;
///  - catalytic inputs: no reaction of c2 changes any of its inputs.
struct AssumptionReport {
  bool interface_ok = false;
  bool catalytic_inputs = false;
  std::vector<std::string> diagnostics;

  bool ok() const { return interface_ok && catalytic_inputs; }
};

AssumptionReport check_assumptions(const MsCrc& c1, const MsCrc& c2);

struct ConditionOutcome {
  std::string name;
  Outcome outcome = Outcome::Fail;
  std::string detail;
};

struct ComposabilityVerdict {
  AssumptionReport assumptions;
  /// weakly_reversible, single_linkage_class, zero_deficiency,
  /// mass_conservative, in that order.
  std::vector<ConditionOutcome> conditions;
  bool certified = false;
  std::optional<std::vector<Rational>> conservation_vector;
  StructuralReport reduced_report;
  ReducedSystem reduced;

  /// No condition failed outright but at least one is undetermined.
  bool undetermined() const;
};

/// Sufficient structural test for dynamic composability: the reduced system
/// of c2 must be weakly reversible, have one linkage class and zero
/// deficiency, and admit a positive conservation vector. A negative verdict
/// does not imply the pair is non-composable.
///
/// Existence of the layer-by-layer limits is not decidable structurally; it
/// is left to the numeric verifier and reported as such in to_json.
ComposabilityVerdict certify_composable(const MsCrc& c1, const MsCrc& c2);

/// CLI exit code: 0 certified, 2 not certified, 3 undetermined.
int exit_code(const ComposabilityVerdict& v);

nlohmann::json to_json(const ComposabilityVerdict& v);

}  // namespace crncomp
