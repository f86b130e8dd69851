#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "crncomp/core.hpp"

namespace crncomp {

/// Raised when two msCRCs cannot be wired together.
class WiringError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Provenance { Upstream, Downstream };

/// The coupled system of an upstream msCRC c1 feeding a downstream msCRC
/// c2. Species are c1's in order, followed by c2's outputs; reactions are
/// c1's followed by c2's, rates unchanged.
struct CoupledSystem {
  MsCrc mscrc;
  std::vector<Provenance> provenance;
  std::vector<SpeciesId> upstream_outputs;
  std::vector<SpeciesId> downstream_outputs;
};

using SpeciesRenaming = std::map<std::string, std::string>;

/// Copy of `c` with species renamed; names absent from the map are kept.
MsCrc rename_species(const MsCrc& c, const SpeciesRenaming& renaming);

/// Identifies c2's inputs with c1's outputs by name (after applying
/// `renaming` to c2). Throws WiringError when the wiring assumptions fail.
CoupledSystem couple(const MsCrc& c1, const MsCrc& c2, const SpeciesRenaming& renaming = {});

}  // namespace crncomp
