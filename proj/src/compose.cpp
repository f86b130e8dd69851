#include "crncomp/compose.hpp"

#include "crncomp/composability.hpp"

namespace crncomp {

MsCrc rename_species(const MsCrc& c, const SpeciesRenaming& renaming) {
  auto names = c.crn().species_names();
  for (auto& n : names)
    if (auto it = renaming.find(n); it != renaming.end()) n = it->second;
  try {
    return MsCrc(Crn(std::move(names), c.crn().reactions()), c.inputs(), c.outputs());
  } catch (const std::invalid_argument& e) {
    throw WiringError(std::string("renaming produced an invalid network: ") + e.what());
  }
}

CoupledSystem couple(const MsCrc& c1, const MsCrc& c2_in, const SpeciesRenaming& renaming) {
  const MsCrc c2 = renaming.empty() ? c2_in : rename_species(c2_in, renaming);
  const auto check = check_assumptions(c1, c2);
  if (!check.ok()) {
    std::string msg = "cannot couple networks";
    for (const auto& d : check.diagnostics) msg += "; " + d;
    throw WiringError(msg);
  }

  const Crn& a = c1.crn();
  const Crn& b = c2.crn();
  std::vector<std::string> names = a.species_names();
  std::vector<SpeciesId> map_b(b.species_count());
  std::vector<SpeciesId> downstream;
  for (const auto& s : b.species()) {
    if (c2.is_input(s.id)) {
      map_b[s.id] = *a.find(s.name);
    } else {
      map_b[s.id] = names.size();
      downstream.push_back(names.size());
      names.push_back(s.name);
    }
  }

  auto remap = [&](const Complex& cx) {
    std::vector<Complex::Term> terms;
    for (const auto& [id, coeff] : cx.terms()) terms.emplace_back(map_b[id], coeff);
    return Complex(std::move(terms));
  };
  std::vector<Reaction> reactions = a.reactions();
  std::vector<Provenance> prov(reactions.size(), Provenance::Upstream);
  for (const auto& r : b.reactions()) {
    reactions.emplace_back(remap(r.reactant), remap(r.product), r.rate);
    prov.push_back(Provenance::Downstream);
  }

  std::vector<SpeciesId> outputs = c1.outputs();
  outputs.insert(outputs.end(), downstream.begin(), downstream.end());
  MsCrc coupled(Crn(std::move(names), std::move(reactions)), c1.inputs(), std::move(outputs));
  return CoupledSystem{std::move(coupled), std::move(prov), c1.outputs(), std::move(downstream)};
}

}  // namespace crncomp
