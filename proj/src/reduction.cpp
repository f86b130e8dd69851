#include "crncomp/reduction.hpp"

#include <cmath>
#include <stdexcept>

#include "crncomp/parser.hpp"

namespace crncomp {

ReducedSystem::ReducedSystem(Crn base, std::vector<std::string> input_names, std::vector<std::size_t> origin,
                             std::vector<DroppedReaction> dropped)
    : base_(std::move(base)),
      input_names_(std::move(input_names)),
      origin_(std::move(origin)),
      dropped_(std::move(dropped)) {
  if (origin_.size() != base_.reaction_count())
    throw std::invalid_argument("reduced system: origin list does not match reactions");
}

RateSpec ReducedSystem::rate_spec(std::size_t reaction) const {
  const auto& rate = base_.reactions().at(reaction).rate;
  RateSpec spec;
  spec.kappa = rate.coefficient();
  for (const auto& f : rate.factors()) spec.input_exponents.emplace_back(input_names_.at(f.external), f.exponent);
  return spec;
}

ReducedSystem reduce_mscrc(const MsCrc& c) {
  const Crn& crn = c.crn();
  // Map original ids to positions among outputs / inputs.
  std::vector<std::size_t> out_pos(crn.species_count(), 0);
  std::vector<std::size_t> in_pos(crn.species_count(), 0);
  for (std::size_t k = 0; k < c.outputs().size(); ++k) out_pos[c.outputs()[k]] = k;
  for (std::size_t k = 0; k < c.inputs().size(); ++k) in_pos[c.inputs()[k]] = k;

  auto project = [&](const Complex& cx) {
    std::vector<Complex::Term> terms;
    for (const auto& [id, coeff] : cx.terms())
      if (!c.is_input(id)) terms.emplace_back(out_pos[id], coeff);
    return Complex(std::move(terms));
  };

  std::vector<Reaction> reactions;
  std::vector<std::size_t> origin;
  std::vector<DroppedReaction> dropped;
  for (std::size_t j = 0; j < crn.reaction_count(); ++j) {
    const auto& r = crn.reactions()[j];
    Complex lhs = project(r.reactant);
    Complex rhs = project(r.product);
    if (lhs == rhs) {
      dropped.push_back({j, std::move(lhs)});
      continue;
    }
    std::vector<MonomialFactor> factors;
    for (const auto& [id, coeff] : r.reactant.terms())
      if (c.is_input(id)) factors.push_back({in_pos[id], coeff});
    reactions.emplace_back(std::move(lhs), std::move(rhs),
                           RateLaw::time_varying(r.rate.coefficient(), std::move(factors)));
    origin.push_back(j);
  }
  return ReducedSystem(Crn(c.output_names(), std::move(reactions)), c.input_names(), std::move(origin),
                       std::move(dropped));
}

Crn freeze_inputs(const ReducedSystem& r, std::span<const double> xbar) {
  if (xbar.size() != r.input_names().size())
    throw std::invalid_argument("freeze_inputs: expected " + std::to_string(r.input_names().size()) +
                                " input values, got " + std::to_string(xbar.size()));
  for (std::size_t i = 0; i < xbar.size(); ++i)
    if (!(xbar[i] > 0.0) || !std::isfinite(xbar[i]))
      throw std::invalid_argument("freeze_inputs: input " + r.input_names()[i] + " must be positive");
  std::vector<Reaction> reactions;
  for (const auto& rx : r.base().reactions())
    reactions.emplace_back(rx.reactant, rx.product, RateLaw::constant(rx.rate.evaluate(xbar)));
  return Crn(r.base().species_names(), std::move(reactions));
}

std::string describe_rate(const ReducedSystem& r, std::size_t reaction) {
  const auto spec = r.rate_spec(reaction);
  std::string out = format_number(spec.kappa);
  for (const auto& [name, e] : spec.input_exponents) {
    out += " * " + name;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace crncomp
