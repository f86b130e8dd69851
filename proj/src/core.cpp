#include "crncomp/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace crncomp {

namespace {

double ipow(double base, Coefficient exp) {
  double result = 1.0;
  while (exp > 0) {
    if (exp & 1u) result *= base;
    base *= base;
    exp >>= 1u;
  }
  return result;
}

}  // namespace

Complex::Complex(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end());
  for (const auto& [id, coeff] : terms) {
    if (coeff == 0) continue;
    if (!terms_.empty() && terms_.back().first == id) {
      const std::uint64_t merged = std::uint64_t{terms_.back().second} + coeff;
      if (merged > kMaxCoefficient) throw std::out_of_range("stoichiometric coefficient exceeds 2^31");
      terms_.back().second = static_cast<Coefficient>(merged);
    } else {
      if (coeff > kMaxCoefficient) throw std::out_of_range("stoichiometric coefficient exceeds 2^31");
      terms_.emplace_back(id, coeff);
    }
  }
}

Coefficient Complex::coefficient(SpeciesId id) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), id,
                             [](const Term& t, SpeciesId v) { return t.first < v; });
  return (it != terms_.end() && it->first == id) ? it->second : 0;
}

std::uint64_t Complex::order() const {
  std::uint64_t total = 0;
  for (const auto& t : terms_) total += t.second;
  return total;
}

RateLaw::RateLaw(double k, std::vector<MonomialFactor> factors) : k_(k), factors_(std::move(factors)) {
  if (!(k_ > 0.0) || !std::isfinite(k_)) throw std::invalid_argument("rate constant must be positive and finite");
  std::erase_if(factors_, [](const MonomialFactor& f) { return f.exponent == 0; });
  std::sort(factors_.begin(), factors_.end(),
            [](const MonomialFactor& a, const MonomialFactor& b) { return a.external < b.external; });
}

RateLaw RateLaw::constant(double k) { return RateLaw(k, {}); }

RateLaw RateLaw::time_varying(double k, std::vector<MonomialFactor> factors) {
  return RateLaw(k, std::move(factors));
}

double RateLaw::evaluate(std::span<const double> external) const {
  double value = k_;
  for (const auto& f : factors_) {
    if (f.external >= external.size())
      throw std::out_of_range("time-varying rate refers to a missing external species");
    value *= ipow(external[f.external], f.exponent);
  }
  return value;
}

Reaction::Reaction(Complex reactant_, Complex product_, RateLaw rate_)
    : reactant(std::move(reactant_)), product(std::move(product_)), rate(std::move(rate_)) {
  if (reactant == product) throw std::invalid_argument("reaction has identical reactant and product");
}

std::int64_t Reaction::net_change(SpeciesId id) const {
  return static_cast<std::int64_t>(product.coefficient(id)) - static_cast<std::int64_t>(reactant.coefficient(id));
}

Crn::Crn(std::vector<std::string> species_names, std::vector<Reaction> reactions)
    : reactions_(std::move(reactions)) {
  std::unordered_set<std::string> seen;
  species_.reserve(species_names.size());
  for (auto& name : species_names) {
    if (name.empty()) throw std::invalid_argument("empty species name");
    if (!seen.insert(name).second) throw std::invalid_argument("duplicate species name: " + name);
    species_.push_back(Species{species_.size(), std::move(name)});
  }
  for (const auto& r : reactions_) {
    for (const auto* c : {&r.reactant, &r.product})
      for (const auto& [id, coeff] : c->terms())
        if (id >= species_.size()) throw std::invalid_argument("reaction refers to an unknown species id");
  }
}

std::optional<SpeciesId> Crn::find(std::string_view name) const {
  for (const auto& s : species_)
    if (s.name == name) return s.id;
  return std::nullopt;
}

std::vector<std::string> Crn::species_names() const {
  std::vector<std::string> out;
  out.reserve(species_.size());
  for (const auto& s : species_) out.push_back(s.name);
  return out;
}

MsCrc::MsCrc(Crn crn, std::vector<SpeciesId> inputs, std::vector<SpeciesId> outputs)
    : crn_(std::move(crn)), inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
  std::sort(inputs_.begin(), inputs_.end());
  std::sort(outputs_.begin(), outputs_.end());
  if (std::adjacent_find(inputs_.begin(), inputs_.end()) != inputs_.end() ||
      std::adjacent_find(outputs_.begin(), outputs_.end()) != outputs_.end())
    throw std::invalid_argument("repeated species in input or output set");
  if (inputs_.empty() || outputs_.empty())
    throw std::invalid_argument("an msCRC needs at least one input and one output species");
  std::vector<SpeciesId> overlap;
  std::set_intersection(inputs_.begin(), inputs_.end(), outputs_.begin(), outputs_.end(),
                        std::back_inserter(overlap));
  if (!overlap.empty())
    throw std::invalid_argument("species is both input and output: " + crn_.name(overlap.front()));
  if (inputs_.size() + outputs_.size() != crn_.species_count() || inputs_.back() >= crn_.species_count() ||
      outputs_.back() >= crn_.species_count())
    throw std::invalid_argument("inputs and outputs must partition the species set");
}

bool MsCrc::is_input(SpeciesId id) const { return std::binary_search(inputs_.begin(), inputs_.end(), id); }

std::vector<std::string> MsCrc::input_names() const {
  std::vector<std::string> out;
  for (auto id : inputs_) out.push_back(crn_.name(id));
  return out;
}

std::vector<std::string> MsCrc::output_names() const {
  std::vector<std::string> out;
  for (auto id : outputs_) out.push_back(crn_.name(id));
  return out;
}

std::vector<Complex> complexes(const Crn& crn) {
  std::vector<Complex> out;
  auto add = [&](const Complex& c) {
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  };
  for (const auto& r : crn.reactions()) {
    add(r.reactant);
    add(r.product);
  }
  return out;
}

IntMatrix stoichiometric_matrix(const Crn& crn) {
  IntMatrix gamma(crn.species_count(), crn.reaction_count());
  for (std::size_t j = 0; j < crn.reaction_count(); ++j) {
    const auto& r = crn.reactions()[j];
    for_each_net_change(r, [&](SpeciesId id, std::int64_t delta) { gamma(id, j) = delta; });
  }
  return gamma;
}

double monomial(const Complex& c, std::span<const double> state) {
  double value = 1.0;
  for (const auto& [id, coeff] : c.terms()) value *= ipow(state[id], coeff);
  return value;
}

std::vector<double> mass_action_rhs(const Crn& crn, std::span<const double> state,
                                    std::span<const double> external) {
  if (state.size() != crn.species_count()) throw std::invalid_argument("state dimension mismatch");
  for (double s : state)
    if (s < 0.0 || std::isnan(s)) throw std::domain_error("negative concentration in mass-action state");
  std::vector<double> out(state.size(), 0.0);
  for (const auto& r : crn.reactions()) {
    const double flux = r.rate.evaluate(external) * monomial(r.reactant, state);
    if (flux == 0.0) continue;
    for_each_net_change(r, [&](SpeciesId id, std::int64_t delta) { out[id] += flux * static_cast<double>(delta); });
  }
  return out;
}

}  // namespace crncomp
