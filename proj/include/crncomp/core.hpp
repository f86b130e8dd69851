#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crncomp/matrix.hpp"

namespace crncomp {

using SpeciesId = std::size_t;
using Coefficient = std::uint32_t;

/// Largest stoichiometric coefficient accepted anywhere in the toolkit.
inline constexpr Coefficient kMaxCoefficient = Coefficient{1} << 31;

struct Species {
  SpeciesId id = 0;
  std::string name;

  bool operator==(const Species&) const = default;
};

/// A nonnegative integer combination of species, stored sparsely and
/// sorted by species id. The empty complex is the zero vector.
class Complex {
 public:
  using Term = std::pair<SpeciesId, Coefficient>;

  Complex() = default;
  /// Merges repeated ids, drops zero coefficients and sorts. Throws
  /// std::out_of_range when a merged coefficient exceeds kMaxCoefficient.
  explicit Complex(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  Coefficient coefficient(SpeciesId id) const;
  bool empty() const { return terms_.empty(); }

  /// Total molecularity, the sum of all coefficients.
  std::uint64_t order() const;

  bool operator==(const Complex&) const = default;
  auto operator<=>(const Complex&) const = default;

 private:
  std::vector<Term> terms_;
};

/// One factor of a time-varying rate: an external concentration raised to
/// a positive integer power.
struct MonomialFactor {
  std::size_t external = 0;
  Coefficient exponent = 0;

  bool operator==(const MonomialFactor&) const = default;
};

/// Rate of a reaction: either a positive constant, or a positive constant
/// times a monomial in externally supplied concentrations (k * x^e).
class RateLaw {
 public:
  static RateLaw constant(double k);
  static RateLaw time_varying(double k, std::vector<MonomialFactor> factors);

  bool is_constant() const { return factors_.empty(); }
  double coefficient() const { return k_; }
  const std::vector<MonomialFactor>& factors() const { return factors_; }

  /// Value at the given external state. Constant laws ignore `external`.
  double evaluate(std::span<const double> external) const;

  bool operator==(const RateLaw&) const = default;

 private:
  RateLaw(double k, std::vector<MonomialFactor> factors);

  double k_ = 1.0;
  std::vector<MonomialFactor> factors_;
};

struct Reaction {
  Reaction(Complex reactant, Complex product, RateLaw rate);

  Complex reactant;
  Complex product;
  RateLaw rate;

  /// Net change of species `id` when the reaction fires once.
  std::int64_t net_change(SpeciesId id) const;

  bool operator==(const Reaction&) const = default;
};

/// A chemical reaction network: species plus reactions with rates.
/// Immutable once built.
class Crn {
 public:
  Crn() = default;
  Crn(std::vector<std::string> species_names, std::vector<Reaction> reactions);

  const std::vector<Species>& species() const { return species_; }
  const std::vector<Reaction>& reactions() const { return reactions_; }
  std::size_t species_count() const { return species_.size(); }
  std::size_t reaction_count() const { return reactions_.size(); }

  const std::string& name(SpeciesId id) const { return species_.at(id).name; }
  std::optional<SpeciesId> find(std::string_view name) const;
  std::vector<std::string> species_names() const;

  bool operator==(const Crn&) const = default;

 private:
  std::vector<Species> species_;
  std::vector<Reaction> reactions_;
};

/// A mass-action chemical reaction computer: a network whose species are
/// partitioned into inputs and outputs.
class MsCrc {
 public:
  MsCrc(Crn crn, std::vector<SpeciesId> inputs, std::vector<SpeciesId> outputs);

  const Crn& crn() const { return crn_; }
  /// Input and output ids, each sorted ascending.
  const std::vector<SpeciesId>& inputs() const { return inputs_; }
  const std::vector<SpeciesId>& outputs() const { return outputs_; }

  bool is_input(SpeciesId id) const;
  std::vector<std::string> input_names() const;
  std::vector<std::string> output_names() const;

  bool operator==(const MsCrc&) const = default;

 private:
  Crn crn_;
  std::vector<SpeciesId> inputs_;
  std::vector<SpeciesId> outputs_;
};

/// Distinct reactant and product complexes in first-occurrence order.
std::vector<Complex> complexes(const Crn& crn);

/// Species x reactions matrix whose column j is product_j - reactant_j.
IntMatrix stoichiometric_matrix(const Crn& crn);

/// Mass-action right-hand side sum_j rate_j * s^reactant_j * (product_j -
/// reactant_j). Time-varying rates are evaluated at `external`, the current
/// concentrations of the species their monomials refer to. Throws
/// std::domain_error on a negative state component.
std::vector<double> mass_action_rhs(const Crn& crn, std::span<const double> state,
                                    std::span<const double> external = {});

/// Calls fn(id, delta) for every species whose net change under `r` is
/// nonzero, in ascending id order.
template <typename Fn>
void for_each_net_change(const Reaction& r, Fn&& fn) {
  const auto& p = r.product.terms();
  const auto& q = r.reactant.terms();
  std::size_t i = 0, j = 0;
  while (i < p.size() || j < q.size()) {
    if (j == q.size() || (i < p.size() && p[i].first < q[j].first)) {
      fn(p[i].first, static_cast<std::int64_t>(p[i].second));
      ++i;
    } else if (i == p.size() || q[j].first < p[i].first) {
      fn(q[j].first, -static_cast<std::int64_t>(q[j].second));
      ++j;
    } else {
      const auto delta = static_cast<std::int64_t>(p[i].second) - static_cast<std::int64_t>(q[j].second);
      if (delta != 0) fn(p[i].first, delta);
      ++i;
      ++j;
    }
  }
}

/// s^complex with the convention 0^0 = 1.
double monomial(const Complex& c, std::span<const double> state);

}  // namespace crncomp
