#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

#include <json.hpp>

#include "crncomp/core.hpp"

namespace crncomp {

using Rational = mpq_class;

struct ReversibilityFlags {
  bool reversible = false;
  bool weakly_reversible = false;
};

/// Outcome of the positive conservation-vector search. `Undetermined` means
/// the numerical search failed and no structural verdict was reached.
enum class ConservationStatus { Found, Absent, Undetermined };

struct ConservationResult {
  ConservationStatus status = ConservationStatus::Absent;
  /// Present iff status == Found: primitive positive integer vector with
  /// v^T * Gamma == 0, verified exactly.
  std::optional<std::vector<Rational>> vector;
};

struct StructuralReport {
  std::size_t n_complexes = 0;
  /// Partition of complex indices (into complexes(crn)).
  std::vector<std::vector<std::size_t>> linkage_classes;
  std::size_t n_linkage_classes = 0;
  std::size_t stoich_rank = 0;
  long deficiency = 0;
  bool weakly_reversible = false;
  bool reversible = false;
  ConservationStatus conservation_status = ConservationStatus::Absent;
  std::optional<std::vector<Rational>> conservation_vector;
};

/// Connected components of the complex graph, edges taken as undirected.
/// Classes are ordered by their smallest complex index.
std::vector<std::vector<std::size_t>> linkage_classes(const Crn& crn);

/// Strongly connected components of the complex digraph; component id per
/// complex index.
std::vector<std::size_t> strong_components(const Crn& crn);

ReversibilityFlags reversibility_flags(const Crn& crn);

/// Rank over the rationals by fraction-free (Bareiss) elimination.
std::size_t exact_rank(const IntMatrix& m);

/// Rational basis of {v : v^T * m = 0}, each vector scaled to primitive
/// integers.
std::vector<std::vector<Rational>> left_null_space(const IntMatrix& m);

long deficiency(const Crn& crn);

/// Finds a strictly positive v with v^T * Gamma = 0: exact null-space basis,
/// then an LP that maximizes the smallest component, then exact
/// re-verification of the rationalized candidate.
ConservationResult conservation_vector(const Crn& crn);

StructuralReport structural_report(const Crn& crn);

/// True iff v^T * m == 0 exactly and every component of v is > 0.
bool is_positive_conservation_vector(const IntMatrix& m, const std::vector<Rational>& v);

const char* to_string(ConservationStatus s);
nlohmann::json rational_to_json(const Rational& q);
nlohmann::json to_json(const StructuralReport& report);

}  // namespace crncomp
