#pragma once

#include <cstddef>
#include <vector>

#include "crncomp/matrix.hpp"

namespace crncomp::lp {

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Solution {
  Status status = Status::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
};

/// Dense two-phase simplex with Bland's rule:
///   maximize c^T x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0.
/// Either constraint block may be empty (0 rows).
Solution maximize(const std::vector<double>& c, const Matrix<double>& a_ub, const std::vector<double>& b_ub,
                  const Matrix<double>& a_eq, const std::vector<double>& b_eq, std::size_t max_iterations = 10000);

}  // namespace crncomp::lp
