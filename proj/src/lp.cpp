#include "crncomp/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace crncomp::lp {

namespace {

constexpr double kEps = 1e-9;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_(rows * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t i, std::size_t j) { return t_[i * (n_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, n_); }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void set_objective(const std::vector<double>& cost) {
    obj_.assign(n_ + 1, 0.0);
    for (std::size_t j = 0; j < n_; ++j) obj_[j] = cost[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) obj_[j] -= cb * at(i, j);
    }
  }

  double objective_value() const { return -obj_[n_]; }

  void pivot(std::size_t r, std::size_t c) {
    const double p = at(r, c);
    for (std::size_t j = 0; j <= n_; ++j) at(r, j) /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
    const double f = obj_[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j <= n_; ++j) obj_[j] -= f * at(r, j);
      obj_[c] = 0.0;
    }
    basis_[r] = c;
  }

  /// Bland's rule over columns [0, allowed).
  Status optimize(std::size_t allowed, std::size_t max_iterations) {
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (obj_[j] > kEps) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return Status::Optimal;
      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a <= kEps) continue;
        const double ratio = rhs(i) / a;
        if (ratio < best - kEps || (std::abs(ratio - best) <= kEps && leave < m_ && basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave == m_) return Status::Unbounded;
      pivot(leave, enter);
    }
    return Status::IterationLimit;
  }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r * (n_ + 1)),
             t_.begin() + static_cast<std::ptrdiff_t>((r + 1) * (n_ + 1)));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<double> t_;
  std::vector<double> obj_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Solution maximize(const std::vector<double>& c, const Matrix<double>& a_ub, const std::vector<double>& b_ub,
                  const Matrix<double>& a_eq, const std::vector<double>& b_eq, std::size_t max_iterations) {
  const std::size_t nx = c.size();
  const std::size_t mu = a_ub.rows();
  const std::size_t me = a_eq.rows();
  if ((mu > 0 && a_ub.cols() != nx) || (me > 0 && a_eq.cols() != nx) || b_ub.size() != mu || b_eq.size() != me)
    throw std::invalid_argument("lp::maximize: dimension mismatch");

  // Columns: x (nx) | slacks (mu) | artificials (one per row that needs one).
  std::vector<bool> needs_art(mu + me, false);
  std::size_t n_art = 0;
  for (std::size_t i = 0; i < mu; ++i)
    if (b_ub[i] < 0.0) needs_art[i] = true, ++n_art;
  for (std::size_t i = 0; i < me; ++i) needs_art[mu + i] = true, ++n_art;

  const std::size_t n_real = nx + mu;
  Tableau tab(mu + me, n_real + n_art);
  std::size_t art = n_real;
  for (std::size_t i = 0; i < mu + me; ++i) {
    const bool ub = i < mu;
    const double b = ub ? b_ub[i] : b_eq[i - mu];
    const double sign = b < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < nx; ++j) tab.at(i, j) = sign * (ub ? a_ub(i, j) : a_eq(i - mu, j));
    if (ub) tab.at(i, nx + i) = sign;
    tab.rhs(i) = sign * b;
    if (needs_art[i]) {
      tab.at(i, art) = 1.0;
      tab.basis()[i] = art++;
    } else {
      tab.basis()[i] = nx + i;
    }
  }

  Solution sol;
  if (n_art > 0) {
    std::vector<double> phase1(n_real + n_art, 0.0);
    for (std::size_t j = n_real; j < n_real + n_art; ++j) phase1[j] = -1.0;
    tab.set_objective(phase1);
    const Status s = tab.optimize(n_real + n_art, max_iterations);
    if (s == Status::IterationLimit) {
      sol.status = s;
      return sol;
    }
    if (tab.objective_value() < -1e-7) {
      sol.status = Status::Infeasible;
      return sol;
    }
    // Drive remaining zero-level artificials out of the basis.
    for (std::size_t r = 0; r < tab.rows();) {
      if (tab.basis()[r] < n_real) {
        ++r;
        continue;
      }
      std::size_t col = n_real;
      for (std::size_t j = 0; j < n_real; ++j)
        if (std::abs(tab.at(r, j)) > kEps) {
          col = j;
          break;
        }
      if (col == n_real) {
        tab.drop_row(r);  // redundant constraint
      } else {
        tab.pivot(r, col);
        ++r;
      }
    }
  }

  std::vector<double> cost(n_real + n_art, 0.0);
  for (std::size_t j = 0; j < nx; ++j) cost[j] = c[j];
  tab.set_objective(cost);
  sol.status = tab.optimize(n_real, max_iterations);
  if (sol.status != Status::Optimal) return sol;
  sol.x.assign(nx, 0.0);
  for (std::size_t i = 0; i < tab.rows(); ++i)
    if (tab.basis()[i] < nx) sol.x[tab.basis()[i]] = tab.rhs(i);
  sol.objective = tab.objective_value();
  return sol;
}

}  // namespace crncomp::lp
