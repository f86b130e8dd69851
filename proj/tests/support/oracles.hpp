#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library except for the plain data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "crncomp/matrix.hpp"

namespace oracle {

/// Determinant by the Leibniz permutation expansion.
inline std::int64_t leibniz_det(const std::vector<std::vector<std::int64_t>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t total = 0;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    std::int64_t prod = 1;
    for (std::size_t i = 0; i < n; ++i) prod *= a[i][perm[i]];
    total += (inversions % 2 == 0) ? prod : -prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Rank as the size of the largest nonvanishing square minor.
inline std::size_t minor_rank(const crncomp::IntMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  const std::size_t kmax = std::min(r, c);
  for (std::size_t k = kmax; k > 0; --k) {
    std::vector<bool> rsel(r, false), csel(c, false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + static_cast<std::ptrdiff_t>(k), true);
      do {
        std::vector<std::vector<std::int64_t>> sub;
        for (std::size_t i = 0; i < r; ++i) {
          if (!rsel[i]) continue;
          std::vector<std::int64_t> row;
          for (std::size_t j = 0; j < c; ++j)
            if (csel[j]) row.push_back(m(i, j));
          sub.push_back(std::move(row));
        }
        if (leibniz_det(sub) != 0) return k;
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
  }
  return 0;
}

inline crncomp::IntMatrix random_matrix(std::mt19937_64& rng, std::size_t max_dim = 6, int max_abs = 3) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::uniform_int_distribution<int> entry(-max_abs, max_abs);
  std::bernoulli_distribution sparse(0.4);
  crncomp::IntMatrix m(dim(rng), dim(rng));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = sparse(rng) ? 0 : entry(rng);
  // Occasionally plant linear dependence.
  if (m.rows() >= 2 && sparse(rng)) {
    const int f = entry(rng);
    for (std::size_t j = 0; j < m.cols(); ++j) m(m.rows() - 1, j) = f * m(0, j);
  }
  return m;
}

/// Random network text in the `.crn` format: up to 5 species (A..E) and up
/// to 6 reactions with coefficients in 0..2.
inline std::string random_crn_text(std::mt19937_64& rng, bool with_interface = false) {
  std::uniform_int_distribution<int> ns(1, 5), nr(1, 6), coeff(0, 2), rate(1, 9);
  const int n = ns(rng);
  std::string names[] = {"A", "B", "C", "D", "E"};
  std::string out = "species";
  for (int i = 0; i < n; ++i) out += " " + names[i];
  out += "\n";
  if (with_interface && n >= 2) {
    out += "inputs A\n";
  }
  const int r = nr(rng);
  int emitted = 0;
  for (int attempt = 0; emitted < r && attempt < 100; ++attempt) {
    std::vector<int> lhs(n), rhs(n);
    for (int i = 0; i < n; ++i) lhs[i] = coeff(rng) == 2 ? 1 : 0;
    for (int i = 0; i < n; ++i) rhs[i] = coeff(rng) == 2 ? coeff(rng) : 0;
    if (lhs == rhs) continue;
    auto side = [&](const std::vector<int>& v) {
      std::string s;
      for (int i = 0; i < n; ++i) {
        if (v[i] == 0) continue;
        if (!s.empty()) s += " + ";
        if (v[i] > 1) s += std::to_string(v[i]) + " ";
        s += names[i];
      }
      return s.empty() ? std::string("0") : s;
    };
    out += side(lhs) + " -> " + side(rhs) + " ; k=" + std::to_string(rate(rng)) + "\n";
    ++emitted;
  }
  if (emitted == 0) out += "A -> 0 ; k=1\n";
  return out;
}

using Field = std::function<std::vector<double>(double, const std::vector<double>&)>;

/// Classical fixed-step fourth-order Runge-Kutta.
inline std::vector<double> rk4(const Field& f, std::vector<double> y, double t_end, std::size_t steps) {
  const double h = t_end / static_cast<double>(steps);
  double t = 0.0;
  auto axpy = [](const std::vector<double>& a, double s, const std::vector<double>& b) {
    std::vector<double> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
    return r;
  };
  for (std::size_t k = 0; k < steps; ++k) {
    const auto k1 = f(t, y);
    const auto k2 = f(t + h / 2, axpy(y, h / 2, k1));
    const auto k3 = f(t + h / 2, axpy(y, h / 2, k2));
    const auto k4 = f(t + h, axpy(y, h, k3));
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    t += h;
  }
  return y;
}

/// z1 on the isomerization Z1 <=> Z2 (k=1,2): relaxes to 2C/3 at rate 3.
inline double isomerization_z1(double z1_0, double z2_0, double t) {
  const double c = z1_0 + z2_0;
  return 2.0 * c / 3.0 + (z1_0 - 2.0 * c / 3.0) * std::exp(-3.0 * t);
}

/// Upstream output y' = a - y with constant a.
inline double linear_relaxation(double a, double y0, double t) { return a + (y0 - a) * std::exp(-t); }

/// Hand-derived right-hand side of the coupled two-layer system, state
/// (x1..x4, y1, y2, z1, z2).
inline std::vector<double> two_layer_rhs(const std::vector<double>& s) {
  const double y1 = s[4], y2 = s[5], z1 = s[6], z2 = s[7];
  return {0.0, 0.0, 0.0, 0.0, s[0] + s[1] - y1, s[2] + s[3] - y2, y2 * z2 - y1 * z1, y1 * z1 - y2 * z2};
}

}  // namespace oracle
