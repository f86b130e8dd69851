#include "crncomp/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "crncomp/lp.hpp"

namespace crncomp {

namespace {

struct ComplexGraph {
  std::size_t nodes = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // one per reaction
};

ComplexGraph complex_graph(const Crn& crn) {
  const auto cs = complexes(crn);
  ComplexGraph g;
  g.nodes = cs.size();
  auto idx = [&](const Complex& c) {
    return static_cast<std::size_t>(std::find(cs.begin(), cs.end(), c) - cs.begin());
  };
  for (const auto& r : crn.reactions()) g.edges.emplace_back(idx(r.reactant), idx(r.product));
  return g;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

/// Continued-fraction approximation with denominator <= max_den.
Rational rationalize(double x, long max_den) {
  const bool neg = x < 0.0;
  double frac = std::abs(x);
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(frac);
    if (a > 1e15) break;
    const mpz_class ai = static_cast<long>(a);
    const mpz_class p2 = ai * p1 + p0;
    const mpz_class q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
    const double rem = frac - a;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) return Rational(0);
  Rational q(p1, q1);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

std::vector<Rational> primitive(std::vector<Rational> v) {
  mpz_class lcm_den = 1;
  for (const auto& q : v) lcm_den = lcm(lcm_den, mpz_class(q.get_den()));
  mpz_class g = 0;
  for (auto& q : v) {
    q *= lcm_den;
    g = gcd(g, mpz_class(q.get_num()));
  }
  if (g != 0)
    for (auto& q : v) q /= g;
  return v;
}

}  // namespace

std::vector<std::vector<std::size_t>> linkage_classes(const Crn& crn) {
  const auto g = complex_graph(crn);
  std::vector<std::size_t> parent(g.nodes);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (auto [a, b] : g.edges) {
    const auto ra = find_root(parent, a);
    const auto rb = find_root(parent, b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> class_of(g.nodes, std::numeric_limits<std::size_t>::max());
  for (std::size_t v = 0; v < g.nodes; ++v) {
    const auto r = find_root(parent, v);
    if (class_of[r] == std::numeric_limits<std::size_t>::max()) {
      class_of[r] = classes.size();
      classes.emplace_back();
    }
    classes[class_of[r]].push_back(v);
  }
  return classes;
}

std::vector<std::size_t> strong_components(const Crn& crn) {
  // Iterative Kosaraju.
  const auto g = complex_graph(crn);
  std::vector<std::vector<std::size_t>> fwd(g.nodes), bwd(g.nodes);
  for (auto [a, b] : g.edges) {
    fwd[a].push_back(b);
    bwd[b].push_back(a);
  }
  std::vector<bool> seen(g.nodes, false);
  std::vector<std::size_t> order;
  for (std::size_t s = 0; s < g.nodes; ++s) {
    if (seen[s]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
    seen[s] = true;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < fwd[v].size()) {
        const auto w = fwd[v][next++];
        if (!seen[w]) {
          seen[w] = true;
          stack.emplace_back(w, 0);
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }
  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> comp(g.nodes, kUnset);
  std::size_t count = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] != kUnset) continue;
    std::vector<std::size_t> stack{*it};
    comp[*it] = count;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto w : bwd[v])
        if (comp[w] == kUnset) {
          comp[w] = count;
          stack.push_back(w);
        }
    }
    ++count;
  }
  return comp;
}

ReversibilityFlags reversibility_flags(const Crn& crn) {
  ReversibilityFlags flags;
  const auto& rs = crn.reactions();
  flags.reversible = !rs.empty() && std::all_of(rs.begin(), rs.end(), [&](const Reaction& r) {
    return std::any_of(rs.begin(), rs.end(),
                       [&](const Reaction& q) { return q.reactant == r.product && q.product == r.reactant; });
  });
  const auto g = complex_graph(crn);
  const auto comp = strong_components(crn);
  flags.weakly_reversible = !rs.empty() && std::all_of(g.edges.begin(), g.edges.end(), [&](const auto& e) {
    return comp[e.first] == comp[e.second];
  });
  return flags;
}

std::size_t exact_rank(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = static_cast<long>(m(i, j));

  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        mpz_class num = a[rank][col] * a[i][j] - a[i][col] * a[rank][j];
        if (!mpz_divisible_p(num.get_mpz_t(), prev.get_mpz_t()))
          throw std::logic_error("fraction-free elimination produced an inexact quotient");
        mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

std::vector<std::vector<Rational>> left_null_space(const IntMatrix& m) {
  // Null space of m^T by reduced row echelon form over Q.
  const std::size_t rows = m.cols();
  const std::size_t cols = m.rows();
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = static_cast<long>(m(j, i));

  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t p = r;
    while (p < rows && a[p][col] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rational inv = 1 / a[r][col];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][col] == 0) continue;
      const Rational f = a[i][col];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_cols.push_back(col);
    ++r;
  }

  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -a[k][free];
    basis.push_back(primitive(std::move(v)));
  }
  return basis;
}

long deficiency(const Crn& crn) {
  const auto n = static_cast<long>(complexes(crn).size());
  const auto l = static_cast<long>(linkage_classes(crn).size());
  const auto s = static_cast<long>(exact_rank(stoichiometric_matrix(crn)));
  return n - l - s;
}

bool is_positive_conservation_vector(const IntMatrix& m, const std::vector<Rational>& v) {
  if (v.size() != m.rows()) return false;
  if (!std::all_of(v.begin(), v.end(), [](const Rational& q) { return q > 0; })) return false;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Rational dot = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) dot += v[i] * static_cast<long>(m(i, j));
    if (dot != 0) return false;
  }
  return true;
}

ConservationResult conservation_vector(const Crn& crn) {
  const IntMatrix gamma = stoichiometric_matrix(crn);
  const auto basis = left_null_space(gamma);
  ConservationResult result;
  if (basis.empty()) return result;

  const std::size_t n = gamma.rows();
  const std::size_t d = basis.size();
  // Columns scaled to unit max-norm for conditioning; undone before rationalizing.
  Matrix<double> b(n, d);
  std::vector<double> scale(d, 1.0);
  for (std::size_t k = 0; k < d; ++k) {
    double mx = 0.0;
    for (std::size_t i = 0; i < n; ++i) mx = std::max(mx, std::abs(basis[k][i].get_d()));
    scale[k] = mx > 0.0 ? mx : 1.0;
    for (std::size_t i = 0; i < n; ++i) b(i, k) = basis[k][i].get_d() / scale[k];
  }

  // Variables: lambda+ (d), lambda- (d), t. Maximize t subject to
  //   t - (B lambda)_i <= 0,  t <= 1,  sum_i (B lambda)_i = 1.
  const std::size_t nv = 2 * d + 1;
  std::vector<double> c(nv, 0.0);
  c[2 * d] = 1.0;
  Matrix<double> a_ub(n + 1, nv);
  std::vector<double> b_ub(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      a_ub(i, k) = -b(i, k);
      a_ub(i, d + k) = b(i, k);
    }
    a_ub(i, 2 * d) = 1.0;
  }
  a_ub(n, 2 * d) = 1.0;
  b_ub[n] = 1.0;
  Matrix<double> a_eq(1, nv);
  for (std::size_t k = 0; k < d; ++k) {
    double col_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) col_sum += b(i, k);
    a_eq(0, k) = col_sum;
    a_eq(0, d + k) = -col_sum;
  }
  const auto sol = lp::maximize(c, a_ub, b_ub, a_eq, {1.0});

  if (sol.status == lp::Status::Infeasible) return result;  // every null vector sums to zero
  if (sol.status != lp::Status::Optimal) {
    result.status = ConservationStatus::Undetermined;
    return result;
  }
  if (sol.objective < 1e-9) return result;

  for (long max_den : {10L, 1000L, 1000000L, 1000000000L}) {
    std::vector<Rational> v(n, Rational(0));
    for (std::size_t k = 0; k < d; ++k) {
      const Rational lambda = rationalize((sol.x[k] - sol.x[d + k]) / scale[k], max_den);
      if (lambda == 0) continue;
      for (std::size_t i = 0; i < n; ++i) v[i] += lambda * basis[k][i];
    }
    if (is_positive_conservation_vector(gamma, v)) {
      result.status = ConservationStatus::Found;
      result.vector = primitive(std::move(v));
      return result;
    }
  }
  result.status = ConservationStatus::Undetermined;
  return result;
}

StructuralReport structural_report(const Crn& crn) {
  StructuralReport rep;
  rep.n_complexes = complexes(crn).size();
  rep.linkage_classes = linkage_classes(crn);
  rep.n_linkage_classes = rep.linkage_classes.size();
  rep.stoich_rank = exact_rank(stoichiometric_matrix(crn));
  rep.deficiency = static_cast<long>(rep.n_complexes) - static_cast<long>(rep.n_linkage_classes) -
                   static_cast<long>(rep.stoich_rank);
  const auto flags = reversibility_flags(crn);
  rep.weakly_reversible = flags.weakly_reversible;
  rep.reversible = flags.reversible;
  auto cons = conservation_vector(crn);
  rep.conservation_status = cons.status;
  rep.conservation_vector = std::move(cons.vector);
  return rep;
}

const char* to_string(ConservationStatus s) {
  switch (s) {
    case ConservationStatus::Found: return "found";
    case ConservationStatus::Absent: return "absent";
    case ConservationStatus::Undetermined: return "undetermined";
  }
  return "undetermined";
}

nlohmann::json rational_to_json(const Rational& q) {
  auto part = [](const mpz_class& z) -> nlohmann::json {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
  };
  return {{"num", part(q.get_num())}, {"den", part(q.get_den())}};
}

nlohmann::json to_json(const StructuralReport& report) {
  nlohmann::json j;
  j["n_complexes"] = report.n_complexes;
  j["linkage_classes"] = report.linkage_classes;
  j["n_linkage_classes"] = report.n_linkage_classes;
  j["stoich_rank"] = report.stoich_rank;
  j["deficiency"] = report.deficiency;
  j["weakly_reversible"] = report.weakly_reversible;
  j["reversible"] = report.reversible;
  j["conservation_status"] = to_string(report.conservation_status);
  if (report.conservation_vector) {
    auto arr = nlohmann::json::array();
    for (const auto& q : *report.conservation_vector) arr.push_back(rational_to_json(q));
    j["conservation_vector"] = arr;
  } else {
    j["conservation_vector"] = nullptr;
  }
  return j;
}

}  // namespace crncomp
