#include <doctest.h>

#include <random>
#include <set>

#include "crncomp/library.hpp"
#include "crncomp/parser.hpp"
#include "crncomp/reduction.hpp"
#include "crncomp/structure.hpp"
#include "support/oracles.hpp"

using namespace crncomp;

namespace {

Crn net(std::string_view text) { return parse_network(text).crn; }

/// Reference linkage-class count: breadth-first search over complexes.
std::size_t bfs_linkage_count(const Crn& crn) {
  const auto cs = complexes(crn);
  auto index = [&](const Complex& c) {
    return static_cast<std::size_t>(std::find(cs.begin(), cs.end(), c) - cs.begin());
  };
  std::vector<std::set<std::size_t>> adj(cs.size());
  for (const auto& r : crn.reactions()) {
    adj[index(r.reactant)].insert(index(r.product));
    adj[index(r.product)].insert(index(r.reactant));
  }
  std::vector<bool> seen(cs.size(), false);
  std::size_t count = 0;
  for (std::size_t s = 0; s < cs.size(); ++s) {
    if (seen[s]) continue;
    ++count;
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (auto v : adj[u]) {
        if (seen[v]) continue;
        seen[v] = true;
        stack.push_back(v);
      }
    }
  }
  return count;
}

/// Reference weak reversibility: every edge u->v has a directed path v->u.
bool reachability_weakly_reversible(const Crn& crn) {
  const auto cs = complexes(crn);
  const std::size_t n = cs.size();
  auto index = [&](const Complex& c) {
    return static_cast<std::size_t>(std::find(cs.begin(), cs.end(), c) - cs.begin());
  };
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
  for (const auto& r : crn.reactions()) reach[index(r.reactant)][index(r.product)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  for (const auto& r : crn.reactions())
    if (!reach[index(r.product)][index(r.reactant)]) return false;
  return true;
}

}  // namespace

TEST_CASE("isomerization report") {
  const auto rep = structural_report(net(library::kExample1));
  CHECK(rep.n_complexes == 2);
  CHECK(rep.n_linkage_classes == 1);
  CHECK(rep.stoich_rank == 1);
  CHECK(rep.deficiency == 0);
  CHECK(rep.reversible);
  CHECK(rep.weakly_reversible);
  REQUIRE(rep.conservation_status == ConservationStatus::Found);
  CHECK(*rep.conservation_vector == std::vector<Rational>{1, 1});
}

TEST_CASE("upstream layer report") {
  const auto rep = structural_report(net(library::kCrn15));
  CHECK(rep.n_complexes == 11);
  CHECK(rep.n_linkage_classes == 5);
  CHECK(rep.stoich_rank == 2);
  CHECK(rep.deficiency == 4);
  CHECK_FALSE(rep.weakly_reversible);
  CHECK_FALSE(rep.reversible);
  // Y1 -> 0 forces v_Y1 = 0.
  CHECK(rep.conservation_status == ConservationStatus::Absent);
  CHECK_FALSE(rep.conservation_vector.has_value());
}

TEST_CASE("predator-prey style network") {
  const auto rep = structural_report(net(library::kExample2));
  CHECK(rep.n_complexes == 6);
  CHECK(rep.n_linkage_classes == 3);
  CHECK(rep.stoich_rank == 2);
  CHECK(rep.deficiency == 1);
}

TEST_CASE("linkage classes group complexes") {
  const auto crn = net("A -> B ; k=1\nC -> D ; k=1\nB -> A ; k=1\n");
  const auto lc = linkage_classes(crn);
  REQUIRE(lc.size() == 2);
  CHECK(lc[0] == std::vector<std::size_t>{0, 1});
  CHECK(lc[1] == std::vector<std::size_t>{2, 3});
}

TEST_CASE("reversibility flags") {
  auto flags = reversibility_flags(net("A -> B ; k=1\nB -> C ; k=1\nC -> A ; k=1\n"));
  CHECK_FALSE(flags.reversible);
  CHECK(flags.weakly_reversible);
  flags = reversibility_flags(net("A -> B ; k=1\nB -> C ; k=1\n"));
  CHECK_FALSE(flags.weakly_reversible);
  flags = reversibility_flags(net("A <=> B ; k=1,1\n2 A <=> C ; k=1,3\n"));
  CHECK(flags.reversible);
  CHECK(flags.weakly_reversible);
  const auto empty = reversibility_flags(Crn({"A"}, {}));
  CHECK_FALSE(empty.reversible);
  CHECK_FALSE(empty.weakly_reversible);
}

TEST_CASE("exact rank edge cases") {
  CHECK(exact_rank(IntMatrix(3, 4, 0)) == 0);
  CHECK(exact_rank(IntMatrix(0, 0)) == 0);
  IntMatrix m(2, 2);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(1, 0) = 2;
  m(1, 1) = 4;
  CHECK(exact_rank(m) == 1);
  // Entries whose products overflow 64 bits still rank exactly.
  IntMatrix big(3, 3);
  const std::int64_t b = std::int64_t{1} << 40;
  big(0, 0) = b;
  big(0, 1) = b + 1;
  big(1, 0) = b + 1;
  big(1, 1) = b + 2;
  big(2, 0) = 2 * b + 1;
  big(2, 1) = 2 * b + 3;
  big(2, 2) = 0;
  CHECK(exact_rank(big) == 2);
}

TEST_CASE("exact rank agrees with the minor search") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = oracle::random_matrix(rng);
    CHECK(exact_rank(m) == oracle::minor_rank(m));
    CHECK(exact_rank(m.transposed()) == exact_rank(m));
  }
}

TEST_CASE("left null space annihilates the matrix") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = oracle::random_matrix(rng);
    const auto basis = left_null_space(m);
    CHECK(basis.size() == m.rows() - exact_rank(m));
    for (const auto& v : basis) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < m.rows(); ++i) s += v[i] * m(i, j);
        CHECK(s == 0);
      }
    }
  }
}

TEST_CASE("conservation vectors") {
  // A + B <=> C conserves (1, 1, 2) but also (1, 0, 1) and (0, 1, 1).
  const auto crn = net("A + B <=> C ; k=1,1\n");
  const auto res = conservation_vector(crn);
  REQUIRE(res.status == ConservationStatus::Found);
  CHECK(is_positive_conservation_vector(stoichiometric_matrix(crn), *res.vector));

  // Partial conservation only: A -> 0.
  CHECK(conservation_vector(net("A -> 0 ; k=1\nB <=> C ; k=1,1\n")).status == ConservationStatus::Absent);
  // Generation: 0 -> A.
  CHECK(conservation_vector(net("0 -> A ; k=1\n")).status == ConservationStatus::Absent);
  // Weights (3, 2, 1).
  CHECK(conservation_vector(net("A -> B + C ; k=1\nB -> 2 C ; k=1\n")).status == ConservationStatus::Found);
  // Only the zero vector balances A -> 2 B against B -> A.
  CHECK(conservation_vector(net("A -> 2 B ; k=1\nB -> A ; k=1\n")).status == ConservationStatus::Absent);

  const auto down = conservation_vector(net(library::kCrn16));
  REQUIRE(down.vector);
  for (const auto& q : *down.vector) CHECK(q > 0);
}

TEST_CASE("conservation vector is primitive and positive") {
  const auto crn = net("2 A <=> B ; k=1,1\nB + C <=> D ; k=1,1\n");
  const auto res = conservation_vector(crn);
  REQUIRE(res.vector);
  for (const auto& q : *res.vector) {
    CHECK(q > 0);
    CHECK(q.get_den() == 1);
  }
  CHECK(is_positive_conservation_vector(stoichiometric_matrix(crn), *res.vector));
  CHECK_FALSE(is_positive_conservation_vector(stoichiometric_matrix(crn), {1, 2, 1, 1}));
}

TEST_CASE("structural properties on random networks") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const auto crn = net(oracle::random_crn_text(rng));
    const auto rep = structural_report(crn);
    CHECK(rep.deficiency >= 0);
    CHECK(rep.deficiency == static_cast<long>(rep.n_complexes) - static_cast<long>(rep.n_linkage_classes) -
                                static_cast<long>(rep.stoich_rank));
    CHECK(rep.n_linkage_classes == bfs_linkage_count(crn));
    CHECK(rep.stoich_rank == oracle::minor_rank(stoichiometric_matrix(crn)));
    CHECK(rep.weakly_reversible == reachability_weakly_reversible(crn));
    if (rep.reversible) CHECK(rep.weakly_reversible);
    // Weak reversibility iff each linkage class is one strong component.
    const auto scc = strong_components(crn);
    bool per_class = true;
    for (const auto& cls : rep.linkage_classes)
      for (auto c : cls) per_class &= scc[c] == scc[cls.front()];
    CHECK(per_class == rep.weakly_reversible);
    if (rep.conservation_vector)
      CHECK(is_positive_conservation_vector(stoichiometric_matrix(crn), *rep.conservation_vector));
    CHECK(rep.conservation_status != ConservationStatus::Undetermined);
  }
}

TEST_CASE("report serializes") {
  const auto j = to_json(structural_report(net(library::kExample1)));
  CHECK(j["deficiency"] == 0);
  CHECK(j["n_linkage_classes"] == 1);
  CHECK(j["conservation_status"] == "found");
  CHECK(j["conservation_vector"][0]["num"] == 1);
}
