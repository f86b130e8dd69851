#include <doctest.h>

#include <random>

#include "crncomp/dynamics.hpp"
#include "crncomp/library.hpp"
#include "crncomp/parser.hpp"
#include "crncomp/reduction.hpp"
#include "crncomp/structure.hpp"

using namespace crncomp;

TEST_CASE("catalytic exchange reduces to an isomerization") {
  const auto r = reduce_mscrc(parse_mscrc(library::kCrn16));
  const Crn& b = r.base();
  CHECK(b.species_names() == std::vector<std::string>{"Z1", "Z2"});
  REQUIRE(b.reaction_count() == 2);
  CHECK(b.reactions()[0].reactant == Complex({{0, 1}}));
  CHECK(b.reactions()[0].product == Complex({{1, 1}}));
  CHECK(b.reactions()[1].reactant == Complex({{1, 1}}));
  CHECK(b.reactions()[1].product == Complex({{0, 1}}));
  CHECK(r.dropped().empty());
  CHECK(r.origin() == std::vector<std::size_t>{0, 1});

  const auto s0 = r.rate_spec(0), s1 = r.rate_spec(1);
  CHECK(s0.kappa == 1.0);
  CHECK(s0.input_exponents == std::vector<std::pair<std::string, Coefficient>>{{"Y1", 1}});
  CHECK(s1.input_exponents == std::vector<std::pair<std::string, Coefficient>>{{"Y2", 1}});
  CHECK(describe_rate(r, 0) == "1 * Y1");

  const auto rep = structural_report(b);
  CHECK(rep.n_linkage_classes == 1);
  CHECK(rep.deficiency == 0);
  CHECK(rep.weakly_reversible);
  CHECK(*rep.conservation_vector == std::vector<Rational>{1, 1});
}

TEST_CASE("trivial projections are dropped") {
  const auto r = reduce_mscrc(parse_mscrc(library::kExample2));
  const Crn& b = r.base();
  REQUIRE(b.reaction_count() == 2);
  // Y -> 2 Y with rate k2 * X, then Y -> 0 with rate k3.
  CHECK(b.reactions()[0].reactant == Complex({{0, 1}}));
  CHECK(b.reactions()[0].product == Complex({{0, 2}}));
  CHECK(r.rate_spec(0).input_exponents == std::vector<std::pair<std::string, Coefficient>>{{"X", 1}});
  CHECK(b.reactions()[1].product.empty());
  CHECK(r.rate_spec(1).input_exponents.empty());
  REQUIRE(r.dropped().size() == 1);
  CHECK(r.dropped()[0].original_index == 0);
  CHECK(r.dropped()[0].projected.empty());
}

TEST_CASE("no inputs in reactants keeps constant rates") {
  const auto m = parse_mscrc("inputs X\noutputs A B\nA -> B ; k=3\nB -> A + X ; k=2\n");
  const auto r = reduce_mscrc(m);
  for (const auto& rx : r.base().reactions()) CHECK(rx.rate.is_constant());
  CHECK(r.base().reactions()[0].rate.coefficient() == 3.0);
  CHECK(r.base().reactions()[1].rate.coefficient() == 2.0);
}

TEST_CASE("freezing inputs") {
  const auto r = reduce_mscrc(parse_mscrc(library::kCrn16));
  const double ybar[] = {0.5, 0.7};
  const Crn f = freeze_inputs(r, ybar);
  CHECK(f.reactions()[0].rate.coefficient() == doctest::Approx(0.5));
  CHECK(f.reactions()[1].rate.coefficient() == doctest::Approx(0.7));
  const double ones[] = {1.0, 1.0};
  CHECK(freeze_inputs(r, ones).reactions()[0].rate.coefficient() == 1.0);
  const double bad[] = {0.5, 0.0};
  CHECK_THROWS_AS(freeze_inputs(r, bad), std::invalid_argument);
  const double short_[] = {0.5};
  CHECK_THROWS_AS(freeze_inputs(r, short_), std::invalid_argument);

  // k2 = 2, k3 = 3 frozen at k3 / k2: both rates equal k3.
  const auto r2 = reduce_mscrc(parse_mscrc("inputs X\noutputs Y\nX -> 2 X ; k=1\nX + Y -> 2 Y ; k=2\nY -> 0 ; k=3\n"));
  const double xbar[] = {1.5};
  const Crn f2 = freeze_inputs(r2, xbar);
  CHECK(f2.reactions()[0].rate.coefficient() == doctest::Approx(3.0));
  CHECK(f2.reactions()[1].rate.coefficient() == doctest::Approx(3.0));
}

TEST_CASE("projection is idempotent") {
  const auto m = parse_mscrc("inputs X\noutputs A B C\nA + X -> B ; k=1\nB <=> C ; k=2,3\nC -> A ; k=1\n");
  const auto r1 = reduce_mscrc(m);
  // Treat the reduced network as a computer with a dummy catalytic input.
  auto names = r1.base().species_names();
  names.push_back("D");
  std::vector<Reaction> rx;
  for (std::size_t j = 0; j < r1.base().reaction_count(); ++j) {
    const auto& orig = r1.base().reactions()[j];
    rx.emplace_back(orig.reactant, orig.product, RateLaw::constant(r1.rate_spec(j).kappa));
  }
  const MsCrc again(Crn(names, rx), {3}, {0, 1, 2});
  const auto r2 = reduce_mscrc(again);
  REQUIRE(r2.base().reaction_count() == r1.base().reaction_count());
  for (std::size_t j = 0; j < r1.base().reaction_count(); ++j) {
    CHECK(r2.base().reactions()[j].reactant == r1.base().reactions()[j].reactant);
    CHECK(r2.base().reactions()[j].product == r1.base().reactions()[j].product);
  }
  CHECK(r2.base().species_names() == r1.base().species_names());
}

TEST_CASE("reduced and full dynamics agree for catalytic inputs") {
  // Inputs are catalysts: the driver is the input species with no reactions.
  const auto m = parse_mscrc(library::kCrn16);
  const auto r = reduce_mscrc(m);
  const Crn driver({"Y1", "Y2"}, {});
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  IntegratorConfig cfg;
  cfg.t_end = 10.0;
  cfg.samples = 50;
  for (int trial = 0; trial < 5; ++trial) {
    const double y1 = u(rng), y2 = u(rng), z1 = u(rng), z2 = u(rng);
    const double full0[] = {y1, y2, z1, z2};
    const auto full = simulate(m, full0, cfg);
    const auto red = simulate(r, driver, full0, cfg);
    REQUIRE(full.times.size() == red.times.size());
    for (std::size_t k = 0; k < full.times.size(); ++k)
      for (std::size_t i = 0; i < 4; ++i)
        CHECK(red.states[k][i] == doctest::Approx(full.states[k][i]).epsilon(1e-7));
  }
}
