#include <doctest.h>

#include <random>

#include "crncomp/compose.hpp"
#include "crncomp/library.hpp"
#include "crncomp/parser.hpp"
#include "support/oracles.hpp"

using namespace crncomp;

namespace {

void check_parse_error(std::string_view text, std::size_t line, std::size_t column) {
  try {
    (void)parse_network(text);
    FAIL("expected a parse error for: " << text);
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() == column);
  }
}

}  // namespace

TEST_CASE("reversible reaction expands into two rates") {
  const auto doc = parse_network("Z1 <=> Z2 ; k=1,2");
  REQUIRE(doc.crn.reaction_count() == 2);
  CHECK(doc.crn.reactions()[0].rate.coefficient() == 1.0);
  CHECK(doc.crn.reactions()[1].rate.coefficient() == 2.0);
  CHECK(doc.crn.reactions()[1].reactant == doc.crn.reactions()[0].product);
  CHECK_FALSE(doc.is_mscrc());
}

TEST_CASE("empty complex and catalysts") {
  const auto d1 = parse_network("Y1 -> 0 ; k=1");
  CHECK(d1.crn.reactions()[0].product.empty());
  const auto d2 = parse_network("Y1 + Z1 -> Y1 + Z2 ; k=1");
  const auto& r = d2.crn.reactions()[0];
  const auto y1 = *d2.crn.find("Y1"), z1 = *d2.crn.find("Z1"), z2 = *d2.crn.find("Z2");
  CHECK(r.reactant == Complex({{y1, 1}, {z1, 1}}));
  CHECK(r.product == Complex({{y1, 1}, {z2, 1}}));
  CHECK(format_complex(Complex(), d2.crn) == "0");
  CHECK(format_complex(Complex({{y1, 2}}), d2.crn) == "2 Y1");
}

TEST_CASE("declarations produce a computer") {
  const auto m = parse_mscrc(library::kCrn15);
  CHECK(m.crn().reaction_count() == 6);
  CHECK(m.input_names() == std::vector<std::string>{"X1", "X2", "X3", "X4"});
  CHECK(m.output_names() == std::vector<std::string>{"Y1", "Y2"});
  // One side declared: the other is the complement.
  const auto half = parse_mscrc("inputs X\nX + Y -> 2 Y ; k=1\n");
  CHECK(half.output_names() == std::vector<std::string>{"Y"});
  CHECK_THROWS_AS(parse_mscrc("A -> B ; k=1"), ParseError);
}

TEST_CASE("diagnostics carry positions") {
  check_parse_error("A -> B", 1, 7);
  check_parse_error("A -> B ; k=0", 1, 12);
  check_parse_error("A -> B ; k=-1", 1, 12);
  check_parse_error("A <=> B ; k=1", 1, 11);
  check_parse_error("A -> B ; k=1,2", 1, 10);
  check_parse_error("\nA -> A ; k=1", 2, 1);
  check_parse_error("inputs A\noutputs A\nA -> 0 ; k=1", 2, 9);
  check_parse_error("A -> 0 B ; k=1", 1, 6);
  check_parse_error("species\n", 1, 8);
  check_parse_error("0 A -> B ; k=1", 1, 1);
  try {
    (void)parse_network("species A\nA -> B ; k=1", ParseOptions{.auto_declare = false});
    FAIL("unknown species accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 6);
  }
}

TEST_CASE("comments and blank lines are ignored") {
  const auto doc = parse_network("# header\n\nspecies A B   # trailing\n\nA -> B ; k=1.5e-1 # rate\n");
  REQUIRE(doc.crn.reaction_count() == 1);
  CHECK(doc.crn.reactions()[0].rate.coefficient() == 0.15);
  CHECK(doc.reaction_lines == std::vector<std::size_t>{5});
}

TEST_CASE("species order follows declarations then first use") {
  const auto doc = parse_network("species B\nA + C -> B ; k=1\n");
  CHECK(doc.crn.species_names() == std::vector<std::string>{"B", "A", "C"});
}

TEST_CASE("round trip on the built-in corpus") {
  const std::string_view corpus[] = {library::kExample1, library::kExample2, library::kCrn15, library::kCrn16};
  for (auto text : corpus) {
    const auto first = parse_network(text);
    const std::string canonical =
        first.mscrc ? format_network(*first.mscrc) : format_network(first.crn);
    const auto second = parse_network(canonical);
    CHECK(second.crn == first.crn);
    CHECK(second.mscrc == first.mscrc);
    const std::string again = second.mscrc ? format_network(*second.mscrc) : format_network(second.crn);
    CHECK(again == canonical);
  }
  const auto coupled = couple(parse_mscrc(library::kCrn15), parse_mscrc(library::kCrn16));
  const auto text = format_network(coupled.mscrc);
  CHECK(parse_mscrc(text) == coupled.mscrc);
}

TEST_CASE("reversible pairs are folded on output") {
  const auto doc = parse_network(library::kExample1);
  const auto text = format_network(doc.crn);
  CHECK(text.find("Z1 <=> Z2 ; k=1,2") != std::string::npos);
}

TEST_CASE("numbers print in shortest round-trip form") {
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.1) == "0.1");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("round trip on random networks") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const auto text = oracle::random_crn_text(rng, trial % 2 == 1);
    const auto first = parse_network(text);
    const auto canonical = first.mscrc ? format_network(*first.mscrc) : format_network(first.crn);
    const auto second = parse_network(canonical);
    CHECK(second.crn == first.crn);
    CHECK(second.mscrc == first.mscrc);
  }
}

TEST_CASE("parser is total on random bytes") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> len(0, 80), byte(0, 255), pick(0, 20);
  const std::string alphabet = "AZ09 +-<=>;k,.#\n\t0e";
  std::size_t accepted = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::string s(static_cast<std::size_t>(len(rng)), ' ');
    for (auto& ch : s)
      ch = pick(rng) < 14 ? alphabet[static_cast<std::size_t>(byte(rng)) % alphabet.size()]
                          : static_cast<char>(byte(rng));
    try {
      (void)parse_network(s);
      ++accepted;
    } catch (const ParseError& e) {
      CHECK(e.line() >= 1);
      CHECK(e.column() >= 1);
    }
  }
  CHECK(accepted < 2000);
}
