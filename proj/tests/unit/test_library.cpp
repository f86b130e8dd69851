#include <doctest.h>

#include <fstream>
#include <sstream>

#include "crncomp/library.hpp"
#include "crncomp/parser.hpp"

using namespace crncomp;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(CRNCOMP_DATA_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("data files match the built-in networks") {
  CHECK(slurp("example1.crn") == library::kExample1);
  CHECK(slurp("example2.crn") == library::kExample2);
  CHECK(slurp("crn15.crn") == library::kCrn15);
  CHECK(slurp("crn16.crn") == library::kCrn16);
}

TEST_CASE("loading from disk") {
  const auto doc = load_network(std::string(CRNCOMP_DATA_DIR) + "/crn16.crn");
  REQUIRE(doc.is_mscrc());
  CHECK(*doc.mscrc == parse_mscrc(library::kCrn16));
  CHECK_THROWS(load_network(std::string(CRNCOMP_DATA_DIR) + "/missing.crn"));
}

TEST_CASE("swapped wiring exchanges the catalysts") {
  const auto a = parse_mscrc(library::kCrn16), b = parse_mscrc(library::kCrn16Swapped);
  REQUIRE(a.crn().species_names() == b.crn().species_names());
  CHECK(a.crn().reactions()[0].reactant != b.crn().reactions()[0].reactant);
  CHECK(a.crn().reactions()[0].product.coefficient(2) == 0);
  CHECK(b.crn().reactions()[0].reactant.coefficient(1) == 1);
}
