#include "crncomp/composability.hpp"

#include <algorithm>
#include <set>

namespace crncomp {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Undetermined: return "undetermined";
  }
  return "undetermined";
}

namespace {

std::string join(const std::set<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

}  // namespace

AssumptionReport check_assumptions(const MsCrc& c1, const MsCrc& c2) {
  AssumptionReport rep;
  const auto out1 = c1.output_names();
  const auto in1 = c1.input_names();
  const auto in2 = c2.input_names();
  const auto out2 = c2.output_names();
  const std::set<std::string> y1(out1.begin(), out1.end());
  const std::set<std::string> x1(in1.begin(), in1.end());
  const std::set<std::string> x2(in2.begin(), in2.end());
  const std::set<std::string> y2(out2.begin(), out2.end());

  rep.interface_ok = true;
  if (y1 != x2) {
    rep.interface_ok = false;
    std::set<std::string> missing, extra;
    std::set_difference(y1.begin(), y1.end(), x2.begin(), x2.end(), std::inserter(missing, missing.end()));
    std::set_difference(x2.begin(), x2.end(), y1.begin(), y1.end(), std::inserter(extra, extra.end()));
    if (!missing.empty()) rep.diagnostics.push_back("outputs of c1 not consumed as inputs of c2: " + join(missing));
    if (!extra.empty()) rep.diagnostics.push_back("inputs of c2 not produced by c1: " + join(extra));
  }
  std::set<std::string> clash;
  std::set_intersection(y2.begin(), y2.end(), x1.begin(), x1.end(), std::inserter(clash, clash.end()));
  if (!clash.empty()) {
    rep.interface_ok = false;
    rep.diagnostics.push_back("outputs of c2 collide with inputs of c1: " + join(clash));
  }

  rep.catalytic_inputs = true;
  const Crn& crn = c2.crn();
  for (std::size_t j = 0; j < crn.reaction_count(); ++j) {
    for (auto id : c2.inputs()) {
      const auto delta = crn.reactions()[j].net_change(id);
      if (delta != 0) {
        rep.catalytic_inputs = false;
        rep.diagnostics.push_back("reaction " + std::to_string(j) + " of c2 changes input " + crn.name(id) + " by " +
                                  std::to_string(delta));
      }
    }
  }
  return rep;
}

bool ComposabilityVerdict::undetermined() const {
  if (certified) return false;
  if (!assumptions.ok()) return false;
  bool any_undetermined = false;
  for (const auto& c : conditions) {
    if (c.outcome == Outcome::Fail) return false;
    any_undetermined |= c.outcome == Outcome::Undetermined;
  }
  return any_undetermined;
}

ComposabilityVerdict certify_composable(const MsCrc& c1, const MsCrc& c2) {
  auto assumptions = check_assumptions(c1, c2);
  auto reduced = reduce_mscrc(c2);
  auto report = structural_report(reduced.base());

  auto outcome = [](bool ok) { return ok ? Outcome::Pass : Outcome::Fail; };
  std::vector<ConditionOutcome> conds;
  conds.push_back({"weakly_reversible", outcome(report.weakly_reversible),
                   report.weakly_reversible ? "every linkage class is strongly connected"
                                            : "some reaction is not contained in a strongly connected component"});
  conds.push_back({"single_linkage_class", outcome(report.n_linkage_classes == 1),
                   std::to_string(report.n_linkage_classes) + " linkage class(es)"});
  conds.push_back({"zero_deficiency", outcome(report.deficiency == 0),
                   "deficiency " + std::to_string(report.deficiency)});
  Outcome mass = Outcome::Fail;
  std::string mass_detail = "no strictly positive conservation vector";
  if (report.conservation_status == ConservationStatus::Found) {
    mass = Outcome::Pass;
    mass_detail = "positive conservation vector verified exactly";
  } else if (report.conservation_status == ConservationStatus::Undetermined) {
    mass = Outcome::Undetermined;
    mass_detail = "numerical search for a positive conservation vector did not conclude";
  }
  conds.push_back({"mass_conservative", mass, mass_detail});

  const bool all_pass =
      std::all_of(conds.begin(), conds.end(), [](const auto& c) { return c.outcome == Outcome::Pass; });
  const bool certified = assumptions.ok() && all_pass;
  ComposabilityVerdict verdict{std::move(assumptions), std::move(conds), certified, std::nullopt, std::move(report),
                               std::move(reduced)};
  verdict.conservation_vector = verdict.reduced_report.conservation_vector;
  return verdict;
}

int exit_code(const ComposabilityVerdict& v) {
  if (v.certified) return 0;
  return v.undetermined() ? 3 : 2;
}

nlohmann::json to_json(const ComposabilityVerdict& v) {
  nlohmann::json j;
  j["certified"] = v.certified;
  j["status"] = v.certified ? "certified" : (v.undetermined() ? "undetermined" : "not_certified");
  j["assumptions"] = {{"interface", v.assumptions.interface_ok ? "pass" : "fail"},
                      {"catalytic_inputs", v.assumptions.catalytic_inputs ? "pass" : "fail"},
                      {"limits_exist", "assumed; discharge numerically with `verify`"},
                      {"diagnostics", v.assumptions.diagnostics}};
  auto conds = nlohmann::json::array();
  for (const auto& c : v.conditions)
    conds.push_back({{"name", c.name}, {"outcome", to_string(c.outcome)}, {"detail", c.detail}});
  j["conditions"] = conds;
  if (v.conservation_vector) {
    auto arr = nlohmann::json::array();
    for (const auto& q : *v.conservation_vector) arr.push_back(rational_to_json(q));
    j["conservation_vector"] = arr;
  } else {
    j["conservation_vector"] = nullptr;
  }
  j["reduced_report"] = to_json(v.reduced_report);
  auto dropped = nlohmann::json::array();
  for (const auto& d : v.reduced.dropped()) dropped.push_back(d.original_index);
  j["dropped_reactions"] = dropped;
  return j;
}

}  // namespace crncomp
