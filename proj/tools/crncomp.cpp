// crncomp: structural analysis, composability certification, composition,
// simulation and numerical verification of mass-action reaction networks.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "crncomp/composability.hpp"
#include "crncomp/compose.hpp"
#include "crncomp/dynamics.hpp"
#include "crncomp/library.hpp"
#include "crncomp/parser.hpp"
#include "crncomp/reduction.hpp"
#include "crncomp/structure.hpp"
#include "crncomp/verify.hpp"

using namespace crncomp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitFailed = 2;

class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericFlags {
  double rtol = IntegratorConfig{}.rtol;
  double atol = IntegratorConfig{}.atol;
  double t_end = IntegratorConfig{}.t_end;
  std::size_t samples = IntegratorConfig{}.samples;

  IntegratorConfig config() const {
    IntegratorConfig cfg;
    cfg.rtol = rtol;
    cfg.atol = atol;
    cfg.t_end = t_end;
    cfg.samples = samples;
    cfg.validate();
    return cfg;
  }
};

void add_numeric_flags(CLI::App* cmd, NumericFlags& f) {
  cmd->add_option("--rtol", f.rtol, "Relative tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--atol", f.atol, "Absolute tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--t-end", f.t_end, "Integration horizon")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--samples", f.samples, "Number of uniform sample intervals")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

NetworkDocument load(const std::string& path) {
  try {
    return load_network(path);
  } catch (const ParseError& e) {
    throw InputError(e.what());
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

MsCrc load_mscrc(const std::string& path) {
  auto doc = load(path);
  if (!doc.mscrc) throw InputError(path + ": no inputs/outputs declared");
  return std::move(*doc.mscrc);
}

/// Writes to `path`, or to stdout when the path is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot open " + path + " for writing");
  out << text;
}

/// "A=0.5,B=1" (commas or repeated flags) into a map.
std::map<std::string, double> parse_assignments(const std::vector<std::string>& items, const char* flag) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty()) continue;
      const auto eq = part.find('=');
      if (eq == std::string::npos || eq == 0)
        throw InputError(std::string(flag) + ": expected NAME=VALUE, got '" + part + "'");
      double value = 0.0;
      try {
        std::size_t used = 0;
        value = std::stod(part.substr(eq + 1), &used);
        if (used != part.size() - eq - 1) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw InputError(std::string(flag) + ": bad number in '" + part + "'");
      }
      out[part.substr(0, eq)] = value;
    }
  }
  return out;
}

/// Values for `names` from the assignments; unspecified names are drawn from
/// U(0, 1) when `rng` is set and default to 0 otherwise.
std::vector<double> assign(const std::vector<std::string>& names, std::map<std::string, double>& values,
                           std::optional<std::mt19937_64>& rng) {
  std::vector<double> out;
  for (const auto& n : names) {
    if (auto it = values.find(n); it != values.end()) {
      if (!(it->second >= 0.0)) throw InputError("initial value of " + n + " must be nonnegative");
      out.push_back(it->second);
      values.erase(it);
    } else if (rng) {
      out.push_back(std::uniform_real_distribution<double>(0.0, 1.0)(*rng));
    } else {
      out.push_back(0.0);
    }
  }
  return out;
}

void reject_leftovers(const std::map<std::string, double>& values, const char* flag) {
  if (values.empty()) return;
  throw InputError(std::string(flag) + ": unknown species '" + values.begin()->first + "'");
}

std::string to_csv(const SimulationTrace& tr, const std::vector<std::size_t>& columns) {
  std::string out = "t";
  for (auto c : columns) out += "," + tr.species[c];
  out += "\n";
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    out += format_number(tr.times[k]);
    for (auto c : columns) out += "," + format_number(tr.states[k][c]);
    out += "\n";
  }
  return out;
}

std::vector<std::size_t> all_columns(const SimulationTrace& tr) {
  std::vector<std::size_t> c(tr.species.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = i;
  return c;
}

nlohmann::json steady_json(const SimulationTrace& tr) {
  nlohmann::json j;
  j["steady_state_detected"] = tr.steady_state.has_value();
  if (tr.steady_state) {
    nlohmann::json est = nlohmann::json::object();
    for (std::size_t i = 0; i < tr.species.size(); ++i) est[tr.species[i]] = tr.steady_state->estimate[i];
    j["estimate"] = est;
    j["residual"] = tr.steady_state->residual;
    j["t_reached"] = tr.steady_state->t_reached;
  }
  j["steps_accepted"] = tr.steps_accepted;
  j["steps_rejected"] = tr.steps_rejected;
  j["clamps"] = tr.clamp_count;
  return j;
}

int run_analyze(const std::string& file, const std::string& out) {
  const auto doc = load(file);
  emit(out, to_json(structural_report(doc.crn)).dump(2) + "\n");
  return kExitOk;
}

int run_reduce(const std::string& file, const std::string& out) {
  const auto red = reduce_mscrc(load_mscrc(file));
  FormatOptions fo;
  fo.header_comments.push_back("reduced system of " + file);
  fo.header_comments.push_back("inputs absorbed into rates: k = kappa * input monomial");
  for (const auto& d : red.dropped())
    fo.header_comments.push_back("dropped reaction " + std::to_string(d.original_index + 1) +
                                 " (no net change on the outputs)");
  for (std::size_t j = 0; j < red.base().reaction_count(); ++j)
    fo.reaction_comments.push_back("k=" + describe_rate(red, j));
  emit(out, format_network(red.base(), fo));
  return kExitOk;
}

int run_check(const std::string& f1, const std::string& f2, const std::string& out) {
  const auto verdict = certify_composable(load_mscrc(f1), load_mscrc(f2));
  emit(out, to_json(verdict).dump(2) + "\n");
  return exit_code(verdict);
}

int run_compose(const std::string& f1, const std::string& f2, const std::vector<std::string>& renames,
                const std::string& out) {
  SpeciesRenaming renaming;
  for (const auto& r : renames) {
    const auto eq = r.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == r.size())
      throw InputError("--rename: expected OLD=NEW, got '" + r + "'");
    renaming[r.substr(0, eq)] = r.substr(eq + 1);
  }
  const auto cs = couple(load_mscrc(f1), load_mscrc(f2), renaming);
  FormatOptions fo;
  fo.header_comments.push_back("coupled system of " + f1 + " (upstream) and " + f2 + " (downstream)");
  for (auto p : cs.provenance) fo.reaction_comments.push_back(p == Provenance::Upstream ? "upstream" : "downstream");
  emit(out, format_network(cs.mscrc, fo));
  return kExitOk;
}

int run_simulate(const std::string& file, const std::vector<std::string>& init, std::optional<std::uint64_t> seed,
                 const NumericFlags& nf, const std::string& out, const std::string& steady_out) {
  const auto doc = load(file);
  auto values = parse_assignments(init, "--init");
  std::optional<std::mt19937_64> rng;
  if (seed) rng.emplace(*seed);
  const auto s0 = assign(doc.crn.species_names(), values, rng);
  reject_leftovers(values, "--init");
  const auto tr = simulate(doc.crn, s0, nf.config());
  emit(out, to_csv(tr, all_columns(tr)));
  const std::string sidecar = !steady_out.empty() ? steady_out : (out.empty() || out == "-" ? "" : out + ".json");
  const std::string js = steady_json(tr).dump(2) + "\n";
  if (sidecar.empty())
    std::cerr << js;
  else
    emit(sidecar, js);
  return kExitOk;
}

int run_verify(const std::vector<std::string>& files, const std::vector<std::string>& init,
               const std::vector<std::string>& target, std::optional<std::uint64_t> seed, double tol,
               const NumericFlags& nf, const std::string& out) {
  VerifyOptions vo;
  vo.tolerance = tol;
  auto values = parse_assignments(init, "--init");
  std::optional<std::mt19937_64> rng;
  if (seed) rng.emplace(*seed);
  VerificationReport rep;
  if (files.size() == 1) {
    const auto c = load_mscrc(files[0]);
    auto targets = parse_assignments(target, "--target");
    const auto x0 = assign(c.input_names(), values, rng);
    const auto y0 = assign(c.output_names(), values, rng);
    reject_leftovers(values, "--init");
    std::vector<double> t;
    for (const auto& n : c.output_names()) {
      auto it = targets.find(n);
      if (it == targets.end()) throw InputError("--target: missing value for output " + n);
      t.push_back(it->second);
      targets.erase(it);
    }
    reject_leftovers(targets, "--target");
    rep = verify_dynamic_computation(c, x0, y0, t, vo, nf.config());
  } else {
    if (!target.empty()) throw InputError("--target applies to single-network verification only");
    const auto c1 = load_mscrc(files[0]), c2 = load_mscrc(files[1]);
    const auto x0 = assign(c1.input_names(), values, rng);
    const auto y1 = assign(c1.output_names(), values, rng);
    const auto y2 = assign(c2.output_names(), values, rng);
    reject_leftovers(values, "--init");
    rep = verify_composition_numeric(c1, c2, x0, y1, y2, vo, nf.config());
  }
  emit(out, to_json(rep).dump(2) + "\n");
  return rep.passed ? kExitOk : kExitFailed;
}

int run_demo(const std::string& wiring, double tol, const NumericFlags& nf, const std::string& out) {
  const auto c1 = parse_mscrc(library::kCrn15);
  const auto c2 = parse_mscrc(wiring == "swapped" ? library::kCrn16Swapped : library::kCrn16);
  const auto cfg = nf.config();
  VerifyOptions vo;
  vo.tolerance = tol;
  const auto rep = verify_composition_numeric(c1, c2, library::kDemoX0, library::kDemoY0, library::kDemoZ0, vo, cfg);

  const SimulationTrace* coupled = nullptr;
  for (const auto& [name, tr] : rep.traces)
    if (name == "coupled") coupled = &tr;
  if (!coupled) throw std::logic_error("coupled trace missing");
  std::vector<std::size_t> columns;
  for (const char* n : {"Y1", "Y2", "Z1", "Z2"}) columns.push_back(coupled->index_of(n));
  emit(out, to_csv(*coupled, columns));

  // Expected limits: y = (x1 + x2, x3 + x4); z from the balance of the
  // chosen wiring.
  const double y1 = library::kDemoX0[0] + library::kDemoX0[1], y2 = library::kDemoX0[2] + library::kDemoX0[3];
  const double mass = library::kDemoZ0[0] + library::kDemoZ0[1];
  const double z1 = wiring == "swapped" ? mass * y1 / (y1 + y2) : mass * y2 / (y1 + y2);
  nlohmann::json summary = to_json(rep);
  summary["wiring"] = wiring;
  summary["expected_limits"] = {{"Y1", y1}, {"Y2", y2}, {"Z1", z1}, {"Z2", mass - z1}};
  summary.erase("traces");
  std::cerr << summary.dump(2) << "\n";
  return rep.passed ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analyze, certify, compose, simulate and verify mass-action reaction networks"};
  app.require_subcommand(1);
  std::string out;
  NumericFlags nf;
  double tol = VerifyOptions{}.tolerance;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> files, init, target, renames;
  std::string file, steady_out, wiring = "dynamics";

  auto* analyze = app.add_subcommand("analyze", "Structural report as JSON");
  analyze->add_option("file", file, "Network file")->required()->check(CLI::ExistingFile);
  analyze->add_option("--out", out, "Output path (default stdout)");

  auto* reduce = app.add_subcommand("reduce", "Reduced system of a computer as .crn");
  reduce->add_option("file", file, "Computer file")->required()->check(CLI::ExistingFile);
  reduce->add_option("--out", out, "Output path (default stdout)");

  auto* check = app.add_subcommand("check", "Certify that two computers compose (exit 0/2/3)");
  check->add_option("files", files, "Upstream and downstream computer files")
      ->required()
      ->expected(2)
      ->check(CLI::ExistingFile);
  check->add_option("--out", out, "Output path (default stdout)");

  auto* compose = app.add_subcommand("compose", "Coupled system of two computers as .crn");
  compose->add_option("files", files, "Upstream and downstream computer files")
      ->required()
      ->expected(2)
      ->check(CLI::ExistingFile);
  compose->add_option("--rename", renames, "Rename a downstream species, OLD=NEW");
  compose->add_option("--out", out, "Output path (default stdout)");

  auto* sim = app.add_subcommand("simulate", "Trajectory CSV plus steady-state JSON");
  sim->add_option("file", file, "Network file")->required()->check(CLI::ExistingFile);
  sim->add_option("--init", init, "Initial values NAME=VALUE[,...]; others default to 0");
  sim->add_option("--seed", seed, "Draw unspecified initial values from U(0,1) with this seed");
  sim->add_option("--out", out, "CSV path (default stdout)");
  sim->add_option("--steady-out", steady_out, "Steady-state JSON path (default <out>.json, or stderr)");
  add_numeric_flags(sim, nf);

  auto* ver = app.add_subcommand("verify", "Numerical verification of a computation or a composition (exit 0/2)");
  ver->add_option("files", files, "One computer, or upstream and downstream computers")
      ->required()
      ->expected(1, 2)
      ->check(CLI::ExistingFile);
  ver->add_option("--init", init, "Initial values NAME=VALUE[,...]; others default to 0");
  ver->add_option("--target", target, "Expected output limits NAME=VALUE[,...] (single computer)");
  ver->add_option("--seed", seed, "Draw unspecified initial values from U(0,1) with this seed");
  ver->add_option("--tol", tol, "Absolute tolerance on the limits")->check(CLI::PositiveNumber)->capture_default_str();
  ver->add_option("--out", out, "Report path (default stdout)");
  add_numeric_flags(ver, nf);

  auto* demo = app.add_subcommand("demo", "Two-layer sum/ratio computation; trajectory CSV of y and z");
  demo->add_option("--wiring", wiring,
                   "dynamics: Z1 -> y2/(y1+y2) as the reactions imply; swapped: catalysts exchanged so Z1 -> "
                   "y1/(y1+y2)")
      ->check(CLI::IsMember({"dynamics", "swapped"}))
      ->capture_default_str();
  demo->add_option("--tol", tol, "Absolute tolerance on the limits")->check(CLI::PositiveNumber)->capture_default_str();
  demo->add_option("--out", out, "CSV path (default stdout)");
  add_numeric_flags(demo, nf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (analyze->parsed()) return run_analyze(file, out);
    if (reduce->parsed()) return run_reduce(file, out);
    if (check->parsed()) return run_check(files[0], files[1], out);
    if (compose->parsed()) return run_compose(files[0], files[1], renames, out);
    if (sim->parsed()) return run_simulate(file, init, seed, nf, out, steady_out);
    if (ver->parsed()) return run_verify(files, init, target, seed, tol, nf, out);
    if (demo->parsed()) return run_demo(wiring, tol, nf, out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const WiringError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const IntegrationError& e) {
    std::cerr << "error: integration failed: " << e.what() << "\n";
    return kExitFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
