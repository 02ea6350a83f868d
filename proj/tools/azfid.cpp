// Copyright 2026 The azfid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "azfid/channels.hpp"
#include "azfid/errors.hpp"
#include "azfid/fidelity.hpp"
#include "azfid/geometry.hpp"
#include "azfid/io.hpp"
#include "azfid/oracle.hpp"
#include "azfid/orbits.hpp"

namespace {

using azfid::format_double;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;
constexpr std::uint64_t kDefaultSeed = 42;

struct Globals {
  std::optional<std::uint64_t> seed;
  bool json_output = false;
  std::string out;
  std::optional<double> tolerance;
};

std::uint64_t resolve_seed(const Globals& g) {
  if (g.seed) return *g.seed;
  if (const char* env = std::getenv("AZFID_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw azfid::ConfigError(std::string("AZFID_SEED='") + env + "' is not an unsigned integer");
  }
  return kDefaultSeed;
}

json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

void flatten(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const Globals& g, const json& record) {
  std::ostringstream os;
  if (g.json_output) {
    os << record.dump(2) << "\n";
  } else {
    flatten(record, "", os);
  }
  if (g.out.empty()) {
    std::cout << os.str();
  } else {
    azfid::write_text_file(g.out, os.str());
  }
}

json to_ordered(const nlohmann::json& j) { return json::parse(j.dump()); }

// ---------------------------------------------------------------------------

struct ComputeArgs {
  std::string rho;
  std::string sigma;
  double alpha = 0.0;
  double z = 0.0;
};

int cmd_compute(const Globals& g, const ComputeArgs& a) {
  const std::uint64_t seed = resolve_seed(g);
  const azfid::DensityMatrix rho = azfid::load_state(a.rho, seed);
  const azfid::DensityMatrix sigma = azfid::load_state(a.sigma, seed + 1);
  const azfid::ParamPoint p(a.alpha, a.z);
  const azfid::FidelityValue v = azfid::alpha_z_fidelity(rho, sigma, p, azfid::SupportPolicy::RestrictToSupport);
  json rec;
  rec["alpha"] = p.alpha;
  rec["z"] = p.z;
  rec["region"] = std::string(azfid::region_name(p.region));
  rec["T"] = number(v.trace_quantity);
  rec["F"] = number(v.fidelity);
  if (p.alpha == 1.0) {
    rec["S"] = nullptr;
  } else {
    rec["S"] = number(azfid::renyi_entropy(rho, sigma, p));
  }
  rec["support_warning"] = v.support_violation;
  if (v.support_violation) {
    std::cerr << "warning: supp(rho) is not inside supp(sigma); F is evaluated on the support of sigma\n";
  }
  emit(g, rec);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct ExtremalArgs {
  std::string rho;
  std::string sigma;
  double alpha = 0.0;
  double z = 0.0;
  std::string target;
};

std::string kind_name(azfid::ExtremumKind k) { return k == azfid::ExtremumKind::Max ? "max" : "min"; }

int cmd_extremal(const Globals& g, const ExtremalArgs& a) {
  const std::uint64_t seed = resolve_seed(g);
  const azfid::ParamPoint p(a.alpha, a.z);
  const azfid::DensityMatrix rho = azfid::load_state(a.rho, seed);
  auto need_sigma = [&] {
    if (a.sigma.empty()) throw azfid::ConfigError("--sigma is required for target '" + a.target + "'");
    return azfid::load_state(a.sigma, seed + 1);
  };
  json rec;
  rec["target"] = a.target;
  rec["alpha"] = p.alpha;
  rec["z"] = p.z;
  rec["region"] = std::string(azfid::region_name(p.region));
  if (a.target == "orbit-max" || a.target == "orbit-min") {
    const azfid::DensityMatrix sigma = need_sigma();
    const azfid::OrbitExtremum e =
        a.target == "orbit-max" ? azfid::orbit_max(rho, sigma, p) : azfid::orbit_min(rho, sigma, p);
    rec["kind"] = kind_name(e.kind);
    rec["value"] = e.value;
    rec["achiever"] = e.branch;
    rec["unitary"] = to_ordered(azfid::matrix_to_json(e.achieving_unitary.matrix()));
  } else if (a.target == "channel-all" || a.target == "mixed-unitary") {
    const azfid::DensityMatrix sigma = need_sigma();
    const azfid::ChannelExtremum e = azfid::channel_class_extrema(
        rho, sigma, a.target == "channel-all" ? azfid::ChannelClass::All : azfid::ChannelClass::MixedUnitary, p);
    rec["kind"] = kind_name(e.kind);
    rec["value"] = e.value;
    rec["achiever"] = e.achiever;
    if (e.unitary) rec["unitary"] = to_ordered(azfid::matrix_to_json(e.unitary->matrix()));
    if (e.output_state) rec["state"] = to_ordered(azfid::state_to_json(*e.output_state));
  } else if (a.target == "pure-state") {
    const azfid::PureStateExtremum e = azfid::pure_state_extrema(rho, p);
    rec["kind"] = kind_name(e.kind);
    rec["value"] = e.value;
    rec["achiever"] = e.kind == azfid::ExtremumKind::Min ? "bottom eigenvector of rho" : "top eigenvector of rho";
    rec["state"] = to_ordered(azfid::state_to_json(e.achiever));
  }
  emit(g, rec);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::string spec;
  std::string rho;
  std::string sigma;
  std::vector<double> alphas;
  std::vector<double> zs;
};

std::vector<double> json_grid(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key)) return {};
  const nlohmann::json& v = j.at(key);
  if (!v.is_array()) throw azfid::ConfigError("sweep spec: '" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw azfid::ConfigError("sweep spec: '" + key + "' must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

int cmd_sweep(const Globals& g, SweepArgs a) {
  if (!a.spec.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(azfid::read_text_file(a.spec));
    } catch (const nlohmann::json::parse_error& e) {
      throw azfid::ConfigError(a.spec + ": malformed JSON: " + e.what());
    }
    if (!j.is_object()) throw azfid::ConfigError("sweep spec: top level must be an object");
    for (const auto& [k, v] : j.items()) {
      if (k != "alpha_grid" && k != "z_grid" && k != "rho" && k != "sigma") {
        throw azfid::ConfigError("sweep spec: unknown field '" + k + "'");
      }
      if ((k == "rho" || k == "sigma") && !v.is_string()) {
        throw azfid::ConfigError("sweep spec: '" + k + "' must be a string");
      }
    }
    if (a.alphas.empty()) a.alphas = json_grid(j, "alpha_grid");
    if (a.zs.empty()) a.zs = json_grid(j, "z_grid");
    if (a.rho.empty() && j.contains("rho")) a.rho = j.at("rho").get<std::string>();
    if (a.sigma.empty() && j.contains("sigma")) a.sigma = j.at("sigma").get<std::string>();
  }
  if (a.alphas.empty()) throw azfid::ConfigError("sweep: alpha grid is empty");
  if (a.zs.empty()) throw azfid::ConfigError("sweep: z grid is empty");
  if (a.rho.empty() || a.sigma.empty()) throw azfid::ConfigError("sweep: both rho and sigma sources are required");
  for (const double x : a.alphas) {
    if (!(x > 0.0) || !std::isfinite(x)) throw azfid::ParameterError("sweep: alpha values must be finite and > 0");
  }
  for (const double x : a.zs) {
    if (!(x > 0.0) || !std::isfinite(x)) throw azfid::ParameterError("sweep: z values must be finite and > 0");
  }

  const std::uint64_t seed = resolve_seed(g);
  const azfid::DensityMatrix rho = azfid::load_state(a.rho, seed);
  const azfid::DensityMatrix sigma = azfid::load_state(a.sigma, seed + 1);
  std::ostringstream csv;
  csv << "alpha,z,region,T,F,S,orbit_max,orbit_min\n";
  for (const double alpha : a.alphas) {
    if (alpha == 1.0) {
      std::cerr << "sweep: rows with alpha=1 rejected (singular parameter)\n";
      continue;
    }
    for (const double z : a.zs) {
      const azfid::ParamPoint p(alpha, z);
      const azfid::FidelityValue v = azfid::alpha_z_fidelity(rho, sigma, p, azfid::SupportPolicy::RestrictToSupport);
      csv << format_double(alpha) << ',' << format_double(z) << ',' << azfid::region_name(p.region) << ','
          << format_double(v.trace_quantity) << ',' << format_double(v.fidelity) << ','
          << format_double(azfid::renyi_entropy(rho, sigma, p)) << ',';
      if (azfid::orbit_max_covered(p)) csv << format_double(azfid::orbit_max(rho, sigma, p).value);
      csv << ',';
      if (azfid::orbit_min_covered(p)) csv << format_double(azfid::orbit_min(rho, sigma, p).value);
      csv << '\n';
    }
  }
  if (g.out.empty()) {
    std::cout << csv.str();
  } else {
    azfid::write_text_file(g.out, csv.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string config;
  std::vector<std::string> checks;
  std::optional<int> trials;
  std::optional<int> pairs;
  bool list = false;
};

int cmd_verify(const Globals& g, const VerifyArgs& a) {
  if (a.list) {
    for (const azfid::CheckInfo& c : azfid::registered_checks()) std::cout << c.id << "  [" << c.anchor << "]\n";
    return kExitOk;
  }
  azfid::SuiteConfig cfg;
  if (!a.config.empty()) cfg = azfid::SuiteConfig::from_json_text(azfid::read_text_file(a.config));
  if (g.seed || std::getenv("AZFID_SEED")) cfg.seed = resolve_seed(g);
  if (!a.checks.empty()) cfg.checks = a.checks;
  if (a.trials) cfg.trials = *a.trials;
  if (a.pairs) cfg.pairs = *a.pairs;
  if (g.tolerance) cfg.tolerance = *g.tolerance;

  const std::vector<azfid::VerificationReport> reports = azfid::run_property_suite(cfg);
  for (const azfid::VerificationReport& r : reports) {
    std::fprintf(stderr, "%-15s %-36s %-22s worst_margin=%s\n", std::string(azfid::status_name(r.status)).c_str(),
                 r.check_id.c_str(), r.anchor.c_str(), format_double(r.worst_margin).c_str());
  }
  const std::string text = azfid::reports_to_json(reports) + "\n";
  if (g.out.empty()) {
    std::cout << text;
  } else {
    azfid::write_text_file(g.out, text);
  }
  return azfid::suite_passed(reports) ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------

struct SubspaceArgs {
  std::string first;
  std::string second;
  double alpha = 0.0;
  double z = 0.0;
  std::string rho;
  int n = 0;
};

int cmd_subspace(const Globals& g, const SubspaceArgs& a) {
  const std::uint64_t seed = resolve_seed(g);
  const azfid::ParamPoint p(a.alpha, a.z);
  json rec;
  rec["alpha"] = p.alpha;
  rec["z"] = p.z;
  if (!a.first.empty() || !a.second.empty()) {
    if (a.first.empty() || a.second.empty()) throw azfid::ConfigError("subspace: --first and --second go together");
    const azfid::SubspacePair pair(azfid::load_subspace(a.first, seed), azfid::load_subspace(a.second, seed + 1));
    const azfid::SubspaceTrace t = azfid::subspace_fidelity_trace(pair, p);
    const Eigen::Index shared = azfid::intersection_dim(pair);
    const bool commuting =
        azfid::commutator_norm(pair.first().matrix().matrix(), pair.second().matrix().matrix()) < 1e-10;
    rec["d"] = pair.dim();
    rec["m"] = pair.m();
    rec["n"] = pair.n();
    rec["dim_intersection"] = shared;
    rec["T"] = t.trace_quantity;
    rec["F"] = std::pow(t.trace_quantity, 1.0 / p.alpha);
    rec["support_warning"] = t.support_warning;
    rec["commuting"] = commuting;
    if (commuting) rec["commuting_formula"] = azfid::commuting_subspace_formula(pair.m(), pair.n(), shared, p.alpha);
    const azfid::Bounds b = azfid::subspace_bounds(pair.m(), pair.n(), pair.dim(), p.alpha);
    const azfid::Bounds bz = azfid::subspace_bounds_z_exponent(pair.m(), pair.n(), pair.dim(), p.alpha, p.z);
    rec["bounds"] = {{"lower", b.lower}, {"upper", b.upper}};
    rec["bounds_z_exponent"] = {{"lower", bz.lower}, {"upper", bz.upper}};
  }
  if (!a.rho.empty()) {
    if (a.n < 1) throw azfid::ConfigError("subspace: --n must be >= 1 with --rho");
    const azfid::DensityMatrix rho = azfid::load_state(a.rho, seed + 2);
    const azfid::Bounds b = azfid::compression_bounds(rho, a.n, p);
    const azfid::Bounds bz = azfid::compression_bounds_z_exponent(rho, a.n, p);
    rec["compression"] = {{"n", a.n},
                          {"lower", b.lower},
                          {"upper", b.upper},
                          {"lower_z_exponent", bz.lower},
                          {"upper_z_exponent", bz.upper}};
  }
  if (rec.size() == 2) throw azfid::ConfigError("subspace: give --first/--second, --rho/--n, or both");
  emit(g, rec);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct ExportArgs {
  std::string state;
  std::string channel;
};

int cmd_export(const Globals& g, const ExportArgs& a) {
  const std::uint64_t seed = resolve_seed(g);
  if (a.state.empty() == a.channel.empty()) throw azfid::ConfigError("export: give exactly one of --state, --channel");
  const nlohmann::json j = a.state.empty() ? azfid::channel_to_json(azfid::load_channel(a.channel, seed))
                                           : azfid::state_to_json(azfid::load_state(a.state, seed));
  const std::string text = j.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
  } else {
    azfid::write_text_file(g.out, text);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alpha-z fidelity: evaluation, closed-form extrema and property verification"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::uint64_t seed_value = 0;
  double tolerance_value = 1e-9;
  auto* seed_opt = app.add_option("--seed", seed_value, "RNG seed (falls back to AZFID_SEED, then 42)");
  app.add_flag("--json", g.json_output, "JSON output instead of key: value lines");
  app.add_option("--out", g.out, "write output to this path");
  auto* tol_opt = app.add_option("--tolerance", tolerance_value, "inequality tolerance for verify")
                      ->default_val(1e-9)
                      ->check(CLI::NonNegativeNumber);

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "alpha-z fidelity, trace quantity and Renyi divergence");
  c->add_option("--rho", compute.rho, "state source (path or generator spec)")->required();
  c->add_option("--sigma", compute.sigma, "state source")->required();
  c->add_option("--alpha", compute.alpha)->required();
  c->add_option("--z", compute.z)->required();

  ExtremalArgs extremal;
  auto* e = app.add_subcommand("extremal", "closed-form extremal values");
  e->add_option("--rho", extremal.rho, "state source")->required();
  e->add_option("--sigma", extremal.sigma, "state source (not used by pure-state)");
  e->add_option("--alpha", extremal.alpha)->required();
  e->add_option("--z", extremal.z)->required();
  e->add_option("--target", extremal.target)
      ->required()
      ->check(CLI::IsMember({"orbit-max", "orbit-min", "channel-all", "mixed-unitary", "pure-state"}));

  SweepArgs sweep;
  auto* s = app.add_subcommand("sweep", "CSV over an (alpha, z) grid");
  s->add_option("--spec", sweep.spec, "JSON file with alpha_grid, z_grid, rho, sigma");
  s->add_option("--rho", sweep.rho, "state source");
  s->add_option("--sigma", sweep.sigma, "state source");
  s->add_option("--alphas", sweep.alphas, "alpha grid")->delimiter(',');
  s->add_option("--zs", sweep.zs, "z grid")->delimiter(',');

  VerifyArgs verify;
  std::string checks_csv;
  int trials = 0;
  int pairs = 0;
  auto* v = app.add_subcommand("verify", "run the property suite and print a JSON report");
  v->add_option("--config", verify.config, "suite config JSON");
  v->add_option("--checks", verify.checks, "comma-separated check ids")->delimiter(',');
  auto* trials_opt = v->add_option("--trials", trials, "Monte-Carlo trials")->check(CLI::PositiveNumber);
  auto* pairs_opt = v->add_option("--pairs", pairs, "random state pairs per check")->check(CLI::PositiveNumber);
  v->add_flag("--list", verify.list, "list registered checks and exit");

  SubspaceArgs subspace;
  auto* sub = app.add_subcommand("subspace", "subspace-pair fidelity and bounds");
  sub->add_option("--first", subspace.first, "subspace source (coord:..., random:..., or path)");
  sub->add_option("--second", subspace.second, "subspace source");
  sub->add_option("--alpha", subspace.alpha)->required();
  sub->add_option("--z", subspace.z)->required();
  sub->add_option("--rho", subspace.rho, "state for compression bounds");
  sub->add_option("--n", subspace.n, "subspace dimension for compression bounds");

  ExportArgs exp;
  auto* x = app.add_subcommand("export", "write a state or channel as JSON");
  x->add_option("--state", exp.state, "state source");
  x->add_option("--channel", exp.channel, "channel source");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err) == 0 ? kExitOk : kExitInput;
  }
  if (seed_opt->count() > 0) g.seed = seed_value;
  if (tol_opt->count() > 0) g.tolerance = tolerance_value;
  if (trials_opt->count() > 0) verify.trials = trials;
  if (pairs_opt->count() > 0) verify.pairs = pairs;

  try {
    if (c->parsed()) return cmd_compute(g, compute);
    if (e->parsed()) return cmd_extremal(g, extremal);
    if (s->parsed()) return cmd_sweep(g, sweep);
    if (v->parsed()) return cmd_verify(g, verify);
    if (sub->parsed()) return cmd_subspace(g, subspace);
    if (x->parsed()) return cmd_export(g, exp);
  } catch (const azfid::UnsupportedRegion& err) {
    std::cerr << "uncovered region: " << err.what() << "\n";
    return kExitFailed;
  } catch (const azfid::SupportError& err) {
    std::cerr << "support error: " << err.what() << "\n";
    return kExitFailed;
  } catch (const std::invalid_argument& err) {
    std::cerr << "invalid input: " << err.what() << "\n";
    return kExitInput;
  } catch (const azfid::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitInput;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
