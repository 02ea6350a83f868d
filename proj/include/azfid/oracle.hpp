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

#ifndef AZFID_ORACLE_HPP
#define AZFID_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "azfid/channels.hpp"
#include "azfid/fidelity.hpp"
#include "azfid/orbits.hpp"

namespace azfid {

inline constexpr double kInequalityTol = 1e-9;
inline constexpr double kClosureTol = 1e-3;
inline constexpr int kDefaultRefineStarts = 8;

/// Local search over tuples of unitaries. Each step draws a random unit
/// skew-Hermitian direction L_i per unitary and tries U_i <- exp(+-eps L_i) U_i,
/// keeping the better side if it improves and halving eps otherwise. Starts at
/// eps = 0.05 and stops once eps drops below 1e-9.
struct RefineResult {
  double value = 0.0;
  std::vector<CMatrix> unitaries;
  int evaluations = 0;
};

RefineResult refine_unitaries(const std::function<double(const std::vector<CMatrix>&)>& objective,
                              std::vector<CMatrix> start, double start_value, bool maximize, int steps, Rng& rng);

/// Quasi-Newton polish of a single unitary: BFGS over exponential coordinates
/// U = exp(L(x)) U0 with central-difference gradients, re-centred on each restart.
/// Only improvements are accepted, so the result is always an attained value.
RefineResult polish_unitary(const std::function<double(const CMatrix&)>& objective, const CMatrix& start,
                            double start_value, bool maximize, int restarts = 4, int iterations = 200);

struct OrbitSearch {
  double emp_max = 0.0;
  double emp_min = 0.0;
  UnitaryMatrix argmax;
  UnitaryMatrix argmin;
};

/// Empirical max and min of F(rho, U sigma U*) over `trials` Haar unitaries.
/// The best `refine_starts` samples for each direction are then refined for
/// `refine_steps` steps.
OrbitSearch mc_orbit_extrema(const DensityMatrix& rho, const DensityMatrix& sigma, const ParamPoint& p, int trials,
                             int refine_steps, std::uint64_t seed, int refine_starts = kDefaultRefineStarts);

struct GoldenThompsonCheck {
  double margin = 0.0;  // Tr[e^A e^B] - Tr[e^(A+B)]
  bool commuting = false;
};

GoldenThompsonCheck check_golden_thompson(const HermitianMatrix& a, const HermitianMatrix& b);

/// Signed so that a non-negative value means the trace inequality holds:
/// Tr[(B^(1/2) A B^(1/2))^q] - Tr[(B^(r/2) A^r B^(r/2))^(q/r)] for r <= 1 and
/// the negation for r >= 1.
double check_alt(const HermitianMatrix& a, const HermitianMatrix& b, double q, double r);

struct Rearrangement {
  double lower = 0.0;  // <lambda_down(rho), lambda_up(sigma)>
  double value = 0.0;  // Tr[rho sigma]
  double upper = 0.0;  // <lambda_down(rho), lambda_down(sigma)>
};

/// Throws std::logic_error if the sandwich fails by more than 1e-10.
Rearrangement rearrangement_bounds(const DensityMatrix& rho, const DensityMatrix& sigma);

struct Envelope {
  double emp_max = 0.0;
  double emp_min = 0.0;
  long samples = 0;
};

/// F(rho, |psi><psi|) over Haar-random pure states.
Envelope mc_pure_state_envelope(const DensityMatrix& rho, const ParamPoint& p, int samples, std::uint64_t seed);

/// F(rho, Phi(sigma)) over random CPTP maps with 1 to 4 Kraus operators.
Envelope mc_channel_envelope(const DensityMatrix& rho, const DensityMatrix& sigma, const ParamPoint& p, int channels,
                             std::uint64_t seed);

/// F(rho, Psi(sigma)) over random mixed-unitary maps with 1 to 4 Haar
/// unitaries and flat Dirichlet weights, refined as in mc_orbit_extrema.
Envelope mc_mixed_unitary_envelope(const DensityMatrix& rho, const DensityMatrix& sigma, const ParamPoint& p,
                                   int channels, int refine_steps, std::uint64_t seed,
                                   int refine_starts = kDefaultRefineStarts);

enum class CheckStatus { Pass, Fail, NotApplicable };

std::string_view status_name(CheckStatus s);

struct VerificationReport {
  std::string check_id;
  std::string anchor;
  long samples = 0;
  double worst_margin = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  CheckStatus status = CheckStatus::Fail;
  std::uint64_t seed = 0;
  long runtime_ms = 0;
  std::string note;
};

struct SuiteConfig {
  std::vector<std::string> checks;  // empty runs every registered check
  std::uint64_t seed = 42;
  int trials = 2000;
  int refine_steps = 200;
  int refine_starts = kDefaultRefineStarts;
  int pairs = 5;
  double tolerance = kInequalityTol;  // one-sided inequality tolerance

  /// Parses a JSON object. Unknown keys and ill-typed values raise ConfigError.
  static SuiteConfig from_json_text(const std::string& text);
};

struct CheckInfo {
  std::string id;
  std::string anchor;
};

/// Registered checks in execution order.
std::vector<CheckInfo> registered_checks();

/// Anchors every suite registry must cover.
std::vector<std::string> required_anchors();

/// Runs the selected checks in registry order. Unknown ids raise ConfigError.
/// An unfiltered run appends a registry-coverage record.
std::vector<VerificationReport> run_property_suite(const SuiteConfig& config);

bool suite_passed(const std::vector<VerificationReport>& reports);

/// JSON array, one object per report, keys in a fixed order.
std::string reports_to_json(const std::vector<VerificationReport>& reports, int indent = 2);

}  // namespace azfid

#endif  // AZFID_ORACLE_HPP
