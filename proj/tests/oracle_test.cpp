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

#include "azfid/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gtest/gtest.h"

#include "azfid/errors.hpp"

using namespace azfid;

namespace {

DensityMatrix diag2(double a, double b) {
  RVector p(2);
  p << a, b;
  return diagonal_state(p);
}

HermitianMatrix random_hermitian(Eigen::Index d, Rng& rng) {
  CMatrix g(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) g(i, j) = rng.complex_normal();
  }
  return HermitianMatrix::from_trusted(0.5 * (g + g.adjoint()));
}

SuiteConfig only(const std::string& id) {
  SuiteConfig c;
  c.checks = {id};
  c.pairs = 2;
  c.trials = 200;
  c.refine_steps = 50;
  return c;
}

}  // namespace

TEST(oracle, mc_orbit_self_pair) {
  Rng rng(1);
  const DensityMatrix rho = random_density(3, 3, rng);
  const OrbitSearch s = mc_orbit_extrema(rho, rho, ParamPoint(0.5, 0.5), 200, 1000, 5);
  EXPECT_NEAR(s.emp_max, 1.0, 1e-9);
}

TEST(oracle, mc_orbit_sandwich_example) {
  const DensityMatrix rho = diag2(0.7, 0.3);
  const DensityMatrix sigma = density_from_spectrum((RVector(2) << 0.6, 0.4).finished(), haar_unitary(2, 3));
  const ParamPoint p(2.0, 1.5);
  const OrbitSearch s = mc_orbit_extrema(rho, sigma, p, 2000, 200, 42);
  const double hi = orbit_max(rho, sigma, p).value;
  const double lo = orbit_min(rho, sigma, p).value;
  EXPECT_LE(s.emp_max, hi + 1e-9);
  EXPECT_GE(s.emp_max, hi - 1e-3);
  EXPECT_GE(s.emp_min, lo - 1e-9);
  EXPECT_LE(s.emp_min, lo + 1e-3);
  const DensityMatrix moved(s.argmax.conjugate(sigma.matrix()));
  EXPECT_NEAR(alpha_z_fidelity(rho, moved, p).fidelity, s.emp_max, 1e-10);
}

TEST(oracle, mc_orbit_is_deterministic) {
  Rng rng(2);
  const DensityMatrix rho = random_density(3, 3, rng);
  const DensityMatrix sigma = random_density(3, 3, rng);
  const OrbitSearch a = mc_orbit_extrema(rho, sigma, ParamPoint(2.0, 1.5), 100, 20, 9);
  const OrbitSearch b = mc_orbit_extrema(rho, sigma, ParamPoint(2.0, 1.5), 100, 20, 9);
  EXPECT_EQ(a.emp_max, b.emp_max);
  EXPECT_EQ(a.emp_min, b.emp_min);
}

TEST(oracle, refinement_never_worsens) {
  Rng rng(3);
  const DensityMatrix rho = random_density(3, 3, rng);
  const DensityMatrix sigma = random_density(3, 3, rng);
  const TraceFunctional tf(rho, sigma, ParamPoint(2.0, 1.5));
  const auto objective = [&](const std::vector<CMatrix>& us) { return tf.at_unitary(us.front()); };
  const CMatrix start = haar_unitary(3, rng).matrix();
  const double v0 = objective({start});
  const RefineResult up = refine_unitaries(objective, {start}, v0, true, 100, rng);
  EXPECT_GE(up.value, v0);
  EXPECT_NEAR(objective(up.unitaries), up.value, 1e-14);
  const RefineResult down = refine_unitaries(objective, {start}, v0, false, 100, rng);
  EXPECT_LE(down.value, v0);
}

TEST(oracle, golden_thompson) {
  Rng rng(4);
  RVector a(3);
  RVector b(3);
  a << 0.3, -1.0, 2.0;
  b << 1.0, 0.5, -0.2;
  const GoldenThompsonCheck comm = check_golden_thompson(HermitianMatrix::diagonal(a), HermitianMatrix::diagonal(b));
  EXPECT_TRUE(comm.commuting);
  EXPECT_NEAR(comm.margin, 0.0, 1e-9);
  const HermitianMatrix h = random_hermitian(4, rng);
  EXPECT_NEAR(check_golden_thompson(h, h).margin, 0.0, 1e-9);
  for (int rep = 0; rep < 50; ++rep) {
    const GoldenThompsonCheck c = check_golden_thompson(random_hermitian(4, rng), random_hermitian(4, rng));
    EXPECT_FALSE(c.commuting);
    EXPECT_GT(c.margin, 0.0);
  }
}

TEST(oracle, araki_lieb_thirring) {
  Rng rng(5);
  const DensityMatrix a = random_density(3, 3, rng);
  const DensityMatrix b = random_density(3, 3, rng);
  EXPECT_NEAR(check_alt(a.matrix(), b.matrix(), 2.0, 1.0), 0.0, 1e-12);
  const DensityMatrix da = diag2(0.7, 0.3);
  const DensityMatrix db = diag2(0.2, 0.8);
  for (const double q : {0.5, 2.0}) {
    for (const double r : {0.3, 1.7}) EXPECT_NEAR(check_alt(da.matrix(), db.matrix(), q, r), 0.0, 1e-9);
  }
  for (int rep = 0; rep < 50; ++rep) {
    const DensityMatrix x = random_density(3, 3, rng);
    const DensityMatrix y = random_density(3, 3, rng);
    EXPECT_GE(check_alt(x.matrix(), y.matrix(), 2.0, 0.5), -1e-9);
    EXPECT_GE(check_alt(x.matrix(), y.matrix(), 0.7, 2.5), -1e-9);
  }
}

TEST(oracle, rearrangement) {
  const Rearrangement aligned = rearrangement_bounds(diag2(0.7, 0.3), diag2(0.6, 0.4));
  EXPECT_NEAR(aligned.value, aligned.upper, 1e-15);
  const Rearrangement flat = rearrangement_bounds(maximally_mixed(4), random_density(4, 4, 2));
  EXPECT_NEAR(flat.lower, 0.25, 1e-12);
  EXPECT_NEAR(flat.value, 0.25, 1e-12);
  EXPECT_NEAR(flat.upper, 0.25, 1e-12);
  Rng rng(6);
  const Rearrangement r = rearrangement_bounds(random_density(4, 4, rng), random_density(4, 4, rng));
  EXPECT_LT(r.lower, r.value);
  EXPECT_LT(r.value, r.upper);
}

TEST(oracle, envelopes_respect_closed_forms) {
  Rng rng(7);
  const DensityMatrix rho = random_density(3, 3, rng);
  const DensityMatrix sigma = random_density(3, 3, rng);
  const Envelope pure_lo = mc_pure_state_envelope(rho, ParamPoint(0.5, 0.5), 2000, 1);
  EXPECT_GE(pure_lo.emp_min, rho.lambda_min() - 1e-9);
  const Envelope pure_hi = mc_pure_state_envelope(rho, ParamPoint(2.0, 1.5), 2000, 1);
  EXPECT_LE(pure_hi.emp_max, rho.lambda_max() + 1e-9);
  const Envelope mu = mc_mixed_unitary_envelope(rho, sigma, ParamPoint(2.0, 1.5), 2000, 200, 2);
  const double bound = channel_class_extrema(rho, sigma, ChannelClass::MixedUnitary, ParamPoint(2.0, 1.5)).value;
  EXPECT_LE(mu.emp_max, bound + 1e-9);
  EXPECT_GE(mu.emp_max, bound - 1e-3);
  const Envelope all = mc_channel_envelope(rho, sigma, ParamPoint(0.5, 0.5), 500, 3);
  EXPECT_GE(all.emp_min, rho.lambda_min() - 1e-9);
  EXPECT_GT(all.samples, 0);
}

TEST(oracle, identity_channel_exceeds_claimed_all_channel_maximum) {
  const DensityMatrix rho = diag2(0.7, 0.3);
  const DensityMatrix sigma = diag2(0.6, 0.4);
  const ParamPoint p(2.0, 1.5);
  const double f = alpha_z_fidelity(rho, identity_channel(2).apply(sigma), p).fidelity;
  EXPECT_NEAR(f, std::sqrt(0.49 / 0.6 + 0.09 / 0.4), 1e-12);
  EXPECT_GT(f, rho.lambda_max());
}

TEST(oracle, registry_covers_required_anchors) {
  std::set<std::string> anchors;
  std::set<std::string> ids;
  for (const CheckInfo& c : registered_checks()) {
    anchors.insert(c.anchor);
    EXPECT_TRUE(ids.insert(c.id).second) << "duplicate id " << c.id;
  }
  for (const std::string& a : required_anchors()) EXPECT_TRUE(anchors.count(a)) << a;
  EXPECT_EQ(required_anchors().size(), 19u);
}

TEST(oracle, single_check_filter) {
  const std::vector<VerificationReport> r = run_property_suite(only("orbit-max-d2"));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].check_id, "orbit-max-d2");
  EXPECT_EQ(r[0].anchor, "orbit-extrema");
  EXPECT_EQ(r[0].pass, r[0].worst_margin >= -r[0].tolerance);
}

TEST(oracle, unknown_check_is_config_error) {
  EXPECT_THROW(run_property_suite(only("no-such-check")), ConfigError);
}

TEST(oracle, rerun_is_identical_modulo_runtime) {
  SuiteConfig c = only("golden-thompson");
  c.checks.push_back("rearrangement");
  c.checks.push_back("pure-state-min");
  std::vector<VerificationReport> a = run_property_suite(c);
  std::vector<VerificationReport> b = run_property_suite(c);
  for (auto* v : {&a, &b}) {
    for (VerificationReport& r : *v) r.runtime_ms = 0;
  }
  EXPECT_EQ(reports_to_json(a), reports_to_json(b));
}

TEST(oracle, informational_checks_are_not_applicable) {
  const std::vector<VerificationReport> r = run_property_suite(only("orbit-min-uncovered"));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].status, CheckStatus::NotApplicable);
  EXPECT_TRUE(suite_passed(r));
}

TEST(oracle, suite_passed_reflects_failures) {
  VerificationReport ok;
  ok.pass = true;
  ok.status = CheckStatus::Pass;
  VerificationReport bad = ok;
  bad.pass = false;
  bad.status = CheckStatus::Fail;
  EXPECT_TRUE(suite_passed({ok}));
  EXPECT_FALSE(suite_passed({ok, bad}));
}

TEST(oracle, config_parsing) {
  const SuiteConfig c = SuiteConfig::from_json_text(R"({"checks": ["golden-thompson"], "seed": 7, "trials": 10})");
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.trials, 10);
  ASSERT_EQ(c.checks.size(), 1u);
  EXPECT_THROW(SuiteConfig::from_json_text(R"({"bogus": 1})"), ConfigError);
  EXPECT_THROW(SuiteConfig::from_json_text(R"({"trials": "many"})"), ConfigError);
  EXPECT_THROW(SuiteConfig::from_json_text("{"), ConfigError);
}
