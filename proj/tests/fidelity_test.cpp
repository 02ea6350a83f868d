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

#include "azfid/fidelity.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "gtest/gtest.h"

#include "azfid/channels.hpp"
#include "azfid/errors.hpp"
#include "oracles.hpp"

using namespace azfid;

namespace {

DensityMatrix diag2(double a, double b) {
  RVector p(2);
  p << a, b;
  return diagonal_state(p);
}

std::vector<double> to_std(const RVector& v) { return {v.data(), v.data() + v.size()}; }

const ParamPoint kGrid[] = {{0.5, 0.5}, {0.3, 0.8}, {0.7, 1.5}, {1.5, 1.0}, {2.0, 1.5}, {3.0, 2.5}, {0.5, 3.0}};

}  // namespace

TEST(fidelity, region_classification) {
  EXPECT_EQ(classify_region(0.5, 0.5), Region::Concave);
  EXPECT_EQ(classify_region(2.0, 1.5), Region::ConvexDPI);
  EXPECT_EQ(classify_region(3.0, 1.0), Region::Neither);
  EXPECT_EQ(classify_region(0.3, 0.7), Region::Concave);
  EXPECT_EQ(classify_region(0.3, 0.69), Region::Neither);
  EXPECT_EQ(classify_region(1.5, 0.75), Region::ConvexDPI);
  EXPECT_EQ(classify_region(1.5, 1.6), Region::Neither);
  EXPECT_EQ(classify_region(2.0, 1.0), Region::ConvexDPI);
  EXPECT_EQ(classify_region(2.0, 2.0), Region::ConvexDPI);
  EXPECT_EQ(classify_region(4.0, 3.0), Region::ConvexDPI);
  EXPECT_EQ(classify_region(4.0, 2.9), Region::Neither);
  EXPECT_EQ(classify_region(1.0, 1.0), Region::Neither);
  EXPECT_THROW(classify_region(0.0, 1.0), ParameterError);
  EXPECT_THROW(classify_region(1.0, -1.0), ParameterError);
  EXPECT_EQ(region_name(Region::ConvexDPI), "convex-dpi");
}

TEST(fidelity, self_fidelity_is_one) {
  Rng rng(1);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Index d = 1 + rep % 5;
    const DensityMatrix rho = random_density(d, 1 + rep % d, rng);
    for (const ParamPoint& p : kGrid) {
      const FidelityValue v = alpha_z_fidelity(rho, rho, p);
      EXPECT_NEAR(v.fidelity, 1.0, 1e-9) << p.alpha << " " << p.z;
      EXPECT_FALSE(v.support_violation);
    }
  }
}

TEST(fidelity, commuting_example) {
  const FidelityValue v = alpha_z_fidelity(diag2(0.7, 0.3), diag2(0.6, 0.4), ParamPoint(0.5, 0.5));
  const double expected = std::pow(std::sqrt(0.7 * 0.6) + std::sqrt(0.3 * 0.4), 2.0);
  EXPECT_NEAR(v.fidelity, expected, 1e-12);
  EXPECT_NEAR(v.fidelity, 0.98900, 5e-6);
  EXPECT_NEAR(v.fidelity, std::pow(v.trace_quantity, 1.0 / 0.5), 1e-12);
}

TEST(fidelity, alpha_equals_z_matches_alpha_fidelity) {
  Rng rng(2);
  for (int rep = 0; rep < 10; ++rep) {
    const DensityMatrix rho = random_density(3, 3, rng);
    const DensityMatrix sigma = random_density(3, 3, rng);
    for (const double a : {0.4, 0.5, 0.8, 1.5, 2.0}) {
      EXPECT_NEAR(alpha_z_fidelity(rho, sigma, ParamPoint(a, a)).fidelity, alpha_fidelity(rho, sigma, a), 1e-9);
    }
  }
}

TEST(fidelity, matches_naive_oracle) {
  Rng rng(3);
  for (int rep = 0; rep < 30; ++rep) {
    const Eigen::Index d = 2 + rep % 4;
    const DensityMatrix rho = random_density(d, d, rng);
    const DensityMatrix sigma = random_density(d, d, rng);
    for (const ParamPoint& p : kGrid) {
      const double expected = oracles::fidelity(rho.raw(), sigma.raw(), p.alpha, p.z);
      EXPECT_NEAR(alpha_z_fidelity(rho, sigma, p).fidelity, expected, 1e-8 * std::max(1.0, expected));
    }
  }
}

TEST(fidelity, classical_examples) {
  RVector p(2);
  RVector q(2);
  p << 0.7, 0.3;
  EXPECT_NEAR(classical_fidelity(p, p, 0.5), 1.0, 1e-15);
  q << 0.6, 0.4;
  EXPECT_NEAR(classical_fidelity(p, q, 2.0), std::sqrt(0.49 / 0.6 + 0.09 / 0.4), 1e-15);
  EXPECT_NEAR(classical_fidelity(p, q, 2.0), 1.0206207, 5e-7);
  p << 1.0, 0.0;
  q << 0.0, 1.0;
  EXPECT_EQ(classical_fidelity(p, q, 0.5), 0.0);
  EXPECT_EQ(classical_fidelity(p, q, 2.0), std::numeric_limits<double>::infinity());
  q << 0.5, 0.6;
  EXPECT_THROW(classical_fidelity(p, q, 0.5), ValidationError);
}

TEST(fidelity, classical_matches_long_double_oracle) {
  Rng rng(4);
  for (int rep = 0; rep < 100; ++rep) {
    const Eigen::Index d = 1 + rep % 7;
    RVector p(d);
    RVector q(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      p[i] = rng.uniform() + 1e-3;
      q[i] = rng.uniform() + 1e-3;
    }
    p /= p.sum();
    q /= q.sum();
    for (const double a : {0.2, 0.5, 0.9, 1.3, 2.0, 4.0}) {
      const double expected = oracles::classical(to_std(p), to_std(q), a);
      EXPECT_NEAR(classical_fidelity(p, q, a), expected, 1e-12 * std::max(1.0, expected));
    }
  }
}

TEST(fidelity, commuting_reduction_is_z_independent) {
  Rng rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Index d = 2 + rep % 3;
    RVector p(d);
    RVector q(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      p[i] = rng.uniform() + 0.05;
      q[i] = rng.uniform() + 0.05;
    }
    p /= p.sum();
    q /= q.sum();
    const UnitaryMatrix u = haar_unitary(d, rng);
    const DensityMatrix rho = density_from_spectrum(p, u);
    const DensityMatrix sigma = density_from_spectrum(q, u);
    for (const double a : {0.3, 0.5, 2.0}) {
      const double expected = classical_fidelity(p, q, a);
      for (const double z : {0.3, 1.0, 2.5}) {
        EXPECT_NEAR(alpha_z_fidelity(rho, sigma, ParamPoint(a, z)).fidelity, expected, 1e-10 * std::max(1.0, expected));
      }
    }
  }
}

TEST(fidelity, unitary_invariance) {
  Rng rng(6);
  for (int rep = 0; rep < 100; ++rep) {
    const Eigen::Index d = 2 + rep % 5;
    const DensityMatrix rho = random_density(d, d, rng);
    const DensityMatrix sigma = random_density(d, d, rng);
    const UnitaryMatrix u = haar_unitary(d, rng);
    const DensityMatrix rho_u(u.conjugate(rho.matrix()));
    const DensityMatrix sigma_u(u.conjugate(sigma.matrix()));
    for (const ParamPoint& p : kGrid) {
      const double f = alpha_z_fidelity(rho, sigma, p).fidelity;
      EXPECT_NEAR(alpha_z_fidelity(rho_u, sigma_u, p).fidelity, f, 1e-9 * std::max(1.0, f));
    }
  }
}

TEST(fidelity, two_forms_agree) {
  Rng rng(7);
  for (int rep = 0; rep < 40; ++rep) {
    const Eigen::Index d = 2 + rep % 4;
    const DensityMatrix rho = random_density(d, d, rng);
    const DensityMatrix sigma = random_density(d, d, rng);
    for (const ParamPoint& p : kGrid) {
      const double t = alpha_z_fidelity(rho, sigma, p).trace_quantity;
      EXPECT_NEAR(alpha_z_trace_rho_form(rho, sigma, p), t, 1e-9 * std::max(1.0, t));
    }
  }
}

TEST(fidelity, concavity_and_convexity_of_trace) {
  Rng rng(8);
  for (int rep = 0; rep < 30; ++rep) {
    const Eigen::Index d = 2 + rep % 3;
    const DensityMatrix rho = random_density(d, d, rng);
    const DensityMatrix s1 = random_density(d, d, rng);
    const DensityMatrix s2 = random_density(d, d, rng);
    const DensityMatrix s3 = random_density(d, d, rng);
    double w[3] = {rng.uniform() + 0.1, rng.uniform() + 0.1, rng.uniform() + 0.1};
    const double total = w[0] + w[1] + w[2];
    for (double& x : w) x /= total;
    const DensityMatrix mix(HermitianMatrix::from_trusted(w[0] * s1.raw() + w[1] * s2.raw() + w[2] * s3.raw()));
    for (const ParamPoint& p : {ParamPoint(0.5, 0.5), ParamPoint(0.3, 1.2), ParamPoint(2.0, 1.5), ParamPoint(3.0, 2.5)}) {
      const double lhs = alpha_z_fidelity(rho, mix, p).trace_quantity;
      const double rhs = w[0] * alpha_z_fidelity(rho, s1, p).trace_quantity +
                         w[1] * alpha_z_fidelity(rho, s2, p).trace_quantity +
                         w[2] * alpha_z_fidelity(rho, s3, p).trace_quantity;
      if (p.region == Region::Concave) {
        EXPECT_GE(lhs, rhs - 1e-9);
      } else {
        EXPECT_LE(lhs, rhs + 1e-9);
      }
    }
  }
}

TEST(fidelity, data_processing_in_convex_region) {
  Rng rng(9);
  const ParamPoint p(2.0, 1.5);
  double worst = std::numeric_limits<double>::infinity();
  for (int rep = 0; rep < 200; ++rep) {
    const Eigen::Index d = 2 + rep % 3;
    const DensityMatrix rho = random_density(d, d, rng);
    const DensityMatrix sigma = random_density(d, d, rng);
    const KrausChannel phi = random_cptp(d, 1 + rep % 3, rng);
    const double margin = alpha_z_fidelity(rho, sigma, p).fidelity -
                          alpha_z_fidelity(phi.apply(rho), phi.apply(sigma), p).fidelity;
    worst = std::min(worst, margin);
  }
  EXPECT_GE(worst, -1e-9);
}

TEST(fidelity, support_handling) {
  const DensityMatrix rho = diag2(0.5, 0.5);
  const DensityMatrix sigma = diag2(1.0, 0.0);
  EXPECT_THROW(alpha_z_fidelity(rho, sigma, ParamPoint(2.0, 2.0)), SupportError);
  const FidelityValue v = alpha_z_fidelity(rho, sigma, ParamPoint(2.0, 2.0), SupportPolicy::RestrictToSupport);
  EXPECT_TRUE(v.support_violation);
  EXPECT_TRUE(std::isfinite(v.fidelity));
  EXPECT_NO_THROW(alpha_z_fidelity(rho, sigma, ParamPoint(0.5, 0.5)));
  EXPECT_FALSE(support_contained(rho, sigma));
  EXPECT_TRUE(support_contained(sigma, rho));
  EXPECT_THROW(alpha_z_fidelity(rho, maximally_mixed(3), ParamPoint(0.5, 0.5)), ValidationError);
}

TEST(fidelity, renyi_entropy) {
  Rng rng(10);
  const DensityMatrix rho = random_density(3, 3, rng);
  EXPECT_NEAR(renyi_entropy(rho, rho, ParamPoint(0.5, 0.5)), 0.0, 1e-9);
  EXPECT_EQ(renyi_entropy(diag2(0.5, 0.5), diag2(1.0, 0.0), ParamPoint(2.0, 2.0)),
            std::numeric_limits<double>::infinity());
  EXPECT_THROW(renyi_entropy(rho, rho, ParamPoint(1.0, 1.0)), ParameterError);
  RVector p(2);
  RVector q(2);
  p << 0.7, 0.3;
  q << 0.6, 0.4;
  for (const double a : {0.5, 2.0}) {
    const double expected = a / (a - 1.0) * std::log(classical_fidelity(p, q, a));
    EXPECT_NEAR(renyi_entropy(diagonal_state(p), diagonal_state(q), ParamPoint(a, 1.3)), expected, 1e-12);
    EXPECT_NEAR(classical_renyi(p, q, a), expected, 1e-12);
  }
}

TEST(fidelity, uhlmann_cross_path) {
  Rng rng(11);
  EXPECT_NEAR(uhlmann_fidelity(diag2(1.0, 0.0), diag2(0.0, 1.0)), 0.0, 1e-15);
  for (int rep = 0; rep < 10; ++rep) {
    const DensityMatrix rho = random_density(3, 3, rng);
    const DensityMatrix sigma = random_density(3, 1 + rep % 3, rng);
    EXPECT_NEAR(uhlmann_fidelity(rho, rho), 1.0, 1e-9);
    EXPECT_NEAR(uhlmann_fidelity(rho, sigma), alpha_z_fidelity(rho, sigma, ParamPoint(0.5, 0.5)).fidelity, 1e-9);
  }
}

TEST(fidelity, trace_functional_matches_direct_evaluation) {
  Rng rng(12);
  const DensityMatrix rho = random_density(4, 4, rng);
  const DensityMatrix sigma = random_density(4, 3, rng);
  for (const ParamPoint& p : {ParamPoint(0.5, 0.7), ParamPoint(2.0, 1.5)}) {
    if (p.alpha > 1.0) continue;
    const TraceFunctional tf(rho, sigma, p);
    for (int rep = 0; rep < 5; ++rep) {
      const UnitaryMatrix u = haar_unitary(4, rng);
      const DensityMatrix moved(u.conjugate(sigma.matrix()));
      EXPECT_NEAR(tf.at_unitary(u.matrix()), alpha_z_fidelity(rho, moved, p).trace_quantity, 1e-10);
    }
  }
  const DensityMatrix full = random_density(4, 4, rng);
  const TraceFunctional tf(rho, full, ParamPoint(2.0, 1.5));
  const UnitaryMatrix u = haar_unitary(4, rng);
  EXPECT_NEAR(tf.fidelity_at_unitary(u.matrix()),
              alpha_z_fidelity(rho, DensityMatrix(u.conjugate(full.matrix())), ParamPoint(2.0, 1.5)).fidelity, 1e-10);
}
