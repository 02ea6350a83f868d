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

#include "azfid/geometry.hpp"

#include <bit>
#include <cmath>
#include <vector>

#include "gtest/gtest.h"

#include "azfid/errors.hpp"

using namespace azfid;

namespace {

std::vector<ParamPoint> grid() {
  std::vector<ParamPoint> out;
  for (const double a : {0.3, 0.5, 2.0, 3.0}) {
    for (const double z : {0.3, 1.0, 2.5}) out.emplace_back(a, z);
  }
  return out;
}

}  // namespace

TEST(geometry, subspace_trace_examples) {
  const SubspaceProjector a = coordinate_subspace(4, {0, 1});
  const SubspaceProjector b = coordinate_subspace(4, {2, 3});
  EXPECT_NEAR(subspace_fidelity_trace(SubspacePair(a, a), ParamPoint(0.5, 0.7)).trace_quantity, 1.0, 1e-12);
  EXPECT_NEAR(subspace_fidelity_trace(SubspacePair(a, b), ParamPoint(0.5, 0.7)).trace_quantity, 0.0, 1e-12);

  const SubspacePair commuting(coordinate_subspace(4, {0, 1}), coordinate_subspace(4, {0, 1, 2}));
  const double t = subspace_fidelity_trace(commuting, ParamPoint(0.5, 0.7)).trace_quantity;
  EXPECT_NEAR(t, 2.0 / std::sqrt(6.0), 1e-12);
  EXPECT_NEAR(t, 0.8165, 5e-5);
  EXPECT_THROW(SubspacePair(coordinate_subspace(3, {0}), coordinate_subspace(4, {0})), ValidationError);
}

TEST(geometry, support_warning_above_one) {
  const SubspacePair pair(coordinate_subspace(3, {0, 1}), coordinate_subspace(3, {1, 2}));
  const SubspaceTrace t = subspace_fidelity_trace(pair, ParamPoint(2.0, 1.5));
  EXPECT_TRUE(t.support_warning);
  EXPECT_TRUE(std::isfinite(t.trace_quantity));
  EXPECT_FALSE(subspace_fidelity_trace(pair, ParamPoint(0.5, 0.5)).support_warning);
}

TEST(geometry, commuting_formula) {
  EXPECT_NEAR(commuting_subspace_formula(3, 3, 3, 0.4), 1.0, 1e-15);
  EXPECT_EQ(commuting_subspace_formula(2, 3, 0, 0.5), 0.0);
  EXPECT_NEAR(commuting_subspace_formula(2, 3, 2, 0.5), 2.0 / std::sqrt(6.0), 1e-15);
  EXPECT_THROW(commuting_subspace_formula(2, 3, 3, 0.5), ValidationError);
}

TEST(geometry, commuting_pairs_match_formula_for_every_z) {
  for (unsigned ma = 1; ma < 16; ++ma) {
    for (unsigned mb = 1; mb < 16; ++mb) {
      std::vector<Eigen::Index> xa;
      std::vector<Eigen::Index> xb;
      for (Eigen::Index k = 0; k < 4; ++k) {
        if (ma & (1u << k)) xa.push_back(k);
        if (mb & (1u << k)) xb.push_back(k);
      }
      const SubspacePair pair(coordinate_subspace(4, xa), coordinate_subspace(4, xb));
      const Eigen::Index inter = intersection_dim(pair);
      EXPECT_EQ(inter, std::popcount(ma & mb));
      for (const ParamPoint& p : grid()) {
        if (p.alpha > 1.0 && (ma & ~mb) != 0) continue;
        EXPECT_NEAR(subspace_fidelity_trace(pair, p).trace_quantity,
                    commuting_subspace_formula(pair.m(), pair.n(), inter, p.alpha), 1e-10);
      }
    }
  }
}

TEST(geometry, intersection_examples) {
  Rng rng(1);
  const SubspaceProjector r = random_subspace(5, 3, rng);
  EXPECT_EQ(intersection_dim(SubspacePair(r, r)), 3);
  EXPECT_EQ(intersection_dim(SubspacePair(coordinate_subspace(4, {0}), coordinate_subspace(4, {1}))), 0);
  EXPECT_EQ(intersection_dim(SubspacePair(coordinate_subspace(4, {0, 1}), coordinate_subspace(4, {1, 2}))), 1);
}

TEST(geometry, subspace_bounds_examples) {
  const Bounds full = subspace_bounds(4, 4, 4, 0.5);
  EXPECT_NEAR(full.lower, 1.0, 1e-15);
  EXPECT_NEAR(full.upper, 1.0, 1e-15);
  EXPECT_EQ(subspace_bounds(2, 2, 4, 0.5).lower, 0.0);
  const Bounds b = subspace_bounds(2, 3, 4, 0.5);
  EXPECT_NEAR(b.lower, 1.0 / std::sqrt(6.0), 1e-15);
  EXPECT_NEAR(b.lower, 0.4082, 5e-5);
  EXPECT_NEAR(b.upper, 2.0 / std::sqrt(6.0), 1e-15);
  EXPECT_THROW(subspace_bounds(5, 1, 4, 0.5), ValidationError);
}

TEST(geometry, subspace_bounds_attained_by_coordinate_pairs) {
  for (Eigen::Index m = 1; m <= 4; ++m) {
    for (Eigen::Index n = 1; n <= 4; ++n) {
      double lo = 1e300;
      double hi = -1e300;
      for (unsigned ma = 1; ma < 16; ++ma) {
        for (unsigned mb = 1; mb < 16; ++mb) {
          if (std::popcount(ma) != m || std::popcount(mb) != n) continue;
          std::vector<Eigen::Index> xa;
          std::vector<Eigen::Index> xb;
          for (Eigen::Index k = 0; k < 4; ++k) {
            if (ma & (1u << k)) xa.push_back(k);
            if (mb & (1u << k)) xb.push_back(k);
          }
          const double t = subspace_fidelity_trace(SubspacePair(coordinate_subspace(4, xa), coordinate_subspace(4, xb)),
                                                   ParamPoint(0.5, 0.7))
                               .trace_quantity;
          lo = std::min(lo, t);
          hi = std::max(hi, t);
        }
      }
      const Bounds b = subspace_bounds(m, n, 4, 0.5);
      EXPECT_NEAR(lo, b.lower, 1e-10);
      EXPECT_NEAR(hi, b.upper, 1e-10);
    }
  }
}

TEST(geometry, random_pairs_inside_bounds) {
  Rng rng(2);
  for (int rep = 0; rep < 500; ++rep) {
    const Eigen::Index d = 2 + rep % 5;
    const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng.uniform() * static_cast<double>(d));
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.uniform() * static_cast<double>(d));
    const SubspacePair pair(random_subspace(d, std::min(m, d), rng), random_subspace(d, std::min(n, d), rng));
    for (const ParamPoint& p : grid()) {
      if (p.region == Region::Neither || p.alpha > 1.0) continue;
      const Bounds b = subspace_bounds(pair.m(), pair.n(), d, p.alpha);
      const double t = subspace_fidelity_trace(pair, p).trace_quantity;
      EXPECT_GE(t, b.lower - 1e-9);
      EXPECT_LE(t, b.upper + 1e-9);
    }
  }
}

TEST(geometry, z_exponent_variant_differs) {
  const Bounds corrected = subspace_bounds(2, 3, 4, 0.5);
  const Bounds printed = subspace_bounds_z_exponent(2, 3, 4, 0.5, 0.7);
  EXPECT_NEAR(printed.lower, 1.0 / (std::pow(2.0, 0.7) * std::pow(3.0, 0.5)), 1e-15);
  EXPECT_GT(std::abs(printed.lower - corrected.lower), 1e-3);
}

TEST(geometry, compression_bounds_examples) {
  RVector p(2);
  p << 0.7, 0.3;
  const DensityMatrix rho = diagonal_state(p);
  const Bounds b = compression_bounds(rho, 1, ParamPoint(2.0, 1.5));
  EXPECT_NEAR(b.lower, 0.09, 1e-15);
  EXPECT_NEAR(b.upper, 0.49, 1e-15);
  EXPECT_NEAR(std::pow(b.lower, 0.5), 0.3, 1e-15);
  EXPECT_NEAR(std::pow(b.upper, 0.5), 0.7, 1e-15);
  const Bounds full = compression_bounds(maximally_mixed(3), 3, ParamPoint(0.5, 0.5));
  EXPECT_NEAR(full.lower, 1.0, 1e-12);
  EXPECT_NEAR(full.upper, 1.0, 1e-12);
  EXPECT_THROW(compression_bounds(rho, 3, ParamPoint(2.0, 1.5)), ValidationError);
}

TEST(geometry, compression_bounds_attained_and_respected) {
  Rng rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Index d = 2 + rep % 4;
    const DensityMatrix rho = random_density(d, d, rng);
    for (const ParamPoint& p : {ParamPoint(0.5, 0.5), ParamPoint(0.3, 1.0), ParamPoint(2.0, 1.5)}) {
      for (Eigen::Index n = 1; n <= d; ++n) {
        const Bounds b = compression_bounds(rho, n, p);
        const double lo = alpha_z_fidelity(rho, subspace_state(eigen_subspace(rho, n, false)), p,
                                           SupportPolicy::RestrictToSupport)
                              .trace_quantity;
        const double hi = alpha_z_fidelity(rho, subspace_state(eigen_subspace(rho, n, true)), p,
                                           SupportPolicy::RestrictToSupport)
                              .trace_quantity;
        if (p.alpha < 1.0) {
          EXPECT_NEAR(lo, b.lower, 1e-9);
          EXPECT_NEAR(hi, b.upper, 1e-9);
          const SubspaceProjector r = random_subspace(d, n, rng);
          const double t = alpha_z_fidelity(rho, subspace_state(r), p).trace_quantity;
          EXPECT_GE(t, b.lower - 1e-9);
          EXPECT_LE(t, b.upper + 1e-9);
        }
      }
    }
  }
}

TEST(geometry, interlacing) {
  Rng rng(4);
  for (int rep = 0; rep < 50; ++rep) {
    const Eigen::Index d = 2 + rep % 5;
    const DensityMatrix rho = random_density(d, d, rng);
    const Eigen::Index n = 1 + rep % d;
    const HermitianMatrix a = frac_power(rho.matrix(), 0.5 / 0.7);
    const RVector full = eig_hermitian(a).values;
    const RVector comp = compression_spectrum(a, random_subspace(d, n, rng));
    ASSERT_EQ(comp.size(), n);
    EXPECT_GE(interlacing_margin(full, comp), -1e-10);
  }
}
