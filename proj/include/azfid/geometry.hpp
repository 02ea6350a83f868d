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

#ifndef AZFID_GEOMETRY_HPP
#define AZFID_GEOMETRY_HPP

#include "azfid/fidelity.hpp"
#include "azfid/states.hpp"

namespace azfid {

class SubspacePair {
 public:
  SubspacePair(SubspaceProjector pm, SubspaceProjector pn);

  const SubspaceProjector& first() const { return pm_; }
  const SubspaceProjector& second() const { return pn_; }
  Eigen::Index m() const { return pm_.rank(); }
  Eigen::Index n() const { return pn_.rank(); }
  Eigen::Index dim() const { return pm_.dim(); }

 private:
  SubspaceProjector pm_;
  SubspaceProjector pn_;
};

struct SubspaceTrace {
  double trace_quantity = 0.0;
  bool support_warning = false;  // alpha > 1 and S_m is not inside S_n
};

struct Bounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// T_{alpha,z}(P_m/m, P_n/n). For alpha > 1 without support inclusion the
/// kernel convention gives a finite, support-restricted value and the warning
/// flag is set.
SubspaceTrace subspace_fidelity_trace(const SubspacePair& pair, const ParamPoint& p);

/// dim(S_m cap S_n) m^(-alpha) n^(alpha-1): T for commuting projectors. z drops
/// out because projector powers are idempotent.
double commuting_subspace_formula(Eigen::Index m, Eigen::Index n, Eigen::Index dim_intersection, double alpha);

/// max(m+n-d, 0) and min(m, n), each times m^(-alpha) n^(alpha-1).
Bounds subspace_bounds(Eigen::Index m, Eigen::Index n, Eigen::Index d, double alpha);

/// The same bounds written with m^(-z) in place of m^(-alpha), with the upper
/// bound as min(m^(1-z) n^(alpha-1), n^alpha m^(-z)). Kept for side-by-side
/// reporting only; these do not bound T in general.
Bounds subspace_bounds_z_exponent(Eigen::Index m, Eigen::Index n, Eigen::Index d, double alpha, double z);

/// n^(alpha-1) times the sum of the bottom-n (lower) or top-n (upper)
/// eigenvalues of rho raised to alpha. Bounds T(rho, P_n/n) over all
/// n-dimensional subspaces; both are attained by eigen-subspaces of rho.
Bounds compression_bounds(const DensityMatrix& rho, Eigen::Index n, const ParamPoint& p);

/// Variant with lambda_i^z in place of lambda_i^alpha, for side-by-side reporting.
Bounds compression_bounds_z_exponent(const DensityMatrix& rho, Eigen::Index n, const ParamPoint& p);

/// Number of eigenvalues of P_m P_n P_m within 1e-8 of 1.
Eigen::Index intersection_dim(const SubspacePair& pair);

/// Descending eigenvalues of P A P restricted to the range of P.
RVector compression_spectrum(const HermitianMatrix& a, const SubspaceProjector& p);

/// min_i min(lambda_i - mu_i, mu_i - lambda_{i+d-n}) for descending full
/// spectrum lambda (size d) and compressed spectrum mu (size n). Non-negative
/// exactly when mu interlaces lambda.
double interlacing_margin(const RVector& full_desc, const RVector& compressed_desc);

/// Projector onto the span of rho's top-n (top = true) or bottom-n eigenvectors.
SubspaceProjector eigen_subspace(const DensityMatrix& rho, Eigen::Index n, bool top);

}  // namespace azfid

#endif  // AZFID_GEOMETRY_HPP
