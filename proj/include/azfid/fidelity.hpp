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

#ifndef AZFID_FIDELITY_HPP
#define AZFID_FIDELITY_HPP

#include <string_view>

#include "azfid/linalg.hpp"
#include "azfid/states.hpp"

namespace azfid {

enum class Region { Concave, ConvexDPI, Neither };

std::string_view region_name(Region r);

/// Concave: 0 < alpha < 1 and z >= max(alpha, 1 - alpha).
/// ConvexDPI: 1 < alpha <= 2 and alpha/2 <= z <= alpha, or
///            2 <= alpha and alpha - 1 <= z <= alpha.
/// Boundaries are closed. Throws ParameterError unless alpha, z > 0.
Region classify_region(double alpha, double z);

struct ParamPoint {
  ParamPoint(double alpha, double z);

  double alpha;
  double z;
  Region region;
};

struct FidelityValue {
  double trace_quantity = 0.0;  // T = Tr[(sigma^a rho^b sigma^a)^z]
  double fidelity = 0.0;        // F = T^(1/alpha)
  bool support_violation = false;
};

enum class SupportPolicy {
  Strict,             // alpha > 1 with supp(rho) not inside supp(sigma) throws SupportError
  RestrictToSupport,  // evaluate with the kernel convention and flag the violation
};

/// Every eigenvector of rho with eigenvalue > kKernelTol keeps a squared norm
/// of at least 1 - 1e-8 after projection onto supp(sigma).
bool support_contained(const DensityMatrix& rho, const DensityMatrix& sigma);

FidelityValue alpha_z_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma, const ParamPoint& p,
                               SupportPolicy policy = SupportPolicy::Strict);

/// T through the rho-sandwiched form Tr[(rho^(a/2z) sigma^((1-a)/z) rho^(a/2z))^z].
double alpha_z_trace_rho_form(const DensityMatrix& rho, const DensityMatrix& sigma, const ParamPoint& p);

/// (sum_i p_i^alpha q_i^(1-alpha))^(1/alpha). Terms with p_i = 0 vanish; a term
/// with q_i = 0 < p_i is 0 for alpha < 1 and +inf for alpha > 1.
double classical_fidelity(const RVector& p, const RVector& q, double alpha);

/// classical_fidelity without the normalization checks, for sorted spectra
/// that already come from validated density matrices.
double classical_fidelity_spectra(const RVector& p, const RVector& q, double alpha);

/// (alpha / (alpha - 1)) log F^C, natural log. alpha = 1 is rejected.
double classical_renyi(const RVector& p, const RVector& q, double alpha);

/// (alpha / (alpha - 1)) log F_{alpha,z}(rho, sigma), or +inf when supp(rho) is
/// not contained in supp(sigma). alpha = 1 is rejected.
double renyi_entropy(const DensityMatrix& rho, const DensityMatrix& sigma, const ParamPoint& p);

/// (Tr |sqrt(rho) sqrt(sigma)|)^2 from singular values; does not share code
/// with alpha_z_fidelity beyond the square roots.
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Single-parameter alpha-fidelity (sum_i s_i^(2 alpha))^(1/alpha), where s are
/// the singular values of rho^(1/2) sigma^((1-alpha)/(2 alpha)).
double alpha_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha);

// The trace functional T(rho, U sigma U*) for fixed (rho, sigma, alpha, z),
// with the matrix powers taken once. Work is done in sigma's eigenbasis, where
// sigma^((1-alpha)/(2z)) is diagonal, so large negative powers stay graded
// instead of mixing magnitudes inside a dense product.
class TraceFunctional {
 public:
  TraceFunctional(const DensityMatrix& rho, const DensityMatrix& sigma, const ParamPoint& p);

  // T(rho, sigma') where sigma' has sigma's spectrum and eigenvectors basis.
  double at_sigma_basis(const CMatrix& sigma_basis) const;
  // T(rho, U sigma U*).
  double at_unitary(const CMatrix& u) const;
  // T^(1/alpha).
  double fidelity_at_unitary(const CMatrix& u) const;

  double alpha() const { return alpha_; }
  double z() const { return z_; }

 private:
  RVector sigma_factor_;  // (sigma eigenvalue)^((1-alpha)/(2z)) with kernel convention
  RVector rho_factor_;    // (rho eigenvalue)^(alpha/(2z))
  CMatrix rho_basis_;
  CMatrix sigma_basis_;
  double alpha_;
  double z_;
};

}  // namespace azfid

#endif  // AZFID_FIDELITY_HPP
