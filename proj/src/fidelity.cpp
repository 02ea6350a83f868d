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
#include <string>

#include <Eigen/SVD>

#include "azfid/errors.hpp"

namespace azfid {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_dim(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw ValidationError("dimension mismatch: " + std::to_string(rho.dim()) + " vs " +
                          std::to_string(sigma.dim()));
  }
}

void validate_distribution(const RVector& p, const char* name) {
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0)) throw ValidationError(std::string(name) + " has a negative entry");
  }
  if (std::abs(p.sum() - 1.0) > 1e-10) {
    throw ValidationError(std::string(name) + " does not sum to 1");
  }
}

}  // namespace

std::string_view region_name(Region r) {
  switch (r) {
    case Region::Concave:
      return "concave";
    case Region::ConvexDPI:
      return "convex-dpi";
    case Region::Neither:
      break;
  }
  return "neither";
}

Region classify_region(double alpha, double z) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ParameterError("alpha must be a finite value > 0");
  if (!(z > 0.0) || !std::isfinite(z)) throw ParameterError("z must be a finite value > 0");
  if (alpha < 1.0 && z >= std::max(alpha, 1.0 - alpha)) return Region::Concave;
  if (alpha > 1.0 && alpha <= 2.0 && z >= alpha / 2.0 && z <= alpha) return Region::ConvexDPI;
  if (alpha >= 2.0 && z >= alpha - 1.0 && z <= alpha) return Region::ConvexDPI;
  return Region::Neither;
}

ParamPoint::ParamPoint(double a, double zz) : alpha(a), z(zz), region(classify_region(a, zz)) {}

bool support_contained(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  const CMatrix proj = sigma.support_projector();
  for (Eigen::Index k = 0; k < rho.dim(); ++k) {
    if (rho.spectrum_desc()[k] <= kKernelTol) break;
    const CVector v = rho.eigenbasis().col(k);
    if ((proj * v).squaredNorm() < 1.0 - 1e-8) return false;
  }
  return true;
}

TraceFunctional::TraceFunctional(const DensityMatrix& rho, const DensityMatrix& sigma, const ParamPoint& p)
    : rho_basis_(rho.eigenbasis()), sigma_basis_(sigma.eigenbasis()), alpha_(p.alpha), z_(p.z) {
  require_same_dim(rho, sigma);
  const Eigen::Index d = rho.dim();
  sigma_factor_.resize(d);
  rho_factor_.resize(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    sigma_factor_[k] = power_on_support(sigma.spectrum_desc()[k], (1.0 - alpha_) / (2.0 * z_));
    rho_factor_[k] = power_on_support(rho.spectrum_desc()[k], alpha_ / (2.0 * z_));
  }
}

double TraceFunctional::at_sigma_basis(const CMatrix& sigma_basis) const {
  // X = diag(s) (B* V_rho) diag(r), so sigma^a rho^b sigma^a ~ X X* in B's frame
  // and T = sum_k sv_k(X)^(2z). The Jacobi SVD keeps the tiny singular values
  // of this graded product accurate where an eigensolve on X X* would not.
  // Identical bases give an exact identity rotation; a computed V* V would
  // carry rounding that large negative powers amplify.
  const Eigen::Index d = rho_basis_.rows();
  CMatrix x = sigma_basis == rho_basis_ ? CMatrix(CMatrix::Identity(d, d)) : CMatrix(sigma_basis.adjoint() * rho_basis_);
  x = sigma_factor_.cast<Complex>().asDiagonal() * x * rho_factor_.cast<Complex>().asDiagonal();
  return trace_power_of_singular_values(Eigen::JacobiSVD<CMatrix>(x).singularValues(), 2.0 * z_);
}

double TraceFunctional::at_unitary(const CMatrix& u) const {
  return at_sigma_basis(u * sigma_basis_);
}

double TraceFunctional::fidelity_at_unitary(const CMatrix& u) const {
  return std::pow(at_unitary(u), 1.0 / alpha_);
}

double alpha_z_trace_rho_form(const DensityMatrix& rho, const DensityMatrix& sigma, const ParamPoint& p) {
  require_same_dim(rho, sigma);
  // Y Y* = rho^b sigma^(2a) rho^b, built from full matrix powers.
  const CMatrix y = rho.power(p.alpha / (2.0 * p.z)).matrix() * sigma.power((1.0 - p.alpha) / (2.0 * p.z)).matrix();
  return trace_power_of_singular_values(Eigen::JacobiSVD<CMatrix>(y).singularValues(), 2.0 * p.z);
}

FidelityValue alpha_z_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma, const ParamPoint& p,
                               SupportPolicy policy) {
  require_same_dim(rho, sigma);
  FidelityValue out;
  if (p.alpha > 1.0 && !support_contained(rho, sigma)) {
    if (policy == SupportPolicy::Strict) {
      throw SupportError("alpha > 1 requires supp(rho) to lie inside supp(sigma)");
    }
    out.support_violation = true;
  }
  const TraceFunctional tf(rho, sigma, p);
  out.trace_quantity = tf.at_sigma_basis(sigma.eigenbasis());
  out.fidelity = std::pow(out.trace_quantity, 1.0 / p.alpha);
  return out;
}

double classical_fidelity(const RVector& p, const RVector& q, double alpha) {
  if (p.size() != q.size()) throw ValidationError("classical_fidelity: length mismatch");
  validate_distribution(p, "p");
  validate_distribution(q, "q");
  return classical_fidelity_spectra(p, q, alpha);
}

double classical_fidelity_spectra(const RVector& p, const RVector& q, double alpha) {
  if (p.size() != q.size()) throw ValidationError("classical_fidelity: length mismatch");
  if (!(alpha > 0.0)) throw ParameterError("classical_fidelity: alpha must be > 0");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) {
      if (alpha > 1.0) return kInf;
      if (alpha == 1.0) sum += p[i];
      continue;
    }
    sum += std::pow(p[i], alpha) * std::pow(q[i], 1.0 - alpha);
  }
  return std::pow(sum, 1.0 / alpha);
}

double classical_renyi(const RVector& p, const RVector& q, double alpha) {
  if (alpha == 1.0) throw ParameterError("Renyi divergence at alpha = 1 is not provided");
  const double f = classical_fidelity(p, q, alpha);
  if (std::isinf(f)) return kInf;
  if (f == 0.0) return kInf;  // alpha < 1 with disjoint supports
  return alpha / (alpha - 1.0) * std::log(f);
}

double renyi_entropy(const DensityMatrix& rho, const DensityMatrix& sigma, const ParamPoint& p) {
  if (p.alpha == 1.0) throw ParameterError("Renyi divergence at alpha = 1 is not provided");
  require_same_dim(rho, sigma);
  if (!support_contained(rho, sigma)) return kInf;
  const double f = alpha_z_fidelity(rho, sigma, p).fidelity;
  if (f == 0.0) return kInf;
  return p.alpha / (p.alpha - 1.0) * std::log(f) + 0.0;  // no negative zero
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  const CMatrix prod = rho.power(0.5).matrix() * sigma.power(0.5).matrix();
  Eigen::JacobiSVD<CMatrix> svd(prod);
  const double nuclear = svd.singularValues().sum();
  return nuclear * nuclear;
}

double alpha_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha) {
  require_same_dim(rho, sigma);
  if (!(alpha > 0.0)) throw ParameterError("alpha_fidelity: alpha must be > 0");
  const CMatrix prod = rho.power(0.5).matrix() * sigma.power((1.0 - alpha) / (2.0 * alpha)).matrix();
  Eigen::JacobiSVD<CMatrix> svd(prod);
  const RVector& sv = svd.singularValues();
  const double floor = 1e-14 * std::max(1.0, sv.size() ? sv[0] : 0.0);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > floor) sum += std::pow(sv[i], 2.0 * alpha);
  }
  return std::pow(sum, 1.0 / alpha);
}

}  // namespace azfid
