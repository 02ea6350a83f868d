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

#ifndef AZFID_LINALG_HPP
#define AZFID_LINALG_HPP

#include <complex>

#include <Eigen/Dense>

namespace azfid {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Hermiticity tolerance, relative to max(1, largest entry magnitude).
inline constexpr double kHermitianTol = 1e-12;
/// Eigenvalues in [-kKernelTol, kKernelTol] are treated as exact zeros;
/// anything below -kKernelTol fails a PSD check.
inline constexpr double kKernelTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-10;

// Complex d x d matrix equal to its conjugate transpose. Construction checks
// the invariant and then stores the exact Hermitian part, so downstream
// eigensolvers see a bit-symmetric input.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const CMatrix& m, double tol = kHermitianTol);

  // Skips the tolerance check; still symmetrizes.
  static HermitianMatrix from_trusted(const CMatrix& m);
  static HermitianMatrix identity(Eigen::Index d);
  static HermitianMatrix diagonal(const RVector& diag);

  Eigen::Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }

 private:
  CMatrix m_;
};

// Element of U(d).
class UnitaryMatrix {
 public:
  UnitaryMatrix() = default;
  explicit UnitaryMatrix(const CMatrix& m, double tol = kUnitaryTol);

  static UnitaryMatrix from_trusted(const CMatrix& m);
  static UnitaryMatrix identity(Eigen::Index d);

  Eigen::Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  CMatrix adjoint() const { return m_.adjoint(); }

  // U A U*
  HermitianMatrix conjugate(const HermitianMatrix& a) const;

 private:
  CMatrix m_;
};

struct EigenSystem {
  RVector values;   // descending
  CMatrix vectors;  // column k belongs to values[k]
};

bool is_hermitian(const CMatrix& m, double tol = kHermitianTol);
bool is_unitary(const CMatrix& m, double tol = kUnitaryTol);
bool is_skew_hermitian(const CMatrix& m, double tol = kHermitianTol);

/// Spectral decomposition with descending eigenvalues. Every eigenvector is
/// phase-normalized so that its first non-negligible component is real and
/// positive; eigenvectors sharing a (numerically) equal eigenvalue are ordered
/// lexicographically by their normalized components, largest first.
EigenSystem eig_hermitian(const HermitianMatrix& h);

/// Eigenvalues only, ascending. Cheap path for inner loops.
RVector eigenvalues_ascending(const CMatrix& hermitian);

/// V diag(f(lambda)) V*.
CMatrix reconstruct(const EigenSystem& es, const RVector& mapped_values);

/// A^p on the support of a PSD matrix; eigenvalues with |lambda| <= kKernelTol
/// map to 0 for every p (pseudo-inverse convention for p < 0).
/// Throws NotPsdError if an eigenvalue is below -kKernelTol.
HermitianMatrix frac_power(const HermitianMatrix& a, double p);
HermitianMatrix frac_power(const EigenSystem& es, double p);

/// Applies the kernel convention to a single (clamped) eigenvalue.
double power_on_support(double lambda, double p);

/// exp(L) for skew-Hermitian L, through the Hermitian matrix iL.
UnitaryMatrix exp_skew(const CMatrix& skew);

/// Principal logarithm: eigenphases in (-pi, pi]; an eigenvalue at -1 gets
/// phase +pi. The result is skew-Hermitian.
CMatrix unitary_log(const UnitaryMatrix& u);

/// exp(H) for Hermitian H.
HermitianMatrix exp_hermitian(const HermitianMatrix& h);

/// sum_i lambda_i^z over the eigenvalues of a PSD matrix (0^z := 0).
/// Eigenvalues within a dimension-scaled rounding floor of zero are dropped.
double trace_power(const HermitianMatrix& a, double z);
double trace_power_of_eigenvalues(const RVector& eigenvalues, double z);
// sum_k sv_k^exponent over the positive singular values.
double trace_power_of_singular_values(const RVector& sv, double exponent);

double commutator_norm(const CMatrix& a, const CMatrix& b);

}  // namespace azfid

#endif  // AZFID_LINALG_HPP
