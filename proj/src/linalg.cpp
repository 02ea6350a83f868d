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

#include "azfid/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "azfid/errors.hpp"

namespace azfid {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double scale_of(const CMatrix& m) {
  return std::max(1.0, m.cwiseAbs().maxCoeff());
}

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ValidationError(std::string(what) + ": expected a non-empty square matrix, got " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

// Drops rounding noise around zero; anything more negative than the clamp
// threshold (scaled by the spectrum's magnitude) is a real PSD violation.
double clamp_psd(double lambda, double floor, double neg_tol) {
  if (lambda < -neg_tol) {
    throw NotPsdError("matrix is not positive semi-definite: eigenvalue " + std::to_string(lambda));
  }
  return lambda <= floor ? 0.0 : lambda;
}

// Lexicographic "greater" on phase-normalized components.
bool lex_greater(const CVector& a, const CVector& b) {
  constexpr double tol = 1e-12;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (std::abs(a[k].real() - b[k].real()) > tol) return a[k].real() > b[k].real();
    if (std::abs(a[k].imag() - b[k].imag()) > tol) return a[k].imag() > b[k].imag();
  }
  return false;
}

}  // namespace

HermitianMatrix::HermitianMatrix(const CMatrix& m, double tol) {
  require_square(m, "HermitianMatrix");
  if (!is_hermitian(m, tol)) {
    throw ValidationError("matrix is not Hermitian within tolerance");
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::from_trusted(const CMatrix& m) {
  require_square(m, "HermitianMatrix");
  HermitianMatrix h;
  h.m_ = 0.5 * (m + m.adjoint());
  return h;
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index d) {
  return from_trusted(CMatrix::Identity(d, d));
}

HermitianMatrix HermitianMatrix::diagonal(const RVector& diag) {
  return from_trusted(diag.cast<Complex>().asDiagonal());
}

UnitaryMatrix::UnitaryMatrix(const CMatrix& m, double tol) {
  require_square(m, "UnitaryMatrix");
  if (!is_unitary(m, tol)) {
    throw ValidationError("matrix is not unitary within tolerance");
  }
  m_ = m;
}

UnitaryMatrix UnitaryMatrix::from_trusted(const CMatrix& m) {
  require_square(m, "UnitaryMatrix");
  UnitaryMatrix u;
  u.m_ = m;
  return u;
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index d) {
  return from_trusted(CMatrix::Identity(d, d));
}

HermitianMatrix UnitaryMatrix::conjugate(const HermitianMatrix& a) const {
  if (a.dim() != dim()) throw ValidationError("UnitaryMatrix::conjugate: dimension mismatch");
  return HermitianMatrix::from_trusted(m_ * a.matrix() * m_.adjoint());
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale_of(m);
}

bool is_unitary(const CMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  const CMatrix gram = m.adjoint() * m;
  return (gram - CMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool is_skew_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m + m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale_of(m);
}

EigenSystem eig_hermitian(const HermitianMatrix& h) {
  const Eigen::Index d = h.dim();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_hermitian: eigensolver did not converge");
  }
  const RVector& asc = solver.eigenvalues();
  const CMatrix& vecs = solver.eigenvectors();

  std::vector<CVector> columns;
  columns.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) {
    CVector v = vecs.col(k);
    for (Eigen::Index i = 0; i < d; ++i) {
      const double mag = std::abs(v[i]);
      if (mag > 1e-8) {
        v *= std::conj(v[i]) / mag;
        v[i] = Complex(v[i].real(), 0.0);
        break;
      }
    }
    columns.push_back(std::move(v));
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  const double tie_tol = 1e-12 * std::max(1.0, asc.cwiseAbs().maxCoeff());
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (std::abs(asc[a] - asc[b]) > tie_tol) return asc[a] > asc[b];
    return lex_greater(columns[static_cast<std::size_t>(a)], columns[static_cast<std::size_t>(b)]);
  });

  EigenSystem es;
  es.values.resize(d);
  es.vectors.resize(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    es.values[k] = asc[src];
    es.vectors.col(k) = columns[static_cast<std::size_t>(src)];
  }
  return es;
}

RVector eigenvalues_ascending(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalues_ascending: eigensolver did not converge");
  }
  return solver.eigenvalues();
}

CMatrix reconstruct(const EigenSystem& es, const RVector& mapped_values) {
  return es.vectors * mapped_values.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

double power_on_support(double lambda, double p) {
  const double l = clamp_psd(lambda, kKernelTol, kKernelTol);
  if (l == 0.0) return 0.0;
  return std::pow(l, p);
}

HermitianMatrix frac_power(const EigenSystem& es, double p) {
  RVector mapped(es.values.size());
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    mapped[k] = power_on_support(es.values[k], p);
  }
  return HermitianMatrix::from_trusted(reconstruct(es, mapped));
}

HermitianMatrix frac_power(const HermitianMatrix& a, double p) {
  return frac_power(eig_hermitian(a), p);
}

UnitaryMatrix exp_skew(const CMatrix& skew) {
  require_square(skew, "exp_skew");
  if (!is_skew_hermitian(skew)) {
    throw ValidationError("exp_skew: input is not skew-Hermitian within tolerance");
  }
  // L = -i H with H = iL Hermitian, so exp(L) = V diag(exp(-i lambda)) V*.
  const CMatrix h = Complex(0.0, 1.0) * skew;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (h + h.adjoint()), Eigen::ComputeEigenvectors);
  const RVector& lambda = solver.eigenvalues();
  CVector phases(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    phases[k] = std::polar(1.0, -lambda[k]);
  }
  const CMatrix& v = solver.eigenvectors();
  return UnitaryMatrix::from_trusted(v * phases.asDiagonal() * v.adjoint());
}

CMatrix unitary_log(const UnitaryMatrix& u) {
  // The Schur form of a normal matrix is diagonal with a unitary Schur basis,
  // which stays orthonormal inside degenerate eigenspaces.
  Eigen::ComplexSchur<CMatrix> schur(u.matrix());
  const CMatrix& t = schur.matrixT();
  const CMatrix& q = schur.matrixU();
  CVector log_diag(t.rows());
  for (Eigen::Index k = 0; k < t.rows(); ++k) {
    double phase = std::arg(t(k, k));
    if (phase <= -kPi + 1e-12) phase = kPi;
    log_diag[k] = Complex(0.0, phase);
  }
  const CMatrix l = q * log_diag.asDiagonal() * q.adjoint();
  return 0.5 * (l - l.adjoint());
}

HermitianMatrix exp_hermitian(const HermitianMatrix& h) {
  const EigenSystem es = eig_hermitian(h);
  return HermitianMatrix::from_trusted(reconstruct(es, es.values.array().exp().matrix()));
}

double trace_power_of_eigenvalues(const RVector& eigenvalues, double z) {
  if (!(z > 0.0)) throw ParameterError("trace_power: z must be > 0");
  if (eigenvalues.size() == 0) return 0.0;
  const double top = std::max(0.0, eigenvalues.maxCoeff());
  const double floor = 8.0 * static_cast<double>(eigenvalues.size()) * kEps * top;
  const double neg_tol = kKernelTol * std::max(1.0, top);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
    const double l = clamp_psd(eigenvalues[k], floor, neg_tol);
    if (l > 0.0) sum += std::pow(l, z);
  }
  return sum;
}

double trace_power_of_singular_values(const RVector& sv, double exponent) {
  if (!(exponent > 0.0)) throw ParameterError("trace_power: exponent must be > 0");
  // No rounding floor: values under eps * max(sv) cost the same whether kept
  // or dropped, and keeping them is exact for scaled permutations.
  double sum = 0.0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv[k] > 0.0) sum += std::pow(sv[k], exponent);
  }
  return sum;
}

double trace_power(const HermitianMatrix& a, double z) {
  if (!(z > 0.0)) throw ParameterError("trace_power: z must be > 0");
  return trace_power_of_eigenvalues(eigenvalues_ascending(a.matrix()), z);
}

double commutator_norm(const CMatrix& a, const CMatrix& b) {
  return (a * b - b * a).norm();
}

}  // namespace azfid
