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

#include "azfid/states.hpp"

#include <cmath>
#include <string>

#include "azfid/errors.hpp"

namespace azfid {

DensityMatrix::DensityMatrix(const HermitianMatrix& m) : m_(m), es_(eig_hermitian(m)) {
  const double tr = m_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw ValidationError("density matrix trace is " + std::to_string(tr) + ", expected 1");
  }
  for (Eigen::Index k = 0; k < es_.values.size(); ++k) {
    double& l = es_.values[k];
    if (l < -kKernelTol) {
      throw NotPsdError("density matrix has negative eigenvalue " + std::to_string(l));
    }
    if (l <= kKernelTol) l = 0.0;
  }
  asc_ = es_.values.reverse();
}

Eigen::Index DensityMatrix::rank() const {
  Eigen::Index r = 0;
  for (Eigen::Index k = 0; k < es_.values.size(); ++k) {
    if (es_.values[k] > 0.0) ++r;
  }
  return r;
}

CMatrix DensityMatrix::support_projector() const {
  const Eigen::Index r = rank();
  const auto v = es_.vectors.leftCols(r);
  return v * v.adjoint();
}

HermitianMatrix DensityMatrix::power(double p) const {
  return frac_power(es_, p);
}

SubspaceProjector::SubspaceProjector(const HermitianMatrix& p) : p_(p) {
  const CMatrix& m = p_.matrix();
  if ((m * m - m).cwiseAbs().maxCoeff() > 1e-10) {
    throw ValidationError("subspace projector is not idempotent");
  }
  const double tr = p_.trace();
  const double rounded = std::round(tr);
  if (std::abs(tr - rounded) > 1e-8) {
    throw ValidationError("subspace projector trace " + std::to_string(tr) + " is not an integer");
  }
  rank_ = static_cast<Eigen::Index>(rounded);
  if (rank_ < 1) throw ValidationError("subspace projector has rank 0");
}

SubspaceProjector SubspaceProjector::from_isometry(const CMatrix& columns) {
  return SubspaceProjector(HermitianMatrix::from_trusted(columns * columns.adjoint()));
}

DensityMatrix density_from_spectrum(const RVector& probs, const UnitaryMatrix& basis) {
  if (probs.size() != basis.dim()) {
    throw ValidationError("density_from_spectrum: spectrum length does not match basis dimension");
  }
  for (Eigen::Index k = 0; k < probs.size(); ++k) {
    if (probs[k] < 0.0) throw ValidationError("density_from_spectrum: negative probability");
  }
  if (std::abs(probs.sum() - 1.0) > kTraceTol) {
    throw ValidationError("density_from_spectrum: probabilities do not sum to 1");
  }
  const CMatrix& u = basis.matrix();
  return DensityMatrix(HermitianMatrix::from_trusted(u * probs.cast<Complex>().asDiagonal() * u.adjoint()));
}

DensityMatrix random_density(Eigen::Index d, Eigen::Index rank, Rng& rng) {
  if (d < 1) throw ParameterError("random_density: dimension must be >= 1");
  if (rank < 1 || rank > d) throw ParameterError("random_density: rank must be in [1, d]");
  CMatrix g(d, rank);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < rank; ++j) g(i, j) = rng.complex_normal();
  }
  CMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(HermitianMatrix::from_trusted(m));
}

DensityMatrix random_density(Eigen::Index d, Eigen::Index rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(d, rank, rng);
}

UnitaryMatrix haar_unitary(Eigen::Index d, Rng& rng) {
  if (d < 1) throw ParameterError("haar_unitary: dimension must be >= 1");
  CMatrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  return UnitaryMatrix::from_trusted(q);
}

UnitaryMatrix haar_unitary(Eigen::Index d, std::uint64_t seed) {
  Rng rng(seed);
  return haar_unitary(d, rng);
}

DensityMatrix subspace_state(const SubspaceProjector& p) {
  return DensityMatrix(HermitianMatrix::from_trusted(p.matrix().matrix() / static_cast<double>(p.rank())));
}

SubspaceProjector random_subspace(Eigen::Index d, Eigen::Index m, Rng& rng) {
  if (m < 1 || m > d) throw ParameterError("random_subspace: rank must be in [1, d]");
  const UnitaryMatrix u = haar_unitary(d, rng);
  return SubspaceProjector::from_isometry(u.matrix().leftCols(m));
}

SubspaceProjector coordinate_subspace(Eigen::Index d, const std::vector<Eigen::Index>& axes) {
  RVector diag = RVector::Zero(d);
  for (const Eigen::Index a : axes) {
    if (a < 0 || a >= d) throw ValidationError("coordinate_subspace: axis out of range");
    diag[a] = 1.0;
  }
  return SubspaceProjector(HermitianMatrix::diagonal(diag));
}

DensityMatrix pure_state(const CVector& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw ValidationError("pure_state: zero vector");
  const CVector v = psi / n;
  return DensityMatrix(HermitianMatrix::from_trusted(v * v.adjoint()));
}

DensityMatrix maximally_mixed(Eigen::Index d) {
  return DensityMatrix(HermitianMatrix::from_trusted(CMatrix::Identity(d, d) / static_cast<double>(d)));
}

DensityMatrix diagonal_state(const RVector& probs) {
  return density_from_spectrum(probs, UnitaryMatrix::identity(probs.size()));
}

}  // namespace azfid
