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

#ifndef AZFID_STATES_HPP
#define AZFID_STATES_HPP

#include <cstdint>
#include <vector>

#include "azfid/linalg.hpp"
#include "azfid/random.hpp"

namespace azfid {

inline constexpr double kTraceTol = 1e-10;

// Positive semi-definite, unit-trace operator with its spectral decomposition
// computed once at construction. Eigenvalues within kKernelTol of zero are
// stored as exact zeros.
class DensityMatrix {
 public:
  explicit DensityMatrix(const HermitianMatrix& m);
  static DensityMatrix from_matrix(const CMatrix& m) { return DensityMatrix(HermitianMatrix(m)); }

  Eigen::Index dim() const { return m_.dim(); }
  const HermitianMatrix& matrix() const { return m_; }
  const CMatrix& raw() const { return m_.matrix(); }

  const RVector& spectrum_desc() const { return es_.values; }
  const RVector& spectrum_asc() const { return asc_; }
  const CMatrix& eigenbasis() const { return es_.vectors; }
  const EigenSystem& eigensystem() const { return es_; }

  double lambda_max() const { return es_.values[0]; }
  double lambda_min() const { return es_.values[dim() - 1]; }
  Eigen::Index rank() const;
  bool full_rank() const { return rank() == dim(); }

  // Orthogonal projector onto the span of eigenvectors with positive eigenvalue.
  CMatrix support_projector() const;
  // rho^p with the kernel convention, reusing the cached eigensystem.
  HermitianMatrix power(double p) const;

 private:
  HermitianMatrix m_;
  EigenSystem es_;
  RVector asc_;
};

// Orthogonal projector P = P* = P^2 of rank m >= 1.
class SubspaceProjector {
 public:
  explicit SubspaceProjector(const HermitianMatrix& p);
  // Projector onto the column span of an isometry (orthonormal columns).
  static SubspaceProjector from_isometry(const CMatrix& columns);

  Eigen::Index dim() const { return p_.dim(); }
  Eigen::Index rank() const { return rank_; }
  const HermitianMatrix& matrix() const { return p_; }

 private:
  HermitianMatrix p_;
  Eigen::Index rank_ = 0;
};

/// basis * diag(probs) * basis^*.
DensityMatrix density_from_spectrum(const RVector& probs, const UnitaryMatrix& basis);

/// G G^* / Tr(G G^*) for a d x rank complex Ginibre matrix G.
DensityMatrix random_density(Eigen::Index d, Eigen::Index rank, Rng& rng);
DensityMatrix random_density(Eigen::Index d, Eigen::Index rank, std::uint64_t seed);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of
/// diag(R) absorbed into Q.
UnitaryMatrix haar_unitary(Eigen::Index d, Rng& rng);
UnitaryMatrix haar_unitary(Eigen::Index d, std::uint64_t seed);

/// P / m.
DensityMatrix subspace_state(const SubspaceProjector& p);

/// Span of the first m columns of a Haar unitary.
SubspaceProjector random_subspace(Eigen::Index d, Eigen::Index m, Rng& rng);
/// Span of the given standard basis vectors.
SubspaceProjector coordinate_subspace(Eigen::Index d, const std::vector<Eigen::Index>& axes);

DensityMatrix pure_state(const CVector& psi);
DensityMatrix maximally_mixed(Eigen::Index d);
DensityMatrix diagonal_state(const RVector& probs);

}  // namespace azfid

#endif  // AZFID_STATES_HPP
