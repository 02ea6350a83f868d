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

#include <algorithm>
#include <cmath>
#include <limits>

#include "azfid/errors.hpp"

namespace azfid {

namespace {

void require_ranks(Eigen::Index m, Eigen::Index n, Eigen::Index d) {
  if (d < 1 || m < 1 || n < 1 || m > d || n > d) {
    throw ValidationError("subspace dimensions must satisfy 1 <= m, n <= d");
  }
}

double scale(Eigen::Index m, Eigen::Index n, double alpha) {
  return std::pow(static_cast<double>(m), -alpha) * std::pow(static_cast<double>(n), alpha - 1.0);
}

// Orthonormal basis of the range of a projector.
CMatrix range_basis(const SubspaceProjector& p) {
  const EigenSystem es = eig_hermitian(p.matrix());
  return es.vectors.leftCols(p.rank());
}

}  // namespace

SubspacePair::SubspacePair(SubspaceProjector pm, SubspaceProjector pn) : pm_(std::move(pm)), pn_(std::move(pn)) {
  if (pm_.dim() != pn_.dim()) throw ValidationError("subspace pair: projectors live in different dimensions");
}

SubspaceTrace subspace_fidelity_trace(const SubspacePair& pair, const ParamPoint& p) {
  const DensityMatrix rho = subspace_state(pair.first());
  const DensityMatrix sigma = subspace_state(pair.second());
  const FidelityValue v = alpha_z_fidelity(rho, sigma, p, SupportPolicy::RestrictToSupport);
  return SubspaceTrace{v.trace_quantity, v.support_violation};
}

double commuting_subspace_formula(Eigen::Index m, Eigen::Index n, Eigen::Index dim_intersection, double alpha) {
  if (m < 1 || n < 1) throw ValidationError("subspace ranks must be >= 1");
  if (dim_intersection < 0 || dim_intersection > std::min(m, n)) {
    throw ValidationError("intersection dimension must lie in [0, min(m, n)]");
  }
  if (!(alpha > 0.0)) throw ParameterError("alpha must be > 0");
  return static_cast<double>(dim_intersection) * scale(m, n, alpha);
}

Bounds subspace_bounds(Eigen::Index m, Eigen::Index n, Eigen::Index d, double alpha) {
  require_ranks(m, n, d);
  if (!(alpha > 0.0)) throw ParameterError("alpha must be > 0");
  const double s = scale(m, n, alpha);
  return Bounds{static_cast<double>(std::max<Eigen::Index>(m + n - d, 0)) * s,
                static_cast<double>(std::min(m, n)) * s};
}

Bounds subspace_bounds_z_exponent(Eigen::Index m, Eigen::Index n, Eigen::Index d, double alpha, double z) {
  require_ranks(m, n, d);
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  const double denom = std::pow(md, z) * std::pow(nd, 1.0 - alpha);
  return Bounds{static_cast<double>(std::max<Eigen::Index>(m + n - d, 0)) / denom,
                std::min(std::pow(md, 1.0 - z) / std::pow(nd, 1.0 - alpha), std::pow(nd, alpha) / std::pow(md, z))};
}

namespace {

Bounds eigen_sum_bounds(const DensityMatrix& rho, Eigen::Index n, double alpha, double exponent) {
  const Eigen::Index d = rho.dim();
  require_ranks(n, n, d);
  const RVector& l = rho.spectrum_desc();
  double top = 0.0;
  double bottom = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (l[i] > 0.0) top += std::pow(l[i], exponent);
    if (l[d - 1 - i] > 0.0) bottom += std::pow(l[d - 1 - i], exponent);
  }
  const double s = std::pow(static_cast<double>(n), alpha - 1.0);
  return Bounds{s * bottom, s * top};
}

}  // namespace

Bounds compression_bounds(const DensityMatrix& rho, Eigen::Index n, const ParamPoint& p) {
  return eigen_sum_bounds(rho, n, p.alpha, p.alpha);
}

Bounds compression_bounds_z_exponent(const DensityMatrix& rho, Eigen::Index n, const ParamPoint& p) {
  return eigen_sum_bounds(rho, n, p.alpha, p.z);
}

Eigen::Index intersection_dim(const SubspacePair& pair) {
  const CMatrix& pm = pair.first().matrix().matrix();
  const CMatrix& pn = pair.second().matrix().matrix();
  const RVector ev = eigenvalues_ascending(0.5 * (pm * pn * pm + (pm * pn * pm).adjoint()));
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i] - 1.0) <= 1e-8) ++count;
  }
  return count;
}

RVector compression_spectrum(const HermitianMatrix& a, const SubspaceProjector& p) {
  if (a.dim() != p.dim()) throw ValidationError("compression_spectrum: dimension mismatch");
  const CMatrix v = range_basis(p);
  const CMatrix restricted = v.adjoint() * a.matrix() * v;
  return eigenvalues_ascending(0.5 * (restricted + restricted.adjoint())).reverse();
}

double interlacing_margin(const RVector& full_desc, const RVector& compressed_desc) {
  const Eigen::Index d = full_desc.size();
  const Eigen::Index n = compressed_desc.size();
  if (n > d) throw ValidationError("interlacing_margin: compressed spectrum is longer than the full one");
  double margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    margin = std::min(margin, full_desc[i] - compressed_desc[i]);
    margin = std::min(margin, compressed_desc[i] - full_desc[i + d - n]);
  }
  return margin;
}

SubspaceProjector eigen_subspace(const DensityMatrix& rho, Eigen::Index n, bool top) {
  const Eigen::Index d = rho.dim();
  require_ranks(n, n, d);
  const CMatrix& v = rho.eigenbasis();
  return SubspaceProjector::from_isometry(top ? CMatrix(v.leftCols(n)) : CMatrix(v.rightCols(n)));
}

}  // namespace azfid
