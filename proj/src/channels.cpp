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

#include "azfid/channels.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "azfid/errors.hpp"

namespace azfid {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CMatrix sum_adjoint_products(const std::vector<CMatrix>& kraus, bool left_adjoint) {
  const Eigen::Index d = kraus.front().cols();
  CMatrix acc = CMatrix::Zero(d, d);
  for (const CMatrix& k : kraus) acc += left_adjoint ? CMatrix(k.adjoint() * k) : CMatrix(k * k.adjoint());
  return acc;
}

bool near_identity(const CMatrix& m, double tol) {
  return (m - CMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool is_scaled_unitary(const CMatrix& k) {
  const Eigen::Index d = k.rows();
  const double p = (k.adjoint() * k).trace().real() / static_cast<double>(d);
  if (p <= 0.0) return false;
  return is_unitary(k / std::sqrt(p), kChannelTol);
}

bool is_rank_one_projector(const CMatrix& k) {
  return is_hermitian(k, kChannelTol) && (k * k - k).cwiseAbs().maxCoeff() <= kChannelTol &&
         std::abs(k.trace().real() - 1.0) <= kChannelTol;
}

// Output independent of the input: Phi(|i><j|) = delta_ij Phi(|0><0|).
bool is_replacement(const std::vector<CMatrix>& kraus) {
  const Eigen::Index d = kraus.front().cols();
  auto apply_unit = [&](Eigen::Index i, Eigen::Index j) {
    CMatrix out = CMatrix::Zero(d, d);
    for (const CMatrix& k : kraus) out += k.col(i) * k.col(j).adjoint();
    return out;
  };
  const CMatrix tau = apply_unit(0, 0);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const CMatrix out = apply_unit(i, j);
      const CMatrix expected = i == j ? tau : CMatrix::Zero(d, d);
      if ((out - expected).cwiseAbs().maxCoeff() > kChannelTol) return false;
    }
  }
  return true;
}

}  // namespace

std::string_view tag_name(ChannelTag tag) {
  switch (tag) {
    case ChannelTag::CPTP:
      return "CPTP";
    case ChannelTag::Unital:
      return "Unital";
    case ChannelTag::MixedUnitary:
      return "MixedUnitary";
    case ChannelTag::Pinching:
      return "Pinching";
    case ChannelTag::Replacement:
      return "Replacement";
  }
  return "?";
}

std::optional<ChannelTag> tag_from_name(std::string_view name) {
  for (const ChannelTag t : kAllChannelTags) {
    if (tag_name(t) == name) return t;
  }
  return std::nullopt;
}

TagSet::TagSet(std::initializer_list<ChannelTag> tags) {
  for (const ChannelTag t : tags) add(t);
}

std::vector<ChannelTag> TagSet::list() const {
  std::vector<ChannelTag> out;
  for (const ChannelTag t : kAllChannelTags) {
    if (has(t)) out.push_back(t);
  }
  return out;
}

TagSet KrausChannel::derive_tags(const std::vector<CMatrix>& kraus) {
  TagSet tags;
  if (kraus.empty()) return tags;
  if (near_identity(sum_adjoint_products(kraus, true), kChannelTol)) tags.add(ChannelTag::CPTP);
  if (near_identity(sum_adjoint_products(kraus, false), kChannelTol)) tags.add(ChannelTag::Unital);
  bool all_unitary = true;
  bool all_projectors = true;
  for (const CMatrix& k : kraus) {
    all_unitary = all_unitary && is_scaled_unitary(k);
    all_projectors = all_projectors && is_rank_one_projector(k);
  }
  if (all_unitary && tags.has(ChannelTag::CPTP)) tags.add(ChannelTag::MixedUnitary);
  if (all_projectors && tags.has(ChannelTag::CPTP)) tags.add(ChannelTag::Pinching);
  if (tags.has(ChannelTag::CPTP) && is_replacement(kraus)) tags.add(ChannelTag::Replacement);
  return tags;
}

KrausChannel::KrausChannel(std::vector<CMatrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw ValidationError("channel needs at least one Kraus operator");
  const Eigen::Index d = kraus_.front().rows();
  for (const CMatrix& k : kraus_) {
    if (k.rows() != d || k.cols() != d || d == 0) {
      throw ValidationError("Kraus operators must all be square of the same dimension");
    }
  }
  tags_ = derive_tags(kraus_);
  if (!tags_.has(ChannelTag::CPTP)) {
    throw ValidationError("Kraus family is not trace preserving: sum K*K != I");
  }
}

KrausChannel::KrausChannel(std::vector<CMatrix> kraus, const TagSet& declared) : KrausChannel(std::move(kraus)) {
  for (const ChannelTag t : declared.list()) {
    if (!tags_.has(t)) {
      throw ValidationError("declared channel tag " + std::string(tag_name(t)) + " does not hold");
    }
  }
}

CMatrix KrausChannel::apply_raw(const CMatrix& x) const {
  CMatrix out = CMatrix::Zero(dim(), dim());
  for (const CMatrix& k : kraus_) out += k * x * k.adjoint();
  return out;
}

DensityMatrix KrausChannel::apply(const DensityMatrix& rho) const {
  if (rho.dim() != dim()) throw ValidationError("channel and state dimensions differ");
  return DensityMatrix(HermitianMatrix::from_trusted(apply_raw(rho.raw())));
}

KrausChannel identity_channel(Eigen::Index d) {
  return KrausChannel({CMatrix::Identity(d, d)});
}

KrausChannel unitary_channel(const UnitaryMatrix& u) {
  return KrausChannel({u.matrix()});
}

KrausChannel mixed_unitary(const std::vector<double>& probs, const std::vector<UnitaryMatrix>& unitaries) {
  if (probs.size() != unitaries.size() || probs.empty()) {
    throw ValidationError("mixed_unitary: need one probability per unitary");
  }
  double total = 0.0;
  for (const double p : probs) {
    if (!(p >= 0.0)) throw ValidationError("mixed_unitary: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-10) throw ValidationError("mixed_unitary: probabilities do not sum to 1");
  std::vector<CMatrix> kraus;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!is_unitary(unitaries[i].matrix())) throw ValidationError("mixed_unitary: component is not unitary");
    if (probs[i] == 0.0) continue;
    kraus.push_back(std::sqrt(probs[i]) * unitaries[i].matrix());
  }
  return KrausChannel(std::move(kraus), {ChannelTag::CPTP, ChannelTag::Unital, ChannelTag::MixedUnitary});
}

KrausChannel pinching(const UnitaryMatrix& basis) {
  std::vector<CMatrix> kraus;
  for (Eigen::Index i = 0; i < basis.dim(); ++i) {
    const CVector b = basis.matrix().col(i);
    kraus.push_back(b * b.adjoint());
  }
  return KrausChannel(std::move(kraus), {ChannelTag::CPTP, ChannelTag::Unital, ChannelTag::Pinching});
}

KrausChannel replacement(const DensityMatrix& tau) {
  const Eigen::Index d = tau.dim();
  std::vector<CMatrix> kraus;
  for (Eigen::Index j = 0; j < d; ++j) {
    const double lambda = tau.spectrum_desc()[j];
    if (lambda <= 0.0) continue;
    const CVector v = tau.eigenbasis().col(j);
    for (Eigen::Index i = 0; i < d; ++i) {
      CMatrix k = CMatrix::Zero(d, d);
      k.col(i) = std::sqrt(lambda) * v;
      kraus.push_back(std::move(k));
    }
  }
  return KrausChannel(std::move(kraus), {ChannelTag::CPTP, ChannelTag::Replacement});
}

KrausChannel random_cptp(Eigen::Index d, Eigen::Index kraus_count, Rng& rng) {
  if (kraus_count < 1) throw ParameterError("random_cptp: need at least one Kraus operator");
  const UnitaryMatrix big = haar_unitary(d * kraus_count, rng);
  std::vector<CMatrix> kraus;
  for (Eigen::Index b = 0; b < kraus_count; ++b) {
    kraus.push_back(big.matrix().block(b * d, 0, d, d));
  }
  return KrausChannel(std::move(kraus));
}

KrausChannel random_cptp(Eigen::Index d, Eigen::Index kraus_count, std::uint64_t seed) {
  Rng rng(seed);
  return random_cptp(d, kraus_count, rng);
}

KrausChannel random_mixed_unitary(Eigen::Index d, Eigen::Index k, Rng& rng) {
  if (k < 1) throw ParameterError("random_mixed_unitary: need at least one component");
  std::vector<double> weights;
  std::vector<UnitaryMatrix> unitaries;
  double total = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    weights.push_back(-std::log(u));
    total += weights.back();
    unitaries.push_back(haar_unitary(d, rng));
  }
  for (double& w : weights) w /= total;
  return mixed_unitary(weights, unitaries);
}

std::vector<UnitaryMatrix> heisenberg_weyl(Eigen::Index d) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  CMatrix shift = CMatrix::Zero(d, d);
  CMatrix clock = CMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    shift((j + 1) % d, j) = 1.0;
    clock(j, j) = std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(d));
  }
  std::vector<UnitaryMatrix> out;
  CMatrix xa = CMatrix::Identity(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    CMatrix zb = CMatrix::Identity(d, d);
    for (Eigen::Index b = 0; b < d; ++b) {
      out.push_back(UnitaryMatrix::from_trusted(xa * zb));
      zb = zb * clock;
    }
    xa = xa * shift;
  }
  return out;
}

PureStateExtremum pure_state_extrema(const DensityMatrix& rho, const ParamPoint& p) {
  const Eigen::Index d = rho.dim();
  if (p.region == Region::Concave) {
    return PureStateExtremum{rho.lambda_min(), ExtremumKind::Min, pure_state(rho.eigenbasis().col(d - 1))};
  }
  if (p.region == Region::ConvexDPI) {
    return PureStateExtremum{rho.lambda_max(), ExtremumKind::Max, pure_state(rho.eigenbasis().col(0))};
  }
  throw UnsupportedRegion(
      "pure-state extrema are covered for 0 < alpha < 1 with z >= max(alpha, 1-alpha) (minimum) or the "
      "convex/DPI region (maximum)");
}

ChannelExtremum channel_class_extrema(const DensityMatrix& rho, const DensityMatrix& sigma, ChannelClass cls,
                                      const ParamPoint& p) {
  if (rho.dim() != sigma.dim()) throw ValidationError("channel_class_extrema: dimension mismatch");
  if (p.region == Region::Neither) {
    throw UnsupportedRegion(
        "channel extrema are covered for 0 < alpha < 1 with z >= max(alpha, 1-alpha) (minimum) or the "
        "convex/DPI region (maximum)");
  }
  ChannelExtremum out;
  out.kind = p.region == Region::Concave ? ExtremumKind::Min : ExtremumKind::Max;
  if (cls == ChannelClass::All) {
    PureStateExtremum pe = pure_state_extrema(rho, p);
    out.value = pe.value;
    out.achiever = out.kind == ExtremumKind::Min ? "replacement channel onto the bottom eigenvector of rho"
                                                 : "replacement channel onto the top eigenvector of rho";
    out.output_state = std::move(pe.achiever);
    return out;
  }
  out.value = classical_fidelity_spectra(rho.spectrum_desc(), sigma.spectrum_asc(), p.alpha);
  out.unitary = achieving_unitary(rho, sigma, Pairing::Reversed);
  out.achiever = "unitary channel pairing rho's descending spectrum with sigma's ascending spectrum";
  return out;
}

MajorizationReport unital_majorization_check(const DensityMatrix& sigma, const KrausChannel& channel,
                                             const DensityMatrix& rho, double alpha) {
  if (!channel.has(ChannelTag::Unital)) throw PreconditionError("majorization check needs a unital channel");
  if (alpha == 1.0 || !(alpha > 0.0)) throw ParameterError("alpha must be > 0 and != 1");
  const DensityMatrix out = channel.apply(sigma);
  const RVector& s = sigma.spectrum_desc();
  const RVector& o = out.spectrum_desc();
  MajorizationReport r;
  double ps = 0.0;
  double po = 0.0;
  r.majorization_margin = kInf;
  for (Eigen::Index k = 0; k + 1 < s.size(); ++k) {
    ps += s[k];
    po += o[k];
    r.majorization_margin = std::min(r.majorization_margin, ps - po);
  }
  if (s.size() == 1) r.majorization_margin = 0.0;

  const RVector& up = rho.spectrum_asc();
  const double f_out = classical_fidelity_spectra(up, o, alpha);
  const double f_in = classical_fidelity_spectra(up, s, alpha);
  if (std::isinf(f_out) && std::isinf(f_in)) {
    r.fidelity_margin = 0.0;
  } else {
    r.fidelity_margin = alpha < 1.0 ? f_out - f_in : f_in - f_out;
  }
  r.worst_margin = std::min(r.majorization_margin, r.fidelity_margin);
  return r;
}

}  // namespace azfid
