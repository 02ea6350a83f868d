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

#ifndef AZFID_CHANNELS_HPP
#define AZFID_CHANNELS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "azfid/fidelity.hpp"
#include "azfid/orbits.hpp"

namespace azfid {

enum class ChannelTag : std::uint8_t {
  CPTP = 1 << 0,
  Unital = 1 << 1,
  MixedUnitary = 1 << 2,
  Pinching = 1 << 3,
  Replacement = 1 << 4,
};

inline constexpr ChannelTag kAllChannelTags[] = {ChannelTag::CPTP, ChannelTag::Unital, ChannelTag::MixedUnitary,
                                                 ChannelTag::Pinching, ChannelTag::Replacement};

std::string_view tag_name(ChannelTag tag);
std::optional<ChannelTag> tag_from_name(std::string_view name);

class TagSet {
 public:
  TagSet() = default;
  TagSet(std::initializer_list<ChannelTag> tags);

  bool has(ChannelTag t) const { return (bits_ & static_cast<std::uint8_t>(t)) != 0; }
  void add(ChannelTag t) { bits_ |= static_cast<std::uint8_t>(t); }
  bool contains(const TagSet& other) const { return (bits_ & other.bits_) == other.bits_; }
  std::vector<ChannelTag> list() const;
  bool operator==(const TagSet&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

inline constexpr double kChannelTol = 1e-9;

// CPTP map rho -> sum_i K_i rho K_i*. Every tag held by a channel has been
// checked against its Kraus operators.
class KrausChannel {
 public:
  /// Derives tags from the operators. Throws ValidationError unless
  /// sum K* K = I within kChannelTol.
  explicit KrausChannel(std::vector<CMatrix> kraus);
  /// As above, then requires every declared tag to be among the derived ones.
  KrausChannel(std::vector<CMatrix> kraus, const TagSet& declared);

  Eigen::Index dim() const { return kraus_.front().rows(); }
  const std::vector<CMatrix>& kraus() const { return kraus_; }
  const TagSet& tags() const { return tags_; }
  bool has(ChannelTag t) const { return tags_.has(t); }

  DensityMatrix apply(const DensityMatrix& rho) const;
  CMatrix apply_raw(const CMatrix& x) const;

  /// Tags that hold for a Kraus family (CPTP is not assumed).
  static TagSet derive_tags(const std::vector<CMatrix>& kraus);

 private:
  std::vector<CMatrix> kraus_;
  TagSet tags_;
};

KrausChannel identity_channel(Eigen::Index d);
KrausChannel unitary_channel(const UnitaryMatrix& u);

/// Kraus operators sqrt(p_i) U_i.
KrausChannel mixed_unitary(const std::vector<double>& probs, const std::vector<UnitaryMatrix>& unitaries);

/// Kraus operators |b_i><b_i| for the columns b_i of `basis`.
KrausChannel pinching(const UnitaryMatrix& basis);

/// X -> Tr(X) tau, with Kraus operators sqrt(lambda_j) |v_j><i| over the
/// eigenpairs of tau with lambda_j > 0 and every basis index i.
KrausChannel replacement(const DensityMatrix& tau);

/// Kraus blocks of the first d columns of a Haar unitary on C^(d k).
KrausChannel random_cptp(Eigen::Index d, Eigen::Index kraus_count, Rng& rng);
KrausChannel random_cptp(Eigen::Index d, Eigen::Index kraus_count, std::uint64_t seed);

/// k Haar unitaries with flat-Dirichlet weights.
KrausChannel random_mixed_unitary(Eigen::Index d, Eigen::Index k, Rng& rng);

/// The d^2 clock-and-shift unitaries X^a Z^b.
std::vector<UnitaryMatrix> heisenberg_weyl(Eigen::Index d);

struct PureStateExtremum {
  double value = 0.0;
  ExtremumKind kind = ExtremumKind::Min;
  DensityMatrix achiever;  // eigenvector projector of rho
};

/// Concave region: min over pure sigma is lambda_min(rho), attained at the
/// bottom eigenvector. Convex/DPI region: max is lambda_max(rho), attained at
/// the top eigenvector. Other regions throw UnsupportedRegion.
PureStateExtremum pure_state_extrema(const DensityMatrix& rho, const ParamPoint& p);

enum class ChannelClass { All, MixedUnitary };

struct ChannelExtremum {
  double value = 0.0;
  ExtremumKind kind = ExtremumKind::Min;
  std::string achiever;                      // human-readable description
  std::optional<UnitaryMatrix> unitary;      // unitary channel achieving it (MixedUnitary)
  std::optional<DensityMatrix> output_state; // replacement output achieving it (All)
};

/// Extremum of F(rho, Phi(sigma)) over a channel class: minimum in the concave
/// region, maximum in the convex/DPI region. All: lambda_min / lambda_max of
/// rho. MixedUnitary: F^C(lambda_down(rho), lambda_up(sigma)) in both cases.
ChannelExtremum channel_class_extrema(const DensityMatrix& rho, const DensityMatrix& sigma, ChannelClass cls,
                                      const ParamPoint& p);

struct MajorizationReport {
  double majorization_margin = 0.0;  // min_k sum_{i<=k} (sigma_down - Phi(sigma)_down)
  double fidelity_margin = 0.0;      // signed so that >= 0 means the inequality holds
  double worst_margin = 0.0;
};

/// For a unital channel: Phi(sigma) is majorized by sigma, and
/// F^C(lambda_up(rho), lambda_down(Phi sigma)) >= F^C(lambda_up(rho), lambda_down(sigma))
/// for alpha < 1 (<= for alpha > 1). Throws PreconditionError for non-unital
/// channels.
MajorizationReport unital_majorization_check(const DensityMatrix& sigma, const KrausChannel& channel,
                                             const DensityMatrix& rho, double alpha);

}  // namespace azfid

#endif  // AZFID_CHANNELS_HPP
