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

#ifndef AZFID_ORBITS_HPP
#define AZFID_ORBITS_HPP

#include <optional>
#include <string>

#include "azfid/fidelity.hpp"

namespace azfid {

enum class Pairing { Aligned, Reversed };
enum class ExtremumKind { Max, Min };

struct OrbitExtremum {
  double value = 0.0;
  UnitaryMatrix achieving_unitary;
  ExtremumKind kind = ExtremumKind::Max;
  Pairing pairing = Pairing::Aligned;
  std::string branch;  // which closed form produced the value
};

/// Aligned: U maps sigma's k-th descending eigenvector onto rho's k-th.
/// Reversed: onto rho's (d-1-k)-th. In both cases U sigma U* commutes with rho.
UnitaryMatrix achieving_unitary(const DensityMatrix& rho, const DensityMatrix& sigma, Pairing pairing);

/// Sorted spectrum of sigma in the order the pairing places it against
/// rho's descending spectrum.
RVector paired_spectrum(const DensityMatrix& sigma, Pairing pairing);

bool orbit_max_covered(const ParamPoint& p);
bool orbit_min_covered(const ParamPoint& p);

/// max_U F(rho, U sigma U*): aligned spectra for alpha < 1, reversed for
/// alpha > 1, any z > 0. Throws ParameterError at alpha = 1.
OrbitExtremum orbit_max(const DensityMatrix& rho, const DensityMatrix& sigma, const ParamPoint& p);

/// min_U F(rho, U sigma U*): for z in (0,1), reversed for alpha < 1 and
/// aligned for alpha > 1; aligned in the convex/DPI region. Everything else
/// throws UnsupportedRegion.
OrbitExtremum orbit_min(const DensityMatrix& rho, const DensityMatrix& sigma, const ParamPoint& p);

// U_t = exp((1-t) L0 + t L1), with exp(L0) the minimizer and exp(L1) the
// maximizer of the orbit fidelity.
struct GeodesicPath {
  CMatrix l0;
  CMatrix l1;

  UnitaryMatrix at(double t) const;
};

GeodesicPath make_orbit_path(const DensityMatrix& rho, const DensityMatrix& sigma, const ParamPoint& p);

/// F(rho, U_t sigma U_t*). Throws ParameterError for t outside [0, 1].
double orbit_path_value(const DensityMatrix& rho, const DensityMatrix& sigma, const GeodesicPath& path, double t,
                        const ParamPoint& p);

struct OrbitTarget {
  double t = 0.0;
  UnitaryMatrix unitary;
  double achieved = 0.0;
};

inline constexpr double kTargetTol = 1e-6;

/// Finds t with |F(rho, U_t sigma U_t*) - target| < kTargetTol. The path is
/// scanned on a 256-interval grid and the first bracket containing the target
/// is bisected; no monotonicity is assumed. Requires the convex/DPI region or
/// alpha, z in (0,1). Throws RangeError if target is outside [min, max] by
/// more than 1e-9.
OrbitTarget solve_orbit_target(const DensityMatrix& rho, const DensityMatrix& sigma, double target,
                               const ParamPoint& p);

struct RenyiExtrema {
  std::optional<double> max;  // empty where no closed form applies
  std::optional<double> min;
};

/// Orbit extrema of the alpha-z Renyi divergence from sorted spectra:
/// max = S^C(lambda_down(rho) || lambda_up(sigma)) for alpha, z in (0,1) or
/// alpha > 1; min = S^C(lambda_down(rho) || lambda_down(sigma)) for z in (0,1)
/// or the convex/DPI region. sigma must be full rank (PreconditionError).
/// Throws UnsupportedRegion when neither extremum is covered.
RenyiExtrema orbit_renyi_extrema(const DensityMatrix& rho, const DensityMatrix& sigma, const ParamPoint& p);

}  // namespace azfid

#endif  // AZFID_ORBITS_HPP
