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

#include "azfid/orbits.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "azfid/errors.hpp"

namespace azfid {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kScanIntervals = 256;
constexpr int kMaxBisections = 200;

const char* const kMinRegionText =
    "orbit minimum has a closed form only for z in (0,1) with alpha != 1, or for "
    "1 < alpha <= 2 with alpha/2 <= z <= alpha, or alpha >= 2 with alpha-1 <= z <= alpha";

void require_alpha_not_one(const ParamPoint& p) {
  if (p.alpha == 1.0) throw ParameterError("alpha = 1 is excluded from the orbit closed forms");
}

double log_map(double f, double alpha) {
  if (std::isinf(f) || f == 0.0) return kInf;
  return alpha / (alpha - 1.0) * std::log(f);
}

OrbitExtremum make_extremum(const DensityMatrix& rho, const DensityMatrix& sigma, const ParamPoint& p,
                            ExtremumKind kind, Pairing pairing, std::string branch) {
  OrbitExtremum e;
  e.kind = kind;
  e.pairing = pairing;
  e.branch = std::move(branch);
  e.value = classical_fidelity_spectra(rho.spectrum_desc(), paired_spectrum(sigma, pairing), p.alpha);
  e.achieving_unitary = achieving_unitary(rho, sigma, pairing);
  return e;
}

}  // namespace

UnitaryMatrix achieving_unitary(const DensityMatrix& rho, const DensityMatrix& sigma, Pairing pairing) {
  if (rho.dim() != sigma.dim()) throw ValidationError("achieving_unitary: dimension mismatch");
  const Eigen::Index d = rho.dim();
  const CMatrix& vr = rho.eigenbasis();
  const CMatrix& vs = sigma.eigenbasis();
  if (pairing == Pairing::Aligned) return UnitaryMatrix::from_trusted(vr * vs.adjoint());
  CMatrix flipped(d, d);
  for (Eigen::Index k = 0; k < d; ++k) flipped.col(k) = vr.col(d - 1 - k);
  return UnitaryMatrix::from_trusted(flipped * vs.adjoint());
}

RVector paired_spectrum(const DensityMatrix& sigma, Pairing pairing) {
  return pairing == Pairing::Aligned ? sigma.spectrum_desc() : sigma.spectrum_asc();
}

bool orbit_max_covered(const ParamPoint& p) { return p.alpha != 1.0; }

bool orbit_min_covered(const ParamPoint& p) {
  if (p.alpha == 1.0) return false;
  return p.z < 1.0 || p.region == Region::ConvexDPI;
}

OrbitExtremum orbit_max(const DensityMatrix& rho, const DensityMatrix& sigma, const ParamPoint& p) {
  require_alpha_not_one(p);
  if (p.alpha < 1.0) {
    return make_extremum(rho, sigma, p, ExtremumKind::Max, Pairing::Aligned, "max/alpha<1/aligned");
  }
  return make_extremum(rho, sigma, p, ExtremumKind::Max, Pairing::Reversed, "max/alpha>1/reversed");
}

OrbitExtremum orbit_min(const DensityMatrix& rho, const DensityMatrix& sigma, const ParamPoint& p) {
  require_alpha_not_one(p);
  if (p.z < 1.0) {
    if (p.alpha < 1.0) {
      return make_extremum(rho, sigma, p, ExtremumKind::Min, Pairing::Reversed, "min/z<1/alpha<1/reversed");
    }
    return make_extremum(rho, sigma, p, ExtremumKind::Min, Pairing::Aligned, "min/z<1/alpha>1/aligned");
  }
  if (p.region == Region::ConvexDPI) {
    return make_extremum(rho, sigma, p, ExtremumKind::Min, Pairing::Aligned, "min/convex-dpi/aligned");
  }
  throw UnsupportedRegion(kMinRegionText);
}

UnitaryMatrix GeodesicPath::at(double t) const {
  return exp_skew((1.0 - t) * l0 + t * l1);
}

GeodesicPath make_orbit_path(const DensityMatrix& rho, const DensityMatrix& sigma, const ParamPoint& p) {
  GeodesicPath path;
  path.l0 = unitary_log(orbit_min(rho, sigma, p).achieving_unitary);
  path.l1 = unitary_log(orbit_max(rho, sigma, p).achieving_unitary);
  return path;
}

double orbit_path_value(const DensityMatrix& rho, const DensityMatrix& sigma, const GeodesicPath& path, double t,
                        const ParamPoint& p) {
  if (!(t >= 0.0 && t <= 1.0)) throw ParameterError("path parameter t must lie in [0, 1]");
  const TraceFunctional tf(rho, sigma, p);
  return tf.fidelity_at_unitary(path.at(t).matrix());
}

OrbitTarget solve_orbit_target(const DensityMatrix& rho, const DensityMatrix& sigma, double target,
                               const ParamPoint& p) {
  const bool both_unit = p.alpha < 1.0 && p.z < 1.0;
  if (!(p.region == Region::ConvexDPI || both_unit)) {
    throw UnsupportedRegion(
        "interval traversal is covered only for the convex/DPI region or alpha, z in (0,1)");
  }
  const double lo = orbit_min(rho, sigma, p).value;
  const double hi = orbit_max(rho, sigma, p).value;
  if (target < lo - 1e-9 || target > hi + 1e-9) {
    throw RangeError("target " + std::to_string(target) + " outside the orbit interval [" + std::to_string(lo) +
                     ", " + std::to_string(hi) + "]");
  }

  const GeodesicPath path = make_orbit_path(rho, sigma, p);
  const TraceFunctional tf(rho, sigma, p);
  auto eval = [&](double t) { return tf.fidelity_at_unitary(path.at(t).matrix()); };
  auto solution = [&](double t, double value) {
    OrbitTarget out;
    out.t = t;
    out.unitary = path.at(t);
    out.achieved = value;
    return out;
  };

  double t_prev = 0.0;
  double g_prev = eval(0.0) - target;
  if (std::abs(g_prev) < kTargetTol) return solution(0.0, g_prev + target);
  for (int i = 1; i <= kScanIntervals; ++i) {
    const double t = static_cast<double>(i) / kScanIntervals;
    const double g = eval(t) - target;
    if (std::abs(g) < kTargetTol) return solution(t, g + target);
    if ((g_prev < 0.0) != (g < 0.0)) {
      double a = t_prev;
      double b = t;
      double ga = g_prev;
      for (int it = 0; it < kMaxBisections; ++it) {
        const double m = 0.5 * (a + b);
        const double gm = eval(m) - target;
        if (std::abs(gm) < kTargetTol) return solution(m, gm + target);
        if ((ga < 0.0) == (gm < 0.0)) {
          a = m;
          ga = gm;
        } else {
          b = m;
        }
      }
      throw std::runtime_error("solve_orbit_target: bisection did not reach the tolerance");
    }
    t_prev = t;
    g_prev = g;
  }
  throw std::runtime_error("solve_orbit_target: no bracket found on the path");
}

RenyiExtrema orbit_renyi_extrema(const DensityMatrix& rho, const DensityMatrix& sigma, const ParamPoint& p) {
  require_alpha_not_one(p);
  if (!sigma.full_rank()) throw PreconditionError("orbit Renyi extrema require a full-rank sigma");
  const bool max_ok = (p.alpha < 1.0 && p.z < 1.0) || p.alpha > 1.0;
  const bool min_ok = p.z < 1.0 || p.region == Region::ConvexDPI;
  if (!max_ok && !min_ok) {
    throw UnsupportedRegion("no orbit Renyi closed form: need alpha, z in (0,1), alpha > 1, or the convex/DPI region");
  }
  RenyiExtrema out;
  const RVector& rd = rho.spectrum_desc();
  if (max_ok) {
    const double s = log_map(classical_fidelity_spectra(rd, sigma.spectrum_asc(), p.alpha), p.alpha);
    // alpha/(alpha-1) < 0 below alpha = 1, so the largest S comes from the smallest F.
    const OrbitExtremum& fe = p.alpha > 1.0 ? orbit_max(rho, sigma, p) : orbit_min(rho, sigma, p);
    if (std::abs(s - log_map(fe.value, p.alpha)) > 1e-9) {
      throw std::logic_error("orbit_renyi_extrema: Renyi maximum disagrees with the fidelity extremum");
    }
    out.max = s;
  }
  if (min_ok) {
    const double s = log_map(classical_fidelity_spectra(rd, sigma.spectrum_desc(), p.alpha), p.alpha);
    const OrbitExtremum& fe = p.alpha > 1.0 ? orbit_min(rho, sigma, p) : orbit_max(rho, sigma, p);
    if (std::abs(s - log_map(fe.value, p.alpha)) > 1e-9) {
      throw std::logic_error("orbit_renyi_extrema: Renyi minimum disagrees with the fidelity extremum");
    }
    out.min = s;
  }
  return out;
}

}  // namespace azfid
