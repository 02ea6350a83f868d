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

// Independent reference computations for the tests. Nothing here calls the
// library's eigen-based matrix functions: powers go through Eigen's Schur-Pade
// MatrixPower, spectra through plain scalar arithmetic in long double.

#ifndef AZFID_TESTS_ORACLES_HPP
#define AZFID_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracles {

using CMatrix = Eigen::MatrixXcd;

inline CMatrix mpow(const CMatrix& a, double p) {
  Eigen::MatrixPower<CMatrix> mp(a);
  return mp(p);
}

/// Tr[(sigma^a rho^b sigma^a)^z] with a = (1-alpha)/(2z), b = alpha/z, for
/// full-rank inputs.
inline double trace_quantity(const CMatrix& rho, const CMatrix& sigma, double alpha, double z) {
  const CMatrix sa = mpow(sigma, (1.0 - alpha) / (2.0 * z));
  const CMatrix inner = sa * mpow(rho, alpha / z) * sa;
  const CMatrix herm = 0.5 * (inner + inner.adjoint());
  return mpow(herm, z).trace().real();
}

inline double fidelity(const CMatrix& rho, const CMatrix& sigma, double alpha, double z) {
  return std::pow(trace_quantity(rho, sigma, alpha, z), 1.0 / alpha);
}

/// (sum p_i^alpha q_i^(1-alpha))^(1/alpha) in long double, zero terms skipped.
inline double classical(const std::vector<double>& p, const std::vector<double>& q, double alpha) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0 && q[i] > 0.0) {
      s += std::pow(static_cast<long double>(p[i]), static_cast<long double>(alpha)) *
           std::pow(static_cast<long double>(q[i]), static_cast<long double>(1.0 - alpha));
    }
  }
  return static_cast<double>(std::pow(s, 1.0L / static_cast<long double>(alpha)));
}

struct Range {
  double lo;
  double hi;
};

/// Smallest and largest classical fidelity over every reordering of q.
inline Range permutation_range(const std::vector<double>& p, std::vector<double> q, double alpha) {
  std::sort(q.begin(), q.end());
  Range r{INFINITY, -INFINITY};
  do {
    const double f = classical(p, q, alpha);
    r.lo = std::min(r.lo, f);
    r.hi = std::max(r.hi, f);
  } while (std::next_permutation(q.begin(), q.end()));
  return r;
}

inline std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

inline std::vector<double> sorted_asc(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline long double binomial(int n, int k) {
  long double r = 1.0L;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace oracles

#endif  // AZFID_TESTS_ORACLES_HPP
