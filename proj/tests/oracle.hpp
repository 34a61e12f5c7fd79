// Copyright 2026 The wfsim Authors
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

#pragma once

// Brute-force reference arithmetic for tests. Written against plain arrays
// and the closed-form states, with no calls into the library, so that it can
// check the library's operator pipeline independently.

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Vec = std::array<C, 8>;
using Mat = std::array<std::array<C, 8>, 8>;

inline const double s2 = std::sqrt(2.0);
inline const double s3 = std::sqrt(3.0);

// pol: 'H','V'; path: 'l','r'; shape: 1, 2.
inline int idx(char pol, char path, int shape) { return 4 * (pol == 'V') + 2 * (path == 'r') + (shape - 1); }

inline Vec basis(char pol, char path, int shape) {
  Vec v{};
  v[idx(pol, path, shape)] = 1.0;
  return v;
}

inline Vec add(const Vec& a, const Vec& b, C cb = 1.0) {
  Vec out{};
  for (int i = 0; i < 8; ++i) out[i] = a[i] + cb * b[i];
  return out;
}

inline Vec scale(C c, const Vec& a) {
  Vec out{};
  for (int i = 0; i < 8; ++i) out[i] = c * a[i];
  return out;
}

// |D,path,shape> and |A,path,shape> spelled out.
inline Vec diag(char path, int shape) { return scale(1.0 / s2, add(basis('H', path, shape), basis('V', path, shape))); }
inline Vec anti(char path, int shape) {
  return scale(1.0 / s2, add(basis('H', path, shape), basis('V', path, shape), -1.0));
}

inline C dot(const Vec& a, const Vec& b) {
  C s = 0.0;
  for (int i = 0; i < 8; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline Mat outer(const Vec& a, const Vec& b) {
  Mat m{};
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) m[i][j] = a[i] * std::conj(b[j]);
  return m;
}

inline Mat matmul(const Mat& a, const Mat& b) {
  Mat m{};
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      for (int k = 0; k < 8; ++k) m[i][j] += a[i][k] * b[k][j];
  return m;
}

inline Mat sub(const Mat& a, const Mat& b) {
  Mat m{};
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) m[i][j] = a[i][j] - b[i][j];
  return m;
}

inline double frobenius(const Mat& a) {
  double s = 0.0;
  for (const auto& row : a)
    for (const auto& x : row) s += std::norm(x);
  return std::sqrt(s);
}

// (1/sqrt3)(|D,r,2> + sqrt2 |D,l,2>)
inline Vec psi0() { return scale(1.0 / s3, add(diag('r', 2), diag('l', 2), s2)); }
// (1/sqrt3)(|V,r,1> + sqrt2 |D,l,2>)
inline Vec psi2() { return scale(1.0 / s3, add(basis('V', 'r', 1), diag('l', 2), s2)); }

// (|r,1> +- |l,2>)/sqrt2 with polarization given as a two-entry (H,V) ket.
inline Vec okfail(std::array<C, 2> pol, double sign) {
  Vec v{};
  v[idx('H', 'r', 1)] += pol[0] / s2;
  v[idx('V', 'r', 1)] += pol[1] / s2;
  v[idx('H', 'l', 2)] += sign * pol[0] / s2;
  v[idx('V', 'l', 2)] += sign * pol[1] / s2;
  return v;
}

inline const std::array<C, 2> kD = {1.0 / s2, 1.0 / s2};
inline const std::array<C, 2> kA = {1.0 / s2, -1.0 / s2};
inline const std::array<C, 2> kV = {0.0, 1.0};

// Probability of pol (x) path ket with shape traced: sum over shape of
// |<pol, path, shape|psi>|^2, path ket given as (l, r) amplitudes.
inline double traced_probability(const Vec& psi, std::array<C, 2> pol, std::array<C, 2> path) {
  double p = 0.0;
  for (int shape = 1; shape <= 2; ++shape) {
    C amp = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        amp += std::conj(pol[a] * path[b]) * psi[idx(a ? 'V' : 'H', b ? 'r' : 'l', shape)];
    p += std::norm(amp);
  }
  return p;
}

inline const std::array<C, 2> kFailPrime = {1.0 / s2, 1.0 / s2};   // (|r> + |l>)/sqrt2 in (l, r)
inline const std::array<C, 2> kOkPrime = {-1.0 / s2, 1.0 / s2};    // (|r> - |l>)/sqrt2 in (l, r)

}  // namespace oracle
