#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <vector>

#include "twistor/curves/count.hpp"

namespace twistor::harness {

using cplx = std::complex<double>;

struct FloatTolerances {
  double cluster = 1e-9;
  double band_lo = 1e-12;
  double band_hi = 1e-6;
};

struct FloatOracleResult {
  std::size_t q1 = 0;
  std::size_t q2 = 0;
  bool near_degenerate = false;
  double min_gap = INFINITY;  // smallest chordal distance between roots of different classes
};

/// Unit-normalized homogeneous point (z1, z2).
struct HPoint {
  cplx z1, z2;
};

inline HPoint normalized(cplx z1, cplx z2) {
  const double n = std::sqrt(std::norm(z1) + std::norm(z2));
  return {z1 / n, z2 / n};
}

inline double chordal(const HPoint& p, const HPoint& q) { return std::abs(p.z1 * q.z2 - p.z2 * q.z1); }

inline cplx to_cplx(const exact::GaussRational& z) { return {z.re().to_double(), z.im().to_double()}; }

/// Roots of a z1^2 + b z1 z2 + c z2^2 in double precision.
inline std::array<HPoint, 2> quadratic_roots(cplx a, cplx b, cplx c) {
  if (a == 0.0) {
    // [1:0] plus the root of b z1 + c z2
    if (b == 0.0) return {normalized(1, 0), normalized(1, 0)};
    return {normalized(1, 0), normalized(-c, b)};
  }
  const cplx sq = std::sqrt(b * b - 4.0 * a * c);
  const cplx q = -0.5 * (std::real(std::conj(b) * sq) >= 0 ? b + sq : b - sq);
  if (q == 0.0) return {normalized(0, 1), normalized(0, 1)};  // b = disc = 0, so c = 0
  return {normalized(q, a), normalized(c, q)};                 // t1 = q/a, t2 = c/q
}

/// Approximate q1 and q2 from double-precision roots of one form per line
/// class, clustered under chordal distance.
inline FloatOracleResult float_oracle(const curves::ZetaTriple& zeta, const FloatTolerances& tol = {}) {
  const auto classes = curves::line_classes(zeta);
  std::vector<HPoint> pts;
  std::vector<std::size_t> owner;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const auto& f = classes[k].form;
    for (const auto& p : quadratic_roots(to_cplx(f.a), to_cplx(f.b), to_cplx(f.c))) {
      pts.push_back(p);
      owner.push_back(k);
    }
  }
  std::vector<std::size_t> parent(pts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  FloatOracleResult out;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double d = chordal(pts[i], pts[j]);
      if (d >= tol.band_lo && d <= tol.band_hi) out.near_degenerate = true;
      if (owner[i] != owner[j]) out.min_gap = std::min(out.min_gap, d);
      if (d < tol.cluster) parent[find(i)] = find(j);
    }

  std::vector<roots::RootMask> members(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) members[find(i)] |= classes[owner[i]].members;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (find(i) != i) continue;
    ++out.q1;
    out.q2 += roots::span_rank(zeta.system(), members[i]);
  }
  return out;
}

}  // namespace twistor::harness
