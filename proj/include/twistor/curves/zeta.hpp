#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twistor/errors.hpp"
#include "twistor/exact/binary_form.hpp"
#include "twistor/exact/linalg.hpp"
#include "twistor/roots/root_system.hpp"

namespace twistor::curves {

using exact::BinaryQuadratic;
using exact::GaussRational;
using exact::Rational;
using roots::HVector;
using roots::RootSystem;

/// First root theta with theta(zeta^1) = theta(zeta^2) = theta(zeta^3) = 0, if any.
inline std::optional<std::size_t> first_inadmissible_root(const RootSystem& sys, const std::array<HVector, 3>& z) {
  for (std::size_t i : sys.positive_roots()) {
    bool all_zero = true;
    for (const auto& comp : z) all_zero = all_zero && sys.eval(i, comp).is_zero();
    if (all_zero) return i;
  }
  return std::nullopt;
}

/// Admissible deformation parameter (zeta^1, zeta^2, zeta^3) with real rational coordinates.
class ZetaTriple {
 public:
  ZetaTriple(const RootSystem& sys, std::array<HVector, 3> components) : sys_(&sys), z_(std::move(components)) {
    for (const auto& comp : z_) {
      if (comp.size() != static_cast<std::size_t>(sys.rank()))
        throw std::invalid_argument("zeta component length " + std::to_string(comp.size()) + " does not match rank " +
                                    std::to_string(sys.rank()));
      for (const auto& x : comp)
        if (!x.is_real()) throw std::invalid_argument("zeta components must be real");
    }
    if (auto bad = first_inadmissible_root(sys, z_)) {
      std::string coeffs;
      for (int c : sys.root(*bad)) coeffs += (coeffs.empty() ? "" : ",") + std::to_string(c);
      throw InadmissibleError("inadmissible zeta: root #" + std::to_string(*bad) + " (" + coeffs +
                                  ") vanishes on all three components",
                              *bad);
    }
  }

  const RootSystem& system() const noexcept { return *sys_; }
  /// zeta^(k+1), k = 0, 1, 2.
  const HVector& operator[](std::size_t k) const { return z_.at(k); }
  const std::array<HVector, 3>& components() const noexcept { return z_; }

  /// (theta(zeta^1), theta(zeta^2), theta(zeta^3)).
  std::array<Rational, 3> root_values(std::size_t theta) const {
    return {sys_->eval(theta, z_[0]).re(), sys_->eval(theta, z_[1]).re(), sys_->eval(theta, z_[2]).re()};
  }

  friend bool operator==(const ZetaTriple& a, const ZetaTriple& b) { return a.sys_ == b.sys_ && a.z_ == b.z_; }

 private:
  const RootSystem* sys_;
  std::array<HVector, 3> z_;
};

/// dim span_R{zeta^1, zeta^2, zeta^3}.
inline int rank_of_zeta(const ZetaTriple& zeta) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& comp : zeta.components()) {
    std::vector<Rational> row;
    for (const auto& x : comp) row.push_back(x.re());
    rows.push_back(std::move(row));
  }
  return static_cast<int>(exact::rank_of_matrix(std::move(rows)));
}

/// z1^2 (zeta^2 + i zeta^3) + 2 z1 z2 zeta^1 - z2^2 (zeta^2 - i zeta^3).
inline HVector period_eval(const ZetaTriple& zeta, const GaussRational& z1, const GaussRational& z2) {
  if (z1.is_zero() && z2.is_zero()) throw std::invalid_argument("period_eval: zero lift (0,0)");
  const GaussRational i = GaussRational::i();
  const std::size_t n = zeta[0].size();
  HVector out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const GaussRational plus = zeta[1][j] + i * zeta[2][j];
    const GaussRational minus = zeta[1][j] - i * zeta[2][j];
    out[j] = z1 * z1 * plus + GaussRational(2) * z1 * z2 * zeta[0][j] - z2 * z2 * minus;
  }
  return out;
}

/// The form theta o p~_zeta: a = theta(zeta^2) + i theta(zeta^3), b = 2 theta(zeta^1),
/// c = -theta(zeta^2) + i theta(zeta^3).
inline BinaryQuadratic period_quadratic(const ZetaTriple& zeta, std::size_t theta) {
  const auto [x1, x2, x3] = zeta.root_values(theta);
  return {GaussRational(x2, x3), GaussRational(Rational(2) * x1), GaussRational(-x2, x3)};
}

struct RotatedPair {
  HVector zeta2;
  HVector zeta3;
};

/// Rotated components for the twistor parameter u = u1 + i u2:
///   zeta~2 = 2u1 zeta1 + (1 - u1^2 + u2^2) zeta2 - 2u1u2 zeta3,
///   zeta~3 = 2u2 zeta1 - 2u1u2 zeta2 + (1 + u1^2 - u2^2) zeta3.
/// Checks zeta~2 + i zeta~3 = zeta2 + i zeta3 + 2u zeta1 - u^2 (zeta2 - i zeta3) exactly.
inline RotatedPair rotation_tilde(const ZetaTriple& zeta, const GaussRational& u) {
  const Rational& u1 = u.re();
  const Rational& u2 = u.im();
  const std::size_t n = zeta[0].size();
  RotatedPair out{HVector(n), HVector(n)};
  const Rational two(2);
  for (std::size_t j = 0; j < n; ++j) {
    const Rational& a = zeta[0][j].re();
    const Rational& b = zeta[1][j].re();
    const Rational& c = zeta[2][j].re();
    out.zeta2[j] = two * u1 * a + (Rational(1) - u1 * u1 + u2 * u2) * b - two * u1 * u2 * c;
    out.zeta3[j] = two * u2 * a - two * u1 * u2 * b + (Rational(1) + u1 * u1 - u2 * u2) * c;
  }
  const GaussRational i = GaussRational::i();
  for (std::size_t j = 0; j < n; ++j) {
    const GaussRational lhs = out.zeta2[j] + i * out.zeta3[j];
    const GaussRational rhs = zeta[1][j] + i * zeta[2][j] + GaussRational(2) * u * zeta[0][j] -
                              u * u * (zeta[1][j] - i * zeta[2][j]);
    if (lhs != rhs) throw std::logic_error("rotation identity failed");
  }
  return out;
}

/// The u = infinity case: (X_zeta, -I_zeta) corresponds to (zeta^1, -zeta^2, zeta^3).
inline RotatedPair rotation_at_infinity(const ZetaTriple& zeta) {
  RotatedPair out{zeta[1], zeta[2]};
  for (auto& x : out.zeta2) x = -x;
  return out;
}

}  // namespace twistor::curves
