#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "twistor/errors.hpp"
#include "twistor/exact/gauss.hpp"
#include "twistor/exact/upoly.hpp"

namespace twistor::exact {

/// Point [z1 : z2] of P^1(Q(i)) in normal form: z1 = 1 when z1 != 0, else z2 = 1.
class ProjectivePoint1 {
 public:
  ProjectivePoint1(const GaussRational& z1, const GaussRational& z2) {
    if (z1.is_zero() && z2.is_zero()) throw std::invalid_argument("projective point [0:0]");
    if (!z1.is_zero()) {
      z1_ = GaussRational(1);
      z2_ = z2 / z1;
    } else {
      z1_ = GaussRational(0);
      z2_ = GaussRational(1);
    }
  }

  static ProjectivePoint1 infinity() { return {GaussRational(1), GaussRational(0)}; }

  const GaussRational& z1() const noexcept { return z1_; }
  const GaussRational& z2() const noexcept { return z2_; }

  friend bool operator==(const ProjectivePoint1&, const ProjectivePoint1&) = default;
  friend bool operator<(const ProjectivePoint1& a, const ProjectivePoint1& b) {
    if (a.z1_ != b.z1_) return lex_less(a.z1_, b.z1_);
    return lex_less(a.z2_, b.z2_);
  }
  friend std::ostream& operator<<(std::ostream& os, const ProjectivePoint1& p) {
    return os << "[" << p.z1_ << " : " << p.z2_ << "]";
  }

 private:
  GaussRational z1_;
  GaussRational z2_;
};

/// a*z1^2 + b*z1*z2 + c*z2^2.
struct BinaryQuadratic {
  GaussRational a, b, c;

  bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero(); }
  GaussRational discriminant() const { return b * b - GaussRational(4) * a * c; }
  GaussRational operator()(const GaussRational& z1, const GaussRational& z2) const {
    return a * z1 * z1 + b * z1 * z2 + c * z2 * z2;
  }
  GaussRational operator()(const ProjectivePoint1& p) const { return (*this)(p.z1(), p.z2()); }
  BinaryQuadratic operator-() const { return {-a, -b, -c}; }

  friend bool operator==(const BinaryQuadratic&, const BinaryQuadratic&) = default;
};

/// True iff p and q are nonzero scalar multiples of each other.
inline bool proportional(const BinaryQuadratic& p, const BinaryQuadratic& q) {
  if (p.is_zero() || q.is_zero()) return false;
  return (p.a * q.b - p.b * q.a).is_zero() && (p.a * q.c - p.c * q.a).is_zero() &&
         (p.b * q.c - p.c * q.b).is_zero();
}

/// Homogeneous binary form of fixed degree d; coeff(k) multiplies z1^(d-k) z2^k.
class BinaryForm {
 public:
  BinaryForm() : c_{GaussRational(0)} {}
  explicit BinaryForm(std::vector<GaussRational> z1_first) : c_(std::move(z1_first)) {
    if (c_.empty()) throw std::invalid_argument("binary form needs at least one coefficient");
  }
  explicit BinaryForm(const BinaryQuadratic& q) : c_{q.a, q.b, q.c} {}

  /// p2*z1 - p1*z2, vanishing exactly at p.
  static BinaryForm linear_factor(const ProjectivePoint1& p) { return BinaryForm(std::vector<GaussRational>{p.z2(), -p.z1()}); }

  std::size_t degree() const noexcept { return c_.size() - 1; }
  const std::vector<GaussRational>& coeffs() const noexcept { return c_; }
  const GaussRational& coeff(std::size_t k) const { return c_.at(k); }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }

  GaussRational operator()(const GaussRational& z1, const GaussRational& z2) const {
    // Horner in z1 with z2 powers carried separately.
    GaussRational acc;
    GaussRational z2pow(1);
    std::vector<GaussRational> z2p(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) {
      z2p[k] = z2pow;
      z2pow *= z2;
    }
    for (std::size_t k = 0; k < c_.size(); ++k) acc = acc * z1 + c_[k] * z2p[k];
    return acc;
  }
  GaussRational operator()(const ProjectivePoint1& p) const { return (*this)(p.z1(), p.z2()); }

  /// Multiplicity of the root [1:0] (number of vanishing leading coefficients).
  std::size_t infinity_multiplicity() const {
    std::size_t m = 0;
    while (m < c_.size() && c_[m].is_zero()) ++m;
    return m;
  }

  /// f(t) = F(t, 1) as a univariate polynomial (degree drops by the multiplicity at [1:0]).
  UPoly dehomogenize() const {
    const std::size_t d = degree();
    std::vector<GaussRational> low(d + 1);
    for (std::size_t p = 0; p <= d; ++p) low[p] = c_[d - p];
    return UPoly(std::move(low));
  }

  /// Scales so the first nonzero coefficient is 1.
  BinaryForm monic() const {
    const std::size_t m = infinity_multiplicity();
    if (m == c_.size()) return *this;
    const GaussRational inv = GaussRational(1) / c_[m];
    std::vector<GaussRational> out(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) out[k] = c_[k] * inv;
    return BinaryForm(std::move(out));
  }

  friend BinaryForm operator*(const BinaryForm& f, const BinaryForm& g) {
    std::vector<GaussRational> out(f.c_.size() + g.c_.size() - 1);
    for (std::size_t i = 0; i < f.c_.size(); ++i)
      for (std::size_t j = 0; j < g.c_.size(); ++j) out[i + j] += f.c_[i] * g.c_[j];
    return BinaryForm(std::move(out));
  }

  friend bool operator==(const BinaryForm&, const BinaryForm&) = default;

 private:
  std::vector<GaussRational> c_;
};

/// Degree-e univariate g(t) as the degree-e form z2^e g(z1/z2).
inline BinaryForm homogenize(const UPoly& g) {
  const int e = g.degree();
  if (e < 0) throw std::invalid_argument("homogenize the zero polynomial");
  std::vector<GaussRational> c(static_cast<std::size_t>(e) + 1);
  for (int k = 0; k <= e; ++k) c[static_cast<std::size_t>(k)] = g.coeff(static_cast<std::size_t>(e - k));
  return BinaryForm(std::move(c));
}

/// F / G when G divides F exactly, otherwise nullopt.  G must be nonzero.
inline std::optional<BinaryForm> divide_exact(const BinaryForm& f, const BinaryForm& g) {
  if (g.is_zero()) throw DegenerateFormError("division by the zero form");
  if (f.degree() < g.degree()) {
    if (f.is_zero()) return BinaryForm(std::vector<GaussRational>(1));
    return std::nullopt;
  }
  // Split off the z2-power of g explicitly: F must carry at least as many leading zeros.
  const std::size_t mg = g.infinity_multiplicity();
  for (std::size_t k = 0; k < mg; ++k)
    if (!f.coeff(k).is_zero()) return std::nullopt;
  std::vector<GaussRational> rem(f.coeffs().begin() + static_cast<std::ptrdiff_t>(mg), f.coeffs().end());
  std::vector<GaussRational> div(g.coeffs().begin() + static_cast<std::ptrdiff_t>(mg), g.coeffs().end());
  // rem/div now have degree d-mg and e-mg with div[0] != 0; plain long division in z1.
  const std::size_t qlen = rem.size() - div.size() + 1;
  std::vector<GaussRational> q(qlen);
  const GaussRational inv = GaussRational(1) / div[0];
  for (std::size_t k = 0; k < qlen; ++k) {
    const GaussRational t = rem[k] * inv;
    q[k] = t;
    if (t.is_zero()) continue;
    for (std::size_t j = 0; j < div.size(); ++j) rem[k + j] -= t * div[j];
  }
  for (std::size_t k = qlen; k < rem.size(); ++k)
    if (!rem[k].is_zero()) return std::nullopt;
  return BinaryForm(std::move(q));
}

/// Monic gcd of two nonzero binary forms over Q(i).
inline BinaryForm form_gcd(const BinaryForm& p, const BinaryForm& q) {
  if (p.is_zero() || q.is_zero()) throw DegenerateFormError("form_gcd of the zero form");
  const std::size_t m = std::min(p.infinity_multiplicity(), q.infinity_multiplicity());
  const UPoly g = gcd(p.dehomogenize(), q.dehomogenize());
  std::vector<GaussRational> c(m, GaussRational(0));
  const BinaryForm finite = homogenize(g);
  c.insert(c.end(), finite.coeffs().begin(), finite.coeffs().end());
  return BinaryForm(std::move(c));
}

inline BinaryForm form_gcd(const BinaryQuadratic& p, const BinaryQuadratic& q) {
  return form_gcd(BinaryForm(p), BinaryForm(q));
}

/// The unique root of a nonzero linear form c0*z1 + c1*z2.
inline ProjectivePoint1 root_of_linear(const BinaryForm& f) {
  if (f.degree() != 1 || f.is_zero()) throw DegenerateFormError("root_of_linear needs a nonzero linear form");
  return {-f.coeff(1), f.coeff(0)};
}

struct RootCount {
  int count = 0;
  std::optional<ProjectivePoint1> double_root;
};

/// Number of distinct projective roots of a nonzero quadratic, decided by the discriminant alone.
inline RootCount distinct_root_count(const BinaryQuadratic& q) {
  if (q.is_zero()) throw DegenerateFormError("distinct_root_count of the zero form");
  if (!q.discriminant().is_zero()) return {2, std::nullopt};
  if (!q.a.is_zero()) return {1, ProjectivePoint1(-q.b, GaussRational(2) * q.a)};
  // a = 0 and b = 0: q = c*z2^2, double root at [1:0].
  return {1, ProjectivePoint1::infinity()};
}

/// Number of distinct projective roots of the product of the forms, via the
/// squarefree part of the dehomogenized product plus the point [1:0].  The
/// squarefree part is accumulated as an lcm so no high-degree gcd with a
/// derivative is ever formed.
inline int squarefree_root_count(const std::vector<BinaryQuadratic>& forms) {
  UPoly acc(std::vector<GaussRational>{GaussRational(1)});
  bool at_infinity = false;
  for (const auto& q : forms) {
    if (q.is_zero()) throw DegenerateFormError("squarefree_root_count of the zero form");
    if (q.a.is_zero()) at_infinity = true;
    const UPoly f = BinaryForm(q).dehomogenize();
    if (f.degree() <= 0) continue;
    const UPoly sqf = divmod(f, gcd(f, f.derivative())).first;
    acc = acc * divmod(sqf, gcd(acc, sqf)).first;
  }
  return acc.degree() + (at_infinity ? 1 : 0);
}

}  // namespace twistor::exact
