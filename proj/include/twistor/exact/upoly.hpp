#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "twistor/exact/gauss.hpp"

namespace twistor::exact {

/// Dense univariate polynomial over Q(i), coefficients stored low degree first.
/// The zero polynomial has no coefficients and degree -1.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<GaussRational> low_first) : c_(std::move(low_first)) { trim(); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<GaussRational>& coeffs() const noexcept { return c_; }
  const GaussRational& lead() const { return c_.back(); }
  GaussRational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : GaussRational(); }

  GaussRational operator()(const GaussRational& x) const {
    GaussRational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<GaussRational> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = GaussRational(static_cast<long>(k)) * c_[k];
    return UPoly(std::move(d));
  }

  UPoly monic() const {
    if (is_zero()) return {};
    const GaussRational inv = GaussRational(1) / lead();
    std::vector<GaussRational> m(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) m[k] = c_[k] * inv;
    return UPoly(std::move(m));
  }

  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<GaussRational> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(out));
  }

  /// Euclidean division: returns (quotient, remainder).
  friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("UPoly division by zero polynomial");
    std::vector<GaussRational> r = a.c_;
    if (a.degree() < b.degree()) return {UPoly(), a};
    std::vector<GaussRational> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
    const GaussRational inv = GaussRational(1) / b.lead();
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
      const auto top = static_cast<std::size_t>(k + b.degree());
      const GaussRational f = r[top] * inv;
      q[static_cast<std::size_t>(k)] = f;
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[static_cast<std::size_t>(k) + j] -= f * b.c_[j];
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }

  /// Monic gcd; gcd(0, 0) is the zero polynomial.
  friend UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      UPoly r = divmod(a, b).second;
      a = std::move(b);
      b = r.is_zero() ? std::move(r) : r.monic();  // keeps coefficient growth in check
    }
    return a.monic();
  }

  friend bool operator==(const UPoly&, const UPoly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<GaussRational> c_;
};

/// Degree of the squarefree part, i.e. the number of distinct roots in C.
inline int distinct_root_degree(const UPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("distinct roots of the zero polynomial");
  if (p.degree() == 0) return 0;
  const UPoly g = gcd(p, p.derivative());
  return p.degree() - g.degree();
}

}  // namespace twistor::exact
