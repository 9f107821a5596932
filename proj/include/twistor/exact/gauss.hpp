#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistor/exact/rational.hpp"

namespace twistor::exact {

/// Element re + i*im of the Gaussian rationals Q(i).
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const noexcept { return re_; }
  const Rational& im() const noexcept { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  GaussRational conj() const { return {re_, -im_}; }
  /// re^2 + im^2, zero iff the element is zero.
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussRational operator-() const { return {-re_, -im_}; }
  GaussRational& operator+=(const GaussRational& o) { re_ += o.re_; im_ += o.im_; return *this; }
  GaussRational& operator-=(const GaussRational& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
  GaussRational& operator*=(const GaussRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  GaussRational& operator/=(const GaussRational& o) {
    if (o.is_zero()) throw std::domain_error("Gaussian rational division by zero");
    const Rational n = o.norm();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }

  friend bool operator==(const GaussRational& a, const GaussRational& b) = default;

  /// Lexicographic on (re, im); only used to get canonical orderings.
  friend bool lex_less(const GaussRational& a, const GaussRational& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

  std::string str() const { return "(" + re_.str() + ")+i(" + im_.str() + ")"; }
  friend std::ostream& operator<<(std::ostream& os, const GaussRational& z) { return os << z.str(); }

 private:
  Rational re_;
  Rational im_;
};

using QiVector = std::vector<GaussRational>;

inline QiVector operator+(const QiVector& a, const QiVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  QiVector out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] + b[j];
  return out;
}

inline QiVector operator-(const QiVector& a, const QiVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  QiVector out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] - b[j];
  return out;
}

inline QiVector operator*(const GaussRational& s, const QiVector& v) {
  QiVector out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = s * v[j];
  return out;
}

inline bool is_zero(const QiVector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace twistor::exact
