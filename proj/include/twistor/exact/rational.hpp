#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "twistor/errors.hpp"

namespace twistor::exact {

/// Arbitrary-precision rational in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw ParseError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  /// Accepts "p/q" or "p" with optional leading sign on p; q must be nonzero.
  static Rational parse(std::string_view text) {
    auto is_int = [](std::string_view s) {
      if (s.empty()) return false;
      std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
      if (i == s.size()) return false;
      for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
      return true;
    };
    auto to_mpz = [](std::string_view s) {
      if (!s.empty() && s[0] == '+') s.remove_prefix(1);
      return mpz_class(std::string(s), 10);
    };
    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    if (!is_int(num)) throw ParseError("malformed rational: \"" + std::string(text) + "\"");
    if (slash == std::string_view::npos) return Rational(to_mpz(num), mpz_class(1));
    const auto den = text.substr(slash + 1);
    if (!is_int(den) || den[0] == '-' || den[0] == '+')
      throw ParseError("malformed rational: \"" + std::string(text) + "\"");
    const mpz_class d = to_mpz(den);
    if (d == 0) throw ParseError("malformed rational (zero denominator): \"" + std::string(text) + "\"");
    return Rational(to_mpz(num), d);
  }

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  const mpq_class& raw() const noexcept { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }

  /// Canonical "p/q" text; zero is "0/1".
  std::string str() const { return v_.get_num().get_str() + "/" + v_.get_den().get_str(); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class v_{0};
};

}  // namespace twistor::exact
