#pragma once

#include <initializer_list>
#include <string>

#include "twistor/curves/zeta.hpp"
#include "twistor/exact/binary_form.hpp"
#include "twistor/roots/root_system.hpp"

namespace th {

using twistor::exact::BinaryQuadratic;
using twistor::exact::GaussRational;
using twistor::exact::Rational;
using twistor::roots::HVector;

inline Rational q(long p, long d = 1) { return Rational(mpz_class(p), mpz_class(d)); }
inline GaussRational g(long re, long im = 0) { return GaussRational(Rational(re), Rational(im)); }
inline const GaussRational I = GaussRational(Rational(0), Rational(1));

inline HVector vec(std::initializer_list<long> xs) {
  HVector v;
  for (long x : xs) v.push_back(g(x));
  return v;
}

inline BinaryQuadratic form(GaussRational a, GaussRational b, GaussRational c) { return {a, b, c}; }

inline const twistor::roots::RootSystem& sys(char fam, int n) {
  return twistor::roots::shared_root_system(twistor::roots::parse_family(std::string(1, fam)), n);
}

/// Index of the root with the given simple-root coefficients.
inline std::size_t root(const twistor::roots::RootSystem& s, std::vector<int> c) { return s.find(c).value(); }

}  // namespace th
