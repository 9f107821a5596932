#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "twistor/curves/count.hpp"

namespace twistor::curves {

class RankMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// zeta = (x v, y v, z v) with the line w1 (y + iz) + 2x w2 - w3 (y - iz) = 0.
struct Rank1Report {
  HVector direction;
  Rational x, y, z;
  BinaryQuadratic form;  // (y + iz) z1^2 + 2x z1 z2 - (y - iz) z2^2
  GaussRational discriminant;
  CurveCountReport report;
};

/// Closed-form count for rank(zeta) = 1.  The single quadratic always has two
/// distinct roots since its discriminant is 4(x^2 + y^2 + z^2) > 0.
inline Rank1Report count_rank1_closed_form(const ZetaTriple& zeta) {
  const int rk = rank_of_zeta(zeta);
  if (rk != 1) throw RankMismatch("count_rank1_closed_form needs rank(zeta) = 1, got " + std::to_string(rk));

  Rank1Report out;
  std::size_t k0 = 0;
  while (exact::is_zero(zeta[k0])) ++k0;
  out.direction = zeta[k0];
  std::size_t pivot = 0;
  while (out.direction[pivot].is_zero()) ++pivot;

  Rational coeff[3];
  for (std::size_t k = 0; k < 3; ++k) {
    coeff[k] = zeta[k][pivot].re() / out.direction[pivot].re();
    if (GaussRational(coeff[k]) * out.direction != zeta[k])
      throw std::logic_error("rank-1 zeta components are not proportional");
  }
  out.x = coeff[0];
  out.y = coeff[1];
  out.z = coeff[2];
  out.form = {GaussRational(out.y, out.z), GaussRational(Rational(2) * out.x), GaussRational(-out.y, out.z)};
  out.discriminant = out.form.discriminant();
  if (out.discriminant != GaussRational(Rational(4) * (out.x * out.x + out.y * out.y + out.z * out.z)))
    throw std::logic_error("rank-1 discriminant identity failed");
  if (out.discriminant.is_zero()) throw std::logic_error("rank-1 line tangent to the conic");

  const std::size_t r = static_cast<std::size_t>(zeta.system().rank());
  CurveCountReport closed;
  closed.system = zeta.system().name();
  closed.rank_zeta = 1;
  closed.q1 = 2;
  closed.q2 = 2 * r;
  closed.s_count = 2;

  out.report = count_curves(zeta);
  if (out.report.q1 != closed.q1 || out.report.q2 != closed.q2)
    throw TheoremViolation("rank-1 closed form disagrees with the incidence count");
  return out;
}

}  // namespace twistor::curves
