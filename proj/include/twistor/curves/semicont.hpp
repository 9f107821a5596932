#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "twistor/curves/count.hpp"
#include "twistor/curves/sampling.hpp"

namespace twistor::curves {

struct SemicontSample {
  std::array<HVector, 3> zeta;
  std::size_t q1 = 0;
};

struct SemicontReport {
  std::size_t base_q1 = 0;
  std::size_t trials = 0;
  std::size_t min_q1 = 0;  // equals base_q1 when trials = 0
  std::size_t violations = 0;
  std::vector<SemicontSample> violating;
};

/// Random rational perturbations within |zeta - zeta0|_inf <= radius; counts
/// samples whose q1 drops below q1(zeta0).  Inadmissible draws are resampled.
inline SemicontReport semicontinuity_probe(const ZetaTriple& zeta0, const Rational& radius, std::size_t trials,
                                           std::uint64_t seed, const SamplingConfig& cfg = {}) {
  if (radius.sign() <= 0) throw std::invalid_argument("semicontinuity radius must be positive");
  if (cfg.denominators.empty()) throw std::invalid_argument("empty denominator set");
  const RootSystem& sys = zeta0.system();
  SemicontReport rep;
  rep.base_q1 = count_curves(zeta0).q1;
  rep.trials = trials;
  rep.min_q1 = rep.base_q1;

  for (std::size_t t = 0; t < trials; ++t) {
    Prng rng = Prng::stream(seed, t);
    for (;;) {
      std::array<HVector, 3> z = zeta0.components();
      for (auto& comp : z)
        for (auto& x : comp) {
          const auto d = cfg.denominators[static_cast<std::size_t>(
              rng.uniform(0, static_cast<std::int64_t>(cfg.denominators.size()) - 1))];
          const auto m = rng.uniform(-d, d);
          x = x + GaussRational(radius * Rational(mpz_class(static_cast<long>(m)), mpz_class(static_cast<long>(d))));
        }
      if (first_inadmissible_root(sys, z)) continue;
      ZetaTriple zeta(sys, z);
      const std::size_t q1 = count_curves(zeta).q1;
      if (q1 < rep.min_q1) rep.min_q1 = q1;
      if (q1 < rep.base_q1) {
        ++rep.violations;
        rep.violating.push_back({std::move(z), q1});
      }
      break;
    }
  }
  return rep;
}

}  // namespace twistor::curves
