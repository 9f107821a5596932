#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistor/curves/zeta.hpp"

namespace twistor::curves {

/// Seeded generator with a portable bounded-integer draw (std distributions
/// are implementation-defined, which would break cross-platform reproducibility).
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : eng_(seed) {}

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  /// Independent stream `index` derived from `seed`; identical regardless of worker layout.
  static Prng stream(std::uint64_t seed, std::uint64_t index) {
    return Prng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL)));
  }

  std::uint64_t next() { return eng_(); }

  /// Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("Prng::uniform: empty range");
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return lo + static_cast<std::int64_t>(x % range);
  }

 private:
  std::mt19937_64 eng_;
};

struct SamplingConfig {
  std::int64_t numerator_bound = 20;
  std::vector<std::int64_t> denominators{1, 2, 3, 4, 5, 6, 7, 8};
};

inline Rational random_rational(const SamplingConfig& cfg, Prng& rng) {
  if (cfg.denominators.empty()) throw std::invalid_argument("empty denominator set");
  const std::int64_t num = rng.uniform(-cfg.numerator_bound, cfg.numerator_bound);
  const std::int64_t den =
      cfg.denominators[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(cfg.denominators.size()) - 1))];
  return Rational(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
}

inline HVector random_real_vector(std::size_t n, const SamplingConfig& cfg, Prng& rng) {
  HVector v(n);
  for (auto& x : v) x = GaussRational(random_rational(cfg, rng));
  return v;
}

inline int max_rank_class(const RootSystem& sys) { return sys.rank() < 3 ? sys.rank() : 3; }

/// Admissible zeta of exactly the requested rank: zeta^k = sum_j M[k][j] v_j for
/// random directions v_1..v_r and a random 3 x r coefficient matrix, with
/// rejection of wrong-rank or inadmissible draws.
inline ZetaTriple sample_zeta(const RootSystem& sys, int rank_class, const SamplingConfig& cfg, Prng& rng) {
  if (rank_class < 1 || rank_class > max_rank_class(sys))
    throw std::invalid_argument("rank class " + std::to_string(rank_class) + " impossible for " + sys.name());
  const auto n = static_cast<std::size_t>(sys.rank());
  const auto r = static_cast<std::size_t>(rank_class);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<HVector> dirs;
    for (std::size_t j = 0; j < r; ++j) dirs.push_back(random_real_vector(n, cfg, rng));
    std::array<HVector, 3> z{HVector(n), HVector(n), HVector(n)};
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t j = 0; j < r; ++j) {
        const GaussRational m(random_rational(cfg, rng));
        if (!m.is_zero()) z[k] = z[k] + m * dirs[j];
      }
    if (first_inadmissible_root(sys, z)) continue;
    ZetaTriple zeta(sys, std::move(z));
    if (rank_of_zeta(zeta) != rank_class) continue;
    return zeta;
  }
  throw std::runtime_error("sample_zeta: rejection sampling did not terminate");
}

}  // namespace twistor::curves
