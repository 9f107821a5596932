#pragma once

#include <bitset>
#include <cstddef>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "twistor/errors.hpp"
#include "twistor/exact/gauss.hpp"

namespace twistor::roots {

enum class Family { A, D, E };

inline constexpr std::size_t kMaxRoots = 256;  // E8 has 240
using RootMask = std::bitset<kMaxRoots>;
using Coeffs = std::vector<int>;
/// Element of the complexified Cartan algebra, in coordinates (alpha_1(l), ..., alpha_n(l)).
using HVector = exact::QiVector;

inline char family_letter(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::D: return 'D';
    case Family::E: return 'E';
  }
  return '?';
}

inline Family parse_family(std::string_view s) {
  if (s == "A" || s == "a") return Family::A;
  if (s == "D" || s == "d") return Family::D;
  if (s == "E" || s == "e") return Family::E;
  throw ParseError("unknown root system family \"" + std::string(s) + "\" (expected A, D or E)");
}

inline bool is_legal(Family f, int n) {
  switch (f) {
    case Family::A: return n >= 1;
    case Family::D: return n >= 3;
    case Family::E: return n >= 6 && n <= 8;
  }
  return false;
}

/// Cartan matrix in Bourbaki numbering (1-based labels map to 0-based indices).
inline std::vector<std::vector<int>> cartan_matrix(Family f, int n) {
  if (!is_legal(f, n))
    throw std::invalid_argument(std::string("illegal ADE pair ") + family_letter(f) + std::to_string(n));
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::vector<int>> c(un, std::vector<int>(un, 0));
  for (std::size_t i = 0; i < un; ++i) c[i][i] = 2;
  auto link = [&](int a, int b) {  // 1-based Bourbaki labels
    c[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] = -1;
    c[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(a - 1)] = -1;
  };
  switch (f) {
    case Family::A:
      for (int i = 1; i < n; ++i) link(i, i + 1);
      break;
    case Family::D:
      for (int i = 1; i + 1 < n - 1; ++i) link(i, i + 1);
      link(n - 2, n - 1);
      link(n - 2, n);
      break;
    case Family::E:
      link(1, 3);
      link(2, 4);
      for (int i = 3; i < n; ++i) link(i, i + 1);
      break;
  }
  return c;
}

/// A simply-laced irreducible root system with roots in simple-root coefficients,
/// sorted lexicographically so indices are stable.
class RootSystem {
 public:
  RootSystem(Family family, int rank) : family_(family), rank_(rank), cartan_(cartan_matrix(family, rank)) {
    close_under_reflections();
  }

  Family family() const noexcept { return family_; }
  int rank() const noexcept { return rank_; }
  std::string name() const { return std::string(1, family_letter(family_)) + std::to_string(rank_); }
  const std::vector<std::vector<int>>& cartan() const noexcept { return cartan_; }

  std::size_t size() const noexcept { return roots_.size(); }
  const Coeffs& root(std::size_t i) const { return roots_.at(i); }
  const std::vector<Coeffs>& roots() const noexcept { return roots_; }
  const std::vector<std::size_t>& positive_roots() const noexcept { return positive_; }
  bool is_positive(std::size_t i) const { return is_positive_.at(i); }
  std::size_t negation(std::size_t i) const { return negation_.at(i); }
  /// Index of the simple root alpha_{k+1}.
  std::size_t simple_root(std::size_t k) const { return simple_.at(k); }

  std::optional<std::size_t> find(const Coeffs& c) const {
    const auto it = index_.find(c);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// <theta, alpha_i> = sum_j theta_j cartan[j][i].
  int pairing(const Coeffs& theta, std::size_t i) const {
    int s = 0;
    for (std::size_t j = 0; j < theta.size(); ++j) s += theta[j] * cartan_[j][i];
    return s;
  }

  Coeffs reflect(const Coeffs& theta, std::size_t i) const {
    Coeffs out = theta;
    out[i] -= pairing(theta, i);
    return out;
  }

  RootMask all_mask() const {
    RootMask m;
    for (std::size_t i = 0; i < roots_.size(); ++i) m.set(i);
    return m;
  }

  /// theta(lambda) = sum_j c_j lambda_j.
  exact::GaussRational eval(std::size_t theta, const HVector& lambda) const {
    const Coeffs& c = root(theta);
    if (lambda.size() != c.size()) throw std::invalid_argument("HVector length does not match rank");
    exact::GaussRational s;
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c[j] != 0) s += exact::GaussRational(c[j]) * lambda[j];
    return s;
  }

 private:
  void close_under_reflections() {
    const auto n = static_cast<std::size_t>(rank_);
    std::map<Coeffs, bool> seen;
    std::deque<Coeffs> queue;
    for (std::size_t i = 0; i < n; ++i) {
      Coeffs e(n, 0);
      e[i] = 1;
      seen.emplace(e, true);
      queue.push_back(std::move(e));
    }
    while (!queue.empty()) {
      Coeffs theta = std::move(queue.front());
      queue.pop_front();
      for (std::size_t i = 0; i < n; ++i) {
        Coeffs r = reflect(theta, i);
        if (seen.emplace(r, true).second) queue.push_back(std::move(r));
      }
    }
    for (const auto& [c, unused] : seen) roots_.push_back(c);  // std::map iterates lexicographically
    if (roots_.size() > kMaxRoots) throw std::logic_error("root system exceeds kMaxRoots");

    for (std::size_t i = 0; i < roots_.size(); ++i) index_.emplace(roots_[i], i);
    is_positive_.assign(roots_.size(), false);
    negation_.assign(roots_.size(), 0);
    for (std::size_t i = 0; i < roots_.size(); ++i) {
      bool nonneg = true;
      bool nonpos = true;
      for (int x : roots_[i]) {
        nonneg = nonneg && x >= 0;
        nonpos = nonpos && x <= 0;
      }
      if (!nonneg && !nonpos) throw std::logic_error("root without coherent signs");
      is_positive_[i] = nonneg;
      if (nonneg) positive_.push_back(i);
      Coeffs neg = roots_[i];
      for (int& x : neg) x = -x;
      negation_[i] = index_.at(neg);
    }
    for (std::size_t k = 0; k < n; ++k) {
      Coeffs e(n, 0);
      e[k] = 1;
      simple_.push_back(index_.at(e));
    }
  }

  Family family_;
  int rank_;
  std::vector<std::vector<int>> cartan_;
  std::vector<Coeffs> roots_;
  std::vector<std::size_t> positive_;
  std::vector<bool> is_positive_;
  std::vector<std::size_t> negation_;
  std::vector<std::size_t> simple_;
  std::map<Coeffs, std::size_t> index_;
};

inline RootSystem build_root_system(Family family, int n) { return RootSystem(family, n); }

/// Process-wide immutable instances, built on first use.
inline const RootSystem& shared_root_system(Family family, int n) {
  static std::mutex mu;
  static std::map<std::pair<Family, int>, std::unique_ptr<RootSystem>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{family, n}];
  if (!slot) slot = std::make_unique<RootSystem>(family, n);
  return *slot;
}

/// Expected |Phi| for the family.
inline std::size_t expected_root_count(Family f, int n) {
  const auto un = static_cast<std::size_t>(n);
  switch (f) {
    case Family::A: return un * (un + 1);
    case Family::D: return 2 * un * (un - 1);
    case Family::E: return n == 6 ? 72 : (n == 7 ? 126 : 240);
  }
  return 0;
}

}  // namespace twistor::roots
