#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "twistor/decomp/decomposition.hpp"
#include "twistor/decomp/subsystems.hpp"
#include "twistor/roots/embedding.hpp"

namespace twistor::decomp {

struct SolverResult {
  std::size_t value = 0;
  Decomposition witness;
  std::uint64_t explored = 0;
  SolverMode mode = SolverMode::Literal;
  bool proven_optimal = false;
  /// value >= 2 rank - 1; reported rather than asserted in literal mode.
  bool meets_lower_bound = true;
};

namespace detail {

/// Rank of root vectors modulo p = 2^31 - 1.  Solvers only run up to rank 6,
/// where root coordinates are at most 3, so by Hadamard every minor is below
/// (3 sqrt 6)^6 < p in absolute value: rank mod p equals rank over Q.
class ModRank {
 public:
  static constexpr std::int64_t kP = 2147483647;

  ModRank(const RootSystem& sys, const std::vector<std::size_t>& pos) : n_(static_cast<std::size_t>(sys.rank())) {
    for (std::size_t i : pos) {
      std::vector<std::int64_t> v;
      for (int c : sys.root(i)) v.push_back((c % kP + kP) % kP);
      vecs_.push_back(std::move(v));
    }
  }

  std::size_t operator()(std::uint64_t mask) {
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    std::vector<std::vector<std::int64_t>> basis;  // rows with pivots, reduced
    std::vector<std::size_t> piv;
    for (std::uint64_t m = mask; m; m &= m - 1) {
      std::vector<std::int64_t> v = vecs_[static_cast<std::size_t>(std::countr_zero(m))];
      for (std::size_t k = 0; k < basis.size(); ++k) {
        const std::int64_t f = v[piv[k]];
        if (f == 0) continue;
        for (std::size_t j = 0; j < n_; ++j) v[j] = ((v[j] - f * basis[k][j]) % kP + kP) % kP;
      }
      std::size_t c = 0;
      while (c < n_ && v[c] == 0) ++c;
      if (c == n_) continue;
      const std::int64_t inv = pow_mod(v[c], kP - 2);
      for (auto& x : v) x = x * inv % kP;
      basis.push_back(std::move(v));
      piv.push_back(c);
      if (basis.size() == n_) break;
    }
    memo_.emplace(mask, basis.size());
    return basis.size();
  }

 private:
  static std::int64_t pow_mod(std::int64_t b, std::int64_t e) {
    std::int64_t r = 1;
    b %= kP;
    while (e) {
      if (e & 1) r = r * b % kP;
      b = b * b % kP;
      e >>= 1;
    }
    return r;
  }

  std::size_t n_;
  std::vector<std::vector<std::int64_t>> vecs_;
  std::unordered_map<std::uint64_t, std::size_t> memo_;
};

struct Piece {
  std::uint64_t mask;  // over positive-root positions
  std::size_t rank;
  RootMask full;
};

class Search {
 public:
  Search(const RootSystem& sys, DecompKind kind, SolverMode mode, const Budget& budget)
      : sys_(sys), kind_(kind), mode_(mode), budget_(budget), pos_(sys.positive_roots()), rank_(sys, pos_) {
    for (const auto& rs : enumerate_span_closed(sys, static_cast<std::size_t>(sys.rank()) - 1, budget)) {
      std::uint64_t m = 0;
      for (std::size_t k = 0; k < pos_.size(); ++k)
        if (rs.sub.members.test(pos_[k])) m |= std::uint64_t{1} << k;
      pieces_.push_back({m, rs.rank, rs.sub.members});
    }
    full_ = pos_.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << pos_.size()) - 1;
    // incumbent: one +-pair per positive root, always valid
    best_ = pos_.size();
    for (std::size_t k = 0; k < pieces_.size(); ++k)
      if (pieces_[k].rank == 1) best_choice_.push_back(k);
  }

  void run() {
    std::vector<std::size_t> chosen;
    recurse(0, 0, 0, chosen);
  }

  std::size_t best() const { return best_; }
  const std::vector<std::size_t>& best_choice() const { return best_choice_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  std::uint64_t explored() const { return explored_; }
  bool exhausted() const { return !aborted_; }

 private:
  // covered: roots covered at least once; twice: at least twice (geometric only)
  void recurse(std::uint64_t covered, std::uint64_t twice, std::size_t cost, std::vector<std::size_t>& chosen) {
    if (aborted_) return;
    if (++explored_ > budget_.node_limit) {
      aborted_ = true;
      return;
    }
    const std::uint64_t uncovered = full_ & ~covered;
    if (uncovered == 0) {
      if (cost < best_) {
        best_ = cost;
        best_choice_ = chosen;
      }
      return;
    }
    if (cost + rank_(uncovered) >= best_) return;
    const std::uint64_t low = uncovered & (~uncovered + 1);
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
      const Piece& p = pieces_[k];
      if (!(p.mask & low)) continue;
      if (kind_ == DecompKind::Type1 && (p.mask & covered)) continue;
      if (kind_ == DecompKind::Type2 && mode_ == SolverMode::Geometric && (p.mask & twice)) continue;
      if (cost + p.rank >= best_) continue;
      chosen.push_back(k);
      recurse(covered | p.mask, twice | (covered & p.mask), cost + p.rank, chosen);
      chosen.pop_back();
    }
  }

  const RootSystem& sys_;
  DecompKind kind_;
  SolverMode mode_;
  Budget budget_;
  std::vector<std::size_t> pos_;
  ModRank rank_;
  std::vector<Piece> pieces_;
  std::uint64_t full_ = 0;
  std::size_t best_ = 0;
  std::vector<std::size_t> best_choice_;
  std::uint64_t explored_ = 0;
  bool aborted_ = false;
};

/// Builds the decomposition; for type2, pieces disjoint from all others form the t-part.
inline Decomposition make_witness(const RootSystem& sys, DecompKind kind, const std::vector<Piece>& pieces,
                                  const std::vector<std::size_t>& choice) {
  Decomposition d;
  d.system = &sys;
  d.kind = kind;
  std::vector<RootMask> s_part, t_part;
  for (std::size_t a = 0; a < choice.size(); ++a) {
    bool isolated = true;
    for (std::size_t b = 0; b < choice.size(); ++b)
      if (a != b && (pieces[choice[a]].full & pieces[choice[b]].full).any()) isolated = false;
    (kind == DecompKind::Type2 && isolated ? t_part : s_part).push_back(pieces[choice[a]].full);
  }
  d.s = s_part.size();
  d.t = t_part.size();
  d.pieces = std::move(s_part);
  d.pieces.insert(d.pieces.end(), t_part.begin(), t_part.end());
  canonicalize(d);
  return d;
}

inline SolverResult solve(const RootSystem& sys, DecompKind kind, SolverMode mode, const Budget& budget) {
  check_solver_budget(sys, budget);
  Search search(sys, kind, mode, budget);
  search.run();
  SolverResult res;
  res.value = search.best();
  res.mode = mode;
  res.explored = search.explored();
  res.proven_optimal = search.exhausted();
  res.witness = make_witness(sys, kind, search.pieces(), search.best_choice());
  if (auto v = validate_decomposition(res.witness, mode))
    throw std::logic_error("solver witness fails validation: " + *v);
  if (res.witness.rank_sum() != res.value) throw std::logic_error("solver witness rank sum differs from its value");
  res.meets_lower_bound = res.value + 1 >= 2 * static_cast<std::size_t>(sys.rank());
  return res;
}

}  // namespace detail

/// Minimal rank sum over type-1 decompositions (exact covers by proper
/// span-closed pieces).  Throws TheoremViolation if a proven optimum leaves
/// [2r - 1, |Phi|/2].
inline SolverResult f1_solve(const RootSystem& sys, const Budget& budget = {}) {
  SolverResult res = detail::solve(sys, DecompKind::Type1, SolverMode::Literal, budget);
  if (!res.meets_lower_bound || res.value > sys.size() / 2)
    throw TheoremViolation("f1(" + sys.name() + ") = " + std::to_string(res.value) + " outside [2r-1, |Phi|/2]");
  return res;
}

/// Minimal rank sum over type-2 decompositions.  In geometric mode a value
/// below 2r - 1 throws; in literal mode it is only flagged.
inline SolverResult f2_solve(const RootSystem& sys, SolverMode mode, const Budget& budget = {}) {
  SolverResult res = detail::solve(sys, DecompKind::Type2, mode, budget);
  if (mode == SolverMode::Geometric && !res.meets_lower_bound)
    throw TheoremViolation("f2(" + sys.name() + ") = " + std::to_string(res.value) + " below 2r-1");
  return res;
}

/// Rank of the span of the roots of Phi(n+1) outside the standard A_n.
inline std::size_t extra_root_span_check(const RootSystem& sys) {
  return roots::an_embedding_and_extra_roots(sys).extra_span_rank;
}

}  // namespace twistor::decomp
