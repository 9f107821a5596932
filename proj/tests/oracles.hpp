#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "twistor/decomp/decomposition.hpp"

// Slow reference implementations shared by the unit tests and the acceptance run.
namespace oracle {

using twistor::decomp::DecompKind;
using twistor::decomp::Decomposition;
using twistor::decomp::SolverMode;
using twistor::roots::RootMask;
using twistor::roots::RootSystem;
namespace roots = twistor::roots;

inline Decomposition make(const RootSystem& s, DecompKind kind, std::vector<RootMask> pieces, std::size_t t = 0) {
  Decomposition d;
  d.system = &s;
  d.kind = kind;
  d.pieces = std::move(pieces);
  d.s = d.pieces.size() - t;
  d.t = t;
  twistor::decomp::fill_metadata(d);
  return d;
}

// Proper span-closed subsystems: closures of every set of at most rank-1
// positive roots.  Any such subsystem is spanned by that many of its roots.
inline std::set<std::vector<std::size_t>> proper_closed(const RootSystem& s, std::size_t max_rank) {
  const auto pos = s.positive_roots();
  std::set<std::vector<std::size_t>> out;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!pick.empty()) {
      RootMask m;
      for (auto i : pick) m.set(i);
      const RootMask c = roots::span_closure(s, m).members;
      if (roots::span_rank(s, c) < static_cast<std::size_t>(s.rank())) out.insert(roots::mask_indices(c));
    }
    if (pick.size() == max_rank) return;
    for (std::size_t k = from; k < pos.size(); ++k) {
      pick.push_back(pos[k]);
      rec(k + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

// Minimal rank sum over all subsets of proper span-closed pieces and every
// choice of t-part, each candidate checked by validate_decomposition.
inline std::size_t brute_force(const RootSystem& s, DecompKind kind, SolverMode mode) {
  std::vector<RootMask> pieces;
  for (const auto& idx : proper_closed(s, static_cast<std::size_t>(s.rank()) - 1)) {
    RootMask m;
    for (auto i : idx) m.set(i);
    pieces.push_back(m);
  }
  std::size_t best = SIZE_MAX;
  const std::size_t np = pieces.size();
  for (std::uint64_t sub = 1; sub < (std::uint64_t{1} << np); ++sub) {
    std::vector<RootMask> chosen;
    RootMask uni;
    std::size_t cost = 0;
    for (std::size_t k = 0; k < np; ++k)
      if (sub >> k & 1) {
        chosen.push_back(pieces[k]);
        uni |= pieces[k];
        cost += roots::span_rank(s, pieces[k]);
      }
    if (uni != s.all_mask() || cost >= best) continue;
    const std::size_t k = chosen.size();
    const std::uint64_t splits = kind == DecompKind::Type2 ? (std::uint64_t{1} << k) : 1;
    for (std::uint64_t tm = 0; tm < splits; ++tm) {
      std::vector<RootMask> ordered;
      for (std::size_t a = 0; a < k; ++a)
        if (!(tm >> a & 1)) ordered.push_back(chosen[a]);
      for (std::size_t a = 0; a < k; ++a)
        if (tm >> a & 1) ordered.push_back(chosen[a]);
      const auto d = make(s, kind, ordered, static_cast<std::size_t>(std::popcount(tm)));
      if (!twistor::decomp::validate_decomposition(d, mode)) {
        best = cost;
        break;
      }
    }
  }
  return best;
}

}  // namespace oracle
