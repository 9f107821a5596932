#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <set>
#include <string>
#include <vector>

#include "twistor/errors.hpp"
#include "twistor/roots/subsystem.hpp"

namespace twistor::decomp {

using roots::RootMask;
using roots::RootSystem;

struct RankedSubsystem {
  roots::RootSubsystem sub;
  std::size_t rank = 0;
};

/// Search limits.  Exhaustive solves are allowed up to `max_exhaustive_rank`;
/// ranks up to `max_large_rank` need `allow_large` and stop at `node_limit`.
struct Budget {
  int max_exhaustive_rank = 4;
  int max_large_rank = 6;
  bool allow_large = false;
  std::uint64_t node_limit = 20'000'000;
  std::size_t max_subsystems = 100'000;
};

/// Throws for rank < 2 (invalid_argument) and for systems outside the budget (BudgetExceeded).
inline void check_solver_budget(const RootSystem& sys, const Budget& b) {
  if (sys.rank() < 2)
    throw std::invalid_argument(sys.name() + " has no decomposition into proper pieces (rank < 2)");
  if (sys.positive_roots().size() > 64 || sys.rank() > b.max_large_rank)
    throw BudgetExceeded(sys.name() + " is outside the solver budget");
  if (sys.rank() > b.max_exhaustive_rank && !b.allow_large)
    throw BudgetExceeded(sys.name() + " needs --allow-large (rank > " + std::to_string(b.max_exhaustive_rank) + ")");
}

namespace detail {
struct MaskLess {
  bool operator()(const RootMask& a, const RootMask& b) const { return roots::mask_lex_less(a, b); }
};
}  // namespace detail

/// All proper span-closed subsystems of rank <= max_rank, sorted by
/// (rank ascending, size descending, members lexicographic).
inline std::vector<RankedSubsystem> enumerate_span_closed(const RootSystem& sys, std::size_t max_rank,
                                                          const Budget& budget = {}) {
  const auto r = static_cast<std::size_t>(sys.rank());
  if (r == 0 || max_rank == 0) return {};
  if (max_rank + 1 > r) throw std::invalid_argument("max_rank must be below rank(Phi)");
  std::set<RootMask, detail::MaskLess> seen;
  std::deque<RootMask> frontier;
  for (std::size_t i : sys.positive_roots()) {
    const RootMask m = roots::symmetric_mask(sys, {i});
    if (seen.insert(m).second) frontier.push_back(m);
  }
  while (!frontier.empty()) {
    const RootMask cur = frontier.front();
    frontier.pop_front();
    if (roots::span_rank(sys, cur) >= max_rank) continue;
    for (std::size_t i : sys.positive_roots()) {
      if (cur.test(i)) continue;
      RootMask next = cur;
      next.set(i);
      next = roots::span_closure(sys, next).members;
      if (roots::span_rank(sys, next) > max_rank) continue;
      if (seen.insert(next).second) {
        if (seen.size() > budget.max_subsystems)
          throw BudgetExceeded("span-closed subsystem enumeration of " + sys.name() + " exceeds " +
                               std::to_string(budget.max_subsystems));
        frontier.push_back(next);
      }
    }
  }
  std::vector<RankedSubsystem> out;
  for (const auto& m : seen) out.push_back({roots::RootSubsystem{&sys, m, true}, roots::span_rank(sys, m)});
  std::stable_sort(out.begin(), out.end(), [](const RankedSubsystem& a, const RankedSubsystem& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.sub.size() > b.sub.size();
  });
  return out;
}

}  // namespace twistor::decomp
