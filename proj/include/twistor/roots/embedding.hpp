#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "twistor/roots/subsystem.hpp"

namespace twistor::roots {

/// A_n inside a rank-(n+1) system and the roots outside it.
struct ExtraRootReport {
  RootSubsystem an;
  RootMask extra;
  std::size_t extra_count = 0;
  std::size_t extra_span_rank = 0;
};

/// Simple roots (0-based) of the chain that spans the A_n:
/// A_{n+1} and D_{n+1}: alpha_1..alpha_n; E_{n+1}: alpha_1, alpha_3, ..., alpha_{n+1}.
inline std::vector<std::size_t> an_chain(const RootSystem& sys) {
  const auto m = static_cast<std::size_t>(sys.rank());
  if (m < 2) throw std::invalid_argument("A_n embedding needs a system of rank >= 2, got " + sys.name());
  std::vector<std::size_t> chain;
  if (sys.family() == Family::E) {
    chain.push_back(0);
    for (std::size_t k = 2; k < m; ++k) chain.push_back(k);
  } else {
    for (std::size_t k = 0; k + 1 < m; ++k) chain.push_back(k);
  }
  return chain;
}

inline ExtraRootReport an_embedding_and_extra_roots(const RootSystem& sys) {
  std::vector<std::size_t> simple;
  for (std::size_t k : an_chain(sys)) simple.push_back(sys.simple_root(k));
  ExtraRootReport out;
  out.an = span_closure(sys, symmetric_mask(sys, simple));
  const auto n = static_cast<std::size_t>(sys.rank()) - 1;
  if (out.an.size() != n * (n + 1)) throw std::logic_error("designated chain does not span an A_n");
  out.extra = sys.all_mask() & ~out.an.members;
  out.extra_count = out.extra.count();
  out.extra_span_rank = span_rank(sys, out.extra);
  return out;
}

}  // namespace twistor::roots
