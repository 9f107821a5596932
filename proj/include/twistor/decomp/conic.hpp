#pragma once

#include <vector>

#include "twistor/curves/count.hpp"
#include "twistor/decomp/decomposition.hpp"

namespace twistor::decomp {

/// Type-2 decomposition read off a rank-3 count: one piece Phi_gamma per
/// special point, transversal points in the overlapping part and tangential
/// points in the disjoint part.  Its rank sum is q2 by construction.
inline Decomposition conic_decomposition(const RootSystem& sys, const curves::CurveCountReport& rep) {
  Decomposition d;
  d.system = &sys;
  d.kind = DecompKind::Type2;
  std::vector<RootMask> t_part;
  for (const auto& p : rep.points) {
    if (p.kind == curves::PointKind::Tangential)
      t_part.push_back(p.roots);
    else
      d.pieces.push_back(p.roots);
  }
  d.s = d.pieces.size();
  d.t = t_part.size();
  d.pieces.insert(d.pieces.end(), t_part.begin(), t_part.end());
  fill_metadata(d);
  return d;
}

}  // namespace twistor::decomp
