#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twistor/errors.hpp"
#include "twistor/exact/binary_form.hpp"
#include "twistor/roots/subsystem.hpp"

namespace twistor::decomp {

using exact::GaussRational;
using exact::ProjectivePoint1;
using roots::HVector;
using roots::RootMask;
using roots::RootSystem;

enum class DecompKind { Induced, Type1, Type2 };
enum class SolverMode { Literal, Geometric };

inline const char* kind_name(DecompKind k) {
  switch (k) {
    case DecompKind::Induced: return "induced";
    case DecompKind::Type1: return "type1";
    case DecompKind::Type2: return "type2";
  }
  return "?";
}

inline const char* mode_name(SolverMode m) { return m == SolverMode::Literal ? "literal" : "geometric"; }

inline SolverMode parse_mode(const std::string& s) {
  if (s == "literal") return SolverMode::Literal;
  if (s == "geometric") return SolverMode::Geometric;
  throw ParseError("unknown solver mode \"" + s + "\" (expected literal|geometric)");
}

/// A complex 2-plane L in h^C given by two basis vectors.
struct PlaneL {
  HVector b1, b2;
};

/// Throws unless b1, b2 are independent and no root kills both.
inline void check_plane(const RootSystem& sys, const PlaneL& L) {
  const auto n = static_cast<std::size_t>(sys.rank());
  if (L.b1.size() != n || L.b2.size() != n)
    throw std::invalid_argument("plane basis length does not match rank " + std::to_string(n));
  if (exact::rank_of_matrix(std::vector<std::vector<GaussRational>>{L.b1, L.b2}) != 2)
    throw std::invalid_argument("plane basis vectors are linearly dependent");
  for (std::size_t i : sys.positive_roots())
    if (sys.eval(i, L.b1).is_zero() && sys.eval(i, L.b2).is_zero())
      throw InadmissibleError("inadmissible plane: L lies in the kernel of root #" + std::to_string(i), i);
}

struct Decomposition {
  const RootSystem* system = nullptr;
  DecompKind kind = DecompKind::Type1;
  /// Each piece is closed under negation.  For type2 the first s pieces form
  /// the overlapping part and the last t the disjoint part.
  std::vector<RootMask> pieces;
  std::size_t s = 0;
  std::size_t t = 0;
  std::vector<std::size_t> ranks;   // r_k
  std::vector<std::size_t> deltas;  // number of simple roots in piece k
  std::optional<PlaneL> plane;
  std::vector<ProjectivePoint1> lines;  // induced only: [ker theta|_L] per piece

  std::size_t rank_sum() const {
    std::size_t sum = 0;
    for (auto r : ranks) sum += r;
    return sum;
  }
};

inline void fill_metadata(Decomposition& d) {
  const RootSystem& sys = *d.system;
  d.ranks.clear();
  d.deltas.clear();
  for (const auto& p : d.pieces) {
    d.ranks.push_back(roots::span_rank(sys, p));
    std::size_t delta = 0;
    for (int k = 0; k < sys.rank(); ++k) delta += p.test(sys.simple_root(static_cast<std::size_t>(k)));
    d.deltas.push_back(delta);
  }
}

/// Line in L of a root's kernel, as a point of P^1 in the (b1, b2) coordinates.
inline ProjectivePoint1 kernel_line(const RootSystem& sys, const PlaneL& L, std::size_t theta) {
  return ProjectivePoint1(sys.eval(theta, L.b1), sys.eval(theta, L.b2));
}

/// Fibers of theta -> [ker theta|_L].  Checks 3 <= s <= |Phi|/2 and
/// r + 1 <= sum r_k <= |Phi|/2, throwing TheoremViolation on failure.
inline Decomposition induced_decomposition(const RootSystem& sys, const PlaneL& L) {
  check_plane(sys, L);
  std::map<ProjectivePoint1, RootMask> fibers;
  for (std::size_t i : sys.positive_roots()) {
    auto& m = fibers[kernel_line(sys, L, i)];
    m.set(i);
    m.set(sys.negation(i));
  }
  Decomposition d;
  d.system = &sys;
  d.kind = DecompKind::Induced;
  d.plane = L;
  for (const auto& [line, m] : fibers) {
    d.lines.push_back(line);
    d.pieces.push_back(m);
  }
  d.s = d.pieces.size();
  fill_metadata(d);

  const std::size_t half = sys.size() / 2;
  const auto r = static_cast<std::size_t>(sys.rank());
  std::size_t delta_sum = 0;
  for (auto x : d.deltas) delta_sum += x;
  if (d.s < 3 || d.s > half)
    throw TheoremViolation("induced decomposition of " + sys.name() + " has s = " + std::to_string(d.s));
  if (d.rank_sum() < r + 1 || d.rank_sum() > half)
    throw TheoremViolation("induced decomposition of " + sys.name() + " has rank sum " +
                           std::to_string(d.rank_sum()));
  if (delta_sum != r) throw std::logic_error("simple roots not partitioned by the induced decomposition");
  return d;
}

/// Violation description, or nullopt when `d` satisfies every rule of its
/// kind.  `mode` only matters for type2: geometric additionally bounds every
/// root's multiplicity in the overlapping part by 2.
inline std::optional<std::string> validate_decomposition(const Decomposition& d,
                                                         SolverMode mode = SolverMode::Literal) {
  if (d.system == nullptr) return "decomposition has no root system";
  const RootSystem& sys = *d.system;
  const RootMask all = sys.all_mask();
  if (d.pieces.empty()) return "no pieces";

  RootMask uni;
  for (std::size_t k = 0; k < d.pieces.size(); ++k) {
    const RootMask& p = d.pieces[k];
    const std::string tag = "piece " + std::to_string(k);
    if (p.none()) return tag + " is empty";
    if ((p & ~all).any()) return tag + " contains indices outside the root system";
    for (std::size_t i : roots::mask_indices(p, sys.size()))
      if (!p.test(sys.negation(i))) return tag + " is not closed under negation";
    uni |= p;
  }
  if (uni != all) return "union of pieces != Phi";

  if (!d.ranks.empty() || !d.deltas.empty()) {
    Decomposition fresh = d;
    fill_metadata(fresh);
    if (fresh.ranks != d.ranks) return "recorded piece ranks are wrong";
    if (fresh.deltas != d.deltas) return "recorded piece deltas are wrong";
  }

  auto proper_closed = [&](std::size_t k) -> std::optional<std::string> {
    if (d.pieces[k] == all) return "piece " + std::to_string(k) + " is not proper";
    if (!roots::is_span_closed(sys, d.pieces[k])) return "piece " + std::to_string(k) + " is not span-closed";
    return std::nullopt;
  };
  auto pairwise_disjoint = [&](std::size_t from, std::size_t to) -> std::optional<std::string> {
    for (std::size_t a = from; a < to; ++a)
      for (std::size_t b = a + 1; b < to; ++b)
        if ((d.pieces[a] & d.pieces[b]).any())
          return "disjointness: pieces " + std::to_string(a) + " and " + std::to_string(b) + " overlap";
    return std::nullopt;
  };

  switch (d.kind) {
    case DecompKind::Type1: {
      if (d.s != d.pieces.size() || d.t != 0) return "type1 split must be s = #pieces, t = 0";
      for (std::size_t k = 0; k < d.pieces.size(); ++k)
        if (auto v = proper_closed(k)) return v;
      return pairwise_disjoint(0, d.pieces.size());
    }
    case DecompKind::Type2: {
      if (d.s + d.t != d.pieces.size()) return "type2 split s + t != #pieces";
      if (d.s + d.t < 2) return "type2 needs s + t >= 2";
      for (std::size_t k = 0; k < d.pieces.size(); ++k)
        if (auto v = proper_closed(k)) return v;
      if (auto v = pairwise_disjoint(d.s, d.pieces.size())) return v;
      RootMask s_union;
      for (std::size_t k = 0; k < d.s; ++k) s_union |= d.pieces[k];
      for (std::size_t k = d.s; k < d.pieces.size(); ++k)
        if ((d.pieces[k] & s_union).any())
          return "disjointness: t-part piece " + std::to_string(k) + " meets the s-part";
      if (mode == SolverMode::Geometric) {
        for (std::size_t i = 0; i < sys.size(); ++i) {
          std::size_t mult = 0;
          for (std::size_t k = 0; k < d.s; ++k) mult += d.pieces[k].test(i);
          if (mult > 2) return "geometric: root #" + std::to_string(i) + " lies in " + std::to_string(mult) + " pieces";
        }
      }
      return std::nullopt;
    }
    case DecompKind::Induced: {
      if (!d.plane) return "induced decomposition without a plane";
      Decomposition ref;
      try {
        ref = induced_decomposition(sys, *d.plane);
      } catch (const std::exception& e) {
        return std::string("induced: ") + e.what();
      }
      auto sorted = [](std::vector<RootMask> v) {
        std::sort(v.begin(), v.end(), roots::mask_lex_less);
        return v;
      };
      if (sorted(d.pieces) != sorted(ref.pieces)) return "induced: pieces are not the fibers of the kernel map";
      return std::nullopt;
    }
  }
  return "unknown kind";
}

/// Orders pieces lexicographically within each part so equal decompositions
/// compare equal.  Induced decompositions are already ordered by their lines.
inline void canonicalize(Decomposition& d) {
  if (d.kind == DecompKind::Induced) return;
  auto s_end = d.pieces.begin() + static_cast<std::ptrdiff_t>(d.kind == DecompKind::Type2 ? d.s : d.pieces.size());
  std::sort(d.pieces.begin(), s_end, roots::mask_lex_less);
  std::sort(s_end, d.pieces.end(), roots::mask_lex_less);
  fill_metadata(d);
}

}  // namespace twistor::decomp
