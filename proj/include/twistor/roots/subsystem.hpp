#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "twistor/exact/linalg.hpp"
#include "twistor/roots/root_system.hpp"

namespace twistor::roots {

inline std::vector<std::size_t> mask_indices(const RootMask& m, std::size_t limit = kMaxRoots) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < limit; ++i)
    if (m.test(i)) out.push_back(i);
  return out;
}

/// Lexicographic comparison of masks by their sorted index lists.
inline bool mask_lex_less(const RootMask& a, const RootMask& b) {
  const RootMask diff = a ^ b;
  if (diff.none()) return false;
  std::size_t i = 0;
  while (!diff.test(i)) ++i;
  // Both lists agree below i; exactly one of them contains i.
  const RootMask& other = a.test(i) ? b : a;
  bool other_continues = false;
  for (std::size_t j = i + 1; j < kMaxRoots && !other_continues; ++j) other_continues = other.test(j);
  return a.test(i) ? other_continues : !other_continues;
}

/// Root subsystem of a parent system.  `members` is closed under negation.
struct RootSubsystem {
  const RootSystem* parent = nullptr;
  RootMask members;
  bool span_closed = false;

  std::size_t size() const { return members.count(); }
  bool empty() const { return members.none(); }
  std::vector<std::size_t> indices() const { return mask_indices(members, parent ? parent->size() : kMaxRoots); }
  friend bool operator==(const RootSubsystem& a, const RootSubsystem& b) {
    return a.parent == b.parent && a.members == b.members;
  }
};

inline exact::RowEchelon<exact::Rational> span_basis(const RootSystem& sys, const RootMask& set) {
  exact::RowEchelon<exact::Rational> basis(static_cast<std::size_t>(sys.rank()));
  for (std::size_t i = 0; i < sys.size(); ++i)
    if (set.test(i) && sys.is_positive(i)) basis.insert(exact::to_rational(sys.root(i)));
  // negative-only sets (not closed under negation) still need their vectors
  for (std::size_t i = 0; i < sys.size(); ++i)
    if (set.test(i) && !sys.is_positive(i) && !set.test(sys.negation(i)))
      basis.insert(exact::to_rational(sys.root(i)));
  return basis;
}

/// Dimension of the real span of a set of roots.
inline std::size_t span_rank(const RootSystem& sys, const RootMask& set) { return span_basis(sys, set).rank(); }

/// Phi intersected with span_R(S).
inline RootSubsystem span_closure(const RootSystem& sys, const RootMask& set) {
  const auto basis = span_basis(sys, set);
  RootSubsystem out{&sys, {}, true};
  for (std::size_t i : sys.positive_roots()) {
    if (set.test(i) || set.test(sys.negation(i)) || basis.contains(exact::to_rational(sys.root(i)))) {
      out.members.set(i);
      out.members.set(sys.negation(i));
    }
  }
  return out;
}

inline bool is_span_closed(const RootSystem& sys, const RootMask& set) {
  return span_closure(sys, set).members == set;
}

inline std::size_t subsystem_rank(const RootSubsystem& s) {
  if (s.empty()) return 0;
  return span_rank(*s.parent, s.members);
}

/// All roots vanishing on lambda.
inline RootSubsystem phi_lambda(const RootSystem& sys, const HVector& lambda) {
  RootSubsystem out{&sys, {}, true};
  for (std::size_t i = 0; i < sys.size(); ++i)
    if (sys.eval(i, lambda).is_zero()) out.members.set(i);
  if (!out.empty() && !is_span_closed(sys, out.members))
    throw std::logic_error("kernel subsystem is not span-closed");
  return out;
}

inline RootMask mask_of(std::initializer_list<std::size_t> idx) {
  RootMask m;
  for (auto i : idx) m.set(i);
  return m;
}

/// Mask of the given roots together with their negatives.
inline RootMask symmetric_mask(const RootSystem& sys, const std::vector<std::size_t>& idx) {
  RootMask m;
  for (auto i : idx) {
    m.set(i);
    m.set(sys.negation(i));
  }
  return m;
}

}  // namespace twistor::roots
