#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistor/curves/zeta.hpp"
#include "twistor/errors.hpp"
#include "twistor/exact/binary_form.hpp"
#include "twistor/roots/subsystem.hpp"

namespace twistor::curves {

using exact::BinaryForm;
using exact::ProjectivePoint1;
using roots::RootMask;

enum class PointKind { Transversal, Tangential };

inline const char* kind_name(PointKind k) { return k == PointKind::Tangential ? "tangential" : "transversal"; }

/// Positive roots whose period quadratics are proportional, i.e. share the
/// kernel line in the period plane.
struct LineClass {
  std::vector<std::size_t> positive_roots;
  BinaryQuadratic form;  // the form of the first member
  RootMask members;      // with negatives
  std::size_t rank = 0;
};

/// A twistor parameter whose fiber contains rational curves.
struct SpecialPoint {
  /// Exact location; absent for the roots of an irreducible residual quadratic.
  std::optional<ProjectivePoint1> location;
  /// For located-free points: owning class and which of its two roots (0/1).
  std::optional<std::size_t> private_class;
  int private_slot = 0;
  std::vector<std::size_t> incident_classes;
  std::vector<int> multiplicity;  // parallel to incident_classes, 1 or 2
  PointKind kind = PointKind::Transversal;
  RootMask roots;  // Phi_gamma, closed under negation
  std::size_t subsystem_rank = 0;
};

struct CurveCountReport {
  std::string system;
  int rank_zeta = 0;
  std::size_t q1 = 0;
  std::size_t q2 = 0;
  std::size_t s_count = 0;
  std::size_t t_count = 0;
  std::size_t shared_points = 0;
  /// Classes whose form has a double root (a kernel line tangent to the period conic).
  std::size_t tangent_classes = 0;
  std::vector<LineClass> classes;
  std::vector<SpecialPoint> points;
  std::map<std::string, bool> bounds;

  bool bounds_ok() const {
    return std::all_of(bounds.begin(), bounds.end(), [](const auto& kv) { return kv.second; });
  }
};

/// Thrown by count_curves when a proven bound fails; carries the offending report.
class CountViolation : public TheoremViolation {
 public:
  CountViolation(const std::string& what, CurveCountReport report)
      : TheoremViolation(what), report_(std::move(report)) {}
  const CurveCountReport& report() const noexcept { return report_; }

 private:
  CurveCountReport report_;
};

/// Groups positive roots into line classes by proportionality of their period quadratics.
inline std::vector<LineClass> line_classes(const ZetaTriple& zeta) {
  const RootSystem& sys = zeta.system();
  std::vector<LineClass> classes;
  for (std::size_t theta : sys.positive_roots()) {
    const BinaryQuadratic q = period_quadratic(zeta, theta);
    if (q.is_zero()) throw InadmissibleError("zero period quadratic", theta);
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const LineClass& c) { return exact::proportional(c.form, q); });
    if (it == classes.end()) {
      classes.push_back(LineClass{{theta}, q, {}, 0});
      it = std::prev(classes.end());
    } else {
      it->positive_roots.push_back(theta);
    }
    it->members.set(theta);
    it->members.set(sys.negation(theta));
  }
  for (auto& c : classes) c.rank = roots::span_rank(sys, c.members);
  return classes;
}

inline void check_bounds(CurveCountReport& r, std::size_t root_count, std::size_t rank_phi) {
  const std::size_t n_phi = root_count;
  const std::size_t r2 = 2 * rank_phi;
  r.bounds["points_consistent"] = r.q1 == r.points.size() && r.s_count + r.t_count == r.q1;
  switch (r.rank_zeta) {
    case 1:
      r.bounds["rank1_q1_eq_2"] = r.q1 == 2;
      r.bounds["rank1_q2_eq_2r"] = r.q2 == r2;
      break;
    case 2:
      r.bounds["rank2_q1_range"] = 4 <= r.q1 && r.q1 <= n_phi;
      r.bounds["rank2_q2_range"] = r2 <= r.q2 && r.q2 <= n_phi;
      break;
    case 3:
      r.bounds["rank3_q1_range"] = 3 <= r.q1 && r.q1 <= n_phi;
      r.bounds["rank3_q2_range"] = r2 - 1 <= r.q2 && r.q2 <= n_phi;
      r.bounds["rank3_s_nonzero"] = r.s_count >= 1;
      r.bounds["rank3_t0_implies_s_ge_3"] = r.t_count != 0 || r.s_count >= 3;
      r.bounds["rank3_s2_implies_t_ge_2"] = r.s_count != 2 || r.t_count >= 2;
      break;
    default:
      r.bounds["rank_zeta_in_1_3"] = false;
  }
}

/// Exact count of special twistor parameters (q1) and rational curves (q2).
///
/// Shared points come from degree-1 gcds between class forms; each class's
/// residual after removing its shared roots contributes private points,
/// counted by degree and discriminant without extracting roots.  Throws
/// CountViolation if `check` is set and a bound flag is false.
inline CurveCountReport count_curves(const ZetaTriple& zeta, bool check = true) {
  const RootSystem& sys = zeta.system();
  CurveCountReport rep;
  rep.system = sys.name();
  rep.rank_zeta = rank_of_zeta(zeta);
  rep.classes = line_classes(zeta);
  const auto& classes = rep.classes;
  for (const auto& c : classes)
    if (c.form.discriminant().is_zero()) ++rep.tangent_classes;

  // Shared points and the classes through them.
  std::map<ProjectivePoint1, std::vector<std::size_t>> shared;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      const BinaryForm g = exact::form_gcd(classes[i].form, classes[j].form);
      if (g.degree() == 2) throw std::logic_error("distinct line classes with proportional forms");
      if (g.degree() != 1) continue;
      auto& incident = shared[exact::root_of_linear(g)];
      for (std::size_t k : {i, j})
        if (std::find(incident.begin(), incident.end(), k) == incident.end()) incident.push_back(k);
    }
  }

  std::map<ProjectivePoint1, SpecialPoint> exact_points;
  for (auto& [p, incident] : shared) {
    std::sort(incident.begin(), incident.end());
    SpecialPoint sp;
    sp.location = p;
    sp.incident_classes = incident;
    sp.multiplicity.assign(incident.size(), 0);
    exact_points.emplace(p, std::move(sp));
  }
  rep.shared_points = exact_points.size();

  std::vector<SpecialPoint> private_points;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    BinaryForm residual(classes[k].form);
    for (auto& [p, sp] : exact_points) {
      auto pos = std::find(sp.incident_classes.begin(), sp.incident_classes.end(), k);
      if (pos == sp.incident_classes.end()) continue;
      const BinaryForm lin = BinaryForm::linear_factor(p);
      int mult = 0;
      while (residual.degree() > 0) {
        auto q = exact::divide_exact(residual, lin);
        if (!q) break;
        residual = std::move(*q);
        ++mult;
      }
      if (mult == 0) throw std::logic_error("shared point is not a root of an incident class");
      sp.multiplicity[static_cast<std::size_t>(pos - sp.incident_classes.begin())] = mult;
    }
    if (residual.degree() == 1) {
      const ProjectivePoint1 p = exact::root_of_linear(residual);
      SpecialPoint sp;
      sp.location = p;
      sp.incident_classes = {k};
      sp.multiplicity = {1};
      if (!exact_points.emplace(p, std::move(sp)).second)
        throw std::logic_error("private root coincides with a shared point");
    } else if (residual.degree() == 2) {
      const BinaryQuadratic rq{residual.coeff(0), residual.coeff(1), residual.coeff(2)};
      const auto rc = exact::distinct_root_count(rq);
      if (rc.count == 1) {
        SpecialPoint sp;
        sp.location = *rc.double_root;
        sp.incident_classes = {k};
        sp.multiplicity = {2};
        if (!exact_points.emplace(*rc.double_root, std::move(sp)).second)
          throw std::logic_error("private double root coincides with a shared point");
      } else {
        for (int slot = 0; slot < 2; ++slot) {
          SpecialPoint sp;
          sp.private_class = k;
          sp.private_slot = slot;
          sp.incident_classes = {k};
          sp.multiplicity = {1};
          private_points.push_back(std::move(sp));
        }
      }
    }
  }
  for (auto& [p, sp] : exact_points) rep.points.push_back(std::move(sp));
  for (auto& sp : private_points) rep.points.push_back(std::move(sp));

  for (auto& sp : rep.points) {
    for (std::size_t k : sp.incident_classes) sp.roots |= classes[k].members;
    sp.subsystem_rank = roots::span_rank(sys, sp.roots);
    const bool all_double = std::all_of(sp.multiplicity.begin(), sp.multiplicity.end(), [](int m) { return m == 2; });
    sp.kind = all_double ? PointKind::Tangential : PointKind::Transversal;
    rep.q2 += sp.subsystem_rank;
    (sp.kind == PointKind::Tangential ? rep.t_count : rep.s_count) += 1;
  }
  rep.q1 = rep.points.size();

  check_bounds(rep, sys.size(), static_cast<std::size_t>(sys.rank()));
  if (check && !rep.bounds_ok()) {
    std::string failed;
    for (const auto& [name, ok] : rep.bounds)
      if (!ok) failed += " " + name;
    throw CountViolation("counting bound violated on " + rep.system + ":" + failed, std::move(rep));
  }
  return rep;
}

/// q1 computed independently as the number of distinct roots of the product
/// of one representative form per line class.
inline std::size_t q1_squarefree_oracle(const ZetaTriple& zeta) {
  std::vector<BinaryQuadratic> forms;
  for (const auto& c : line_classes(zeta)) forms.push_back(c.form);
  return static_cast<std::size_t>(exact::squarefree_root_count(forms));
}

}  // namespace twistor::curves
