#pragma once

// JSON encoding of exact scalars: rationals as "p/q", Gaussian rationals as
// {"re":"p/q","im":"p/q"}.  A bare "p/q" string is accepted as a real Gaussian rational.

#include <json.hpp>

#include "twistor/exact/binary_form.hpp"
#include "twistor/exact/gauss.hpp"
#include "twistor/exact/rational.hpp"

namespace twistor::exact {

inline void to_json(nlohmann::json& j, const Rational& r) { j = r.str(); }

inline void from_json(const nlohmann::json& j, Rational& r) {
  if (!j.is_string()) throw ParseError("rational must be a \"p/q\" string");
  r = Rational::parse(j.get<std::string>());
}

inline void to_json(nlohmann::json& j, const GaussRational& z) {
  j = nlohmann::json{{"re", z.re().str()}, {"im", z.im().str()}};
}

inline void from_json(const nlohmann::json& j, GaussRational& z) {
  if (j.is_string()) {
    z = GaussRational(Rational::parse(j.get<std::string>()));
    return;
  }
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    throw ParseError("Gaussian rational must be {\"re\":\"p/q\",\"im\":\"p/q\"}");
  z = GaussRational(j.at("re").get<Rational>(), j.at("im").get<Rational>());
}

inline void to_json(nlohmann::json& j, const ProjectivePoint1& p) {
  j = nlohmann::json{{"z1", p.z1()}, {"z2", p.z2()}};
}

}  // namespace twistor::exact
