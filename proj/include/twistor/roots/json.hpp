#pragma once

#include <json.hpp>

#include "twistor/roots/root_system.hpp"

namespace twistor::roots {

/// Canonical document {family, rank, roots, cartan}.
inline nlohmann::json to_json_document(const RootSystem& sys) {
  return nlohmann::json{{"family", std::string(1, family_letter(sys.family()))},
                        {"rank", sys.rank()},
                        {"roots", sys.roots()},
                        {"cartan", sys.cartan()}};
}

}  // namespace twistor::roots
