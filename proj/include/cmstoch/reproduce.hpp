#pragma once

#include <string_view>

#include "json.hpp"

namespace cmstoch {

// Runs every claim attached to one embedded fixture and returns
//   {"fixture": name, "checks": [{"claim", "expected", "observed", "pass"}],
//    "annotations": [...], "pass": bool}.
// Throws ValidationError for an unknown fixture name.
nlohmann::json reproduce_fixture(std::string_view name);

}  // namespace cmstoch
