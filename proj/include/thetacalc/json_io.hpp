#pragma once

// JSON forms of the value types. Every number is an exact decimal string.

#include <json.hpp>

#include <vector>

#include "thetacalc/formulas.hpp"
#include "thetacalc/mukai.hpp"
#include "thetacalc/verify.hpp"

namespace thetacalc::io {

using Json = nlohmann::ordered_json;

Json to_json(const mukai::MukaiVector& v);
Json to_json(const mukai::AdmissibilityReport& report);
Json to_json(const formulas::ChiResult& result);
Json to_json(const verify::IdentityReport& report);
Json to_json(const std::vector<verify::IdentityReport>& reports);

}  // namespace thetacalc::io
