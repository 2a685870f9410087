#include "thetacalc/json_io.hpp"

namespace thetacalc::io {

Json to_json(const mukai::MukaiVector& v) {
  return Json{{"r", v.r.get_str()},
              {"k", v.k().get_str()},
              {"chi", v.chi.get_str()},
              {"n", v.n().get_str()},
              {"side", mukai::to_string(v.side)}};
}

Json to_json(const mukai::AdmissibilityReport& report) {
  Json out{{"primitive", report.primitive}, {"positive", report.positive}};
  if (report.h2_vanishing_direction) {
    out["h2_vanishing_direction"] = std::to_string(*report.h2_vanishing_direction);
  }
  return out;
}

Json to_json(const formulas::ChiResult& result) {
  Json inputs = Json::object();
  for (const auto& [key, value] : result.inputs) inputs[key] = value;
  Json out{{"formula_id", result.formula_id},
           {"value", to_string(result.value)},
           {"integral", result.integral},
           {"branch", result.branch},
           {"inputs", inputs}};
  if (result.cross_check) out["cross_check"] = *result.cross_check;
  if (result.cross_value) out["cross_value"] = to_string(*result.cross_value);
  return out;
}

Json to_json(const verify::IdentityReport& report) {
  Json inst = Json::object();
  for (const auto& [key, value] : report.instantiation) inst[key] = value;
  Json residuals = Json::array();
  for (const auto& r : report.residuals) {
    residuals.push_back(Json{{"label", r.label}, {"value", r.value}, {"zero", r.zero}});
  }
  Json out{{"identity_id", report.identity_id}, {"mode", verify::to_string(report.mode)}};
  if (report.mode == verify::Mode::Numeric) out["trial"] = std::to_string(report.trial);
  out["instantiation"] = inst;
  out["residuals"] = residuals;
  out["pass"] = report.pass;
  return out;
}

Json to_json(const std::vector<verify::IdentityReport>& reports) {
  Json out = Json::array();
  for (const auto& r : reports) out.push_back(to_json(r));
  return out;
}

}  // namespace thetacalc::io
