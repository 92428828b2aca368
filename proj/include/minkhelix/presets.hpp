#pragma once

#include "minkhelix/curve.hpp"
#include "minkhelix/synthesis.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace minkhelix {

struct PresetInfo {
    std::string name;
    /// "analytic" (closed-form curve) or "profile" (synthesized from curvatures).
    std::string kind;
    std::string description;
    /// Which characterization the preset exercises.
    std::string provenance;
    std::map<std::string, double> params;
    double s_min = 0.0, s_max = 1.0;
};

const std::vector<PresetInfo>& preset_catalog();
const PresetInfo& preset_info(const std::string& name);

struct PresetRequest {
    std::string name;
    std::map<std::string, double> params;
    std::optional<double> s_min, s_max, h;
};

using PresetObject = std::variant<AnalyticCurve, CurvatureProfile>;

/// Parameter overrides must name known parameters; unknown names are InvalidSpec.
PresetObject make_preset(const PresetRequest& request);

/// The analyzable curve of a preset; profiles are synthesized first.
Curve preset_curve(const PresetRequest& request);

/// `{"preset": name, "params": {..}, "s_min": r, "s_max": r, "h": r}`.
PresetRequest preset_request_from_json(const nlohmann::json& spec);

/// `{"eps1": ±1, "eps2": ±1, "kind": ..., "params": {..}, "s_max": r, "h": r}`.
/// Defaults: s in [0, 10], h = 1e-3; eq21 takes C1, C2, k2 = 0.1, k3 = 0.1;
/// exponential takes D, k2 = 0.1, k3 = 0.1; constant takes k1, k2, k3; control
/// takes {"name": "w_curve" | "linear_theta"}.
CurvatureProfile profile_from_json(const nlohmann::json& spec);

}  // namespace minkhelix
