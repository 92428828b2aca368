#include "minkhelix/presets.hpp"

#include "minkhelix/error.hpp"
#include "minkhelix/schema.hpp"

#include <cmath>

namespace minkhelix {

using nlohmann::json;

const std::vector<PresetInfo>& preset_catalog()
{
    static const std::vector<PresetInfo> catalog{
        {"hyperbolic_circular", "analytic",
         "x(s) = (a cosh(alpha s), a sinh(alpha s), b cos(beta s), b sin(beta s)); constant curvatures",
         "W-curve negative control: constant invariant, no fixed axis",
         {{"a", 1.0}, {"alpha", 0.5}, {"b", std::sqrt(3.0) / 2.0}, {"beta", 1.0}}, 0.0, 5.0},
        {"line", "analytic", "x(s) = p + s v", "degenerate input: k1 vanishes",
         {{"p1", 0.0}, {"p2", 0.0}, {"p3", 0.0}, {"p4", 0.0}, {"v1", 0.0}, {"v2", 1.0}, {"v3", 0.0}, {"v4", 0.0}},
         0.0, 1.0},
        {"eq21_trig", "profile", "k1 = k2 (C1 cos theta + C2 sin theta), eps1 = -1",
         "integral characterization, eps1 = -1 branch",
         {{"eps2", 1.0}, {"C1", 2.0}, {"C2", 1.0}, {"k2", 1.0}, {"k3", 0.5}}, 0.0, 2.0},
        {"eq21_cosh", "profile", "k1 = k2 (C1 cosh theta + C2 sinh theta), eps1 = +1",
         "integral characterization, eps1 = +1 branch",
         {{"eps2", 1.0}, {"C1", 1.0}, {"C2", 0.0}, {"k2", 1.0}, {"k3", 0.5}}, 0.0, 2.0},
        {"exponential", "profile", "k1 = D exp(theta) k2, eps1 = +1", "exponential ratio, invariant 0",
         {{"eps2", 1.0}, {"D", 1.0}, {"k2", 1.0}, {"k3", 0.3}}, 0.0, 5.0},
        {"w_curve", "profile", "constant curvatures (k1, k2, k3), eps = (+1, +1)",
         "W-curve negative control: constant invariant, no fixed axis", {{"k1", 0.7}, {"k2", 0.5}, {"k3", 0.3}}, 0.0,
         10.0},
        {"linear_theta", "profile", "k1 = theta, k2 = k3 = 1, eps = (-1, +1)",
         "non-helix control: ratio outside the eta/mu span", {}, 0.0, 3.0},
    };
    return catalog;
}

const PresetInfo& preset_info(const std::string& name)
{
    for (const auto& p : preset_catalog())
        if (p.name == name) return p;
    std::string known;
    for (const auto& p : preset_catalog()) known += (known.empty() ? "" : ", ") + p.name;
    fail(ErrorKind::InvalidSpec, "unknown preset '" + name + "' (known: " + known + ")");
}

namespace {

int sign_param(double v, const std::string& what)
{
    if (v != 1.0 && v != -1.0) fail(ErrorKind::InvalidSpec, what + " must be +1 or -1");
    return static_cast<int>(v);
}

ScalarMap constant(double v)
{
    return [v](double) { return v; };
}

}  // namespace

PresetObject make_preset(const PresetRequest& request)
{
    const PresetInfo& info = preset_info(request.name);
    auto params = info.params;
    for (const auto& [key, value] : request.params) {
        if (!params.count(key)) fail(ErrorKind::InvalidSpec, "preset '" + info.name + "' has no parameter '" + key + "'");
        if (!std::isfinite(value)) fail(ErrorKind::InvalidSpec, "parameter '" + key + "' is not finite");
        params[key] = value;
    }
    const double s_min = request.s_min.value_or(info.s_min);
    const double s_max = request.s_max.value_or(info.s_max);
    const double h = request.h.value_or(1e-3);
    if (!(s_max > s_min)) fail(ErrorKind::InvalidSpec, "s_max must exceed s_min");
    if (!(h > 0.0)) fail(ErrorKind::InvalidSpec, "h must be positive");

    if (info.name == "hyperbolic_circular")
        return hyperbolic_circular(params["a"], params["alpha"], params["b"], params["beta"], s_min, s_max, h);
    if (info.name == "line")
        return straight_line({params["p1"], params["p2"], params["p3"], params["p4"]},
                             {params["v1"], params["v2"], params["v3"], params["v4"]}, s_min, s_max, h);

    // Profiles are integrated from s_min.
    const UniformGrid grid = UniformGrid::covering(s_min, s_max, h);
    CurvatureProfile p;
    if (info.name == "eq21_trig" || info.name == "eq21_cosh") {
        const int eps1 = info.name == "eq21_trig" ? -1 : 1;
        p = profile_from_eq21(eps1, sign_param(params["eps2"], "eps2"), params["C1"], params["C2"],
                              constant(params["k2"]), constant(params["k3"]), grid);
    } else if (info.name == "exponential") {
        p = profile_exponential(params["D"], constant(params["k2"]), constant(params["k3"]), grid,
                                sign_param(params["eps2"], "eps2"));
    } else if (info.name == "w_curve") {
        p = profile_constant(1, 1, params["k1"], params["k2"], params["k3"], grid);
        p.kind = ProfileKind::Control;
    } else {
        p = profile_nonhelix_control(info.name, h);
        if (request.s_min || request.s_max) p.grid = grid;
    }
    p.name = info.name;
    return p;
}

Curve preset_curve(const PresetRequest& request)
{
    auto obj = make_preset(request);
    if (auto* a = std::get_if<AnalyticCurve>(&obj)) return *a;
    return synthesize(std::get<CurvatureProfile>(obj)).curve;
}

PresetRequest preset_request_from_json(const json& spec)
{
    require_valid(spec, "preset_spec");
    PresetRequest r;
    r.name = spec.at("preset").get<std::string>();
    if (spec.contains("params"))
        for (const auto& [key, value] : spec.at("params").items()) r.params[key] = value.get<double>();
    if (spec.contains("s_min")) r.s_min = spec.at("s_min").get<double>();
    if (spec.contains("s_max")) r.s_max = spec.at("s_max").get<double>();
    if (spec.contains("h")) r.h = spec.at("h").get<double>();
    return r;
}

namespace {

double number_param(const json& params, const std::string& key, std::optional<double> fallback)
{
    if (params.contains(key)) {
        if (!params.at(key).is_number()) fail(ErrorKind::InvalidSpec, "params." + key + " must be a number");
        return params.at(key).get<double>();
    }
    if (!fallback) fail(ErrorKind::InvalidSpec, "params." + key + " is required");
    return *fallback;
}

void allow_only(const json& params, std::initializer_list<const char*> keys, const std::string& kind)
{
    for (const auto& [key, value] : params.items()) {
        bool known = false;
        for (const char* k : keys) known = known || key == k;
        if (!known) fail(ErrorKind::InvalidSpec, "params." + key + " is not used by kind '" + kind + "'");
    }
}

}  // namespace

CurvatureProfile profile_from_json(const json& spec)
{
    require_valid(spec, "profile_spec");
    const std::string kind = spec.at("kind").get<std::string>();
    const json params = spec.value("params", json::object());
    const double s_max = spec.value("s_max", 10.0);
    const double h = spec.value("h", 1e-3);
    const UniformGrid grid = UniformGrid::covering(0.0, s_max, h);
    // 0 marks a sign the spec leaves open.
    const int eps1 = spec.value("eps1", 0), eps2 = spec.value("eps2", 0);

    if (kind == "eq21") {
        allow_only(params, {"C1", "C2", "k2", "k3"}, kind);
        if (eps1 == 0) fail(ErrorKind::InvalidSpec, "eq21 profiles need eps1");
        return profile_from_eq21(eps1, eps2 != 0 ? eps2 : 1, number_param(params, "C1", {}),
                                 number_param(params, "C2", {}), constant(number_param(params, "k2", 0.1)),
                                 constant(number_param(params, "k3", 0.1)), grid);
    }
    if (kind == "exponential") {
        allow_only(params, {"D", "k2", "k3"}, kind);
        if (eps1 == -1) fail(ErrorKind::WrongEpsilon, "exponential profiles have eps1 = +1");
        return profile_exponential(number_param(params, "D", {}), constant(number_param(params, "k2", 0.1)),
                                   constant(number_param(params, "k3", 0.1)), grid, eps2 != 0 ? eps2 : 1);
    }
    if (kind == "constant") {
        allow_only(params, {"k1", "k2", "k3"}, kind);
        return profile_constant(eps1 != 0 ? eps1 : 1, eps2 != 0 ? eps2 : 1, number_param(params, "k1", {}),
                                number_param(params, "k2", {}), number_param(params, "k3", {}), grid);
    }
    allow_only(params, {"name"}, kind);
    if (!params.contains("name") || !params.at("name").is_string())
        fail(ErrorKind::InvalidSpec, "control profiles need params.name");
    auto p = profile_nonhelix_control(params.at("name").get<std::string>(), h);
    const int want1 = eps1 != 0 ? eps1 : p.eps1, want2 = eps2 != 0 ? eps2 : p.eps2;
    if (want1 == -1 && want2 == -1)
        fail(ErrorKind::SignatureRuleViolation, "(eps1, eps2) = (-1, -1) would give two timelike frame vectors");
    if (want1 != p.eps1 || want2 != p.eps2)
        fail(ErrorKind::InvalidSpec, "control '" + p.name + "' has fixed signs (" + std::to_string(p.eps1) + ", " +
                                         std::to_string(p.eps2) + ")");
    if (spec.contains("s_max")) p.grid = grid;
    return p;
}

}  // namespace minkhelix
