#include "minkhelix/report.hpp"

#include "minkhelix/curve_io.hpp"

#include <ostream>

namespace minkhelix {

using nlohmann::json;

json vec_to_json(const Vec4& v) { return json::array({v[0], v[1], v[2], v[3]}); }

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json report_to_json(const HelixReport& r)
{
    return {
        {"is_helix", r.is_helix},
        {"verdict", to_string(r.verdict)},
        {"eps1", r.eps1},
        {"eps2", r.eps2},
        {"frame_source", to_string(r.frame_source)},
        {"stride", r.stride},
        {"points", r.points},
        {"invariant_samples", r.series.H},
        {"invariant_spread", r.invariant_spread},
        {"m_value", r.m_value},
        {"axis", vec_to_json(r.axis)},
        {"axis_norm_sq", r.axis_norm_sq},
        {"axis_normalized", r.axis_normalized ? vec_to_json(*r.axis_normalized) : json(nullptr)},
        {"axis_class", to_string(r.axis_class)},
        {"axis_residual", r.axis_residual},
        {"axis_tu_spread", r.axis_tu_spread},
        {"f_residual", r.f_residual},
        {"gamma_ode_residual", r.gamma_ode_residual},
        {"beta_residual", r.beta_residual},
        {"fit_C1", optional_number(r.fit_C1)},
        {"fit_C2", optional_number(r.fit_C2)},
        {"fit_residual", optional_number(r.fit_residual)},
        {"fit_D", optional_number(r.fit_D)},
        {"fit_D_residual", optional_number(r.fit_D_residual)},
        {"mn_spread", r.mn_spread},
        {"m_mean", r.m_mean},
        {"n_mean", r.n_mean},
        {"tolerances", {{"tol_H", r.tolerances.tol_H}, {"tol_U", r.tolerances.tol_U}, {"null_tol", r.tolerances.null_tol}}},
        {"notes", r.notes},
    };
}

void write_plot_csv(const HelixReport& report, std::ostream& out)
{
    const auto& S = report.series;
    out << "s,r,theta,H,f,m,n,axis_residual_pointwise\n";
    for (std::size_t i = 0; i < S.s.size(); ++i) {
        out << format_double(S.s[i]);
        for (double v : {S.r[i], S.theta[i], S.H[i], S.f[i], S.m[i], S.n[i], S.axis_residual[i]})
            out << ',' << format_double(v);
        out << '\n';
    }
}

}  // namespace minkhelix
