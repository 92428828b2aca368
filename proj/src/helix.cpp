#include "minkhelix/helix.hpp"

#include "minkhelix/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace minkhelix {

double basis_eta(int eps1, double theta) { return eps1 > 0 ? std::cosh(theta) : std::cos(theta); }
double basis_mu(int eps1, double theta) { return eps1 > 0 ? std::sinh(theta) : std::sin(theta); }

namespace {

constexpr double k3_floor = 1e-6;

void check_k3(const FrenetApparatus& a)
{
    if (std::abs(a.k3) < k3_floor) {
        Error e(ErrorKind::CurvatureVanishes, "k3 vanishes at s = " + std::to_string(a.s));
        e.at_s = a.s;
        e.curvature_index = 3;
        throw e;
    }
}

void check_size(const FrameField& field, std::size_t need)
{
    if (field.size() < need)
        fail(ErrorKind::GridTooShort,
             "frame field has " + std::to_string(field.size()) + " points, need " + std::to_string(need));
}

SampledScalar fvalues(const FrameField& field)
{
    const auto r = field.ratio();
    const auto dr = field_derivative(field, r, 1);
    SampledScalar f{field.grid, std::vector<double>(field.size())};
    for (std::size_t i = 0; i < field.size(); ++i) {
        check_k3(field.points[i]);
        f.values[i] = dr.values[i] / field.points[i].k3;
    }
    return f;
}

Vec4 mean_vector(const std::vector<Vec4>& v)
{
    Vec4 sum;
    for (const auto& x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

}  // namespace

SampledScalar theta_samples(const FrameField& field)
{
    auto theta = cumulative_quadrature(field.k3());
    for (double& t : theta.values) t += field.theta_start;
    return theta;
}

SampledScalar helix_invariant(const FrameField& field)
{
    check_size(field, 5);
    const auto r = field.ratio();
    const auto f = fvalues(field);
    SampledScalar H{field.grid, std::vector<double>(field.size())};
    for (std::size_t i = 0; i < field.size(); ++i)
        H.values[i] = r.values[i] * r.values[i] - field.eps1() * f.values[i] * f.values[i];
    return H;
}

Vec4 axis_vector(const FrenetApparatus& a, double r, double r_prime)
{
    check_k3(a);
    const double e1 = a.eps1, e2 = a.eps2;
    return a.T - (e2 * r) * a.B1 + (e1 * e2 * r_prime / a.k3) * a.B2;
}

SampledVec4 axis_samples(const FrameField& field)
{
    check_size(field, 5);
    const auto r = field.ratio();
    const auto dr = field_derivative(field, r, 1);
    SampledVec4 U{field.grid, std::vector<Vec4>(field.size())};
    for (std::size_t i = 0; i < field.size(); ++i) U.values[i] = axis_vector(field.points[i], r.values[i], dr.values[i]);
    return U;
}

AxisResidual axis_residual(const FrameField& field, const SampledVec4& axis)
{
    check_size(field, 5);
    const auto dU = field_derivative(field, axis, 1);
    AxisResidual out;
    out.pointwise.resize(axis.size());
    std::vector<double> tu(axis.size());
    for (std::size_t i = 0; i < axis.size(); ++i) {
        out.pointwise[i] = euclid_norm(dU.values[i]);
        out.residual = std::max(out.residual, out.pointwise[i]);
        tu[i] = inner(field.points[i].T, axis.values[i]);
    }
    out.tu_spread = constancy_statistic(tu);
    return out;
}

FCheck f_function_check(const FrameField& field)
{
    check_size(field, 5);
    FCheck out;
    out.f = fvalues(field);
    const auto df = field_derivative(field, out.f, 1);
    const auto r = field.ratio();
    for (std::size_t i = 0; i < field.size(); ++i) {
        const double target = field.eps1() * field.points[i].k3 * r.values[i];
        out.residual = std::max(out.residual, std::abs(df.values[i] - target));
    }
    return out;
}

GammaCheck gamma_ode_check(const FrameField& field, const SampledVec4& axis)
{
    check_size(field, 5);
    const Vec4 U = mean_vector(axis.values);
    const std::size_t n = field.size();
    const double e1 = field.eps1(), e2 = field.eps2();
    const auto r = field.ratio();
    const auto k3 = field.k3();
    const auto dk3 = field_derivative(field, k3, 1);

    SampledScalar gamma{field.grid, std::vector<double>(n)};
    GammaCheck out;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = field.points[i];
        gamma.values[i] = e2 * inner(U, a.B2);
        const double alpha = inner(U, a.T);
        const double beta = -e1 * e2 * inner(U, a.B1);
        out.beta_residual = std::max(out.beta_residual, std::abs(beta + e2 * r.values[i] * alpha));
    }
    const auto dg = field_derivative(field, gamma, 1);
    const auto ddg = field_derivative(field, gamma, 2);
    for (std::size_t i = 0; i < n; ++i) {
        const double k = k3.values[i];
        const double res = ddg.values[i] - dk3.values[i] / k * dg.values[i] - e1 * k * k * gamma.values[i];
        out.residual = std::max(out.residual, std::abs(res));
    }
    return out;
}

IntegralFit fit_integral_characterization(const FrameField& field)
{
    check_size(field, 10);
    const int e1 = field.eps1();
    const auto theta = theta_samples(field);
    const auto r = field.ratio();
    const auto [lo, hi] = std::minmax_element(theta.values.begin(), theta.values.end());
    if (e1 < 0 && *hi - *lo < 0.5) {
        std::ostringstream msg;
        msg << "theta range " << (*hi - *lo) << " rad is below 0.5 rad";
        fail(ErrorKind::IllConditioned, msg.str());
    }

    double gee = 0, gem = 0, gmm = 0, be = 0, bm = 0;
    for (std::size_t i = 0; i < field.size(); ++i) {
        const double e = basis_eta(e1, theta.values[i]), m = basis_mu(e1, theta.values[i]);
        gee += e * e;
        gem += e * m;
        gmm += m * m;
        be += e * r.values[i];
        bm += m * r.values[i];
    }
    const double tr = gee + gmm;
    const double det = gee * gmm - gem * gem;
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    const double lmax = tr / 2.0 + disc, lmin = tr / 2.0 - disc;
    if (!(lmin > 0.0) || lmax / lmin > 1e8) {
        std::ostringstream msg;
        msg << "basis Gram matrix condition number " << (lmin > 0.0 ? lmax / lmin : INFINITY) << " exceeds 1e8";
        fail(ErrorKind::IllConditioned, msg.str());
    }

    IntegralFit fit;
    fit.C1 = (gmm * be - gem * bm) / det;
    fit.C2 = (gee * bm - gem * be) / det;
    double ss = 0.0;
    for (std::size_t i = 0; i < field.size(); ++i) {
        const double d = r.values[i] - fit.C1 * basis_eta(e1, theta.values[i]) - fit.C2 * basis_mu(e1, theta.values[i]);
        ss += d * d;
    }
    fit.residual = std::sqrt(ss / static_cast<double>(field.size())) / std::max(1.0, max_abs(r.values));
    return fit;
}

MnConstants mn_constants(const FrameField& field)
{
    check_size(field, 5);
    const int e1 = field.eps1();
    const auto theta = theta_samples(field);
    const auto r = field.ratio();
    const auto f = fvalues(field);
    MnConstants out{{field.grid, std::vector<double>(field.size())}, {field.grid, std::vector<double>(field.size())}};
    for (std::size_t i = 0; i < field.size(); ++i) {
        const double eta = basis_eta(e1, theta.values[i]), mu = basis_mu(e1, theta.values[i]);
        out.m.values[i] = r.values[i] * eta - f.values[i] * mu;
        out.n.values[i] = -e1 * r.values[i] * mu + f.values[i] * eta;
    }
    out.spread = std::max(constancy_statistic(out.m.values), constancy_statistic(out.n.values));
    return out;
}

ExponentialFit fit_exponential(const FrameField& field)
{
    check_size(field, 2);
    if (field.eps1() != 1) fail(ErrorKind::WrongEpsilon, "exponential form applies to eps1 = +1 only");
    const auto theta = theta_samples(field);
    const auto r = field.ratio();
    std::vector<double> d(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) {
        if (!(r.values[i] > 0.0)) {
            Error e(ErrorKind::NonPositiveRatio, "k1/k2 is not positive at s = " + std::to_string(field.points[i].s));
            e.at_s = field.points[i].s;
            throw e;
        }
        d[i] = std::log(r.values[i]) - theta.values[i];
    }
    const double lnD = mean(d);
    double ss = 0.0;
    for (double v : d) ss += (v - lnD) * (v - lnD);
    return {std::exp(lnD), std::sqrt(ss / static_cast<double>(d.size()))};
}

ResolvedTolerances resolve(const HelixTolerances& tol, const FrameField& field)
{
    ResolvedTolerances out;
    out.tol_H = tol.tol_H.value_or(field.source == FrameSource::Reconstructed ? 1e-3 : 1e-6);
    out.tol_U = tol.tol_U.value_or(1e-3 * (1.0 + field.max_curvature()));
    out.null_tol = tol.null_tol;
    return out;
}

std::string_view to_string(HelixVerdict v)
{
    switch (v) {
    case HelixVerdict::Helix: return "helix";
    case HelixVerdict::NotHelix: return "not_helix";
    case HelixVerdict::InvariantConstantNonHelix: return "invariant_constant_non_helix";
    }
    return "unknown";
}

HelixReport analyze_field(const FrameField& field, const HelixTolerances& tol)
{
    check_size(field, 10);
    HelixReport rep;
    rep.tolerances = resolve(tol, field);
    rep.eps1 = field.eps1();
    rep.eps2 = field.eps2();
    rep.frame_source = field.source;
    rep.stride = field.stride;
    rep.points = field.size();

    const auto H = helix_invariant(field);
    rep.invariant_spread = constancy_statistic(H.values);
    rep.m_value = mean(H.values);

    const auto U = axis_samples(field);
    const auto ar = axis_residual(field, U);
    rep.axis = mean_vector(U.values);
    rep.axis_norm_sq = inner(rep.axis, rep.axis);
    rep.axis_class = causal_character(rep.axis, rep.tolerances.null_tol);
    if (std::abs(rep.axis_norm_sq) > rep.tolerances.null_tol) rep.axis_normalized = normalize(rep.axis);
    rep.axis_residual = ar.residual;
    rep.axis_tu_spread = ar.tu_spread;

    const auto fc = f_function_check(field);
    rep.f_residual = fc.residual;
    const auto gc = gamma_ode_check(field, U);
    rep.gamma_ode_residual = gc.residual;
    rep.beta_residual = gc.beta_residual;

    const auto mn = mn_constants(field);
    rep.mn_spread = mn.spread;
    rep.m_mean = mean(mn.m.values);
    rep.n_mean = mean(mn.n.values);

    try {
        const auto fit = fit_integral_characterization(field);
        rep.fit_C1 = fit.C1;
        rep.fit_C2 = fit.C2;
        rep.fit_residual = fit.residual;
    } catch (const Error& e) {
        rep.notes.push_back(std::string("integral fit skipped: ") + e.what());
    }
    if (rep.eps1 == 1) {
        try {
            const auto fit = fit_exponential(field);
            rep.fit_D = fit.D;
            rep.fit_D_residual = fit.residual;
        } catch (const Error& e) {
            rep.notes.push_back(std::string("exponential fit skipped: ") + e.what());
        }
    }

    const bool h_const = rep.invariant_spread <= rep.tolerances.tol_H;
    const bool axis_ok = rep.axis_residual <= rep.tolerances.tol_U;
    rep.is_helix = h_const && axis_ok;
    rep.verdict = rep.is_helix ? HelixVerdict::Helix
                  : h_const    ? HelixVerdict::InvariantConstantNonHelix
                               : HelixVerdict::NotHelix;
    if (rep.verdict == HelixVerdict::InvariantConstantNonHelix)
        rep.notes.push_back("invariant is constant but the axis vector is not: no fixed axis exists");
    if (rep.is_helix && rep.axis_class == CausalCharacter::Null) rep.notes.push_back("degenerate helix (null axis)");

    const auto theta = theta_samples(field);
    const auto r = field.ratio();
    auto& S = rep.series;
    S.s.resize(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) S.s[i] = field.points[i].s;
    S.r = r.values;
    S.theta = theta.values;
    S.H = H.values;
    S.f = fc.f.values;
    S.m = mn.m.values;
    S.n = mn.n.values;
    S.axis_residual = ar.pointwise;
    return rep;
}

HelixReport detect_helix(const Curve& curve, const HelixTolerances& tol, const FrameOptions& frames)
{
    if (const auto* a = std::get_if<AnalyticCurve>(&curve)) {
        if (causal_class_along(curve).character == CausalCharacter::Spacelike && speed_defect(curve) <= 1e-9)
            return analyze_field(compute_frame_field(curve, frames), tol);
        return analyze_field(compute_frame_field(Curve{reparameterize_arclength(curve, a->step())}, frames), tol);
    }
    const auto& c = std::get<SampledCurve>(curve);
    if (c.points.size() < 9)
        fail(ErrorKind::GridTooShort, "curve has " + std::to_string(c.points.size()) + " samples, need at least 9");
    if (c.arclength_certified || (causal_class_along(curve).character == CausalCharacter::Spacelike &&
                                  speed_defect(curve) <= 1e-9))
        return analyze_field(compute_frame_field(curve, frames), tol);
    return analyze_field(compute_frame_field(Curve{reparameterize_arclength(curve, c.grid.h)}, frames), tol);
}

}  // namespace minkhelix
