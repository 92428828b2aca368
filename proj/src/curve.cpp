#include "minkhelix/curve.hpp"

#include "minkhelix/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace minkhelix {

AnalyticCurve::AnalyticCurve(std::string name, std::map<std::string, double> params, Jet jet, double s_min,
                             double s_max, double h)
    : name_(std::move(name)), params_(std::move(params)), jet_(std::move(jet)), s_min_(s_min), s_max_(s_max), h_(h)
{
    if (!(s_max_ > s_min_)) fail(ErrorKind::InvalidSpec, "curve interval must satisfy s_min < s_max");
    if (!(h_ > 0.0)) fail(ErrorKind::InvalidSpec, "sampling step must be positive");
}

void AnalyticCurve::check_domain(double s) const
{
    const double slack = 1e-12 * std::max({1.0, std::abs(s_min_), std::abs(s_max_)});
    if (!(s >= s_min_ - slack && s <= s_max_ + slack)) {
        std::ostringstream msg;
        msg << "s = " << s << " outside [" << s_min_ << ", " << s_max_ << "]";
        Error e(ErrorKind::OutOfDomain, msg.str());
        e.at_s = s;
        throw e;
    }
}

Vec4 AnalyticCurve::evaluate(double s) const
{
    check_domain(s);
    return jet_(s, 0);
}

Vec4 AnalyticCurve::derivative(double s, int order) const
{
    if (order < 1 || order > 4) fail(ErrorKind::OrderUnsupported, "derivative order must be 1..4");
    check_domain(s);
    return jet_(s, order);
}

SampledVec4 SampledCurve::derivative_samples(int order, std::size_t stride, int accuracy) const
{
    if (order < 1 || order > 4) fail(ErrorKind::OrderUnsupported, "derivative order must be 1..4");
    return central_difference(samples(), order, stride, accuracy);
}

namespace {

void check_sampled_domain(const SampledCurve& c, double s)
{
    const double lo = c.grid.s0, hi = c.grid.back();
    const double slack = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
    if (!(s >= lo - slack && s <= hi + slack)) {
        std::ostringstream msg;
        msg << "s = " << s << " outside [" << lo << ", " << hi << "]";
        Error e(ErrorKind::OutOfDomain, msg.str());
        e.at_s = s;
        throw e;
    }
}

}  // namespace

Vec4 SampledCurve::evaluate(double s) const
{
    check_sampled_domain(*this, s);
    return lagrange_interpolate<Vec4>(grid, points, s);
}

Vec4 SampledCurve::derivative(double s, int order) const
{
    if (order < 1 || order > 4) fail(ErrorKind::OrderUnsupported, "derivative order must be 1..4");
    check_sampled_domain(*this, s);
    const auto d = derivative_samples(order);
    return lagrange_interpolate<Vec4>(grid, d.values, s);
}

Vec4 evaluate(const Curve& curve, double s)
{
    return std::visit([s](const auto& c) { return c.evaluate(s); }, curve);
}

Vec4 derivative(const Curve& curve, double s, int order)
{
    return std::visit([s, order](const auto& c) { return c.derivative(s, order); }, curve);
}

namespace {

/// Velocity samples on the curve's natural grid.
SampledVec4 velocity_samples(const Curve& curve)
{
    if (const auto* a = std::get_if<AnalyticCurve>(&curve)) {
        const UniformGrid g = a->grid();
        SampledVec4 out{g, std::vector<Vec4>(g.n)};
        for (std::size_t i = 0; i < g.n; ++i) out.values[i] = a->derivative(std::min(g.at(i), a->s_max()), 1);
        return out;
    }
    return std::get<SampledCurve>(curve).derivative_samples(1);
}

}  // namespace

CausalReport causal_class_along(const Curve& curve, double null_tol)
{
    const auto v = velocity_samples(curve);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec4& d = v.values[i];
        CausalCharacter c = causal_character(d, null_tol);
        if (euclid_sq(d) == 0.0) c = CausalCharacter::Null;  // a stationary point is not a spacelike velocity
        if (c != CausalCharacter::Spacelike) return {c, v.grid.at(i)};
    }
    return {};
}

double speed_defect(const Curve& curve)
{
    const auto v = velocity_samples(curve);
    double worst = 0.0;
    for (const auto& d : v.values) worst = std::max(worst, std::abs(inner(d, d) - 1.0));
    return worst;
}

double total_arclength(const Curve& curve)
{
    const auto v = velocity_samples(curve);
    SampledScalar speed{v.grid, std::vector<double>(v.size())};
    for (std::size_t i = 0; i < v.size(); ++i) speed.values[i] = std::sqrt(std::max(0.0, inner(v.values[i], v.values[i])));
    return cumulative_quadrature(speed).values.back();
}

SampledCurve reparameterize_arclength(const Curve& curve, double target_h)
{
    if (!(target_h > 0.0)) fail(ErrorKind::InvalidSpec, "target step must be positive");
    const auto causal = causal_class_along(curve);
    if (causal.character != CausalCharacter::Spacelike) {
        std::ostringstream msg;
        msg << "curve is " << to_string(causal.character) << " at s = " << *causal.first_violation
            << "; only spacelike curves are supported";
        Error e(ErrorKind::NotSpacelike, msg.str());
        e.at_s = causal.first_violation;
        throw e;
    }

    const auto v = velocity_samples(curve);
    const UniformGrid& tg = v.grid;
    SampledScalar speed{tg, std::vector<double>(tg.n)};
    for (std::size_t i = 0; i < tg.n; ++i) speed.values[i] = std::sqrt(inner(v.values[i], v.values[i]));
    const auto L = cumulative_quadrature(speed);
    const double total = L.values.back();
    const double intervals = std::max(1.0, std::round(total / target_h));
    const auto n_out = static_cast<std::size_t>(intervals) + 1;
    const double h_out = total / intervals;

    std::vector<double> t_nodes(tg.n);
    for (std::size_t i = 0; i < tg.n; ++i) t_nodes[i] = tg.at(i);
    const MonotoneCubic inverse(L.values, t_nodes);

    const auto* analytic = std::get_if<AnalyticCurve>(&curve);
    const auto* sampled = std::get_if<SampledCurve>(&curve);
    const double t_lo = tg.s0, t_hi = tg.back();
    auto speed_at = [&](double t) {
        if (analytic) {
            const Vec4 d = analytic->derivative(std::clamp(t, t_lo, t_hi), 1);
            return std::sqrt(inner(d, d));
        }
        return lagrange_interpolate<double>(tg, speed.values, t);
    };
    // L(t) from the nearest tabulated node plus a Gauss-Legendre tail.
    auto length_at = [&](double t) {
        const double u = std::clamp(std::round((t - tg.s0) / tg.h), 0.0, static_cast<double>(tg.n - 1));
        const auto k = static_cast<std::size_t>(u);
        return L.values[k] + gauss_legendre(speed_at, tg.at(k), t);
    };

    SampledCurve out;
    out.grid = {tg.s0, h_out, n_out};
    out.points.resize(n_out);
    for (std::size_t j = 0; j < n_out; ++j) {
        const double target = static_cast<double>(j) * h_out;
        double t = (j + 1 == n_out) ? t_hi : inverse(target);
        if (j > 0 && j + 1 < n_out) {
            for (int iter = 0; iter < 4; ++iter) {
                const double step = (length_at(t) - target) / speed_at(t);
                t = std::clamp(t - step, t_lo, t_hi);
                if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(t))) break;
            }
        }
        out.points[j] = analytic ? analytic->evaluate(std::clamp(t, t_lo, t_hi))
                                 : lagrange_interpolate<Vec4>(sampled->grid, sampled->points, t);
    }
    out.arclength_certified = true;
    return out;
}

AnalyticCurve hyperbolic_circular(double a, double alpha, double b, double beta, double s_min, double s_max, double h)
{
    auto jet = [=](double s, int k) {
        const double ak = a * std::pow(alpha, k);
        const double bk = b * std::pow(beta, k);
        const double ch = std::cosh(alpha * s), sh = std::sinh(alpha * s);
        const double phase = beta * s + k * (M_PI / 2.0);
        const bool even = k % 2 == 0;
        return Vec4(ak * (even ? ch : sh), ak * (even ? sh : ch), bk * std::cos(phase), bk * std::sin(phase));
    };
    return AnalyticCurve("hyperbolic_circular", {{"a", a}, {"alpha", alpha}, {"b", b}, {"beta", beta}}, jet, s_min,
                         s_max, h);
}

AnalyticCurve straight_line(const Vec4& p, const Vec4& v, double s_min, double s_max, double h)
{
    auto jet = [=](double s, int k) {
        if (k == 0) return p + s * v;
        if (k == 1) return v;
        return Vec4{};
    };
    return AnalyticCurve("line",
                         {{"p1", p[0]}, {"p2", p[1]}, {"p3", p[2]}, {"p4", p[3]},
                          {"v1", v[0]}, {"v2", v[1]}, {"v3", v[2]}, {"v4", v[3]}},
                         jet, s_min, s_max, h);
}

}  // namespace minkhelix
