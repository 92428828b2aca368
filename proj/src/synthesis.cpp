#include "minkhelix/synthesis.hpp"

#include "minkhelix/error.hpp"
#include "minkhelix/helix.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace minkhelix {

std::string_view to_string(ProfileKind kind)
{
    switch (kind) {
    case ProfileKind::Eq21: return "eq21";
    case ProfileKind::Exponential: return "exponential";
    case ProfileKind::Constant: return "constant";
    case ProfileKind::Control: return "control";
    case ProfileKind::Custom: return "custom";
    }
    return "unknown";
}

namespace {

void check_signature(int eps1, int eps2)
{
    if ((eps1 != 1 && eps1 != -1) || (eps2 != 1 && eps2 != -1))
        fail(ErrorKind::InvalidSpec, "eps1 and eps2 must be +1 or -1");
    if (eps1 == -1 && eps2 == -1)
        fail(ErrorKind::SignatureRuleViolation, "(eps1, eps2) = (-1, -1) would give two timelike frame vectors");
}

void check_nonvanishing(const ScalarMap& k, int index, const UniformGrid& grid, double k_floor)
{
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double v = k(grid.at(i));
        if (!(std::abs(v) >= k_floor)) {
            std::ostringstream msg;
            msg << "k" << index << " = " << v << " at s = " << grid.at(i);
            Error e(ErrorKind::CurvatureVanishes, msg.str());
            e.at_s = grid.at(i);
            e.curvature_index = index;
            throw e;
        }
    }
}

/// theta(s) from a tabulated cumulative integral of k3, Hermite-interpolated
/// between grid nodes with theta' = k3.
ScalarMap theta_function(const ScalarMap& k3, const UniformGrid& grid)
{
    SampledScalar rate{grid, std::vector<double>(grid.n)};
    for (std::size_t i = 0; i < grid.n; ++i) rate.values[i] = k3(grid.at(i));
    auto table = std::make_shared<const std::pair<SampledScalar, SampledScalar>>(cumulative_quadrature(rate), rate);
    return [table](double s) {
        const auto& [theta, dtheta] = *table;
        return hermite_interpolate(theta.grid, theta.values, dtheta.values, s);
    };
}

// Applies the Frenet matrix to frame rows stored at state[4 + 4j .. 8 + 4j).
State frenet_rhs(const CurvatureProfile& p, double s, const State& y)
{
    const double k1 = p.k1(s), k2 = p.k2(s), k3 = p.k3(s);
    const double e1 = p.eps1, e2 = p.eps2;
    State d(20);
    for (std::size_t c = 0; c < 4; ++c) {
        const double T = y[4 + c], N = y[8 + c], B1 = y[12 + c], B2 = y[16 + c];
        d[c] = T;
        d[4 + c] = k1 * N;
        d[8 + c] = -e1 * k1 * T + k2 * B1;
        d[12 + c] = e2 * k2 * N + k3 * B2;
        d[16 + c] = e1 * k3 * B1;
    }
    return d;
}

Vec4 row(const State& y, std::size_t j) { return {y[4 * j], y[4 * j + 1], y[4 * j + 2], y[4 * j + 3]}; }

void reorthonormalize(State& y)
{
    std::array<Vec4, 4> f{row(y, 1), row(y, 2), row(y, 3), row(y, 4)};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < i; ++j) f[i] -= (inner(f[i], f[j]) / inner(f[j], f[j])) * f[j];
        f[i] = normalize(f[i]);
    }
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t c = 0; c < 4; ++c) y[4 * (j + 1) + c] = f[j][c];
}

}  // namespace

std::array<Vec4, 4> standard_initial_frame(int eps1, int eps2)
{
    check_signature(eps1, eps2);
    const Vec4 e1 = Vec4::basis(0), e2 = Vec4::basis(1), e3 = Vec4::basis(2), e4 = Vec4::basis(3);
    if (eps1 == 1 && eps2 == 1) return {e2, e3, e1, e4};
    if (eps1 == 1) return {e2, e3, -e4, e1};
    return {e2, e1, e3, -e4};
}

SynthesizedCurve synthesize(const CurvatureProfile& profile, const SynthesisOptions& options)
{
    check_signature(profile.eps1, profile.eps2);
    if (!options.x0.is_finite()) fail(ErrorKind::NonFiniteState, "initial point is not finite");
    const auto frame0 = standard_initial_frame(profile.eps1, profile.eps2);
    State y0(20);
    for (std::size_t c = 0; c < 4; ++c) {
        y0[c] = options.x0[c];
        for (std::size_t j = 0; j < 4; ++j) y0[4 * (j + 1) + c] = frame0[j][c];
    }
    const OdeRhs rhs = [&profile](double s, const State& y) { return frenet_rhs(profile, s, y); };

    const UniformGrid& grid = profile.grid;
    std::vector<State> states;
    if (options.reorthonormalize_every == 0) {
        states = rk4_integrate(rhs, y0, grid);
    } else {
        states.push_back(y0);
        std::size_t done = 0;
        while (done + 1 < grid.n) {
            const std::size_t steps = std::min(options.reorthonormalize_every, grid.n - 1 - done);
            auto chunk = rk4_integrate(rhs, states.back(), grid.slice(done, steps + 1));
            reorthonormalize(chunk.back());
            states.insert(states.end(), std::make_move_iterator(chunk.begin() + 1), std::make_move_iterator(chunk.end()));
            done += steps;
        }
    }

    SynthesizedCurve out;
    out.profile = profile;
    out.curve.grid = grid;
    out.curve.arclength_certified = true;
    out.curve.points.reserve(grid.n);
    out.frames.grid = grid;
    out.frames.source = FrameSource::Carried;
    out.frames.points.reserve(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const State& y = states[i];
        const double s = grid.at(i);
        out.curve.points.push_back(row(y, 0));
        FrenetApparatus a;
        a.s = s;
        a.T = row(y, 1);
        a.N = row(y, 2);
        a.B1 = row(y, 3);
        a.B2 = row(y, 4);
        a.k1 = profile.k1(s);
        a.k2 = profile.k2(s);
        a.k3 = profile.k3(s);
        a.eps1 = profile.eps1;
        a.eps2 = profile.eps2;
        out.gram_drift = std::max(out.gram_drift, gram_defect(a));
        out.frames.points.push_back(a);
    }
    finalize_frame_field(out.frames);
    return out;
}

CurvatureProfile profile_from_eq21(int eps1, int eps2, double C1, double C2, ScalarMap k2, ScalarMap k3,
                                   const UniformGrid& grid, double k_floor)
{
    check_signature(eps1, eps2);
    check_nonvanishing(k2, 2, grid, k_floor);
    check_nonvanishing(k3, 3, grid, k_floor);
    CurvatureProfile p;
    p.eps1 = eps1;
    p.eps2 = eps2;
    p.grid = grid;
    p.kind = ProfileKind::Eq21;
    p.name = "eq21";
    p.params = {{"C1", C1}, {"C2", C2}};
    p.theta = theta_function(k3, grid);
    p.ratio_of_theta = [eps1, C1, C2](double t) {
        const double eta = basis_eta(eps1, t), mu = basis_mu(eps1, t);
        // d(eta)/dtheta = eps1 mu, d(mu)/dtheta = eta
        return std::pair{C1 * eta + C2 * mu, C1 * eps1 * mu + C2 * eta};
    };
    p.k2 = k2;
    p.k3 = k3;
    p.k1 = [k2, theta = p.theta, law = p.ratio_of_theta](double s) { return k2(s) * law(theta(s)).first; };
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double v = p.k1(grid.at(i));
        if (!(v > k_floor)) {
            std::ostringstream msg;
            msg << "C1 eta + C2 mu gives k1 = " << v << " at s = " << grid.at(i);
            Error e(ErrorKind::RatioSignViolation, msg.str());
            e.at_s = grid.at(i);
            throw e;
        }
    }
    return p;
}

CurvatureProfile profile_exponential(double D, ScalarMap k2, ScalarMap k3, const UniformGrid& grid, int eps2)
{
    if (!(D > 0.0)) fail(ErrorKind::NonPositiveD, "D must be positive");
    check_signature(1, eps2);
    check_nonvanishing(k2, 2, grid, 1e-6);
    check_nonvanishing(k3, 3, grid, 1e-6);
    CurvatureProfile p;
    p.eps1 = 1;
    p.eps2 = eps2;
    p.grid = grid;
    p.kind = ProfileKind::Exponential;
    p.name = "exponential";
    p.params = {{"D", D}};
    p.theta = theta_function(k3, grid);
    p.ratio_of_theta = [D](double t) {
        const double r = D * std::exp(t);
        return std::pair{r, r};
    };
    p.k2 = k2;
    p.k3 = k3;
    p.k1 = [k2, theta = p.theta, D](double s) { return k2(s) * D * std::exp(theta(s)); };
    return p;
}

CurvatureProfile profile_constant(int eps1, int eps2, double k1, double k2, double k3, const UniformGrid& grid)
{
    check_signature(eps1, eps2);
    CurvatureProfile p;
    p.eps1 = eps1;
    p.eps2 = eps2;
    p.grid = grid;
    p.kind = ProfileKind::Constant;
    p.name = "constant";
    p.params = {{"k1", k1}, {"k2", k2}, {"k3", k3}};
    p.k1 = [k1](double) { return k1; };
    p.k2 = [k2](double) { return k2; };
    p.k3 = [k3](double) { return k3; };
    p.theta = [k3, s0 = grid.s0](double s) { return k3 * (s - s0); };
    if (k2 != 0.0) p.ratio_of_theta = [r = k1 / k2](double) { return std::pair{r, 0.0}; };
    return p;
}

CurvatureProfile profile_nonhelix_control(const std::string& kind, double h)
{
    if (kind == "w_curve") {
        auto p = profile_constant(1, 1, 0.7, 0.5, 0.3, UniformGrid::covering(0.0, 10.0, h));
        p.kind = ProfileKind::Control;
        p.name = kind;
        return p;
    }
    if (kind == "linear_theta") {
        CurvatureProfile p;
        p.eps1 = -1;
        p.eps2 = 1;
        p.grid = UniformGrid::covering(0.0, 3.0, h);
        p.kind = ProfileKind::Control;
        p.name = kind;
        p.k1 = [](double s) { return s; };
        p.k2 = [](double) { return 1.0; };
        p.k3 = [](double) { return 1.0; };
        p.theta = [](double s) { return s; };
        p.ratio_of_theta = [](double t) { return std::pair{t, 1.0}; };
        return p;
    }
    fail(ErrorKind::InvalidSpec, "unknown control profile '" + kind + "'");
}

std::vector<double> profile_invariant(const CurvatureProfile& profile)
{
    if (!profile.ratio_of_theta || !profile.theta)
        fail(ErrorKind::InvalidSpec, "profile '" + profile.name + "' has no ratio law");
    std::vector<double> H(profile.grid.n);
    for (std::size_t i = 0; i < profile.grid.n; ++i) {
        const auto [r, dr] = profile.ratio_of_theta(profile.theta(profile.grid.at(i)));
        H[i] = r * r - profile.eps1 * dr * dr;
    }
    return H;
}

}  // namespace minkhelix
