#pragma once

#include "minkhelix/minkowski.hpp"
#include "minkhelix/numerics.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace minkhelix {

/// A closed-form curve with exact derivatives up to order 4.
class AnalyticCurve {
public:
    /// jet(s, k) returns the k-th derivative of the position map (k = 0 is the position).
    using Jet = std::function<Vec4(double s, int order)>;

    AnalyticCurve(std::string name, std::map<std::string, double> params, Jet jet, double s_min, double s_max,
                  double h);

    Vec4 evaluate(double s) const;
    Vec4 derivative(double s, int order) const;

    double s_min() const { return s_min_; }
    double s_max() const { return s_max_; }
    /// Sampling step used when the curve is analysed on a grid.
    double step() const { return h_; }
    UniformGrid grid() const { return UniformGrid::covering(s_min_, s_max_, h_); }
    const std::string& name() const { return name_; }
    const std::map<std::string, double>& params() const { return params_; }

private:
    void check_domain(double s) const;

    std::string name_;
    std::map<std::string, double> params_;
    Jet jet_;
    double s_min_, s_max_, h_;
};

/// A curve known only through samples on a uniform parameter grid.
struct SampledCurve {
    UniformGrid grid;
    std::vector<Vec4> points;
    /// True when the grid parameter is known to be pseudo-arclength.
    bool arclength_certified = false;

    SampledVec4 samples() const { return {grid, points}; }
    SampledVec4 derivative_samples(int order, std::size_t stride = 1, int accuracy = 4) const;

    /// Interpolated position (local degree-5 Lagrange).
    Vec4 evaluate(double s) const;
    /// Finite-difference derivative interpolated to s.
    Vec4 derivative(double s, int order) const;
};

using Curve = std::variant<AnalyticCurve, SampledCurve>;

Vec4 evaluate(const Curve& curve, double s);
Vec4 derivative(const Curve& curve, double s, int order);

struct CausalReport {
    CausalCharacter character = CausalCharacter::Spacelike;
    /// Parameter of the first point that is not spacelike.
    std::optional<double> first_violation;
};

/// Spacelike only if the velocity is spacelike (beyond null_tol) at every
/// grid point; otherwise the class of the first offending point.
CausalReport causal_class_along(const Curve& curve, double null_tol = 1e-6);

/// max |g(x', x') - 1| over the grid (stride-1 differences for samples).
double speed_defect(const Curve& curve);

/// Resample to a grid uniform in pseudo-arclength. The spacing is the
/// divisor of the total length closest to target_h, so both ends are kept.
SampledCurve reparameterize_arclength(const Curve& curve, double target_h);

/// Total pseudo-arclength by cumulative quadrature of the speed.
double total_arclength(const Curve& curve);

// Analytic presets.

/// x(s) = (a cosh(alpha s), a sinh(alpha s), b cos(beta s), b sin(beta s)).
/// Constant curvatures; unit speed iff a^2 alpha^2 + b^2 beta^2 = 1.
AnalyticCurve hyperbolic_circular(double a, double alpha, double b, double beta, double s_min, double s_max,
                                  double h);

/// x(s) = p + s v.
AnalyticCurve straight_line(const Vec4& p, const Vec4& v, double s_min, double s_max, double h);

}  // namespace minkhelix
