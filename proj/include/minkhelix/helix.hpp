#pragma once

#include "minkhelix/curve.hpp"
#include "minkhelix/frenet.hpp"
#include "minkhelix/minkowski.hpp"
#include "minkhelix/numerics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace minkhelix {

/// eta/mu basis: cosh/sinh for eps1 = +1, cos/sin for eps1 = -1.
double basis_eta(int eps1, double theta);
double basis_mu(int eps1, double theta);

/// theta(s) = integral of k3 from the start of the curve.
SampledScalar theta_samples(const FrameField& field);

/// H = r^2 - eps1 (r'/k3)^2 with r = k1/k2.
SampledScalar helix_invariant(const FrameField& field);

/// U = T - eps2 r B1 + eps1 eps2 (r'/k3) B2, not normalized.
Vec4 axis_vector(const FrenetApparatus& a, double r, double r_prime);
SampledVec4 axis_samples(const FrameField& field);

struct AxisResidual {
    /// sup |U'| (Euclidean).
    double residual = 0.0;
    /// Constancy statistic of g(T, U).
    double tu_spread = 0.0;
    std::vector<double> pointwise;
};
AxisResidual axis_residual(const FrameField& field, const SampledVec4& axis);

struct FCheck {
    SampledScalar f;
    /// sup |f' - eps1 k3 r|.
    double residual = 0.0;
};
FCheck f_function_check(const FrameField& field);

struct GammaCheck {
    /// sup |gamma'' - (k3'/k3) gamma' - eps1 k3^2 gamma| with gamma = eps2 g(U, B2).
    double residual = 0.0;
    /// sup |beta + eps2 r alpha| with alpha = g(U, T), beta = -eps1 eps2 g(U, B1).
    double beta_residual = 0.0;
};
/// Evaluated against one fixed vector, the mean of the axis samples.
GammaCheck gamma_ode_check(const FrameField& field, const SampledVec4& axis);

struct IntegralFit {
    double C1 = 0.0, C2 = 0.0;
    /// RMS misfit / max(1, max|r|).
    double residual = 0.0;
};
/// Least-squares r ~ C1 eta(theta) + C2 mu(theta).
IntegralFit fit_integral_characterization(const FrameField& field);

struct MnConstants {
    SampledScalar m, n;
    double spread = 0.0;
};
/// m = r eta - f mu, n = -eps1 r mu + f eta; both constant on a helix.
MnConstants mn_constants(const FrameField& field);

struct ExponentialFit {
    double D = 0.0;
    double residual = 0.0;
};
/// ln r = ln D + theta with unit slope; eps1 = +1 only.
ExponentialFit fit_exponential(const FrameField& field);

struct HelixTolerances {
    /// Defaults depend on the frame source: 1e-3 reconstructed, 1e-6 otherwise.
    std::optional<double> tol_H;
    /// Default 1e-3 (1 + largest curvature).
    std::optional<double> tol_U;
    double null_tol = 1e-6;
};

struct ResolvedTolerances {
    double tol_H = 0.0, tol_U = 0.0, null_tol = 0.0;
};

ResolvedTolerances resolve(const HelixTolerances& tol, const FrameField& field);

enum class HelixVerdict { Helix, NotHelix, InvariantConstantNonHelix };

std::string_view to_string(HelixVerdict v);

/// Per-point data behind a report, in plot CSV order.
struct HelixSeries {
    std::vector<double> s, r, theta, H, f, m, n, axis_residual;
};

struct HelixReport {
    bool is_helix = false;
    HelixVerdict verdict = HelixVerdict::NotHelix;
    int eps1 = 1, eps2 = 1;
    FrameSource frame_source = FrameSource::Analytic;
    std::size_t stride = 1;
    std::size_t points = 0;

    double invariant_spread = 0.0;
    double m_value = 0.0;
    Vec4 axis;
    double axis_norm_sq = 0.0;
    std::optional<Vec4> axis_normalized;
    CausalCharacter axis_class = CausalCharacter::Spacelike;
    double axis_residual = 0.0;
    double axis_tu_spread = 0.0;
    double f_residual = 0.0;
    double gamma_ode_residual = 0.0;
    double beta_residual = 0.0;
    std::optional<double> fit_C1, fit_C2, fit_residual;
    std::optional<double> fit_D, fit_D_residual;
    double mn_spread = 0.0;
    double m_mean = 0.0, n_mean = 0.0;
    ResolvedTolerances tolerances;
    std::vector<std::string> notes;
    HelixSeries series;
};

HelixReport analyze_field(const FrameField& field, const HelixTolerances& tol = {});

/// Reparameterize if needed, reconstruct frames, then analyze_field.
HelixReport detect_helix(const Curve& curve, const HelixTolerances& tol = {}, const FrameOptions& frames = {});

}  // namespace minkhelix
