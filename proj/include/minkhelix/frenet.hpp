#pragma once

#include "minkhelix/curve.hpp"
#include "minkhelix/minkowski.hpp"
#include "minkhelix/numerics.hpp"

#include <algorithm>
#include <array>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

namespace minkhelix {

/// Frenet frame and curvatures of a spacelike curve at one parameter value.
///
/// The frame satisfies g(T,T) = 1, g(N,N) = eps1, g(B1,B1) = -eps1 eps2,
/// g(B2,B2) = eps2 and evolves by
///   T'  = k1 N
///   N'  = -eps1 k1 T + k2 B1
///   B1' = eps2 k2 N + k3 B2
///   B2' = eps1 k3 B1
/// k1, k2 are positive; k3 carries the sign fixed by det[T N B1 B2] = +1.
struct FrenetApparatus {
    double s = 0.0;
    Vec4 T, N, B1, B2;
    double k1 = 0.0, k2 = 0.0, k3 = 0.0;
    int eps1 = 1, eps2 = 1;

    /// Expected Gram diagonal diag(1, eps1, -eps1 eps2, eps2).
    std::array<double, 4> signature() const;
    std::array<Vec4, 4> frame() const { return {T, N, B1, B2}; }
};

/// Largest |g(F_i, F_j) - D_ij| over the 10 independent pairs.
double gram_defect(const FrenetApparatus& a);
double gram_defect(const std::array<Vec4, 4>& frame, int eps1, int eps2);

double frame_determinant(const FrenetApparatus& a);

/// Position derivatives of orders 1..4 at one parameter value.
struct CurveJet {
    double s = 0.0;
    Vec4 d1, d2, d3, d4;
};

struct ApparatusOptions {
    /// Curvatures below this are treated as vanishing; the frame is undefined there.
    double k_floor = 1e-6;
    double unit_speed_tol = 1e-6;
    double null_tol = 1e-12;
};

FrenetApparatus compute_apparatus(const CurveJet& jet, const ApparatusOptions& options = {});
FrenetApparatus compute_apparatus(const Curve& curve, double s, const ApparatusOptions& options = {});

enum class FrameSource { Analytic, Reconstructed, Carried };

std::string_view to_string(FrameSource source);

/// Frenet apparatus on a uniform sub-grid of a curve.
struct FrameField {
    UniformGrid grid;
    std::vector<FrenetApparatus> points;
    /// Per-point Frenet equation residual (see frenet_residual).
    std::vector<double> residual;
    /// Integral of k3 from the start of the curve to grid.s0.
    double theta_start = 0.0;
    FrameSource source = FrameSource::Analytic;
    /// Derivative stencil spacing in samples (reconstructed fields only).
    std::size_t stride = 1;
    /// Finite-difference accuracy order used along the field.
    int accuracy = 4;

    std::size_t size() const { return points.size(); }
    int eps1() const { return points.front().eps1; }
    int eps2() const { return points.front().eps2; }

    SampledScalar k1() const;
    SampledScalar k2() const;
    SampledScalar k3() const;
    /// r = k1 / k2.
    SampledScalar ratio() const;
    double max_curvature() const;
};

struct FrameOptions {
    ApparatusOptions apparatus;
    /// Fixed derivative stride for sampled curves; chosen automatically when unset.
    std::optional<std::size_t> stride;
    /// Automatic stride: the stencil spacing H satisfies H <= max_step and
    /// H * (largest curvature) <= step_curvature.
    double max_step = 0.1;
    double step_curvature = 0.25;
    /// Accuracy order of the stencils for derivatives 2..4 and of derivatives
    /// taken along the field.
    int accuracy = 6;
};

/// Frames at every grid point of an analytic curve, or at every interior
/// point of a sampled one (stride times the half-width of the widest stencil
/// is dropped at each end). Throws SignFlip if eps1 or eps2 changes.
FrameField compute_frame_field(const Curve& curve, const FrameOptions& options = {});

/// Derivative of a quantity sampled on the field grid, using the field's
/// stride so reconstruction roundoff is not amplified by the fine step.
template <class T>
Sampled<T> field_derivative(const FrameField& field, const Sampled<T>& values, int order)
{
    const std::size_t stride = std::max<std::size_t>(1, std::min(field.stride, values.size() / 5));
    return central_difference(values, order, stride, field.accuracy);
}

/// Checks sign constancy and fills the residual; used for carried frames too.
void finalize_frame_field(FrameField& field);

/// Euclidean norm of the four stacked Frenet-equation residuals at each point,
/// with frame derivatives from field_derivative.
std::vector<double> frenet_residual(const FrameField& field);

/// `s,k1,k2,k3,eps1,eps2` followed by the 16 frame components.
void write_frame_field_csv(const FrameField& field, std::ostream& out);

}  // namespace minkhelix
