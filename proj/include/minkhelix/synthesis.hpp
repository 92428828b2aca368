#pragma once

#include "minkhelix/curve.hpp"
#include "minkhelix/frenet.hpp"
#include "minkhelix/numerics.hpp"

#include <array>
#include <functional>
#include <map>
#include <string>
#include <utility>

namespace minkhelix {

using ScalarMap = std::function<double(double)>;

enum class ProfileKind { Eq21, Exponential, Constant, Control, Custom };

std::string_view to_string(ProfileKind kind);

struct CurvatureProfile {
    int eps1 = 1, eps2 = 1;
    ScalarMap k1, k2, k3;
    UniformGrid grid;
    ProfileKind kind = ProfileKind::Custom;
    std::string name;
    std::map<std::string, double> params;
    /// theta(s) and r(theta), dr/dtheta when the profile is built from a ratio
    /// law; empty otherwise.
    ScalarMap theta;
    std::function<std::pair<double, double>(double)> ratio_of_theta;
};

/// Coordinate-axis frame with Gram diag(1, eps1, -eps1 eps2, eps2) and det +1.
std::array<Vec4, 4> standard_initial_frame(int eps1, int eps2);

struct SynthesisOptions {
    Vec4 x0;
    /// Indefinite Gram-Schmidt every this many steps; 0 disables it.
    std::size_t reorthonormalize_every = 0;
};

struct SynthesizedCurve {
    SampledCurve curve;
    /// Frames and curvatures carried by the integrator.
    FrameField frames;
    CurvatureProfile profile;
    /// Largest Gram defect of the carried frames.
    double gram_drift = 0.0;
};

SynthesizedCurve synthesize(const CurvatureProfile& profile, const SynthesisOptions& options = {});

/// k1 = k2 (C1 eta(theta) + C2 mu(theta)), theta = integral of k3 from s_min.
CurvatureProfile profile_from_eq21(int eps1, int eps2, double C1, double C2, ScalarMap k2, ScalarMap k3,
                                   const UniformGrid& grid, double k_floor = 1e-6);

/// k1 = D exp(theta) k2 with eps1 = +1.
CurvatureProfile profile_exponential(double D, ScalarMap k2, ScalarMap k3, const UniformGrid& grid, int eps2 = 1);

CurvatureProfile profile_constant(int eps1, int eps2, double k1, double k2, double k3, const UniformGrid& grid);

/// "w_curve": constant (0.7, 0.5, 0.3), eps (+1, +1), s in [0, 10].
/// "linear_theta": r = theta, k2 = k3 = 1, eps (-1, +1), s in [0, 3].
CurvatureProfile profile_nonhelix_control(const std::string& kind, double h = 1e-3);

/// H = r^2 - eps1 (dr/dtheta)^2 evaluated from the ratio law, on the profile grid.
std::vector<double> profile_invariant(const CurvatureProfile& profile);

}  // namespace minkhelix
