#pragma once

#include "minkhelix/error.hpp"
#include "minkhelix/minkowski.hpp"

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <valarray>
#include <vector>

namespace minkhelix {

/// s_i = s0 + i h, i = 0 .. n-1.
struct UniformGrid {
    double s0 = 0.0;
    double h = 1.0;
    std::size_t n = 0;

    double at(std::size_t i) const { return s0 + static_cast<double>(i) * h; }
    double back() const { return at(n - 1); }
    UniformGrid slice(std::size_t first, std::size_t count) const { return {at(first), h, count}; }

    /// Grid covering [s_min, s_max] with step closest to h_target that lands
    /// on s_max exactly.
    static UniformGrid covering(double s_min, double s_max, double h_target);

    /// Validate an explicit abscissa list: strictly increasing and uniform to
    /// 1e-12 relative to the coordinate magnitude.
    static UniformGrid from_abscissae(std::span<const double> s);
};

/// Values of a function on a uniform grid.
template <class T>
struct Sampled {
    UniformGrid grid;
    std::vector<T> values;

    std::size_t size() const { return values.size(); }
};

using SampledScalar = Sampled<double>;
using SampledVec4 = Sampled<Vec4>;

/// Finite-difference weights (Fornberg) for the derivative of the given order
/// at x0 from values at `nodes`. Exact for polynomials of degree < nodes.size().
std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order);

namespace detail {

struct Stencil {
    int first_offset;
    std::vector<double> weights;  // unit spacing
};

/// Half-width of the central stencil for a derivative order and accuracy.
int central_half_width(int order, int accuracy);

/// Window (first offset, size) in lattice steps used at a point that has
/// `below` lattice neighbours before it and `above` after it.
std::pair<int, int> stencil_window(int order, int accuracy, int below, int above);

Stencil make_stencil(int order, int first_offset, int size);

}  // namespace detail

/// Finite differences of order 1..4 on a uniform grid, fourth-order accurate
/// by default (6 and 8 are also accepted). Interior points use central
/// stencils (5 points for orders 1-2, 7 for 3-4 at fourth order); points near
/// the ends use one-sided stencils of the same accuracy. The stencil spacing
/// is `stride` grid steps, so each residue class mod `stride` is differenced
/// independently. Output lives on the input grid. Samples enter as differences
/// from the value at the evaluation point, so constants differentiate to 0 exactly.
template <class T>
Sampled<T> central_difference(const Sampled<T>& f, int order, std::size_t stride = 1, int accuracy = 4)
{
    if (order < 1 || order > 4)
        fail(ErrorKind::OrderUnsupported, "finite differences support orders 1..4, got " + std::to_string(order));
    if (accuracy != 4 && accuracy != 6 && accuracy != 8)
        fail(ErrorKind::OrderUnsupported, "finite difference accuracy must be 4, 6 or 8");
    if (stride == 0) fail(ErrorKind::NonUniformGrid, "stride must be positive");
    const std::size_t n = f.values.size();
    if (n < 5 * stride)
        fail(ErrorKind::GridTooShort, "need at least 5 lattice points per stencil, have " + std::to_string(n) +
                                          " samples at stride " + std::to_string(stride));
    const double step = f.grid.h * static_cast<double>(stride);
    double scale = 1.0;
    for (int k = 0; k < order; ++k) scale /= step;

    std::map<std::pair<int, int>, detail::Stencil> cache;
    Sampled<T> out{f.grid, std::vector<T>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const int below = static_cast<int>(i / stride);
        const int above = static_cast<int>((n - 1 - i) / stride);
        const auto window = detail::stencil_window(order, accuracy, below, above);
        auto it = cache.find(window);
        if (it == cache.end())
            it = cache.emplace(window, detail::make_stencil(order, window.first, window.second)).first;
        const auto& st = it->second;
        T acc{};
        for (std::size_t k = 0; k < st.weights.size(); ++k) {
            const long idx = static_cast<long>(i) + (st.first_offset + static_cast<long>(k)) * static_cast<long>(stride);
            acc += st.weights[k] * (f.values[static_cast<std::size_t>(idx)] - f.values[i]);
        }
        out.values[i] = scale * acc;
    }
    return out;
}

/// theta_i = integral of f from s_0 to s_i. Composite Simpson at even nodes and
/// a four-point cubic rule for the half-panels, so fourth-order throughout.
SampledScalar cumulative_quadrature(const SampledScalar& f);

using State = std::valarray<double>;
using OdeRhs = std::function<State(double, const State&)>;

/// Classic fourth-order Runge-Kutta on the grid; result[0] == y0.
std::vector<State> rk4_integrate(const OdeRhs& rhs, const State& y0, const UniformGrid& grid);

/// (max - min) / max(1, max |v|). Zero iff all values are equal.
double constancy_statistic(std::span<const double> values);

double mean(std::span<const double> values);
double max_abs(std::span<const double> values);

/// Fritsch-Carlson monotone piecewise cubic through strictly increasing x.
class MonotoneCubic {
public:
    MonotoneCubic(std::vector<double> x, std::vector<double> y);
    double operator()(double t) const;

private:
    std::vector<double> x_, y_, m_;
};

/// Cubic Hermite interpolation of tabulated values with known derivatives.
double hermite_interpolate(const UniformGrid& grid, std::span<const double> values,
                           std::span<const double> derivatives, double s);

/// Local Lagrange interpolation of degree `points - 1` around s.
template <class T>
T lagrange_interpolate(const UniformGrid& grid, std::span<const T> values, double s, std::size_t points = 6)
{
    const std::size_t n = values.size();
    if (points > n) points = n;
    const double u = (s - grid.s0) / grid.h;
    long first = static_cast<long>(std::floor(u)) - static_cast<long>(points / 2) + 1;
    if (first < 0) first = 0;
    if (first + static_cast<long>(points) > static_cast<long>(n)) first = static_cast<long>(n - points);
    T acc{};
    for (std::size_t j = 0; j < points; ++j) {
        double w = 1.0;
        const double xj = static_cast<double>(first + static_cast<long>(j));
        for (std::size_t m = 0; m < points; ++m) {
            if (m == j) continue;
            const double xm = static_cast<double>(first + static_cast<long>(m));
            w *= (u - xm) / (xj - xm);
        }
        acc += w * values[static_cast<std::size_t>(first) + j];
    }
    return acc;
}

/// Gauss-Legendre (8 nodes) integral of f over [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b);

}  // namespace minkhelix
