#include "minkhelix/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace minkhelix {

UniformGrid UniformGrid::covering(double s_min, double s_max, double h_target)
{
    if (!(s_max > s_min) || !(h_target > 0.0))
        fail(ErrorKind::InvalidSpec, "grid needs s_max > s_min and a positive step");
    const double intervals = std::max(1.0, std::round((s_max - s_min) / h_target));
    const auto n_int = static_cast<std::size_t>(intervals);
    return {s_min, (s_max - s_min) / intervals, n_int + 1};
}

UniformGrid UniformGrid::from_abscissae(std::span<const double> s)
{
    if (s.size() < 2) fail(ErrorKind::GridTooShort, "a grid needs at least two abscissae");
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (!(s[i] > s[i - 1])) {
            std::ostringstream msg;
            msg << "parameter not strictly increasing at index " << i << " (s = " << s[i] << ")";
            Error e(ErrorKind::NonMonotoneParameter, msg.str());
            e.at_s = s[i];
            throw e;
        }
    }
    const std::size_t n = s.size();
    const double h = (s[n - 1] - s[0]) / static_cast<double>(n - 1);
    const double tol = 1e-12 * std::max({1.0, std::abs(s[0]), std::abs(s[n - 1])});
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(s[i] - (s[0] + static_cast<double>(i) * h)) > tol) {
            std::ostringstream msg;
            msg << "grid spacing is not uniform near s = " << s[i];
            fail(ErrorKind::NonUniformGrid, msg.str());
        }
    }
    return {s[0], h, n};
}

std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order)
{
    const std::size_t n = nodes.size();
    const auto m = static_cast<std::size_t>(order);
    std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (std::size_t k = mn; k >= 1; --k)
                    c[k][i] = c1 * (static_cast<double>(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (std::size_t k = mn; k >= 1; --k)
                c[k][j] = (c4 * c[k][j] - static_cast<double>(k) * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c[m];
}

namespace detail {

int central_half_width(int order, int accuracy) { return ((order + 1) / 2 * 2 - 2 + accuracy) / 2; }

std::pair<int, int> stencil_window(int order, int accuracy, int below, int above)
{
    const int half = central_half_width(order, accuracy);
    if (below >= half && above >= half) return {-half, 2 * half + 1};
    const int width = std::min(order + accuracy, below + above + 1);
    const int first = std::clamp(-width / 2, -below, above - width + 1);
    return {first, width};
}

Stencil make_stencil(int order, int first_offset, int size)
{
    std::vector<double> nodes(static_cast<std::size_t>(size));
    for (int k = 0; k < size; ++k) nodes[static_cast<std::size_t>(k)] = first_offset + k;
    return {first_offset, fd_weights(0.0, nodes, order)};
}

}  // namespace detail

SampledScalar cumulative_quadrature(const SampledScalar& f)
{
    const std::size_t n = f.values.size();
    if (n < 5) fail(ErrorKind::GridTooShort, "cumulative quadrature needs at least 5 samples");
    const double h = f.grid.h;
    const auto& v = f.values;
    SampledScalar out{f.grid, std::vector<double>(n, 0.0)};
    auto& I = out.values;
    for (std::size_t i = 2; i < n; i += 2) I[i] = I[i - 2] + h / 3.0 * (v[i - 2] + 4.0 * v[i - 1] + v[i]);
    for (std::size_t i = 1; i < n; i += 2) {
        if (i + 2 < n)
            I[i] = I[i - 1] + h / 24.0 * (9.0 * v[i - 1] + 19.0 * v[i] - 5.0 * v[i + 1] + v[i + 2]);
        else
            I[i] = I[i - 1] + h / 24.0 * (v[i - 3] - 5.0 * v[i - 2] + 19.0 * v[i - 1] + 9.0 * v[i]);
    }
    return out;
}

namespace {

void check_finite(const State& y, double s)
{
    for (double v : y) {
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "non-finite state at s = " << s;
            Error e(ErrorKind::NonFiniteState, msg.str());
            e.at_s = s;
            throw e;
        }
    }
}

}  // namespace

std::vector<State> rk4_integrate(const OdeRhs& rhs, const State& y0, const UniformGrid& grid)
{
    if (grid.n == 0) fail(ErrorKind::GridTooShort, "empty integration grid");
    std::vector<State> out;
    out.reserve(grid.n);
    out.push_back(y0);
    check_finite(y0, grid.s0);
    const double h = grid.h;
    for (std::size_t i = 1; i < grid.n; ++i) {
        const State& y = out.back();
        const double s = grid.at(i - 1);
        const State k1 = rhs(s, y);
        const State k2 = rhs(s + 0.5 * h, y + (0.5 * h) * k1);
        const State k3 = rhs(s + 0.5 * h, y + (0.5 * h) * k2);
        const State k4 = rhs(s + h, y + h * k3);
        State next = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        check_finite(next, grid.at(i));
        out.push_back(std::move(next));
    }
    return out;
}

double constancy_statistic(std::span<const double> values)
{
    if (values.size() < 2) fail(ErrorKind::EmptyInput, "constancy statistic needs at least two values");
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return (*hi - *lo) / std::max(1.0, max_abs(values));
}

double mean(std::span<const double> values)
{
    if (values.empty()) fail(ErrorKind::EmptyInput, "mean of an empty sequence");
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc / static_cast<double>(values.size());
}

double max_abs(std::span<const double> values)
{
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y))
{
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) fail(ErrorKind::GridTooShort, "monotone cubic needs matching samples, at least two");
    std::vector<double> delta(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) delta[k] = (y_[k + 1] - y_[k]) / (x_[k + 1] - x_[k]);
    m_.assign(n, 0.0);
    m_[0] = delta[0];
    m_[n - 1] = delta[n - 2];
    for (std::size_t k = 1; k + 1 < n; ++k)
        m_[k] = (delta[k - 1] * delta[k] <= 0.0) ? 0.0 : 0.5 * (delta[k - 1] + delta[k]);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (delta[k] == 0.0) {
            m_[k] = m_[k + 1] = 0.0;
            continue;
        }
        const double a = m_[k] / delta[k];
        const double b = m_[k + 1] / delta[k];
        const double r = a * a + b * b;
        if (r > 9.0) {
            const double tau = 3.0 / std::sqrt(r);
            m_[k] = tau * a * delta[k];
            m_[k + 1] = tau * b * delta[k];
        }
    }
}

double MonotoneCubic::operator()(double t) const
{
    const std::size_t n = x_.size();
    std::size_t k;
    if (t <= x_.front())
        k = 0;
    else if (t >= x_.back())
        k = n - 2;
    else
        k = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), t) - x_.begin()) - 1;
    const double dx = x_[k + 1] - x_[k];
    const double u = (t - x_[k]) / dx;
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * y_[k] + (u3 - 2 * u2 + u) * dx * m_[k] + (-2 * u3 + 3 * u2) * y_[k + 1] +
           (u3 - u2) * dx * m_[k + 1];
}

double hermite_interpolate(const UniformGrid& grid, std::span<const double> values,
                           std::span<const double> derivatives, double s)
{
    const std::size_t n = values.size();
    const double u = (s - grid.s0) / grid.h;
    auto k = static_cast<std::size_t>(std::clamp(std::floor(u), 0.0, static_cast<double>(n - 2)));
    const double t = u - static_cast<double>(k);
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * values[k] + (t3 - 2 * t2 + t) * grid.h * derivatives[k] +
           (-2 * t3 + 3 * t2) * values[k + 1] + (t3 - t2) * grid.h * derivatives[k + 1];
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b)
{
    static constexpr std::array<double, 4> x = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                                0.9602898564975363};
    static constexpr std::array<double, 4> w = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                                0.1012285362903763};
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < 4; ++i) acc += w[i] * (f(mid - half * x[i]) + f(mid + half * x[i]));
    return half * acc;
}

}  // namespace minkhelix
