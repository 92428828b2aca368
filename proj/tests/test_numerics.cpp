#include "minkhelix/error.hpp"
#include "minkhelix/numerics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace minkhelix;

namespace {

SampledScalar sample(double a, double b, double h, const std::function<double(double)>& f)
{
    const UniformGrid g = UniformGrid::covering(a, b, h);
    SampledScalar s{g, {}};
    for (std::size_t i = 0; i < g.n; ++i) s.values.push_back(f(g.at(i)));
    return s;
}

double max_err(const SampledScalar& s, const std::function<double(double)>& f)
{
    double e = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) e = std::max(e, std::abs(s.values[i] - f(s.grid.at(i))));
    return e;
}

}  // namespace

TEST(Grid, CoveringLandsOnEnds)
{
    const auto g = UniformGrid::covering(0.0, 10.0, 1e-3);
    EXPECT_EQ(g.n, 10001u);
    EXPECT_DOUBLE_EQ(g.back(), 10.0);
    const auto g2 = UniformGrid::covering(0.0, 1.0, 0.3);
    EXPECT_NEAR(g2.back(), 1.0, 1e-15);
}

TEST(Grid, NonUniformAbscissaeRejected)
{
    const std::vector<double> ok{0.0, 0.5, 1.0}, bad{0.0, 0.5, 1.2}, back{0.0, 0.5, 0.4};
    EXPECT_EQ(UniformGrid::from_abscissae(ok).n, 3u);
    EXPECT_THROW(UniformGrid::from_abscissae(bad), Error);
    EXPECT_THROW(UniformGrid::from_abscissae(back), Error);
}

TEST(FiniteDifference, QuadraticIsExact)
{
    const auto f = sample(0, 1, 0.01, [](double s) { return s * s; });
    EXPECT_LE(max_err(central_difference(f, 1), [](double s) { return 2 * s; }), 1e-10);
}

TEST(FiniteDifference, ConstantHasZeroDerivative)
{
    const auto f = sample(0, 1, 0.01, [](double) { return 3.25; });
    for (int order = 1; order <= 4; ++order)
        for (double v : central_difference(f, order).values) EXPECT_EQ(v, 0.0);
}

TEST(FiniteDifference, SineFirstDerivative)
{
    const auto f = sample(0, 1, 1e-3, [](double s) { return std::sin(s); });
    EXPECT_LE(max_err(central_difference(f, 1), [](double s) { return std::cos(s); }), 1e-11);
}

TEST(FiniteDifference, HigherOrdersOnExponential)
{
    const auto f = sample(0, 1, 1e-2, [](double s) { return std::exp(s); });
    for (int order = 2; order <= 4; ++order)
        for (int acc : {4, 6, 8}) {
            const auto d = central_difference(f, order, 1, acc);
            EXPECT_LE(max_err(d, [](double s) { return std::exp(s); }), order == 4 ? 2e-3 : 1e-5)
                << "order " << order << " accuracy " << acc;
        }
}

TEST(FiniteDifference, FourthOrderConvergence)
{
    auto err = [](double h) {
        const auto f = sample(0, 1, h, [](double s) { return std::sin(3 * s); });
        return max_err(central_difference(f, 2), [](double s) { return -9 * std::sin(3 * s); });
    };
    const double ratio = err(0.02) / err(0.01);
    EXPECT_GT(ratio, 12.0);
    EXPECT_LT(ratio, 24.0);
}

TEST(FiniteDifference, StrideMatchesCoarseGrid)
{
    const auto fine = sample(0, 2, 0.01, [](double s) { return std::cos(s); });
    const auto coarse = sample(0, 2, 0.05, [](double s) { return std::cos(s); });
    const auto dfine = central_difference(fine, 2, 5);
    const auto dcoarse = central_difference(coarse, 2);
    for (std::size_t i = 0; i < coarse.size(); ++i) EXPECT_NEAR(dfine.values[5 * i], dcoarse.values[i], 1e-10);
}

TEST(FiniteDifference, Errors)
{
    const auto f = sample(0, 1, 0.1, [](double s) { return s; });
    EXPECT_THROW(central_difference(f, 5), Error);
    EXPECT_THROW(central_difference(f, 1, 1, 5), Error);
    const SampledScalar tiny{UniformGrid{0, 1, 3}, {0, 1, 2}};
    try {
        central_difference(tiny, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::GridTooShort);
    }
}

TEST(FdWeights, ReproducePolynomials)
{
    const std::vector<double> nodes{-2, -1, 0, 1, 2};
    const auto w = fd_weights(0.0, nodes, 1);
    double d = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) d += w[i] * std::pow(nodes[i] + 1.0, 4);
    EXPECT_NEAR(d, 4.0, 1e-12);
}

TEST(Quadrature, Examples)
{
    const auto half = cumulative_quadrature(sample(0, 2, 1e-3, [](double) { return 0.5; }));
    EXPECT_NEAR(half.values.back(), 1.0, 1e-12);
    for (double v : cumulative_quadrature(sample(0, 1, 0.1, [](double) { return 0.0; })).values) EXPECT_EQ(v, 0.0);
    const auto lin = cumulative_quadrature(sample(0, 1, 1e-3, [](double s) { return s; }));
    EXPECT_NEAR(lin.values.back(), 0.5, 1e-12);
    EXPECT_EQ(lin.values.front(), 0.0);
}

TEST(Quadrature, AgreesWithClosedFormEverywhere)
{
    const auto q = cumulative_quadrature(sample(0, 3, 1e-2, [](double s) { return std::cos(s); }));
    EXPECT_LE(max_err(q, [](double s) { return std::sin(s); }), 1e-9);
}

TEST(Rk4, Examples)
{
    const OdeRhs zero = [](double, const State& y) { return State(0.0, y.size()); };
    const auto c = rk4_integrate(zero, State{2.5}, UniformGrid::covering(0, 1, 0.1));
    for (const auto& y : c) EXPECT_EQ(y[0], 2.5);

    const OdeRhs grow = [](double, const State& y) { return State(y); };
    EXPECT_NEAR(rk4_integrate(grow, State{1.0}, UniformGrid::covering(0, 1, 1e-3)).back()[0], std::exp(1.0), 1e-12);

    const OdeRhs decay = [](double, const State& y) { return State(-y); };
    const double y10 = rk4_integrate(decay, State{1.0}, UniformGrid::covering(0, 10, 1e-2)).back()[0];
    EXPECT_NEAR(y10 / std::exp(-10.0), 1.0, 1e-8);
}

TEST(Rk4, NonFiniteStateRaises)
{
    const OdeRhs blow = [](double, const State& y) { return State(y * y * 1e300); };
    try {
        rk4_integrate(blow, State{1.0}, UniformGrid::covering(0, 1, 0.1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonFiniteState);
    }
}

TEST(Constancy, Examples)
{
    const std::vector<double> a{5, 5, 5}, b{0, 1e-9, -1e-9}, c{100, 101};
    EXPECT_EQ(constancy_statistic(a), 0.0);
    EXPECT_NEAR(constancy_statistic(b), 2e-9, 1e-24);
    EXPECT_NEAR(constancy_statistic(c), 1.0 / 101.0, 1e-15);
}

TEST(Constancy, ShiftAndOrderInvariantAtUnitScale)
{
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> d(-0.4, 0.4);
    for (int t = 0; t < 50; ++t) {
        std::vector<double> v(20);
        for (auto& x : v) x = d(rng);
        const double s = constancy_statistic(v);
        std::shuffle(v.begin(), v.end(), rng);
        EXPECT_DOUBLE_EQ(constancy_statistic(v), s);
        for (auto& x : v) x += 0.1;
        EXPECT_NEAR(constancy_statistic(v), s, 1e-15);
    }
}

TEST(Interpolation, HermiteAndLagrange)
{
    const auto g = UniformGrid::covering(0, 1, 0.05);
    std::vector<double> v, dv;
    for (std::size_t i = 0; i < g.n; ++i) {
        v.push_back(std::sin(g.at(i)));
        dv.push_back(std::cos(g.at(i)));
    }
    for (double s : {0.0, 0.013, 0.5, 0.777, 1.0}) {
        EXPECT_NEAR(hermite_interpolate(g, v, dv, s), std::sin(s), 1e-7);
        EXPECT_NEAR(lagrange_interpolate<double>(g, v, s), std::sin(s), 1e-9);
    }
    EXPECT_NEAR(gauss_legendre([](double s) { return std::exp(s); }, 0, 1), std::exp(1.0) - 1.0, 1e-14);
}
