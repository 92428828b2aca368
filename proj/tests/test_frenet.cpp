#include "minkhelix/curve.hpp"
#include "minkhelix/error.hpp"
#include "minkhelix/frenet.hpp"
#include "minkhelix/synthesis.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

using namespace minkhelix;

namespace {

double g(const Vec4& u, const Vec4& v) { return -u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3]; }

template <std::size_t N>
double det(std::array<std::array<double, N>, N> m)
{
    double d = 1.0;
    for (std::size_t c = 0; c < N; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < N; ++r)
            if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
        if (m[p][c] == 0.0) return 0.0;
        if (p != c) {
            std::swap(m[p], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t r = c + 1; r < N; ++r) {
            const double f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < N; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return d;
}

template <std::size_t N>
double gram_det(const std::array<Vec4, N>& v)
{
    std::array<std::array<double, N>, N> m{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) m[i][j] = g(v[i], v[j]);
    return det(m);
}

struct Oracle {
    int eps1, eps2;
    double k1, k2, k3;
};

/// Curvatures from Gram determinants of the derivative jet of a unit-speed curve:
/// D2 = eps1 k1^2, D3 = -eps2 k1^4 k2^2, det[x' x'' x''' x''''] = k1^3 k2^2 k3.
Oracle gram_oracle(const Curve& c, double s)
{
    const Vec4 d1 = derivative(c, s, 1), d2 = derivative(c, s, 2), d3 = derivative(c, s, 3), d4 = derivative(c, s, 4);
    const double D2 = gram_det<2>({d1, d2}), D3 = gram_det<3>({d1, d2, d3});
    std::array<std::array<double, 4>, 4> m{};
    for (std::size_t i = 0; i < 4; ++i) {
        m[i] = {d1[i], d2[i], d3[i], d4[i]};
    }
    Oracle o;
    o.eps1 = D2 > 0 ? 1 : -1;
    o.eps2 = D3 > 0 ? -1 : 1;
    o.k1 = std::sqrt(std::abs(D2));
    o.k2 = std::sqrt(std::abs(D3)) / (o.k1 * o.k1);
    o.k3 = det(m) / (o.k1 * o.k1 * o.k1 * o.k2 * o.k2);
    return o;
}

/// Unit-speed member of the cosh/sinh/cos/sin family.
AnalyticCurve family(double a, double alpha, double beta, double s_max = 5.0, double h = 1e-3)
{
    const double b = std::sqrt(1.0 - a * a * alpha * alpha) / beta;
    return hyperbolic_circular(a, alpha, b, beta, 0.0, s_max, h);
}

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::InvalidSpec;
}

double rel(double a, double b) { return std::abs(a / b - 1.0); }

}  // namespace

TEST(Apparatus, MatchesGramDeterminantOracle)
{
    const std::vector<std::array<double, 3>> params{{1.0, 0.5, 1.0}, {1.0, 0.9, 0.5}, {2.0, 0.3, 1.2}, {0.5, 1.5, 0.8}};
    std::set<int> eps1_seen;
    for (const auto& [a, alpha, beta] : params) {
        const Curve c = family(a, alpha, beta);
        for (double s : {0.0, 1.3, 4.0}) {
            const auto ap = compute_apparatus(c, s);
            const Oracle o = gram_oracle(c, s);
            EXPECT_EQ(ap.eps1, o.eps1);
            EXPECT_EQ(ap.eps2, o.eps2);
            EXPECT_LE(rel(ap.k1, o.k1), 1e-10);
            EXPECT_LE(rel(ap.k2, o.k2), 1e-10);
            EXPECT_LE(rel(ap.k3, o.k3), 1e-9);
            EXPECT_LE(gram_defect(ap), 1e-10);
            EXPECT_NEAR(frame_determinant(ap), 1.0, 1e-10);
            EXPECT_FALSE(ap.eps1 == -1 && ap.eps2 == -1);
            eps1_seen.insert(ap.eps1);
        }
    }
    EXPECT_EQ(eps1_seen.size(), 2u);
}

TEST(Apparatus, DefaultHyperbolicCircular)
{
    const auto ap = compute_apparatus(Curve{family(1.0, 0.5, 1.0)}, 2.0);
    // g(x'', x'') = -1/16 + 3/4.
    EXPECT_NEAR(ap.k1, std::sqrt(11.0) / 4.0, 1e-12);
    EXPECT_EQ(ap.eps1, 1);
    EXPECT_EQ(ap.eps2, -1);
}

TEST(Apparatus, FrameVectorsSatisfyFrenetEquationsPointwise)
{
    const Curve c{family(1.0, 0.9, 0.5)};
    const double s = 1.0, h = 1e-4;
    const auto a = compute_apparatus(c, s);
    const auto m = compute_apparatus(c, s - h), p = compute_apparatus(c, s + h);
    const Vec4 dT = (p.T - m.T) / (2 * h), dN = (p.N - m.N) / (2 * h), dB1 = (p.B1 - m.B1) / (2 * h),
               dB2 = (p.B2 - m.B2) / (2 * h);
    EXPECT_LE(euclid_norm(dT - a.k1 * a.N), 1e-6);
    EXPECT_LE(euclid_norm(dN - (-a.eps1 * a.k1 * a.T + a.k2 * a.B1)), 1e-6);
    EXPECT_LE(euclid_norm(dB1 - (a.eps2 * a.k2 * a.N + a.k3 * a.B2)), 1e-6);
    EXPECT_LE(euclid_norm(dB2 - a.eps1 * a.k3 * a.B1), 1e-6);
}

TEST(Apparatus, NullAccelerationHasNoFrame)
{
    // a = b = 1, alpha = beta = 1/sqrt(2): g(x'', x'') = -1/4 + 1/4.
    const double r = 1.0 / std::sqrt(2.0);
    const Curve c{hyperbolic_circular(1.0, r, 1.0, r, 0.0, 5.0, 1e-3)};
    EXPECT_NEAR(g(derivative(c, 1.0, 1), derivative(c, 1.0, 1)), 1.0, 1e-12);
    EXPECT_THROW(compute_apparatus(c, 1.0), Error);
}

TEST(Apparatus, Errors)
{
    const Curve line{straight_line({0, 0, 0, 0}, {0, 1, 0, 0}, 0.0, 1.0, 1e-2)};
    try {
        compute_apparatus(line, 0.5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CurvatureVanishes);
        ASSERT_TRUE(e.curvature_index);
        EXPECT_EQ(*e.curvature_index, 1);
    }
    const Curve slow{hyperbolic_circular(1.0, 1.0, std::sqrt(3.0) / 2.0, 1.0, 0.0, 5.0, 1e-3)};
    EXPECT_EQ(kind_of([&] { compute_apparatus(slow, 0.5); }), ErrorKind::NotUnitSpeed);
}

TEST(FrameField, AnalyticConstantCurvatures)
{
    const FrameField f = compute_frame_field(Curve{family(1.0, 0.5, 1.0)});
    EXPECT_EQ(f.source, FrameSource::Analytic);
    EXPECT_EQ(f.size(), 5001u);
    for (const auto& k : {f.k1(), f.k2(), f.k3()}) {
        const auto [lo, hi] = std::minmax_element(k.values.begin(), k.values.end());
        EXPECT_LE(*hi - *lo, 1e-6);
    }
    for (const auto& a : f.points) {
        EXPECT_EQ(a.eps1, f.eps1());
        EXPECT_EQ(a.eps2, f.eps2());
    }
    EXPECT_LE(*std::max_element(f.residual.begin(), f.residual.end()), 1e-6);
}

TEST(FrameField, ReconstructsConstantProfile)
{
    const auto profile = profile_constant(1, 1, 0.7, 0.5, 0.3, UniformGrid::covering(0, 10, 1e-3));
    const auto synth = synthesize(profile);
    const FrameField f = compute_frame_field(Curve{synth.curve});
    EXPECT_EQ(f.source, FrameSource::Reconstructed);
    EXPECT_EQ(f.eps1(), 1);
    EXPECT_EQ(f.eps2(), 1);
    for (const auto& a : f.points) {
        EXPECT_LE(rel(a.k1, 0.7), 1e-3);
        EXPECT_LE(rel(a.k2, 0.5), 1e-3);
        EXPECT_LE(rel(a.k3, 0.3), 1e-3);
    }
    EXPECT_GT(f.grid.s0, 0.0);
    EXPECT_LT(f.grid.back(), 10.0);
}

TEST(FrameField, ReconstructsCoshRatio)
{
    const auto one = [](double) { return 1.0; };
    const auto half = [](double) { return 0.5; };
    const auto profile = profile_from_eq21(1, 1, 1.0, 0.0, one, half, UniformGrid::covering(0, 2, 1e-3));
    const FrameField f = compute_frame_field(Curve{synthesize(profile).curve});
    const auto r = f.ratio();
    for (std::size_t i = 0; i < r.size(); ++i) EXPECT_LE(rel(r.values[i], std::cosh(0.5 * r.grid.at(i))), 1e-3);
}

TEST(FrameField, FlatSegmentRejected)
{
    const auto hc = family(1.0, 0.5, 1.0, 4.0, 1e-3);
    const double split = 2.0;
    const Vec4 p = hc.evaluate(split), v = hc.derivative(split, 1);
    const auto grid = UniformGrid::covering(0, 4, 1e-3);
    SampledCurve c{grid, {}, true};
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double s = grid.at(i);
        c.points.push_back(s <= split ? hc.evaluate(s) : p + (s - split) * v);
    }
    EXPECT_EQ(kind_of([&] { compute_frame_field(Curve{c}); }), ErrorKind::CurvatureVanishes);
}

TEST(FrameField, CarriedFramesResidual)
{
    const auto profile = profile_constant(1, 1, 0.7, 0.5, 0.3, UniformGrid::covering(0, 10, 1e-3));
    const auto synth = synthesize(profile);
    EXPECT_LE(*std::max_element(synth.frames.residual.begin(), synth.frames.residual.end()), 1e-7);
}

TEST(FrameField, CorruptedFrameSpikes)
{
    FrameField f = compute_frame_field(Curve{family(1.0, 0.5, 1.0)});
    const std::size_t k = f.size() / 2;
    std::swap(f.points[k].B1, f.points[k].B2);
    const auto res = frenet_residual(f);
    EXPECT_GT(res[k], 1e-1);
    EXPECT_LE(res[k / 2], 1e-6);
}

TEST(FrameField, CsvHeader)
{
    const FrameField f = compute_frame_field(Curve{family(1.0, 0.5, 1.0, 0.1, 0.01)});
    std::stringstream out;
    write_frame_field_csv(f, out);
    std::string header;
    std::getline(out, header);
    EXPECT_EQ(header.rfind("s,k1,k2,k3,eps1,eps2,T_1", 0), 0u);
    std::size_t rows = 0;
    for (std::string line; std::getline(out, line);) ++rows;
    EXPECT_EQ(rows, f.size());
}
