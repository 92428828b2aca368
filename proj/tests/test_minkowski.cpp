#include "minkhelix/error.hpp"
#include "minkhelix/minkowski.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace minkhelix;

namespace {

Vec4 random_vec(std::mt19937& rng, double scale = 3.0)
{
    std::uniform_real_distribution<double> d(-scale, scale);
    return {d(rng), d(rng), d(rng), d(rng)};
}

}  // namespace

TEST(Inner, CoordinateAxes)
{
    EXPECT_EQ(inner({1, 0, 0, 0}, {1, 0, 0, 0}), -1.0);
    EXPECT_EQ(inner({0, 1, 0, 0}, {0, 1, 0, 0}), 1.0);
    EXPECT_EQ(inner({1, 1, 0, 0}, {1, 1, 0, 0}), 0.0);
}

TEST(Inner, SymmetricAndBilinear)
{
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        const Vec4 u = random_vec(rng), v = random_vec(rng), w = random_vec(rng);
        const double a = std::uniform_real_distribution<double>(-2, 2)(rng);
        EXPECT_DOUBLE_EQ(inner(u, v), inner(v, u));
        EXPECT_NEAR(inner(a * u + w, v), a * inner(u, v) + inner(w, v), 1e-12);
    }
}

TEST(PseudoNorm, Examples)
{
    EXPECT_DOUBLE_EQ(pseudo_norm({2, 0, 0, 0}), 2.0);
    EXPECT_DOUBLE_EQ(pseudo_norm({1, 1, 0, 0}), 0.0);
    EXPECT_DOUBLE_EQ(pseudo_norm({0, 3, 4, 0}), 5.0);
    EXPECT_DOUBLE_EQ(euclid_norm({1, 2, 2, 4}), 5.0);
}

TEST(CausalCharacter, Examples)
{
    EXPECT_EQ(causal_character({0, 0, 1, 0}, 1e-12), CausalCharacter::Spacelike);
    EXPECT_EQ(causal_character({2, 1, 0, 0}, 1e-12), CausalCharacter::Timelike);
    EXPECT_EQ(causal_character({1, 1, 0, 0}, 1e-12), CausalCharacter::Null);
    EXPECT_EQ(causal_character({0, 0, 0, 0}, 1e-12), CausalCharacter::Spacelike);
    EXPECT_EQ(to_string(CausalCharacter::Null), "null");
}

TEST(CausalCharacter, ScaleInvariant)
{
    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        const Vec4 v = random_vec(rng);
        const auto c = causal_character(v, 1e-9);
        for (double lambda : {-1e6, -3.0, 1e-5, 0.5, 1e8}) EXPECT_EQ(causal_character(lambda * v, 1e-9), c);
    }
    // Near-null vectors stay null at any magnitude.
    for (double lambda : {1e-6, 1.0, 1e6}) EXPECT_EQ(causal_character(lambda * Vec4{1, 1 + 1e-12, 0, 0}, 1e-9),
                                                      CausalCharacter::Null);
}

TEST(Normalize, Examples)
{
    EXPECT_EQ(normalize({2, 0, 0, 0}), (Vec4{1, 0, 0, 0}));
    EXPECT_EQ(normalize({0, 0, 0, 5}), (Vec4{0, 0, 0, 1}));
    try {
        normalize({1, 1, 0, 0});
        FAIL() << "null vector normalized";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NullVector);
    }
}

TEST(Normalize, UnitPseudoNormAndSameCharacter)
{
    std::mt19937 rng(3);
    for (int i = 0; i < 200; ++i) {
        const Vec4 v = random_vec(rng);
        if (causal_character(v, 1e-6) == CausalCharacter::Null) continue;
        const Vec4 u = normalize(v);
        EXPECT_NEAR(std::abs(inner(u, u)), 1.0, 1e-12);
        EXPECT_EQ(causal_character(u, 1e-6), causal_character(v, 1e-6));
    }
}

TEST(Determinant, BasisAndAlternation)
{
    const Vec4 e0 = Vec4::basis(0), e1 = Vec4::basis(1), e2 = Vec4::basis(2), e3 = Vec4::basis(3);
    EXPECT_DOUBLE_EQ(determinant(e0, e1, e2, e3), 1.0);
    EXPECT_DOUBLE_EQ(determinant(e1, e0, e2, e3), -1.0);
    EXPECT_DOUBLE_EQ(determinant(e0, e0, e2, e3), 0.0);
}

TEST(OrthogonalComplement, IsGOrthogonal)
{
    std::mt19937 rng(5);
    for (int i = 0; i < 200; ++i) {
        const Vec4 a = random_vec(rng), b = random_vec(rng), c = random_vec(rng);
        const Vec4 n = g_orthogonal_complement(a, b, c);
        const double scale = euclid_norm(n) * 3.0;
        EXPECT_NEAR(inner(n, a), 0.0, 1e-12 * scale * 10);
        EXPECT_NEAR(inner(n, b), 0.0, 1e-12 * scale * 10);
        EXPECT_NEAR(inner(n, c), 0.0, 1e-12 * scale * 10);
    }
    const Vec4 a{1, 2, 3, 4};
    EXPECT_EQ(g_orthogonal_complement(a, a, Vec4{0, 1, 0, 0}), Vec4{});
}
