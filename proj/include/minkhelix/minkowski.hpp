#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string_view>

namespace minkhelix {

/// A point or vector of Minkowski 4-space. Component 0 (x1) is the timelike
/// coordinate; the metric is g = -dx1^2 + dx2^2 + dx3^2 + dx4^2.
struct Vec4 {
    std::array<double, 4> c{};

    constexpr Vec4() = default;
    constexpr Vec4(double x1, double x2, double x3, double x4) : c{x1, x2, x3, x4} {}

    constexpr double& operator[](std::size_t i) { return c[i]; }
    constexpr double operator[](std::size_t i) const { return c[i]; }

    constexpr Vec4& operator+=(const Vec4& o)
    {
        for (std::size_t i = 0; i < 4; ++i) c[i] += o.c[i];
        return *this;
    }
    constexpr Vec4& operator-=(const Vec4& o)
    {
        for (std::size_t i = 0; i < 4; ++i) c[i] -= o.c[i];
        return *this;
    }
    constexpr Vec4& operator*=(double a)
    {
        for (auto& v : c) v *= a;
        return *this;
    }
    constexpr Vec4& operator/=(double a)
    {
        for (auto& v : c) v /= a;
        return *this;
    }

    friend constexpr Vec4 operator+(Vec4 a, const Vec4& b) { return a += b; }
    friend constexpr Vec4 operator-(Vec4 a, const Vec4& b) { return a -= b; }
    friend constexpr Vec4 operator-(Vec4 a) { return a *= -1.0; }
    friend constexpr Vec4 operator*(double s, Vec4 a) { return a *= s; }
    friend constexpr Vec4 operator*(Vec4 a, double s) { return a *= s; }
    friend constexpr Vec4 operator/(Vec4 a, double s) { return a /= s; }
    friend constexpr bool operator==(const Vec4&, const Vec4&) = default;

    bool is_finite() const;

    static constexpr Vec4 basis(std::size_t i)
    {
        Vec4 v;
        v.c[i] = 1.0;
        return v;
    }
};

std::ostream& operator<<(std::ostream& os, const Vec4& v);

enum class CausalCharacter { Spacelike, Timelike, Null };

std::string_view to_string(CausalCharacter c);

/// g(u, v) = -u1 v1 + u2 v2 + u3 v3 + u4 v4.
constexpr double inner(const Vec4& u, const Vec4& v)
{
    return -u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3];
}

/// sqrt(|g(v, v)|); zero on null vectors.
double pseudo_norm(const Vec4& v);

/// Auxiliary positive-definite norms, used to measure residuals.
constexpr double euclid_sq(const Vec4& v)
{
    return v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3];
}
double euclid_norm(const Vec4& v);

/// Null when |g(v,v)| <= null_tol * euclid_sq(v). The zero vector is
/// spacelike by convention.
CausalCharacter causal_character(const Vec4& v, double null_tol);

/// v / pseudo_norm(v). Throws NullVector when v is null within null_tol.
Vec4 normalize(const Vec4& v, double null_tol = 1e-12);

/// Determinant of the 4x4 matrix whose columns are a, b, c, d.
double determinant(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d);

/// The vector n with g(n, a) = g(n, b) = g(n, c) = 0, built from 3x3 cofactors
/// of the lowered rows. Zero when a, b, c are linearly dependent.
Vec4 g_orthogonal_complement(const Vec4& a, const Vec4& b, const Vec4& c);

}  // namespace minkhelix
