#include "minkhelix/minkowski.hpp"

#include "minkhelix/error.hpp"

#include <cmath>
#include <ostream>

namespace minkhelix {

bool Vec4::is_finite() const
{
    for (double v : c)
        if (!std::isfinite(v)) return false;
    return true;
}

std::ostream& operator<<(std::ostream& os, const Vec4& v)
{
    return os << '(' << v[0] << ", " << v[1] << ", " << v[2] << ", " << v[3] << ')';
}

std::string_view to_string(CausalCharacter c)
{
    switch (c) {
    case CausalCharacter::Spacelike: return "spacelike";
    case CausalCharacter::Timelike: return "timelike";
    case CausalCharacter::Null: return "null";
    }
    return "unknown";
}

double pseudo_norm(const Vec4& v) { return std::sqrt(std::abs(inner(v, v))); }

double euclid_norm(const Vec4& v) { return std::sqrt(euclid_sq(v)); }

CausalCharacter causal_character(const Vec4& v, double null_tol)
{
    const double e = euclid_sq(v);
    if (e == 0.0) return CausalCharacter::Spacelike;
    const double q = inner(v, v);
    const double threshold = null_tol * e;
    if (std::abs(q) <= threshold) return CausalCharacter::Null;
    return q < 0.0 ? CausalCharacter::Timelike : CausalCharacter::Spacelike;
}

Vec4 normalize(const Vec4& v, double null_tol)
{
    if (causal_character(v, null_tol) == CausalCharacter::Null || euclid_sq(v) == 0.0)
        fail(ErrorKind::NullVector, "cannot normalize a null or zero vector");
    return v / pseudo_norm(v);
}

namespace {

double det3(double a, double b, double c, double d, double e, double f, double g, double h, double i)
{
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

}  // namespace

double determinant(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d)
{
    // Expansion along the first row of the column matrix [a b c d].
    double det = 0.0;
    const Vec4* cols[4] = {&a, &b, &c, &d};
    for (std::size_t j = 0; j < 4; ++j) {
        double m[9];
        std::size_t k = 0;
        for (std::size_t row = 1; row < 4; ++row)
            for (std::size_t col = 0; col < 4; ++col)
                if (col != j) m[k++] = (*cols[col])[row];
        const double minor = det3(m[0], m[1], m[2], m[3], m[4], m[5], m[6], m[7], m[8]);
        det += ((j % 2 == 0) ? 1.0 : -1.0) * (*cols[j])[0] * minor;
    }
    return det;
}

Vec4 g_orthogonal_complement(const Vec4& a, const Vec4& b, const Vec4& c)
{
    auto lower = [](const Vec4& v) { return Vec4(-v[0], v[1], v[2], v[3]); };
    const Vec4 rows[3] = {lower(a), lower(b), lower(c)};
    Vec4 n;
    for (std::size_t j = 0; j < 4; ++j) {
        double m[9];
        std::size_t k = 0;
        for (const auto& r : rows)
            for (std::size_t col = 0; col < 4; ++col)
                if (col != j) m[k++] = r[col];
        n[j] = ((j % 2 == 0) ? 1.0 : -1.0) * det3(m[0], m[1], m[2], m[3], m[4], m[5], m[6], m[7], m[8]);
    }
    return n;
}

}  // namespace minkhelix
