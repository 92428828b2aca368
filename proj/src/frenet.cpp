#include "minkhelix/frenet.hpp"

#include "minkhelix/error.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace minkhelix {

std::array<double, 4> FrenetApparatus::signature() const
{
    return {1.0, static_cast<double>(eps1), static_cast<double>(-eps1 * eps2), static_cast<double>(eps2)};
}

double gram_defect(const std::array<Vec4, 4>& frame, int eps1, int eps2)
{
    const double diag[4] = {1.0, static_cast<double>(eps1), static_cast<double>(-eps1 * eps2),
                            static_cast<double>(eps2)};
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i; j < 4; ++j)
            worst = std::max(worst, std::abs(inner(frame[i], frame[j]) - (i == j ? diag[i] : 0.0)));
    return worst;
}

double gram_defect(const FrenetApparatus& a) { return gram_defect(a.frame(), a.eps1, a.eps2); }

double frame_determinant(const FrenetApparatus& a) { return determinant(a.T, a.N, a.B1, a.B2); }

namespace {

[[noreturn]] void throw_at(ErrorKind kind, double s, const std::string& what, std::optional<int> index = {})
{
    std::ostringstream msg;
    msg << what << " at s = " << s;
    Error e(kind, msg.str());
    e.at_s = s;
    e.curvature_index = index;
    throw e;
}

[[noreturn]] void curvature_vanishes(int index, double s, double value)
{
    std::ostringstream what;
    what << "curvature k" << index << " = " << value << " is below the floor";
    throw_at(ErrorKind::CurvatureVanishes, s, what.str(), index);
}

int sign_of(double v) { return v < 0.0 ? -1 : 1; }

}  // namespace

FrenetApparatus compute_apparatus(const CurveJet& jet, const ApparatusOptions& opt)
{
    const double s = jet.s;
    const Vec4& d1 = jet.d1;
    const Vec4& d2 = jet.d2;
    const Vec4& d3 = jet.d3;
    const Vec4& d4 = jet.d4;

    if (!(d1.is_finite() && d2.is_finite() && d3.is_finite() && d4.is_finite()))
        throw_at(ErrorKind::NonFiniteState, s, "non-finite derivative");
    if (causal_character(d1, opt.null_tol) != CausalCharacter::Spacelike || euclid_sq(d1) == 0.0)
        throw_at(ErrorKind::NotSpacelike, s, "velocity is not spacelike");
    const double speed_sq = inner(d1, d1);
    if (std::abs(speed_sq - 1.0) > opt.unit_speed_tol) {
        std::ostringstream what;
        what << "g(x', x') = " << speed_sq << " is not unit";
        throw_at(ErrorKind::NotUnitSpeed, s, what.str());
    }

    FrenetApparatus a;
    a.s = s;
    a.T = d1;

    // T' = k1 N
    const double q2 = inner(d2, d2);
    a.k1 = std::sqrt(std::abs(q2));
    if (a.k1 < opt.k_floor) curvature_vanishes(1, s, a.k1);
    a.eps1 = sign_of(q2);
    const double e1 = a.eps1;
    const double k1 = a.k1;
    a.N = d2 / k1;
    const double dk1 = e1 * inner(d2, d3) / k1;
    const Vec4 dN = d3 / k1 - (dk1 / (k1 * k1)) * d2;

    // N' + eps1 k1 T = k2 B1
    const Vec4 W = dN + (e1 * k1) * a.T;
    const double qW = inner(W, W);
    a.k2 = std::sqrt(std::abs(qW));
    if (a.k2 < opt.k_floor) curvature_vanishes(2, s, a.k2);
    const double sigma = sign_of(qW);  // g(B1, B1) = -eps1 eps2
    a.eps2 = static_cast<int>(-e1 * sigma);
    if (a.eps1 == -1 && a.eps2 == -1)
        throw_at(ErrorKind::SignatureRuleViolation, s, "frame would carry two timelike vectors");
    a.B1 = W / a.k2;

    const double ddk1 = (e1 * (inner(d3, d3) + inner(d2, d4)) - dk1 * dk1) / k1;
    const Vec4 ddN = d4 / k1 - (2.0 * dk1 / (k1 * k1)) * d3 - (ddk1 / (k1 * k1)) * d2 +
                     (2.0 * dk1 * dk1 / (k1 * k1 * k1)) * d2;
    const Vec4 dW = ddN + e1 * (dk1 * a.T + k1 * d2);
    const double dk2 = sigma * inner(W, dW) / a.k2;
    const Vec4 dB1 = dW / a.k2 - (dk2 / (a.k2 * a.k2)) * W;

    // B2 spans the g-orthogonal complement of {T, N, B1}.
    Vec4 b2 = g_orthogonal_complement(a.T, a.N, a.B1);
    const double q4 = inner(b2, b2);
    if (euclid_sq(b2) == 0.0 || sign_of(q4) != a.eps2)
        throw_at(ErrorKind::SignatureRuleViolation, s, "second binormal has the wrong causal character");
    b2 /= std::sqrt(std::abs(q4));
    if (determinant(a.T, a.N, a.B1, b2) < 0.0) b2 = -b2;
    a.B2 = b2;

    a.k3 = a.eps2 * inner(dB1, a.B2);
    if (std::abs(a.k3) < opt.k_floor) curvature_vanishes(3, s, a.k3);
    return a;
}

FrenetApparatus compute_apparatus(const Curve& curve, double s, const ApparatusOptions& options)
{
    return compute_apparatus(
        CurveJet{s, derivative(curve, s, 1), derivative(curve, s, 2), derivative(curve, s, 3), derivative(curve, s, 4)},
        options);
}

std::string_view to_string(FrameSource source)
{
    switch (source) {
    case FrameSource::Analytic: return "analytic";
    case FrameSource::Reconstructed: return "reconstructed";
    case FrameSource::Carried: return "carried";
    }
    return "unknown";
}

namespace {

template <class F>
SampledScalar field_scalar(const FrameField& f, F get)
{
    SampledScalar out{f.grid, std::vector<double>(f.points.size())};
    for (std::size_t i = 0; i < f.points.size(); ++i) out.values[i] = get(f.points[i]);
    return out;
}

}  // namespace

SampledScalar FrameField::k1() const
{
    return field_scalar(*this, [](const FrenetApparatus& a) { return a.k1; });
}
SampledScalar FrameField::k2() const
{
    return field_scalar(*this, [](const FrenetApparatus& a) { return a.k2; });
}
SampledScalar FrameField::k3() const
{
    return field_scalar(*this, [](const FrenetApparatus& a) { return a.k3; });
}
SampledScalar FrameField::ratio() const
{
    return field_scalar(*this, [](const FrenetApparatus& a) { return a.k1 / a.k2; });
}

double FrameField::max_curvature() const
{
    double m = 0.0;
    for (const auto& a : points) m = std::max({m, std::abs(a.k1), std::abs(a.k2), std::abs(a.k3)});
    return m;
}

std::vector<double> frenet_residual(const FrameField& field)
{
    const std::size_t n = field.size();
    auto column = [&](auto member) {
        SampledVec4 v{field.grid, std::vector<Vec4>(n)};
        for (std::size_t i = 0; i < n; ++i) v.values[i] = field.points[i].*member;
        return field_derivative(field, v, 1);
    };
    const auto dT = column(&FrenetApparatus::T);
    const auto dN = column(&FrenetApparatus::N);
    const auto dB1 = column(&FrenetApparatus::B1);
    const auto dB2 = column(&FrenetApparatus::B2);

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = field.points[i];
        const double e1 = a.eps1, e2 = a.eps2;
        const Vec4 r1 = dT.values[i] - a.k1 * a.N;
        const Vec4 r2 = dN.values[i] + (e1 * a.k1) * a.T - a.k2 * a.B1;
        const Vec4 r3 = dB1.values[i] - (e2 * a.k2) * a.N - a.k3 * a.B2;
        const Vec4 r4 = dB2.values[i] - (e1 * a.k3) * a.B1;
        out[i] = std::sqrt(euclid_sq(r1) + euclid_sq(r2) + euclid_sq(r3) + euclid_sq(r4));
    }
    return out;
}

void finalize_frame_field(FrameField& field)
{
    if (field.points.empty()) fail(ErrorKind::GridTooShort, "empty frame field");
    const int e1 = field.points.front().eps1, e2 = field.points.front().eps2;
    for (const auto& a : field.points) {
        if (a.eps1 != e1 || a.eps2 != e2) {
            std::ostringstream msg;
            msg << "(eps1, eps2) changes from (" << e1 << ", " << e2 << ") to (" << a.eps1 << ", " << a.eps2
                << ") at s = " << a.s;
            Error err(ErrorKind::SignFlip, msg.str());
            err.at_s = a.s;
            throw err;
        }
    }
    field.residual = frenet_residual(field);
}

namespace {

std::size_t max_stride_for(std::size_t n, std::size_t half)
{
    // Keep at least 9 interior points after dropping half * stride at each end.
    return n > 9 ? std::max<std::size_t>(1, (n - 9) / (2 * half)) : 1;
}

std::vector<FrenetApparatus> sampled_apparatus(const SampledCurve& c, std::size_t stride, int accuracy,
                                               std::size_t first, std::size_t last, std::size_t every,
                                               const ApparatusOptions& opt)
{
    const auto d1 = c.derivative_samples(1, 1);
    const auto d2 = c.derivative_samples(2, stride, accuracy);
    const auto d3 = c.derivative_samples(3, stride, accuracy);
    const auto d4 = c.derivative_samples(4, stride, accuracy);
    std::vector<FrenetApparatus> out;
    for (std::size_t i = first; i <= last; i += every)
        out.push_back(compute_apparatus(CurveJet{c.grid.at(i), d1.values[i], d2.values[i], d3.values[i], d4.values[i]},
                                        opt));
    return out;
}

}  // namespace

FrameField compute_frame_field(const Curve& curve, const FrameOptions& options)
{
    FrameField field;
    if (const auto* a = std::get_if<AnalyticCurve>(&curve)) {
        field.grid = a->grid();
        field.source = FrameSource::Analytic;
        field.points.reserve(field.grid.n);
        for (std::size_t i = 0; i < field.grid.n; ++i) {
            const double s = std::min(field.grid.at(i), a->s_max());
            field.points.push_back(compute_apparatus(curve, s, options.apparatus));
        }
        finalize_frame_field(field);
        return field;
    }

    const auto& c = std::get<SampledCurve>(curve);
    const std::size_t n = c.points.size();
    if (n < 9) fail(ErrorKind::GridTooShort, "frame reconstruction needs at least 9 samples, have " + std::to_string(n));
    const double h = c.grid.h;
    const auto half = static_cast<std::size_t>(detail::central_half_width(4, options.accuracy));
    const std::size_t cap = max_stride_for(n, half);
    auto stride_for_step = [&](double step) {
        return std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(step / h)), 1, cap);
    };

    std::size_t stride;
    if (options.stride) {
        stride = std::min(*options.stride, cap);
    } else {
        // Pilot pass at the widest allowed spacing to learn the curvature scale.
        const std::size_t pilot = stride_for_step(options.max_step);
        const std::size_t lo = half * pilot, hi = n - 1 - half * pilot;
        const std::size_t every = std::max<std::size_t>(1, (hi - lo) / 32);
        double k_max = 0.0;
        for (const auto& p : sampled_apparatus(c, pilot, options.accuracy, lo, hi, every, options.apparatus))
            k_max = std::max({k_max, p.k1, p.k2, std::abs(p.k3)});
        const double step = std::min(options.max_step, options.step_curvature / k_max);
        stride = stride_for_step(step);
    }

    const std::size_t first = half * stride, last = n - 1 - half * stride;
    field.source = FrameSource::Reconstructed;
    field.stride = stride;
    field.accuracy = options.accuracy;
    field.grid = c.grid.slice(first, last - first + 1);
    field.points = sampled_apparatus(c, stride, options.accuracy, first, last, 1, options.apparatus);
    finalize_frame_field(field);

    // Integral of k3 over the dropped leading samples, by a quadratic Taylor
    // expansion about the first field point.
    const auto k3 = field.k3();
    const double dk3 = central_difference(k3, 1).values.front();
    const double ddk3 = central_difference(k3, 2).values.front();
    const double delta = field.grid.s0 - c.grid.s0;
    field.theta_start = delta * k3.values.front() - 0.5 * delta * delta * dk3 + delta * delta * delta / 6.0 * ddk3;
    return field;
}

void write_frame_field_csv(const FrameField& field, std::ostream& out)
{
    out << "s,k1,k2,k3,eps1,eps2";
    for (const char* name : {"T", "N", "B1", "B2"})
        for (int j = 1; j <= 4; ++j) out << ',' << name << '_' << j;
    out << '\n';
    char buf[32];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf;
    };
    for (const auto& a : field.points) {
        num(a.s);
        for (double v : {a.k1, a.k2, a.k3}) {
            out << ',';
            num(v);
        }
        out << ',' << a.eps1 << ',' << a.eps2;
        for (const auto& f : a.frame())
            for (std::size_t j = 0; j < 4; ++j) {
                out << ',';
                num(f[j]);
            }
        out << '\n';
    }
}

}  // namespace minkhelix
