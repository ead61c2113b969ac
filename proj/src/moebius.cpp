#include "rotforce/moebius.hpp"

#include "rotforce/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rotforce::moebius {

namespace {

constexpr double kSignThreshold = 1e-14;

Mat2 canonical_sign(Mat2 m) {
    for (double e : {m.a, m.b, m.c, m.d}) {
        if (std::abs(e) > kSignThreshold) {
            if (e < 0) m = {-m.a, -m.b, -m.c, -m.d};
            break;
        }
    }
    return m;
}

double entry_distance(const Mat2& x, const Mat2& y) {
    return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.c - y.c),
                     std::abs(x.d - y.d)});
}

}  // namespace

MoebiusReal::MoebiusReal(double a, double b, double c, double d) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d))
        throw InvalidMatrix("non-finite entry");
    const double det = a * d - b * c;
    if (!(det > 0.0)) throw InvalidMatrix("determinant must be positive, got " + format_double(det));
    const double s = 1.0 / std::sqrt(det);
    m_ = canonical_sign({a * s, b * s, c * s, d * s});
}

MoebiusReal MoebiusReal::rotation(double phi) {
    const double c = std::cos(phi), s = std::sin(phi);
    return {c, -s, s, c};
}

MoebiusReal MoebiusReal::diagonal(double lambda) { return {lambda, 0.0, 0.0, 1.0 / lambda}; }

MoebiusReal MoebiusReal::inverse() const { return {m_.d, -m_.b, -m_.c, m_.a}; }

std::complex<double> MoebiusReal::apply(std::complex<double> z) const {
    return (m_.a * z + m_.b) / (m_.c * z + m_.d);
}

MoebiusReal operator*(const MoebiusReal& x, const MoebiusReal& y) {
    return MoebiusReal(x.m_ * y.m_);
}

double distance_mod_sign(const MoebiusReal& x, const MoebiusReal& y) {
    const Mat2& p = x.matrix();
    const Mat2& q = y.matrix();
    return std::min(entry_distance(p, q), entry_distance(p, {-q.a, -q.b, -q.c, -q.d}));
}

MoebiusComplex::MoebiusComplex(cplx a, cplx b, cplx c, cplx d) {
    const cplx det = a * d - b * c;
    if (std::abs(det) == 0.0 || !std::isfinite(std::abs(det)))
        throw InvalidMatrix("singular complex matrix");
    const cplx s = 1.0 / std::sqrt(det);
    a_ = a * s;
    b_ = b * s;
    c_ = c * s;
    d_ = d * s;
}

MoebiusComplex operator*(const MoebiusComplex& x, const MoebiusComplex& y) {
    return {x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_,
            x.c_ * y.a_ + x.d_ * y.c_, x.c_ * y.b_ + x.d_ * y.d_};
}

HPoint::HPoint(double x, double y) : x_(x), y_(y) {
    if (!(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
        throw InvalidPoint("upper half plane point needs y > 0");
}

std::string_view to_string(IsometryClass c) {
    switch (c) {
        case IsometryClass::identity: return "identity";
        case IsometryClass::elliptic: return "elliptic";
        case IsometryClass::parabolic: return "parabolic";
        case IsometryClass::hyperbolic: return "hyperbolic";
    }
    return "?";
}

MoebiusReal compose(const MoebiusReal& m1, const MoebiusReal& m2) { return m1 * m2; }

IsometryClass classify(const MoebiusReal& m) {
    const double t = std::abs(m.trace());
    if (t < 2.0 - kClassifyTolerance) return IsometryClass::elliptic;
    if (t > 2.0 + kClassifyTolerance) return IsometryClass::hyperbolic;
    return identity_residual(m) <= kClassifyTolerance ? IsometryClass::identity
                                                      : IsometryClass::parabolic;
}

Angle elliptic_rotation_number(const MoebiusReal& m) {
    const double tr = m.trace();
    if (std::abs(tr) >= 2.0 - kClassifyTolerance)
        throw NotElliptic("|tr| = " + format_double(std::abs(tr)));
    // c z0 + d at the fixed point z0 equals (tr + i*sign(c)*sqrt(4 - tr^2)) / 2,
    // and its argument over pi is the rotation number.
    const double sigma = m.c() > 0 ? 1.0 : -1.0;
    const double s = std::sqrt((2.0 - tr) * (2.0 + tr));
    return Angle::from_double(std::atan2(sigma * s, tr) / std::numbers::pi);
}

HPoint elliptic_fixed_point(const MoebiusReal& m) {
    const double tr = m.trace();
    if (std::abs(tr) >= 2.0 - kClassifyTolerance)
        throw NotElliptic("|tr| = " + format_double(std::abs(tr)));
    const double sigma = m.c() > 0 ? 1.0 : -1.0;
    const double s = std::sqrt((2.0 - tr) * (2.0 + tr));
    return {(m.a() - m.d()) / (2.0 * m.c()), sigma * s / (2.0 * m.c())};
}

MoebiusReal rotation_about(const HPoint& p, const Angle& theta) {
    if (theta.value() == 0.0) return MoebiusReal::identity();
    const double r = std::sqrt(p.y());
    const MoebiusReal g(r, p.x() / r, 0.0, 1.0 / r);
    return g * MoebiusReal::rotation(std::numbers::pi * theta.value()) * g.inverse();
}

double hyp_distance(const HPoint& p, const HPoint& q) {
    return 2.0 * std::asinh(std::abs(p.z() - q.z()) / (2.0 * std::sqrt(p.y() * q.y())));
}

double translation_length(const MoebiusReal& m) {
    if (classify(m) != IsometryClass::hyperbolic)
        throw NotHyperbolic("|tr| = " + format_double(std::abs(m.trace())));
    return 2.0 * std::acosh(std::abs(m.trace()) / 2.0);
}

TriangleRep triangle_group_rep(int p, int q, int r) {
    if (p < 2 || q < 2 || r < 2)
        throw NotHyperbolicTriangle("orders must be at least 2");
    const long long P = p, Q = q, R = r;
    if (Q * R + P * R + P * Q >= P * Q * R)
        throw NotHyperbolicTriangle("1/p + 1/q + 1/r must be < 1");

    const double alpha = std::numbers::pi / p;
    const double beta = std::numbers::pi / q;
    const double gamma = std::numbers::pi / r;
    const double side =
        std::acosh((std::cos(alpha) * std::cos(beta) + std::cos(gamma)) / (std::sin(alpha) * std::sin(beta)));

    const HPoint vp = HPoint::i();
    const HPoint vq(0.0, std::exp(side));
    const MoebiusReal A = rotation_about(vp, Angle::from_rational(Rational(1, p)));
    const MoebiusReal B = rotation_about(vq, Angle::from_rational(Rational(1, q)));
    const MoebiusReal C = (A * B).inverse();
    return {A, B, C, vp, vq, elliptic_fixed_point(C), side};
}

std::complex<double> trace_squared(const MoebiusComplex& m) {
    const auto t = m.a() + m.d();
    return t * t;
}

}  // namespace rotforce::moebius
