#pragma once

#include "rotforce/angle.hpp"

#include <array>
#include <complex>
#include <string_view>

namespace rotforce::moebius {

/// Half-width of the band around |tr| = 2 that classifies as parabolic.
inline constexpr double kClassifyTolerance = 1e-9;

/// Plain real 2x2 matrix, no normalization.
struct Mat2 {
    double a = 1, b = 0, c = 0, d = 1;

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
};

/// An element of PSL(2,R): a determinant-one real matrix modulo sign.
///
/// The stored representative is normalized so that the first entry (in
/// a, b, c, d order) with magnitude above 1e-14 is positive.
class MoebiusReal {
public:
    MoebiusReal() = default;
    /// Scales by 1/sqrt(det). Throws InvalidMatrix unless det > 0 and all
    /// entries are finite.
    MoebiusReal(double a, double b, double c, double d);
    explicit MoebiusReal(const Mat2& m) : MoebiusReal(m.a, m.b, m.c, m.d) {}

    static MoebiusReal identity() { return {}; }
    /// R(phi) = [[cos phi, -sin phi], [sin phi, cos phi]].
    static MoebiusReal rotation(double phi);
    static MoebiusReal diagonal(double lambda);

    double a() const noexcept { return m_.a; }
    double b() const noexcept { return m_.b; }
    double c() const noexcept { return m_.c; }
    double d() const noexcept { return m_.d; }
    const Mat2& matrix() const noexcept { return m_; }
    double trace() const noexcept { return m_.a + m_.d; }

    MoebiusReal inverse() const;

    /// Action on the upper half plane (and on C generally).
    std::complex<double> apply(std::complex<double> z) const;

    friend MoebiusReal operator*(const MoebiusReal& x, const MoebiusReal& y);

private:
    Mat2 m_;
};

/// Largest entrywise deviation between x and +-y (the smaller of the two).
double distance_mod_sign(const MoebiusReal& x, const MoebiusReal& y);

inline double identity_residual(const MoebiusReal& m) {
    return distance_mod_sign(m, MoebiusReal::identity());
}

/// Element of PSL(2,C); only what the squared trace needs.
class MoebiusComplex {
public:
    using cplx = std::complex<double>;

    MoebiusComplex() = default;
    MoebiusComplex(cplx a, cplx b, cplx c, cplx d);

    cplx a() const noexcept { return a_; }
    cplx b() const noexcept { return b_; }
    cplx c() const noexcept { return c_; }
    cplx d() const noexcept { return d_; }

    MoebiusComplex inverse() const { return {d_, -b_, -c_, a_}; }
    friend MoebiusComplex operator*(const MoebiusComplex& x, const MoebiusComplex& y);

private:
    cplx a_{1}, b_{0}, c_{0}, d_{1};
};

/// A point of the upper half plane.
class HPoint {
public:
    HPoint(double x, double y);
    static HPoint i() { return {0.0, 1.0}; }

    double x() const noexcept { return x_; }
    double y() const noexcept { return y_; }
    std::complex<double> z() const { return {x_, y_}; }

private:
    double x_;
    double y_;
};

enum class IsometryClass { identity, elliptic, parabolic, hyperbolic };

std::string_view to_string(IsometryClass c);

MoebiusReal compose(const MoebiusReal& m1, const MoebiusReal& m2);

IsometryClass classify(const MoebiusReal& m);

/// Signed rotation number in (0,1) of an elliptic element acting on RP^1.
///
/// Orientation: R(phi) advances the circle coordinate s = -arctan(x)/pi by
/// phi/pi, so R(pi*theta) has rotation number theta.
Angle elliptic_rotation_number(const MoebiusReal& m);

/// Elliptic element fixing p with rotation number theta (R(pi*theta)
/// conjugated from i to p).
MoebiusReal rotation_about(const HPoint& p, const Angle& theta);

double hyp_distance(const HPoint& p, const HPoint& q);

/// Translation length l with 2 cosh(l/2) = |tr|.
double translation_length(const MoebiusReal& m);

/// Unique fixed point in the upper half plane of an elliptic element.
HPoint elliptic_fixed_point(const MoebiusReal& m);

struct TriangleRep {
    MoebiusReal A, B, C;  // A*B*C = identity in PSL(2,R)
    HPoint P, Q, R;       // fixed points of A, B, C
    double side_pq;       // hyperbolic length of the side from P to Q
};

/// Generators of the (p,q,r) triangle group as rotations about the vertices
/// of a hyperbolic triangle with angles pi/p, pi/q, pi/r. The order-p vertex
/// sits at i and the order-q vertex on the imaginary axis above it.
TriangleRep triangle_group_rep(int p, int q, int r);

std::complex<double> trace_squared(const MoebiusComplex& m);

}  // namespace rotforce::moebius
