#pragma once

#include "rotforce/angle.hpp"

namespace rotforce::rotarith {

/// Closed arc of R/Z running counterclockwise from lo to hi. lo == hi is a
/// single point unless the arc is the full circle.
class CircularInterval {
public:
    CircularInterval() = default;
    CircularInterval(Angle lo, Angle hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}
    static CircularInterval full();

    const Angle& lo() const noexcept { return lo_; }
    const Angle& hi() const noexcept { return hi_; }
    bool is_full() const noexcept { return full_; }

    /// Arc length in [0,1].
    double length() const;

    /// Exact when the point and both endpoints are exact rationals.
    bool contains(const Angle& x) const;
    bool contains(double x, double slack = 0.0) const;

    std::string to_string() const;

private:
    Angle lo_, hi_;
    bool full_ = false;
};

/// Open arc (lo, hi) running counterclockwise. When lo == hi the arc is the
/// whole circle minus that point.
struct DomainInterval {
    Angle lo;
    Angle hi;

    bool punctured() const { return lo == hi; }
    bool contains(double x) const;
    double length() const;
    /// Closed complement [hi, lo].
    CircularInterval complement() const { return {hi, lo}; }
};

/// cos(pi t1) cos(pi t2) - cosh(l) sin(pi t1) sin(pi t2), evaluated as
/// 1 + arg and 1 - arg with cancellation-free formulas.
struct PlusArgument {
    double one_plus;
    double one_minus;
};
PlusArgument plus_argument(double t1, double t2, double l);

/// Unsigned deformed sum arccos(arg)/pi in [0,1], reported mod 1 (so a value
/// of 1 reads as 0). Throws Undefined when arg < -1.
Angle plus_l(const Angle& t1, const Angle& t2, double l);

/// Signed deformed sum: rotation number of R_i(t1) o R_{i e^l}(t2), composed
/// as Moebius matrices. Throws Undefined when the product is not elliptic.
Angle plus_l_oracle(const Angle& t1, const Angle& t2, double l);

/// Same product as plus_l_oracle with the matrix entries written out in
/// closed form; returns NaN where the product is not elliptic. Used by the
/// grid scans, where building matrices would dominate the cost.
double plus_l_signed(double t1, double t2, double l);

/// Open arc of t' where plus_l(t, t', l) is defined and nonzero. Endpoints
/// are found by bisection to 1e-12. Throws Undefined for (l, t) = (0, 0).
DomainInterval domain_interval(double l, const Angle& t);

/// The unique (t + k)/p inside select. Throws Ambiguous otherwise.
Angle divide(const Angle& t, long p, const CircularInterval& select);

}  // namespace rotforce::rotarith
