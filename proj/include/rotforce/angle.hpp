#pragma once

#include "rotforce/rational.hpp"

#include <optional>
#include <string>

namespace rotforce {

/// Representative of x modulo 1 in [0,1).
double frac(double x);

/// Representative of x modulo 1 in [-1/2, 1/2).
double wrap_signed(double x);

/// Distance from x to 0 on R/Z, in [0, 1/2].
double abs_angle(double x);

/// Distance between a and b on R/Z, in [0, 1/2].
double circular_distance(double a, double b);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

/// A point of R/Z, optionally carrying an exact rational value.
class Angle {
public:
    Angle() = default;

    static Angle from_double(double v);
    static Angle from_rational(const Rational& r);

    double value() const noexcept { return value_; }
    const std::optional<Rational>& exact() const noexcept { return exact_; }
    bool is_exact() const noexcept { return exact_.has_value(); }

    /// "p/q" when exact, otherwise a round-trip decimal.
    std::string to_string() const;

    Angle operator-() const;
    Angle times(long k) const;
    friend Angle operator+(const Angle& a, const Angle& b);
    friend Angle operator-(const Angle& a, const Angle& b) { return a + (-b); }

    /// Exact comparison when both carry rationals, otherwise on values.
    friend bool operator==(const Angle& a, const Angle& b);

private:
    double value_ = 0.0;
    std::optional<Rational> exact_ = Rational(0);
};

}  // namespace rotforce
