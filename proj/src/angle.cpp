#include "rotforce/angle.hpp"

#include <charconv>
#include <cmath>

namespace rotforce {

double frac(double x) {
    double f = x - std::floor(x);
    return f >= 1.0 ? 0.0 : f;
}

double wrap_signed(double x) {
    double f = frac(x);
    return f >= 0.5 ? f - 1.0 : f;
}

double abs_angle(double x) { return std::abs(wrap_signed(x)); }

double circular_distance(double a, double b) { return abs_angle(a - b); }

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

Angle Angle::from_double(double v) {
    Angle a;
    a.value_ = frac(v);
    a.exact_.reset();
    return a;
}

Angle Angle::from_rational(const Rational& r) {
    Angle a;
    a.exact_ = mod1(r);
    a.value_ = frac(to_double(*a.exact_));
    return a;
}

std::string Angle::to_string() const {
    return exact_ ? rotforce::to_string(*exact_) : format_double(value_);
}

Angle Angle::operator-() const {
    if (exact_) return from_rational(-*exact_);
    return from_double(-value_);
}

Angle Angle::times(long k) const {
    if (exact_) return from_rational(*exact_ * k);
    return from_double(value_ * static_cast<double>(k));
}

Angle operator+(const Angle& a, const Angle& b) {
    if (a.exact_ && b.exact_) return Angle::from_rational(*a.exact_ + *b.exact_);
    return Angle::from_double(a.value_ + b.value_);
}

bool operator==(const Angle& a, const Angle& b) {
    if (a.exact_ && b.exact_) return *a.exact_ == *b.exact_;
    return a.value_ == b.value_;
}

}  // namespace rotforce
