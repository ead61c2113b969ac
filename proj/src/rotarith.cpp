#include "rotforce/rotarith.hpp"

#include "rotforce/errors.hpp"
#include "rotforce/moebius.hpp"

#include <cmath>
#include <numbers>

namespace rotforce::rotarith {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kBisectTol = 1e-12;

// Counterclockwise offset of x from lo, exactly when possible.
std::optional<Rational> exact_offset(const Angle& lo, const Angle& x) {
    if (!lo.is_exact() || !x.is_exact()) return std::nullopt;
    return mod1(*x.exact() - *lo.exact());
}

}  // namespace

CircularInterval CircularInterval::full() {
    CircularInterval c;
    c.full_ = true;
    return c;
}

double CircularInterval::length() const { return full_ ? 1.0 : frac(hi_.value() - lo_.value()); }

bool CircularInterval::contains(const Angle& x) const {
    if (full_) return true;
    const auto off = exact_offset(lo_, x);
    const auto len = exact_offset(lo_, hi_);
    if (off && len) return *off <= *len;
    return contains(x.value());
}

bool CircularInterval::contains(double x, double slack) const {
    if (full_) return true;
    const double off = frac(x - lo_.value());
    const double len = frac(hi_.value() - lo_.value());
    return off <= len + slack || off >= 1.0 - slack;
}

std::string CircularInterval::to_string() const {
    if (full_) return "[0,1)";
    return "[" + lo_.to_string() + "," + hi_.to_string() + "]";
}

bool DomainInterval::contains(double x) const {
    const double off = frac(x - lo.value());
    if (punctured()) return off != 0.0;
    return off > 0.0 && off < frac(hi.value() - lo.value());
}

double DomainInterval::length() const { return punctured() ? 1.0 : frac(hi.value() - lo.value()); }

PlusArgument plus_argument(double t1, double t2, double l) {
    const double a = pi * frac(t1);
    const double b = pi * frac(t2);
    const double sh = std::sinh(0.5 * l);
    const double s = 2.0 * sh * sh * (std::sin(a) * std::sin(b));
    const double c = std::cos(0.5 * (a + b));
    const double d = std::sin(0.5 * (a + b));
    return {2.0 * c * c - s, 2.0 * d * d + s};
}

Angle plus_l(const Angle& t1, const Angle& t2, double l) {
    if (!std::isfinite(l)) throw Undefined("l must be finite");
    if (t2.value() == 0.0) return t1;
    if (t1.value() == 0.0) return t2;
    if (l == 0.0) {
        // arccos(cos(pi s))/pi folds s = t1 + t2 in [0,2) back into [0,1].
        if (t1.is_exact() && t2.is_exact()) {
            const Rational s = *t1.exact() + *t2.exact();
            return Angle::from_rational(s <= 1 ? s : 2 - s);
        }
        const double s = t1.value() + t2.value();
        return Angle::from_double(s <= 1.0 ? s : 2.0 - s);
    }
    const PlusArgument arg = plus_argument(t1.value(), t2.value(), l);
    if (arg.one_plus < 0.0)
        throw Undefined("cos argument below -1 for (" + t1.to_string() + ", " + t2.to_string() +
                        ", l = " + format_double(l) + ")");
    return Angle::from_double(2.0 * std::atan2(std::sqrt(arg.one_minus), std::sqrt(arg.one_plus)) / pi);
}

Angle plus_l_oracle(const Angle& t1, const Angle& t2, double l) {
    if (!std::isfinite(l)) throw Undefined("l must be finite");
    if (l == 0.0) return t1 + t2;
    using namespace moebius;
    const MoebiusReal m = rotation_about(HPoint::i(), t1) * rotation_about(HPoint(0.0, std::exp(l)), t2);
    switch (classify(m)) {
        case IsometryClass::identity: return Angle();
        case IsometryClass::elliptic: return elliptic_rotation_number(m);
        default:
            throw Undefined("product is " + std::string(to_string(classify(m))) + " for (" +
                            t1.to_string() + ", " + t2.to_string() + ", l = " + format_double(l) + ")");
    }
}

double plus_l_signed(double t1, double t2, double l) {
    const double a = pi * frac(t1);
    const double b = pi * frac(t2);
    if (l == 0.0) return frac(t1 + t2);
    const PlusArgument arg = plus_argument(t1, t2, l);
    if (!(arg.one_plus > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double u = 2.0 * std::atan2(std::sqrt(arg.one_minus), std::sqrt(arg.one_plus)) / pi;
    // Lower-left entry of R(a) * diag(e^{l/2}, e^{-l/2}) R(b) diag(e^{-l/2}, e^{l/2}).
    const double c = std::sin(a) * std::cos(b) + std::exp(-l) * std::cos(a) * std::sin(b);
    return c >= 0.0 ? frac(u) : frac(-u);
}

DomainInterval domain_interval(double l, const Angle& t) {
    if (!std::isfinite(l)) throw Undefined("l must be finite");
    const Angle opposite = -t;
    if (l == 0.0) {
        if (t.value() == 0.0) throw Undefined("domain interval of (l, t) = (0, 0) is degenerate");
        return {opposite, opposite};
    }
    if (t.value() == 0.0) return {Angle(), Angle()};

    const double tv = t.value();
    auto g = [&](double x) { return plus_argument(tv, x, l).one_plus; };
    auto bisect = [&](double inside, double outside) {
        // g(inside) > 0 >= g(outside)
        while (std::abs(outside - inside) > kBisectTol) {
            const double mid = 0.5 * (inside + outside);
            if (g(mid) > 0.0) inside = mid;
            else outside = mid;
        }
        return inside;
    };
    const double mid = opposite.value();
    const double r1 = bisect(0.0, mid);
    const double r2 = bisect(1.0, mid);
    return {Angle::from_double(r2), Angle::from_double(r1)};
}

Angle divide(const Angle& t, long p, const CircularInterval& select) {
    if (p < 1) throw std::invalid_argument("divide needs p >= 1");
    std::vector<Angle> hits;
    for (long k = 0; k < p; ++k) {
        const Angle cand = t.is_exact() ? Angle::from_rational((*t.exact() + k) / Rational(p))
                                        : Angle::from_double((t.value() + static_cast<double>(k)) / static_cast<double>(p));
        if (select.contains(cand)) hits.push_back(cand);
    }
    if (hits.size() != 1)
        throw Ambiguous(std::to_string(hits.size()) + " of the " + std::to_string(p) + " values of " +
                        t.to_string() + "/" + std::to_string(p) + " lie in " + select.to_string());
    return hits.front();
}

}  // namespace rotforce::rotarith
