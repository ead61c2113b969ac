#include "rotforce/quatalg.hpp"

#include "rotforce/errors.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace rotforce::quat {

namespace {

constexpr int kMaxRefinements = 512;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly mul(const Poly& x, const Poly& y) {
    if (x.empty() || y.empty()) return {};
    Poly r(x.size() + y.size() - 1, Rational(0));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
    trim(r);
    return r;
}

Poly sub(const Poly& x, const Poly& y) {
    Poly r(std::max(x.size(), y.size()), Rational(0));
    for (std::size_t i = 0; i < x.size(); ++i) r[i] += x[i];
    for (std::size_t i = 0; i < y.size(); ++i) r[i] -= y[i];
    trim(r);
    return r;
}

// x = q*y + r with deg r < deg y.
std::pair<Poly, Poly> divmod(Poly x, const Poly& y) {
    if (y.empty()) throw std::domain_error("polynomial division by zero");
    trim(x);
    if (deg(x) < deg(y)) return {{}, x};
    Poly q(x.size() - y.size() + 1, Rational(0));
    while (!x.empty() && deg(x) >= deg(y)) {
        const int shift = deg(x) - deg(y);
        const Rational f = x.back() / y.back();
        q[shift] = f;
        for (std::size_t i = 0; i < y.size(); ++i) x[i + shift] -= f * y[i];
        trim(x);
    }
    trim(q);
    return {q, x};
}

Poly derivative(const Poly& p) {
    Poly r;
    for (std::size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * static_cast<long>(i));
    trim(r);
    return r;
}

Rational eval(const Poly& p, const Rational& x) {
    Rational v = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    return v;
}

int sgn(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

int variations(const std::vector<Poly>& seq, const Rational& x) {
    int count = 0, last = 0;
    for (const auto& p : seq) {
        const int s = sgn(eval(p, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

struct Interval {
    Rational lo, hi;
};

Interval imul(const Interval& x, const Interval& y) {
    const Rational p[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

// Range enclosure of p over [lo, hi] by interval Horner.
Interval ieval(const Poly& p, const Interval& x) {
    Interval v{0, 0};
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        v = imul(v, x);
        v.lo += *it;
        v.hi += *it;
    }
    return v;
}

bool is_perfect_square(const Integer& n, Integer& root) {
    if (n < 0) return false;
    root = boost::multiprecision::sqrt(n);
    return root * root == n;
}

std::vector<Integer> divisors(Integer n) {
    if (n < 0) n = -n;
    std::vector<Integer> out;
    for (Integer d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    std::vector<Integer> signed_out;
    for (const auto& d : out) {
        signed_out.push_back(d);
        signed_out.push_back(-d);
    }
    return signed_out;
}

// Monic integer polynomial of degree <= 4: rational roots, then quadratic pairs.
bool irreducible(const std::vector<Integer>& c) {
    const int n = static_cast<int>(c.size()) - 1;
    if (n <= 1) return true;
    if (c[0] == 0) return false;
    auto value = [&](const Integer& x) {
        Integer v = 0;
        for (int i = n; i >= 0; --i) v = v * x + c[i];
        return v;
    };
    for (const auto& d : divisors(c[0]))
        if (value(d) == 0) return false;
    if (n < 4) return true;
    // x^4 + c3 x^3 + c2 x^2 + c1 x + c0 = (x^2 + a x + b)(x^2 + e x + d)
    for (const auto& b : divisors(c[0])) {
        const Integer d = c[0] / b;
        if (b != d) {
            const Integer num = c[1] - b * c[3];
            const Integer den = d - b;
            if (num % den != 0) continue;
            const Integer a = num / den;
            const Integer e = c[3] - a;
            if (b + d + a * e == c[2]) return false;
        } else {
            if (c[1] != b * c[3]) continue;
            Integer r;
            const Integer disc = c[3] * c[3] - 4 * (c[2] - 2 * b);
            if (is_perfect_square(disc, r) && (c[3] + r) % 2 == 0) return false;
        }
    }
    return true;
}

// Scanner for polynomial text.
struct PolyScanner {
    std::string_view s;
    std::size_t pos = 0;
    char var;
    int line;

    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, line, static_cast<int>(pos) + 1); }

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool at(char ch) {
        skip();
        return pos < s.size() && s[pos] == ch;
    }
    bool number_ahead() {
        skip();
        return pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.');
    }
    Rational number() {
        skip();
        const std::size_t start = pos;
        while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.')) ++pos;
        if (start == pos) fail("expected a number");
        return parse_rational(s.substr(start, pos - start));
    }
    long integer() {
        const Rational r = number();
        if (denominator(r) != 1 || r > 64) fail("expected a small non-negative integer exponent");
        return static_cast<long>(numerator(r));
    }

    Poly parse() {
        Poly out;
        skip();
        if (pos == s.size()) fail("empty polynomial");
        bool first = true;
        while (true) {
            skip();
            if (pos == s.size()) break;
            int sign = 1;
            if (at('+') || at('-')) {
                sign = s[pos] == '-' ? -1 : 1;
                ++pos;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            Rational coef = 1;
            bool have = false;
            if (number_ahead()) {
                coef = number();
                have = true;
                if (at('/')) {
                    ++pos;
                    const Rational d = number();
                    if (d == 0) fail("division by zero");
                    coef /= d;
                }
                if (at('*')) ++pos;
            }
            long power = 0;
            if (at(var)) {
                ++pos;
                power = 1;
                if (at('^')) {
                    ++pos;
                    power = integer();
                }
                if (at('/')) {
                    ++pos;
                    const Rational d = number();
                    if (d == 0) fail("division by zero");
                    coef /= d;
                }
            } else if (!have) {
                fail(std::string("expected a number or '") + var + "'");
            }
            if (out.size() <= static_cast<std::size_t>(power)) out.resize(power + 1, Rational(0));
            out[power] += sign * coef;
        }
        trim(out);
        return out;
    }
};

}  // namespace

Poly parse_poly(std::string_view text, char var, int line) {
    PolyScanner sc{text, 0, var, line};
    return sc.parse();
}

std::string poly_to_string(const Poly& p, char var) {
    std::string out;
    for (int i = deg(p); i >= 0; --i) {
        const Rational& c = p[i];
        if (c == 0) continue;
        const Rational mag = c < 0 ? Rational(-c) : c;
        if (out.empty()) out += c < 0 ? "-" : "";
        else out += c < 0 ? " - " : " + ";
        const bool unit = mag == 1 && i > 0;
        if (!unit) out += rotforce::to_string(mag);
        if (i > 0) {
            if (!unit) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

NumberField NumberField::create(const std::vector<Integer>& minpoly) {
    std::vector<Integer> c = minpoly;
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.size() < 2) throw InvalidAlgebra("minimal polynomial must have degree at least 1");
    if (c.back() != 1) throw InvalidAlgebra("minimal polynomial must be monic");
    const int n = static_cast<int>(c.size()) - 1;
    if (n > kMaxFieldDegree)
        throw UnsupportedDegree("degree " + std::to_string(n) + " exceeds " + std::to_string(kMaxFieldDegree));

    NumberField f;
    f.minpoly_ = c;
    for (const auto& v : c) f.modulus_.push_back(Rational(v));
    if (!irreducible(c)) throw NotIrreducible(f.minpoly_string() + " factors over Q");

    f.sturm_ = {f.modulus_, derivative(f.modulus_)};
    while (f.sturm_.back().size() > 1) {
        const auto n2 = f.sturm_.size();
        Poly r = divmod(f.sturm_[n2 - 2], f.sturm_[n2 - 1]).second;
        for (auto& x : r) x = -x;
        if (r.empty()) break;
        f.sturm_.push_back(std::move(r));
    }

    // Cauchy bound: every root lies in (-B, B).
    Integer B = 0;
    for (int i = 0; i < n; ++i) B = std::max(B, c[i] < 0 ? Integer(-c[i]) : c[i]);
    const Rational bound = Rational(B + 1);

    const int real = variations(f.sturm_, -bound) - variations(f.sturm_, bound);
    if (real != n)
        throw NotTotallyReal(f.minpoly_string() + " has " + std::to_string(real) + " real roots out of " +
                             std::to_string(n));

    if (n == 1) {
        f.roots_.push_back({Rational(-c[0]), Rational(-c[0])});
    } else {
        std::vector<Interval> todo{{-bound, bound}};
        while (!todo.empty()) {
            const Interval iv = todo.back();
            todo.pop_back();
            const int k = variations(f.sturm_, iv.lo) - variations(f.sturm_, iv.hi);
            if (k == 0) continue;
            if (k == 1) {
                f.roots_.push_back({iv.lo, iv.hi});
                continue;
            }
            const Rational mid = (iv.lo + iv.hi) / 2;
            todo.push_back({iv.lo, mid});
            todo.push_back({mid, iv.hi});
        }
        std::sort(f.roots_.begin(), f.roots_.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
    }
    for (int i = 0; i < n; ++i) {
        const RootInterval r = f.refine(i, Rational(1, Integer(1) << 80));
        f.root_values_.push_back(to_double((r.lo + r.hi) / 2));
    }
    return f;
}

NumberField NumberField::parse(std::string_view text, int line) {
    const Poly p = parse_poly(text, 'x', line);
    std::vector<Integer> c;
    for (const auto& r : p) {
        if (denominator(r) != 1) throw InvalidAlgebra("minimal polynomial needs integer coefficients");
        c.push_back(numerator(r));
    }
    return create(c);
}

std::string NumberField::minpoly_string() const {
    Poly p;
    for (const auto& v : minpoly_) p.push_back(Rational(v));
    return poly_to_string(p, 'x');
}

RootInterval NumberField::refine(int place, const Rational& width) const {
    RootInterval r = roots_.at(place);
    if (r.lo == r.hi) return r;
    // The root is simple, so minpoly changes sign across it; the open end lo
    // is never a root and hi is not either (irreducible of degree >= 2).
    const int s_lo = sgn(eval(modulus_, r.lo));
    while (r.hi - r.lo >= width) {
        const Rational mid = (r.lo + r.hi) / 2;
        const int s = sgn(eval(modulus_, mid));
        if (s == s_lo) r.lo = mid;
        else r.hi = mid;
    }
    return r;
}

FieldElem NumberField::zero() const { return FieldElem{std::vector<Rational>(degree(), Rational(0))}; }

FieldElem NumberField::gen() const { return reduce(Poly{0, 1}); }

FieldElem NumberField::from_rational(const Rational& r) const { return reduce(Poly{r}); }

FieldElem NumberField::reduce(const Poly& p) const {
    Poly r = divmod(p, modulus_).second;
    r.resize(degree(), Rational(0));
    return FieldElem{std::move(r)};
}

FieldElem NumberField::parse_elem(std::string_view text, int line) const { return reduce(parse_poly(text, 't', line)); }

std::string NumberField::to_string(const FieldElem& x) const {
    Poly p = x.c;
    trim(p);
    return poly_to_string(p, 't');
}

FieldElem NumberField::add(const FieldElem& x, const FieldElem& y) const {
    FieldElem r = x;
    for (int i = 0; i < degree(); ++i) r.c[i] += y.c[i];
    return r;
}

FieldElem NumberField::sub(const FieldElem& x, const FieldElem& y) const { return add(x, neg(y)); }

FieldElem NumberField::neg(const FieldElem& x) const {
    FieldElem r = x;
    for (auto& v : r.c) v = -v;
    return r;
}

FieldElem NumberField::mul(const FieldElem& x, const FieldElem& y) const { return reduce(quat::mul(x.c, y.c)); }

FieldElem NumberField::inv(const FieldElem& x) const {
    if (is_zero(x)) throw std::domain_error("inverse of zero field element");
    // Extended Euclid on (x, minpoly); the gcd is a nonzero constant.
    Poly r0 = modulus_, r1 = x.c;
    trim(r1);
    Poly s0, s1{1};
    while (deg(r1) > 0) {
        auto [q, r] = divmod(r0, r1);
        Poly s = quat::sub(s0, quat::mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    const Rational c = r1.at(0);
    for (auto& v : s1) v /= c;
    return reduce(s1);
}

bool NumberField::is_zero(const FieldElem& x) const {
    return std::all_of(x.c.begin(), x.c.end(), [](const Rational& v) { return v == 0; });
}

int NumberField::sign(const FieldElem& x, int place) const {
    if (is_zero(x)) return 0;
    Poly p = x.c;
    trim(p);
    RootInterval r = roots_.at(place);
    if (r.lo == r.hi) return sgn(eval(p, r.lo));
    const int s_lo = sgn(eval(modulus_, r.lo));
    for (int k = 0; k < kMaxRefinements; ++k) {
        const Interval v = ieval(p, {r.lo, r.hi});
        if (v.lo > 0) return 1;
        if (v.hi < 0) return -1;
        const Rational mid = (r.lo + r.hi) / 2;
        if (sgn(eval(modulus_, mid)) == s_lo) r.lo = mid;
        else r.hi = mid;
    }
    throw SignUndecidable("sign of " + to_string(x) + " at place " + std::to_string(place) + " not resolved");
}

double NumberField::embed(const FieldElem& x, int place) const {
    const double t = root_values_.at(place);
    double v = 0.0;
    for (auto it = x.c.rbegin(); it != x.c.rend(); ++it) v = v * t + to_double(*it);
    return v;
}

}  // namespace rotforce::quat
