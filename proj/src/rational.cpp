#include "rotforce/rational.hpp"

#include "rotforce/errors.hpp"

#include <cctype>

namespace rotforce {

namespace {

Integer parse_integer(std::string_view s) {
    if (s.empty()) throw InvalidSystem("empty integer literal");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw InvalidSystem("malformed integer '" + std::string(s) + "'");
    Integer v = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw InvalidSystem("malformed integer '" + std::string(s) + "'");
        v = v * 10 + (s[i] - '0');
    }
    return neg ? Integer(-v) : v;
}

Rational parse_decimal(std::string_view s) {
    std::string_view mant = s;
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        mant = s.substr(0, e);
        exp10 = static_cast<long>(parse_integer(s.substr(e + 1)));
    }
    std::string digits;
    bool seen_dot = false;
    for (char c : mant) {
        if (c == '.') {
            if (seen_dot) throw InvalidSystem("malformed number '" + std::string(s) + "'");
            seen_dot = true;
        } else {
            digits.push_back(c);
            if (seen_dot && std::isdigit(static_cast<unsigned char>(c))) --exp10;
        }
    }
    Rational v(parse_integer(digits));
    Integer ten_pow = 1;
    for (long k = 0; k < (exp10 < 0 ? -exp10 : exp10); ++k) ten_pow *= 10;
    return exp10 < 0 ? Rational(v / Rational(ten_pow)) : Rational(v * ten_pow);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw InvalidSystem("empty number");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Integer p = parse_integer(text.substr(0, slash));
        Integer q = parse_integer(text.substr(slash + 1));
        if (q == 0) throw InvalidSystem("zero denominator in '" + std::string(text) + "'");
        return Rational(p, q);
    }
    if (text.find_first_of(".eE") != std::string_view::npos) return parse_decimal(text);
    return Rational(parse_integer(text));
}

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Integer floor(const Rational& r) {
    Integer n = numerator(r);
    Integer d = denominator(r);
    Integer q = n / d;  // truncates toward zero
    if (n < 0 && q * d != n) q -= 1;
    return q;
}

Rational mod1(const Rational& r) { return r - Rational(floor(r)); }

}  // namespace rotforce
