#include "rotforce/eulerorb.hpp"

#include "rotforce/errors.hpp"

#include <algorithm>
#include <charconv>

namespace rotforce::euler {

namespace {

int parse_int(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw InvalidSignature("not an integer: '" + std::string(s) + "'");
    return v;
}

bool lex_less(const ConeRotTuple& a, const ConeRotTuple& b) {
    if (a.n != b.n) return a.n < b.n;
    return std::lexicographical_compare(a.rots.begin(), a.rots.end(), b.rots.begin(), b.rots.end());
}

}  // namespace

OrbifoldSig OrbifoldSig::parse(std::string_view text) {
    OrbifoldSig sig;
    const auto semi = text.find(';');
    sig.genus = parse_int(text.substr(0, semi));
    if (semi != std::string_view::npos) {
        std::string_view rest = text.substr(semi + 1);
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            sig.cone_orders.push_back(parse_int(rest.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
    }
    sig.validate();
    return sig;
}

std::string OrbifoldSig::to_string() const {
    std::string s = std::to_string(genus);
    for (std::size_t i = 0; i < cone_orders.size(); ++i) s += (i == 0 ? ";" : ",") + std::to_string(cone_orders[i]);
    return s;
}

void OrbifoldSig::validate() const {
    if (genus < 0) throw InvalidSignature("genus must be non-negative");
    for (int q : cone_orders)
        if (q < 2) throw InvalidSignature("cone order " + std::to_string(q) + " is below 2");
}

Rational orbifold_euler_char(const OrbifoldSig& sig) {
    sig.validate();
    Rational chi = 2 - 2 * sig.genus;
    for (int q : sig.cone_orders) chi -= 1 - Rational(1, q);
    return chi;
}

Rational euler_number(const ConeRotTuple& t) {
    Rational e = t.n;
    for (const auto& r : t.rots) e -= r;
    return e;
}

Rational lift_euler(const Rational& e, long degree) {
    if (degree < 1) throw InvalidSignature("cover degree must be at least 1");
    return e * degree;
}

Rational milnor_wood_bound(const Rational& chi) { return chi < 0 ? Rational(-chi) : Rational(0); }

ConeRotTuple mirror(const ConeRotTuple& t) {
    ConeRotTuple m;
    Integer nonzero = 0;
    for (const auto& r : t.rots) {
        if (r == 0) {
            m.rots.push_back(r);
        } else {
            m.rots.push_back(1 - r);
            ++nonzero;
        }
    }
    m.n = nonzero - t.n;
    return m;
}

namespace {

// All tuples for one reading of the fixed slots.
void enumerate(const OrbifoldSig& sig, long degree, const Rational& bound, bool maximal,
               const std::vector<std::optional<Rational>>& fixed, std::vector<ConeRotTuple>& out) {
    const std::size_t k = sig.cone_orders.size();
    Rational fixed_sum = 0;
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < k; ++i) {
        if (fixed[i]) fixed_sum += *fixed[i];
        else free.push_back(i);
    }

    // Any feasible n satisfies |n| <= #cones + bound/degree + 1.
    const Integer window = Integer(k) + 1 + floor(bound / degree) + 1;

    std::vector<int> digit(free.size(), 0);
    for (;;) {
        Rational s = fixed_sum;
        for (std::size_t j = 0; j < free.size(); ++j) s += Rational(digit[j], sig.cone_orders[free[j]]);
        // |degree * (n - s)| <= bound  <=>  n in [s - bound/degree, s + bound/degree].
        const Rational slack = bound / degree;
        Integer lo = floor(s - slack);
        if (Rational(lo) < s - slack) ++lo;
        const Integer hi = floor(s + slack);
        for (Integer n = std::max(lo, Integer(-window)); n <= std::min(hi, window); ++n) {
            const Rational lifted = (Rational(n) - s) * degree;
            const Rational mag = lifted < 0 ? Rational(-lifted) : lifted;
            if (maximal ? mag != bound : mag > bound) continue;
            ConeRotTuple t;
            t.n = n;
            for (std::size_t i = 0, j = 0; i < k; ++i) {
                if (fixed[i]) {
                    t.rots.push_back(*fixed[i]);
                } else {
                    t.rots.push_back(Rational(digit[j], sig.cone_orders[i]));
                    ++j;
                }
            }
            out.push_back(std::move(t));
        }
        std::size_t j = 0;
        while (j < free.size() && ++digit[j] == sig.cone_orders[free[j]]) digit[j++] = 0;
        if (j == free.size()) break;
    }
}

}  // namespace

std::vector<FeasibleTuple> feasible_tuples(const OrbifoldSig& sig, long cover_degree, const Rational& cover_chi,
                                           const std::vector<std::optional<Rational>>& fixed, bool maximal) {
    sig.validate();
    if (cover_degree < 1) throw InvalidSignature("cover degree must be at least 1");
    const std::size_t k = sig.cone_orders.size();
    if (fixed.size() > k)
        throw InvalidSignature(std::to_string(fixed.size()) + " fixed rotations for " + std::to_string(k) + " cone points");
    std::vector<std::optional<Rational>> slots = fixed;
    slots.resize(k);

    int unfixed = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (!slots[i]) {
            ++unfixed;
            continue;
        }
        const Rational& r = *slots[i];
        if (r < 0 || r >= 1)
            throw InvalidSignature("fixed rotation " + rotforce::to_string(r) + " is outside [0,1)");
        if (sig.cone_orders[i] % denominator(r) != 0)
            throw InvalidSignature("fixed rotation " + rotforce::to_string(r) + " does not divide cone order " +
                                   std::to_string(sig.cone_orders[i]));
    }
    if (unfixed > kMaxFreeSlots)
        throw BudgetExceeded(std::to_string(unfixed) + " free cone points; at most " + std::to_string(kMaxFreeSlots) +
                             " are enumerated");

    const Rational bound = milnor_wood_bound(cover_chi);

    std::vector<ConeRotTuple> direct, flipped;
    enumerate(sig, cover_degree, bound, maximal, slots, direct);
    std::vector<std::optional<Rational>> mirrored = slots;
    for (auto& s : mirrored)
        if (s && *s != 0) s = 1 - *s;
    enumerate(sig, cover_degree, bound, maximal, mirrored, flipped);

    std::sort(direct.begin(), direct.end(), lex_less);
    std::sort(flipped.begin(), flipped.end(), lex_less);

    std::vector<FeasibleTuple> out;
    auto emit = [&](const ConeRotTuple& t, bool is_mirror) {
        const Rational e = euler_number(t);
        out.push_back({t, e, e * cover_degree, is_mirror});
    };
    for (const auto& t : direct) emit(t, false);
    for (const auto& t : flipped)
        if (std::find(direct.begin(), direct.end(), t) == direct.end()) emit(t, true);
    return out;
}

}  // namespace rotforce::euler
