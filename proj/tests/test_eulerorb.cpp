#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rotforce/errors.hpp"
#include "rotforce/eulerorb.hpp"

#include <algorithm>

using namespace rotforce;
using namespace rotforce::euler;

namespace {

Rational R(long p, long q) { return Rational(p, q); }

}  // namespace

TEST_CASE("signatures and characteristics") {
    const auto sig = OrbifoldSig::parse("0;2,3,7");
    CHECK(sig.cone_orders == std::vector<int>{2, 3, 7});
    CHECK(sig.to_string() == "0;2,3,7");
    CHECK(orbifold_euler_char(sig) == R(-1, 42));
    CHECK(orbifold_euler_char(sig) * 168 == -4);
    CHECK(orbifold_euler_char(OrbifoldSig::parse("1;5")) == R(-4, 5));
    CHECK(orbifold_euler_char(OrbifoldSig::parse("2")) == -2);
    CHECK(milnor_wood_bound(R(-4, 1)) == 4);
    CHECK(milnor_wood_bound(R(2, 1)) == 0);

    CHECK_THROWS_AS(OrbifoldSig::parse("0;1,3"), InvalidSignature);
    CHECK_THROWS_AS(OrbifoldSig::parse("-1"), InvalidSignature);
    CHECK_THROWS_AS(OrbifoldSig::parse("x;2"), InvalidSignature);
}

TEST_CASE("euler number and mirror") {
    const ConeRotTuple t{1, {R(1, 2), R(1, 3), R(1, 7)}};
    CHECK(euler_number(t) == R(1, 42));
    CHECK(lift_euler(euler_number(t), 168) == 4);
    const auto m = mirror(t);
    CHECK(m.n == 2);
    CHECK(m.rots == std::vector<Rational>{R(1, 2), R(2, 3), R(6, 7)});
    CHECK(euler_number(m) == -euler_number(t));
    CHECK(mirror(m) == t);
}

TEST_CASE("(2,3,7) with two slots fixed") {
    const auto sig = OrbifoldSig::parse("0;2,3,7");
    const auto out = feasible_tuples(sig, 168, -4, {R(1, 2), R(1, 3)});
    REQUIRE(out.size() == 2);
    CHECK_FALSE(out[0].mirror);
    CHECK(out[0].tuple == ConeRotTuple{1, {R(1, 2), R(1, 3), R(1, 7)}});
    CHECK(out[0].lifted == 4);
    CHECK(out[1].mirror);
    CHECK(out[1].tuple == mirror(out[0].tuple));
    CHECK(out[1].lifted == -4);

    CHECK(feasible_tuples(sig, 168, -4, {R(1, 2), R(1, 3), R(2, 7)}).empty());
}

TEST_CASE("maximal (1;5)") {
    const auto out = feasible_tuples(OrbifoldSig::parse("1;5"), 10, -8, {}, true);
    REQUIRE(out.size() == 2);
    CHECK(out[0].tuple == ConeRotTuple{0, {R(4, 5)}});
    CHECK(out[1].tuple == ConeRotTuple{1, {R(1, 5)}});
    for (const auto& f : out) CHECK((f.lifted == 8 || f.lifted == -8));
}

TEST_CASE("maximal (1;q) family") {
    for (int q = 2; q <= 50; ++q) {
        const auto out = feasible_tuples(OrbifoldSig{1, {q}}, 2 * q, 2 - 2 * q, {}, true);
        std::vector<Rational> ps;
        for (const auto& f : out) ps.push_back(f.tuple.rots[0] * q);
        std::sort(ps.begin(), ps.end());
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
        if (q == 2) CHECK(ps == std::vector<Rational>{1});
        else CHECK(ps == std::vector<Rational>{1, q - 1});
    }
}

TEST_CASE("free enumeration is closed under mirror") {
    const auto sig = OrbifoldSig::parse("0;3,4,5");
    const auto chi = orbifold_euler_char(sig);
    const auto out = feasible_tuples(sig, 60, chi * 60, {});
    REQUIRE_FALSE(out.empty());
    for (const auto& f : out) {
        CHECK_FALSE(f.mirror);
        const auto m = mirror(f.tuple);
        CHECK(std::any_of(out.begin(), out.end(), [&](const FeasibleTuple& g) { return g.tuple == m; }));
        CHECK(abs(f.lifted) <= milnor_wood_bound(chi * 60));
    }
}

TEST_CASE("errors") {
    const auto sig = OrbifoldSig::parse("0;2,3,7");
    CHECK_THROWS_AS(feasible_tuples(OrbifoldSig::parse("0;2,3,5,7"), 1, -1, {}), BudgetExceeded);
    CHECK_THROWS_AS(feasible_tuples(sig, 168, -4, {R(1, 4)}), InvalidSignature);
    CHECK_THROWS_AS(feasible_tuples(sig, 168, -4, {R(3, 2)}), InvalidSignature);
    CHECK_THROWS_AS(feasible_tuples(sig, 0, -4, {}), InvalidSignature);
    CHECK_THROWS_AS(feasible_tuples(sig, 168, -4, {R(1, 2), R(1, 3), R(1, 7), R(0, 1)}), InvalidSignature);
}
