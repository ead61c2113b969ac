#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rotforce/errors.hpp"
#include "rotforce/quatalg.hpp"

#include <cmath>
#include <random>

using namespace rotforce;
using namespace rotforce::quat;

namespace {

Rational R(long p, long q = 1) { return Rational(p, q); }

NumberField sqrt2() { return NumberField::parse("x^2-2"); }

QuatAlgebra example_algebra() {
    const NumberField F = sqrt2();
    return QuatAlgebra(F, F.gen(), F.from_rational(-1));
}

FieldElem random_elem(const NumberField& F, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    FieldElem x = F.zero();
    for (auto& c : x.c) c = Rational(num(rng), den(rng));
    return x;
}

QuatElem random_quat(const NumberField& F, std::mt19937_64& rng) {
    return {random_elem(F, rng), random_elem(F, rng), random_elem(F, rng), random_elem(F, rng)};
}

double max_diff(const moebius::Mat2& x, const moebius::Mat2& y) {
    return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.c - y.c), std::abs(x.d - y.d)});
}

}  // namespace

TEST_CASE("field creation") {
    const NumberField F = sqrt2();
    REQUIRE(F.degree() == 2);
    CHECK(F.root_value(0) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
    CHECK(F.root_value(1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    const auto r = F.refine(1, R(1, 1000000));
    CHECK(r.lo * r.lo < 2);
    CHECK(r.hi * r.hi > 2);

    CHECK_THROWS_AS(NumberField::parse("x^2+1"), NotTotallyReal);
    CHECK_THROWS_AS(NumberField::parse("x^3-x-1"), NotTotallyReal);
    CHECK_THROWS_AS(NumberField::parse("x^2-4"), NotIrreducible);
    CHECK_THROWS_AS(NumberField::parse("x^4-5x^2+6"), NotIrreducible);
    CHECK_THROWS_AS(NumberField::parse("x^4+4"), NotIrreducible);
    CHECK_THROWS_AS(NumberField::parse("x^5-3"), UnsupportedDegree);
    CHECK_THROWS_AS(NumberField::parse("2x^2-1"), InvalidAlgebra);
    CHECK_THROWS_AS(NumberField::parse("x^2 - "), SyntaxError);

    const NumberField cubic = NumberField::parse("x^3-3x+1");
    CHECK(cubic.degree() == 3);
    for (int i = 0; i < 3; ++i) {
        const double t = cubic.root_value(i);
        CHECK(std::abs(t * t * t - 3 * t + 1) < 1e-14);
    }
    const NumberField quartic = NumberField::parse("x^4-10x^2+1");
    CHECK(quartic.root_value(3) == doctest::Approx(std::sqrt(2.0) + std::sqrt(3.0)).epsilon(1e-15));

    const NumberField Q = NumberField::parse("x");
    CHECK(Q.degree() == 1);
    CHECK(Q.root_value(0) == 0.0);
}

TEST_CASE("field arithmetic") {
    const NumberField F = sqrt2();
    const FieldElem t = F.gen();
    CHECK(F.mul(t, t) == F.from_rational(2));
    const FieldElem x = F.parse_elem("3/2*t - 1");
    CHECK(F.mul(x, F.inv(x)) == F.one());
    CHECK(F.to_string(x) == "3/2*t - 1");
    CHECK(F.parse_elem("t/2") == F.mul(t, F.from_rational(R(1, 2))));
    CHECK(F.sign(F.parse_elem("t - 1"), 0) == -1);
    CHECK(F.sign(F.parse_elem("t - 1"), 1) == 1);
    // 99/70 is a close convergent of sqrt 2, so this needs real refinement.
    CHECK(F.sign(F.parse_elem("70t - 99"), 1) == -1);
    CHECK(F.sign(F.parse_elem("-70t + 99"), 1) == 1);
    CHECK(F.sign(F.zero(), 0) == 0);
}

TEST_CASE("trace and norm") {
    const QuatAlgebra A = example_algebra();
    const NumberField& F = A.field;
    const auto one = quat_trace_norm(A, quat_from_rationals(F, 1, 0, 0, 0));
    CHECK(one.trace == F.from_rational(2));
    CHECK(one.norm == F.one());
    const auto i = quat_trace_norm(A, quat_from_rationals(F, 0, 1, 0, 0));
    CHECK(i.trace == F.zero());
    CHECK(i.norm == F.neg(A.a));
    const auto all = quat_trace_norm(A, quat_from_rationals(F, 1, 1, 1, 1));
    CHECK(all.trace == F.from_rational(2));
    CHECK(all.norm == F.add(F.sub(F.sub(F.one(), A.a), A.b), F.mul(A.a, A.b)));

    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
        const QuatElem x = random_quat(F, rng), y = random_quat(F, rng);
        const auto nx = quat_trace_norm(A, x).norm, ny = quat_trace_norm(A, y).norm;
        CHECK(quat_trace_norm(A, quat_mul(A, x, y)).norm == F.mul(nx, ny));
    }
}

TEST_CASE("ramification profiles") {
    const NumberField Q = NumberField::parse("x");
    const QuatAlgebra hamilton(Q, Q.from_rational(-1), Q.from_rational(-1));
    CHECK(ramification_profile(hamilton).ramified == std::vector<bool>{true});
    CHECK_FALSE(is_fuchsian_admissible(hamilton));
    const QuatAlgebra split(Q, Q.one(), Q.one());
    CHECK(ramification_profile(split).ramified == std::vector<bool>{false});
    CHECK(is_fuchsian_admissible(split));

    const QuatAlgebra A = example_algebra();
    // Places ascending: sigma(t) = -1.414... then +1.414...
    CHECK(ramification_profile(A).ramified == std::vector<bool>{true, false});
    CHECK(is_fuchsian_admissible(A));
    CHECK(ramification_profile(A).unramified_place() == 1);

    CHECK_THROWS_AS(QuatAlgebra(Q, Q.zero(), Q.one()), InvalidAlgebra);
}

TEST_CASE("profile invariance under swap and square scaling") {
    std::mt19937_64 rng(5);
    for (const char* poly : {"x", "x^2-2", "x^3-3x+1"}) {
        const NumberField F = NumberField::parse(poly);
        for (int k = 0; k < 60; ++k) {
            FieldElem a = random_elem(F, rng), b = random_elem(F, rng), c = random_elem(F, rng);
            if (F.is_zero(a) || F.is_zero(b) || F.is_zero(c)) continue;
            const QuatAlgebra A(F, a, b);
            const auto p = ramification_profile(A);
            CHECK(ramification_profile(QuatAlgebra(F, b, a)).ramified == p.ramified);
            CHECK(ramification_profile(QuatAlgebra(F, F.mul(a, F.mul(c, c)), b)).ramified == p.ramified);
            if (p.unramified_count() == 1) {
                int ram = 0;
                for (bool r : p.ramified) ram += r;
                CHECK(ram == F.degree() - 1);
            }
        }
    }
}

TEST_CASE("unramified embedding") {
    const QuatAlgebra A = example_algebra();
    const NumberField& F = A.field;
    const double sa = std::sqrt(2.0), sb = -1.0;
    const auto I = embed_unramified(A, quat_from_rationals(F, 0, 1, 0, 0));
    const auto J = embed_unramified(A, quat_from_rationals(F, 0, 0, 1, 0));
    CHECK(max_diff(I * I, {sa, 0, 0, sa}) <= 1e-12);
    CHECK(max_diff(J * J, {sb, 0, 0, sb}) <= 1e-12);
    const auto IJ = I * J, JI = J * I;
    CHECK(max_diff(IJ, {-JI.a, -JI.b, -JI.c, -JI.d}) <= 1e-12);

    // Entries of a rational element are in Q(2^{1/4}).
    const double c = std::pow(2.0, 0.25);
    const auto m = embed_unramified(A, quat_from_rationals(F, 1, 1, 1, 1));
    CHECK(max_diff(m, {1 + c, 1 + c, -(1 - c), 1 - c}) <= 1e-12);

    std::mt19937_64 rng(7);
    for (int k = 0; k < 1000; ++k) {
        const QuatElem x = random_quat(F, rng);
        const auto tn = quat_trace_norm(A, x);
        const auto e = embed_unramified(A, x);
        CHECK(std::abs(e.trace() - F.embed(tn.trace, 1)) <= 1e-10);
        if (k % 10 == 0 && !F.is_zero(tn.norm)) {
            // u^2 / norm(u) has norm exactly 1.
            const QuatElem q = quat_scale(A, quat_mul(A, x, x), F.inv(tn.norm));
            REQUIRE(quat_trace_norm(A, q).norm == F.one());
            CHECK(std::abs(embed_unramified(A, q).det() - 1.0) <= 1e-12 * std::max(1.0, std::abs(embed_unramified(A, q).a)));
        }
    }

    const NumberField Q = NumberField::parse("x");
    CHECK_THROWS_AS(embed_unramified(QuatAlgebra(Q, Q.from_rational(-1), Q.from_rational(-1)),
                                     quat_from_rationals(Q, 1, 0, 0, 0)),
                    NotAdmissible);
    // sigma(a) < 0 < sigma(b): a and b swap roles, identities still hold.
    const QuatAlgebra S(Q, Q.from_rational(-1), Q.from_rational(3));
    const auto Si = embed_unramified(S, quat_from_rationals(Q, 0, 1, 0, 0));
    CHECK(max_diff(Si * Si, {-1, 0, 0, -1}) <= 1e-12);
    const auto Sx = embed_unramified(S, quat_from_rationals(Q, 1, 2, 3, 4));
    CHECK(Sx.det() == doctest::Approx(to_double(quat_trace_norm(S, quat_from_rationals(Q, 1, 2, 3, 4)).norm.c[0])));
}

TEST_CASE("arithmetic rotation numbers") {
    const QuatAlgebra A = example_algebra();
    const NumberField& F = A.field;
    const QuatElem q{F.parse_elem("t/2"), F.zero(), F.parse_elem("t/2"), F.zero()};
    const Angle theta = arithmetic_rotation_number(A, q);
    CHECK(theta.value() == doctest::Approx(0.25).epsilon(1e-14));
    const double r = moebius::elliptic_rotation_number(moebius::MoebiusReal(embed_unramified(A, q))).value();
    CHECK(std::min(r, 1 - r) == doctest::Approx(0.25).epsilon(1e-12));

    CHECK(arithmetic_rotation_number(A, quat_from_rationals(F, 0, 0, 1, 0)).value() == doctest::Approx(0.5));
    CHECK_THROWS_AS(arithmetic_rotation_number(A, quat_from_rationals(F, 1, 1, 0, 0)), NotNormOne);

    const NumberField Q = NumberField::parse("x");
    const QuatAlgebra split(Q, Q.one(), Q.one());
    CHECK_THROWS_AS(arithmetic_rotation_number(split, quat_from_rationals(Q, R(5, 4), R(3, 4), 0, 0)), NotElliptic);
    CHECK_THROWS_AS(arithmetic_rotation_number(split, quat_from_rationals(Q, 1, 0, 0, 0)), NotElliptic);
    CHECK(arithmetic_rotation_number(split, quat_from_rationals(Q, 0, 0, 0, 1)).value() == doctest::Approx(0.5));
}

TEST_CASE("algebra file") {
    const auto file = parse_algebra_file("# example\nfield: x^2-2 ; a: t ; b: -1\nelem q: [t/2, 0, t/2, 0]\nelem j: [0,0,1,0]\n");
    CHECK(file.algebra.field.degree() == 2);
    REQUIRE(file.elements.size() == 2);
    CHECK(file.elements[0].first == "q");
    CHECK(arithmetic_rotation_number(file.algebra, file.elements[0].second).value() == doctest::Approx(0.25));

    CHECK_THROWS_AS(parse_algebra_file("field: x^2-2 ; a: t"), SyntaxError);
    CHECK_THROWS_AS(parse_algebra_file("field: x^2-2 ; a: t ; b: 0"), InvalidAlgebra);
    CHECK_THROWS_AS(parse_algebra_file("field: x^2-2 ; a: t ; b: -1 ; elem q: [1, 2]"), SyntaxError);
    try {
        parse_algebra_file("field: x^2-2\nbogus: 1");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 1);
    }
}
