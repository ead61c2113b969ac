#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rotforce/circle_map.hpp"
#include "rotforce/errors.hpp"
#include "rotforce/moebius.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace rotforce;
using namespace rotforce::moebius;

namespace {

constexpr double pi = std::numbers::pi;

MoebiusReal random_element(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (;;) {
        const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
        if (a * d - b * c > 0.1) return {a, b, c, d};
    }
}

MoebiusReal mpow(const MoebiusReal& m, int k) {
    MoebiusReal r;
    for (int i = 0; i < k; ++i) r = r * m;
    return r;
}

}  // namespace

TEST_CASE("compose") {
    const MoebiusReal m(2.0, 1.0, 1.0, 1.0);
    CHECK(distance_mod_sign(compose(MoebiusReal::identity(), m), m) < 1e-15);
    CHECK(distance_mod_sign(compose(MoebiusReal::rotation(pi / 4), MoebiusReal::rotation(pi / 4)),
                            MoebiusReal::rotation(pi / 2)) < 1e-15);

    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const auto x = random_element(rng), y = random_element(rng), z = random_element(rng);
        CHECK(distance_mod_sign((x * y) * z, x * (y * z)) <= 1e-12);
    }
}

TEST_CASE("normalization") {
    const MoebiusReal m(-4.0, 0.0, 0.0, -1.0);
    CHECK(m.a() == doctest::Approx(2.0));
    CHECK(m.d() == doctest::Approx(0.5));
    CHECK(std::abs(m.matrix().det() - 1.0) <= 1e-12);
    CHECK_THROWS_AS(MoebiusReal(1.0, 0.0, 0.0, -1.0), InvalidMatrix);
    CHECK_THROWS_AS(MoebiusReal(0.0, 0.0, 0.0, 0.0), InvalidMatrix);
}

TEST_CASE("classify") {
    CHECK(classify({0, -1, 1, 0}) == IsometryClass::elliptic);
    CHECK(classify({2, 0, 0, 0.5}) == IsometryClass::hyperbolic);
    CHECK(classify({1, 1, 0, 1}) == IsometryClass::parabolic);
    CHECK(classify(MoebiusReal::identity()) == IsometryClass::identity);
    // Inside the tolerance band the verdict is parabolic, not elliptic.
    CHECK(classify(MoebiusReal::rotation(1e-6)) == IsometryClass::parabolic);
}

TEST_CASE("elliptic rotation number") {
    CHECK(elliptic_rotation_number({0, -1, 1, 0}).value() == doctest::Approx(0.5));
    CHECK(elliptic_rotation_number(MoebiusReal::rotation(pi / 4)).value() == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(elliptic_rotation_number(MoebiusReal::rotation(-pi / 4)).value() == doctest::Approx(0.75).epsilon(1e-14));

    const MoebiusReal g(1.3, 0.4, -0.2, 0.9);
    const MoebiusReal m = g * MoebiusReal::rotation(pi / 7) * g.inverse();
    CHECK(std::abs(m.trace()) == doctest::Approx(2 * std::cos(pi / 7)));
    const double closed = elliptic_rotation_number(m).value();
    CHECK(closed == doctest::Approx(1.0 / 7).epsilon(1e-12));
    const auto est = circle::rotation_number(circle::CircleMap::from_moebius(m), 200000);
    CHECK(circular_distance(est.value, closed) <= 1e-6);

    CHECK_THROWS_AS(elliptic_rotation_number({2, 0, 0, 0.5}), NotElliptic);
    CHECK_THROWS_AS(elliptic_rotation_number({1, 1, 0, 1}), NotElliptic);
}

TEST_CASE("rotation number is a class function") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> th(0.01, 0.99);
    for (int i = 0; i < 200; ++i) {
        const MoebiusReal m = MoebiusReal::rotation(pi * th(rng));
        const MoebiusReal g = random_element(rng);
        const double a = elliptic_rotation_number(m).value();
        const double b = elliptic_rotation_number(g * m * g.inverse()).value();
        CHECK(circular_distance(a, b) <= 1e-10);
    }
}

TEST_CASE("rotation_about") {
    CHECK(distance_mod_sign(rotation_about(HPoint::i(), Angle::from_double(0.3)),
                            MoebiusReal::rotation(0.3 * pi)) < 1e-15);
    CHECK(distance_mod_sign(rotation_about(HPoint(2, 3), Angle()), MoebiusReal::identity()) == 0.0);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ux(-5, 5), uy(0.05, 5), th(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const HPoint p(ux(rng), uy(rng));
        const double t1 = th(rng), t2 = th(rng);
        const MoebiusReal m = rotation_about(p, Angle::from_double(t1));
        CHECK(std::abs(m.apply(p.z()) - p.z()) <= 1e-10);
        CHECK(std::abs(std::abs(m.trace()) - std::abs(2 * std::cos(pi * t1))) <= 1e-10);
        const MoebiusReal sum = rotation_about(p, Angle::from_double(t1 + t2));
        CHECK(distance_mod_sign(m * rotation_about(p, Angle::from_double(t2)), sum) <= 1e-10 * (1 + p.y() + 1 / p.y() + std::abs(p.x()) * std::abs(p.x()) / p.y()));
        if (classify(m) == IsometryClass::elliptic)
            CHECK(circular_distance(elliptic_rotation_number(m).value(), t1) <= 1e-9);
    }
}

TEST_CASE("distances") {
    CHECK(hyp_distance(HPoint::i(), HPoint::i()) == 0.0);
    CHECK(hyp_distance(HPoint::i(), HPoint(0, 2)) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(hyp_distance(HPoint::i(), HPoint(1, 1)) == doctest::Approx(0.962424).epsilon(1e-6));
    CHECK(hyp_distance(HPoint::i(), HPoint(1, 1)) == doctest::Approx(std::acosh(1.5)).epsilon(1e-14));
    CHECK_THROWS_AS(HPoint(0, 0), InvalidPoint);
    CHECK_THROWS_AS(HPoint(0, -1), InvalidPoint);
}

TEST_CASE("translation length") {
    CHECK(translation_length(MoebiusReal::diagonal(3.0)) == doctest::Approx(2 * std::log(3.0)).epsilon(1e-14));
    const double l = translation_length({2, 0, 0, 0.5});
    CHECK(l == doctest::Approx(2 * std::log(2.0)).epsilon(1e-14));
    CHECK(2 * std::cosh(l / 2) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK_THROWS_AS(translation_length({0, -1, 1, 0}), NotHyperbolic);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        const MoebiusReal m = random_element(rng);
        if (std::abs(std::abs(m.trace()) - 2) < 1e-6) continue;
        int ok = 0;
        try { translation_length(m); ++ok; } catch (const NotHyperbolic&) {}
        try { elliptic_rotation_number(m); ++ok; } catch (const NotElliptic&) {}
        CHECK(ok == 1);
    }
}

TEST_CASE("triangle group (2,3,7)") {
    const auto rep = triangle_group_rep(2, 3, 7);
    CHECK(identity_residual(mpow(rep.A, 2)) <= 1e-9);
    CHECK(identity_residual(mpow(rep.B, 3)) <= 1e-9);
    CHECK(identity_residual(mpow(rep.C, 7)) <= 1e-9);
    CHECK(identity_residual(rep.A * rep.B * rep.C) <= 1e-9);
    CHECK(rep.side_pq == doctest::Approx(std::acosh(std::cos(pi / 7) / std::sin(pi / 3))).epsilon(1e-14));
    CHECK(rep.side_pq == doctest::Approx(0.283128).epsilon(1e-6));
    CHECK(std::abs(elliptic_rotation_number(rep.A).value() - 1.0 / 2) <= 1e-12);
    CHECK(std::abs(elliptic_rotation_number(rep.B).value() - 1.0 / 3) <= 1e-12);
    CHECK(std::abs(elliptic_rotation_number(rep.C).value() - 1.0 / 7) <= 1e-12);
    CHECK(hyp_distance(rep.P, rep.Q) == doctest::Approx(rep.side_pq).epsilon(1e-12));
}

TEST_CASE("triangle groups up to order 12") {
    for (int p = 2; p <= 12; ++p)
        for (int q = 2; q <= 12; ++q)
            for (int r = 2; r <= 12; ++r) {
                if (q * r + p * r + p * q >= p * q * r) {
                    CHECK_THROWS_AS(triangle_group_rep(p, q, r), NotHyperbolicTriangle);
                    continue;
                }
                const auto rep = triangle_group_rep(p, q, r);
                CHECK(identity_residual(mpow(rep.A, p)) <= 1e-9);
                CHECK(identity_residual(mpow(rep.B, q)) <= 1e-9);
                CHECK(identity_residual(mpow(rep.C, r)) <= 1e-9);
                CHECK(identity_residual(rep.A * rep.B * rep.C) <= 1e-9);
                CHECK(std::abs(elliptic_rotation_number(rep.C).value() - 1.0 / r) <= 1e-9);
            }
}

TEST_CASE("trace squared") {
    using C = std::complex<double>;
    CHECK(std::abs(trace_squared(MoebiusComplex()) - C(4)) < 1e-15);
    CHECK(std::abs(trace_squared(MoebiusComplex(C(0, 1), 0, 0, C(0, -1)))) < 1e-15);

    std::mt19937_64 rng(9);
    std::normal_distribution<double> n;
    auto rnd = [&] {
        return MoebiusComplex(C(n(rng), n(rng)), C(n(rng), n(rng)), C(n(rng), n(rng)), C(n(rng), n(rng)));
    };
    for (int i = 0; i < 200; ++i) {
        const auto m = rnd(), g = rnd();
        const C t1 = trace_squared(m), t2 = trace_squared(g * m * g.inverse());
        CHECK(std::abs(t1 - t2) <= 1e-10 * (1 + std::abs(t1)) * (1 + std::norm(g.a()) + std::norm(g.b()) + std::norm(g.c()) + std::norm(g.d())));
    }
}
