#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rotforce/circle_map.hpp"
#include "rotforce/denjoy.hpp"
#include "rotforce/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace rotforce;
using namespace rotforce::circle;
using moebius::MoebiusReal;

namespace {

constexpr double pi = std::numbers::pi;

CircleMap random_map(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (u(rng) < 0.5) return CircleMap::rotation(u(rng));
    for (;;) {
        std::uniform_real_distribution<double> e(-2.0, 2.0);
        const double a = e(rng), b = e(rng), c = e(rng), d = e(rng);
        if (a * d - b * c > 0.1) return CircleMap::from_moebius({a, b, c, d});
    }
}

}  // namespace

TEST_CASE("piecewise-linear construction") {
    CHECK_NOTHROW(CircleMap::piecewise_linear({{0.0, 0.1}, {0.5, 0.3}}));
    CHECK_THROWS_AS(CircleMap::piecewise_linear({}), NotMonotone);
    CHECK_THROWS_AS(CircleMap::piecewise_linear({{0.0, 0.1}, {0.5, 0.05}}), NotMonotone);
    CHECK_THROWS_AS(CircleMap::piecewise_linear({{0.0, 0.1}, {0.5, 1.2}}), NotMonotone);
    CHECK_THROWS_AS(CircleMap::piecewise_linear({{0.5, 0.1}, {0.2, 0.3}}), NotMonotone);

    const auto f = CircleMap::piecewise_linear({{0.0, 0.0}, {0.5, 0.25}});
    CHECK(f.lift(0.25) == doctest::Approx(0.125));
    CHECK(f.lift(0.75) == doctest::Approx(0.625));
    CHECK(f.lift(1.75) == doctest::Approx(1.625));
    CHECK(f.lift(-0.25) == doctest::Approx(-0.375));
    const auto g = f.inverse();
    for (double x : {0.0, 0.1, 0.3, 0.6, 0.99}) CHECK(g(f(x)) == doctest::Approx(x));
}

TEST_CASE("rotation number of rotations") {
    const auto r = CircleMap::rotation(0.3);
    for (long n : {1L, 10L, 1000L}) {
        const auto est = rotation_number(r, n);
        CHECK(est.value == doctest::Approx(0.3).epsilon(1e-12));
        CHECK(est.error_bound == doctest::Approx(2.0 / n));
    }
    CHECK_THROWS(rotation_number(r, 0));
}

TEST_CASE("rotation number of Moebius maps") {
    const MoebiusReal m = MoebiusReal(2, 1, 1, 1) * MoebiusReal::rotation(pi / 5) * MoebiusReal(2, 1, 1, 1).inverse();
    CHECK(std::abs(m.trace()) == doctest::Approx(2 * std::cos(pi / 5)));
    const auto est = rotation_number(CircleMap::from_moebius(m), 200000);
    CHECK(circular_distance(est.value, 0.2) <= 1e-5);
    CHECK(circular_distance(est.value, moebius::elliptic_rotation_number(m).value()) <= est.error_bound);

    const auto par = rotation_number(CircleMap::from_moebius({1, 1, 0, 1}), 100000);
    CHECK(abs_angle(par.value) <= par.error_bound);
    const auto hyp = rotation_number(CircleMap::from_moebius({2, 0, 0, 0.5}), 1000);
    CHECK(abs_angle(hyp.value) <= hyp.error_bound);
}

TEST_CASE("power") {
    const auto r = CircleMap::rotation(0.3);
    CHECK(rotation_number(power(r, 0), 10).value == 0.0);
    CHECK(rotation_number(power(r, 3), 100).value == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(rotation_number(power(r, -1), 100).value == doctest::Approx(0.7).epsilon(1e-12));

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> th(0.02, 0.98);
    for (int i = 0; i < 10; ++i) {
        const MoebiusReal g(1.0 + th(rng), th(rng), th(rng), 1.0);
        const auto f = CircleMap::from_moebius(g * MoebiusReal::rotation(pi * th(rng)) * g.inverse());
        const long n = 20000;
        const auto one = rotation_number(f, n);
        const auto five = rotation_number(power(f, 5), n);
        CHECK(circular_distance(five.value, 5 * one.value) <= 5 * one.error_bound + five.error_bound);
    }
}

TEST_CASE("monotonicity certification") {
    CHECK_NOTHROW(certify_monotone(CircleMap::rotation(0.4)));
    CHECK_NOTHROW(certify_monotone(CircleMap::word({CircleMap::rotation(0.4), CircleMap::from_moebius({2, 0, 0, 0.5})})));
}

TEST_CASE("euler cocycle") {
    CHECK(euler_cocycle(CircleMap::rotation(0.3), CircleMap::rotation(0.4)) == 0);
    CHECK(euler_cocycle(CircleMap::rotation(0.6), CircleMap::rotation(0.7)) == 1);
    CHECK(euler_cocycle(CircleMap::identity(), CircleMap::rotation(0.9)) == 0);
    CHECK(euler_cocycle(CircleMap::identity(), CircleMap::from_moebius({1, 2, 0.5, 2})) == 0);

    std::mt19937_64 rng(23);
    for (int i = 0; i < 1000; ++i) {
        const auto f = random_map(rng), g = random_map(rng), h = random_map(rng);
        const int a = euler_cocycle(f, g), b = euler_cocycle(CircleMap::word({f, g}), h);
        const int c = euler_cocycle(f, CircleMap::word({g, h})), d = euler_cocycle(g, h);
        CHECK((a == 0 || a == 1));
        CHECK(a + b == c + d);
    }
}

TEST_CASE("conjugation invariance and commuting additivity") {
    const auto f = CircleMap::from_moebius(MoebiusReal::rotation(pi * 0.37));
    const auto h = CircleMap::from_moebius({2, 1, 1, 1});
    const long n = 50000;
    const auto a = rotation_number(f, n);
    const auto b = rotation_number(CircleMap::word({h, f, h.inverse()}), n);
    CHECK(circular_distance(a.value, b.value) <= a.error_bound + b.error_bound);

    const auto g = CircleMap::from_moebius(MoebiusReal::rotation(pi * 0.21));
    REQUIRE(commutator_defect(f, g) <= 1e-9);
    const auto fg = rotation_number(CircleMap::word({f, g}), n);
    const auto rg = rotation_number(g, n);
    CHECK(circular_distance(fg.value, a.value + rg.value) <= fg.error_bound + a.error_bound + rg.error_bound);
}

TEST_CASE("denjoy blow-up of the golden rotation") {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    const std::vector<MoebiusReal> gens{moebius::rotation_about(moebius::HPoint::i(), Angle::from_double(phi))};
    DenjoyOptions opt;
    opt.depth = 5;
    const auto blow = denjoy_blowup(gens, 0.1, opt);
    REQUIRE(blow.maps().size() == 1);
    CHECK(blow.gaps().size() == 11);

    const auto& gaps = blow.gaps();
    for (std::size_t i = 0; i + 1 < gaps.size(); ++i) CHECK(gaps[i].end < gaps[i + 1].start);
    CHECK(gaps.back().end < gaps.front().start + 1.0);
    CHECK(blow.total_gap_mass() < 1.0);

    const long n = 200000;
    const auto est = rotation_number(blow.maps()[0], n);
    CHECK(circular_distance(est.value, phi) <= 2.0 / n + 1e-9);
    CHECK(semiconjugacy_defect(blow, gens) <= 1e-8);

    // Collapsing map is monotone on a grid and hits every gap point.
    double prev = -1;
    for (int i = 0; i < 4096; ++i) {
        const double t = i / 4096.0;
        const double h = blow.collapse(t);
        CHECK(h >= prev - 1e-15);
        prev = h;
    }
    for (const auto& g : gaps) CHECK(blow.collapse(0.5 * (g.start + g.end)) == g.orbit_point);
}

TEST_CASE("denjoy blow-up of a free group action") {
    const std::vector<MoebiusReal> gens{MoebiusReal::diagonal(2.0), moebius::rotation_about(moebius::HPoint(0.3, 1.7), Angle::from_double(0.123))};
    DenjoyOptions opt;
    opt.depth = 4;
    const auto blow = denjoy_blowup(gens, 0.3141, opt);
    REQUIRE(blow.maps().size() == 2);
    const auto& gaps = blow.gaps();
    for (std::size_t i = 0; i + 1 < gaps.size(); ++i) CHECK(gaps[i].end < gaps[i + 1].start);
    CHECK(semiconjugacy_defect(blow, gens) <= 1e-8);
    for (std::size_t k = 0; k < gens.size(); ++k) {
        const auto f = CircleMap::from_moebius(gens[k]);
        const long n = 20000;
        const auto x = rotation_number(f, n), y = rotation_number(blow.maps()[k], n);
        CHECK(circular_distance(x.value, y.value) <= x.error_bound + y.error_bound + 1e-9);
    }
}

TEST_CASE("denjoy errors") {
    CHECK(denjoy_blowup(std::vector<MoebiusReal>{}, 0.2, {}).maps().empty());

    // x = infinity (s = 1/2) is fixed by the parabolic, x = 0 (s = 0) by the dilation.
    const std::vector<MoebiusReal> par{{1, 1, 0, 1}};
    CHECK_THROWS_AS(denjoy_blowup(par, 0.5, {}), StabilizerNotTrivial);
    const std::vector<MoebiusReal> mixed{MoebiusReal::rotation(0.3), MoebiusReal::diagonal(2.0)};
    CHECK_THROWS_AS(denjoy_blowup(mixed, 0.0, {}), StabilizerNotTrivial);

    // A finite-order rotation has a finite orbit; the trivial word is not a stabilizer.
    const std::vector<MoebiusReal> quarter{MoebiusReal::rotation(pi / 4)};
    CHECK(denjoy_blowup(quarter, 0.2, {}).gaps().size() == 4);

    DenjoyOptions heavy;
    heavy.weights.scale = 1.5;
    const std::vector<MoebiusReal> rot{MoebiusReal::rotation(0.5)};
    CHECK_THROWS_AS(denjoy_blowup(rot, 0.2, heavy), GapBudgetExceeded);
}
