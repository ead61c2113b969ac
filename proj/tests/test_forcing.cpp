#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rotforce/errors.hpp"
#include "rotforce/forcing.hpp"
#include "rotforce/moebius.hpp"
#include "rotforce/rotarith.hpp"

#include <cmath>
#include <random>

using namespace rotforce;
using namespace rotforce::forcing;

namespace {

Rational R(long p, long q) { return Rational(p, q); }

ClosedSet points(std::initializer_list<Rational> ps) {
    ClosedSet s;
    for (const auto& p : ps) s = s.unite(ClosedSet::point(p));
    return s;
}

ClosedSet darc(double lo, double hi) { return ClosedSet::arc(Pos::from_double(lo), Pos::from_double(hi)); }

const RotSet& marked(const PropagationResult& r, const std::string& name) {
    for (const auto& [n, s] : r.marked)
        if (n == name) return s;
    throw std::runtime_error("not marked: " + name);
}

const char* kGammaHat =
    "gens A, B, C, T, X, Y, Z\n"
    "rels A^2 = T, B^3 = T, C^7 = T, A B C = T\n"
    "rels X A X^-1 = A^2, Y B Y^-1 = B^2, Z C Z^-1 = C^2\n"
    "mark A, B, C\n";

const char* kDelta =
    "gens A, B, C\n"
    "rels A^2 = 1, B^3 = 1, C^7 = 1, A B C = 1\n"
    "torsion A:2, B:3, C:7\n"
    "orbifold sig=0;2,3,7 degree=168 coverchi=-4 map A:1, B:2, C:3\n"
    "mark C\n";

std::string g_pq(long p, long q) {
    return "gens mu, nu, gamma, alpha\n"
           "rels mu nu mu^-1 nu^-1 = gamma, alpha = gamma^" + std::to_string(p) + "\n"
           "orbifold sig=1;" + std::to_string(q) + " degree=" + std::to_string(2 * q) +
           " coverchi=" + std::to_string(2 - 2 * q) + " maximal map gamma:1\n"
           "mark alpha\n";
}

std::string squash(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

}  // namespace

TEST_CASE("rotset algebra") {
    const RotSet a(points({R(0, 1)}));
    const RotSet b(points({R(1, 7)}));
    const auto u = rotset_union(a, b);
    CHECK(u == RotSet(points({R(0, 1), R(1, 7), R(6, 7)})));
    CHECK(u.to_string() == "{0, 1/7, 6/7}");

    const RotSet x(darc(0.1, 0.4));
    const RotSet y(darc(0.3, 0.5));
    const auto i = rotset_intersect(x, y);
    CHECK(i == RotSet(darc(0.3, 0.4)));
    CHECK(i.contains(Pos::from_double(0.65)));
    CHECK_FALSE(i.contains(Pos::from_double(0.45)));

    const auto s = rotset_symmetrize({{Pos::from_double(0.2), Pos::from_double(0.3)}});
    CHECK(s.points().size() == 1);
    REQUIRE(s.arcs().size() == 2);
    CHECK(s.arcs()[0].lo.value() == doctest::Approx(0.2));
    CHECK(s.arcs()[1].lo.value() == doctest::Approx(0.7));
    CHECK(s.arcs()[1].hi.value() == doctest::Approx(0.8));

    // Arcs across 0 merge into one.
    const RotSet w(ClosedSet::arc(R(9, 10), R(1, 10)));
    CHECK(w.arcs().size() == 1);
    CHECK(w.points().empty());
    CHECK(w.contains(R(0, 1)));
}

TEST_CASE("closed set operations") {
    CHECK(ClosedSet::multiples(4).scale(2) == points({R(0, 1), R(1, 2)}));
    CHECK(points({R(1, 2)}).preimage(2) == points({R(1, 4), R(3, 4)}));
    CHECK(points({R(0, 1)}).preimage(3) == ClosedSet::multiples(3));
    CHECK(ClosedSet::arc(R(0, 1), R(1, 3)).scale(3).is_full());
    CHECK(ClosedSet::arc(R(1, 10), R(2, 10)).sum(points({R(9, 10)})) == ClosedSet::arc(R(0, 1), R(1, 10)));
    CHECK(ClosedSet::full().preimage(0).is_full());
    CHECK(points({R(1, 3)}).preimage(0).empty());
}

TEST_CASE("rotset invariants on random families") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto random_set = [&] {
        ClosedSet s;
        const int n = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < n; ++i) {
            const double lo = u(rng);
            s = s.unite(rng() % 3 == 0 ? ClosedSet::point(Pos::from_double(lo))
                                       : darc(lo, lo + 0.2 * u(rng)));
        }
        return RotSet(s);
    };
    for (int trial = 0; trial < 300; ++trial) {
        const RotSet a = random_set(), b = random_set();
        for (const RotSet& s : {rotset_union(a, b), rotset_intersect(a, b)}) {
            CHECK(s.contains(R(0, 1)));
            CHECK(s.set() == s.set().negate());
        }
        CHECK(a.subset_of(rotset_union(a, b)));
        CHECK(rotset_intersect(a, b).subset_of(b));
        for (int k = 0; k < 20; ++k) {
            const Pos x = Pos::from_double(u(rng));
            CHECK(rotset_union(a, b).contains(x) == (a.contains(x) || b.contains(x)));
        }
    }
}

TEST_CASE("parse and print presentations") {
    const auto p = parse_presentation("gens A,B,C,T; rels A^2=T, B^3=T, C^7=T, A B C = T;");
    CHECK(p.generators.size() == 4);
    CHECK(p.relations.size() == 4);
    CHECK(p.word_to_string(p.relations[3].lhs) == "A B C");

    for (const std::string text : {std::string(kGammaHat), std::string(kDelta), g_pq(2, 5)}) {
        const auto q = parse_presentation(text);
        const auto printed = print_presentation(q);
        CHECK(print_presentation(parse_presentation(printed)) == printed);
    }
    CHECK(squash(print_presentation(parse_presentation(kDelta))) ==
          squash("gens A, B, C; rels A^2 = 1, B^3 = 1, C^7 = 1, A B C = 1; torsion A:2; torsion B:3; torsion C:7;"
                 "orbifold sig=0;2,3,7 degree=168 coverchi=-4 map A:1 B:2 C:3; mark C;"));

    CHECK_THROWS_AS(parse_presentation("gens ; rels A = A"), SyntaxError);
    CHECK_THROWS_AS(parse_presentation("rels A = A"), SyntaxError);
    CHECK_THROWS_AS(parse_presentation("gens A, B; rels A X = B"), UnknownGenerator);
    try {
        parse_presentation("gens A\nrels A^ = 1");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("word evaluation") {
    const auto p = parse_presentation("gens A, B; rels A B A^-1 = B");
    Assignment a{{"A", circle::CircleMap::rotation(0.3)}};
    CHECK(eval_word(p, Word{}, a)(0.25) == doctest::Approx(0.25));
    CHECK(eval_word(p, Word{{{0, 1}}}, a)(0.1) == doctest::Approx(0.4));
    CHECK_THROWS_AS(eval_word(p, p.relations[0].lhs, a), UnassignedGenerator);

    a["A"] = circle::CircleMap::from_moebius(moebius::MoebiusReal(2.0, 1.0, 1.0, 1.0));
    a["B"] = circle::CircleMap::from_moebius(moebius::MoebiusReal::rotation(2 * M_PI / 5));
    const auto conj = eval_word(p, p.relations[0].lhs, a);
    const auto est = circle::rotation_number(conj, 4000);
    const auto ref = circle::rotation_number(a["B"], 4000);
    CHECK(std::abs(est.value - ref.value) <= est.error_bound + ref.error_bound);
}

TEST_CASE("relation checks") {
    const auto tri = moebius::triangle_group_rep(2, 3, 7);
    const auto delta = parse_presentation(kDelta);
    Assignment a{{"A", circle::CircleMap::from_moebius(tri.A)},
                 {"B", circle::CircleMap::from_moebius(tri.B)},
                 {"C", circle::CircleMap::from_moebius(tri.C)}};
    const auto rep = check_relations(delta, a, 1e-9);
    CHECK(rep.pass);
    CHECK(rep.checks.size() == 4 + 3);
    for (const auto& c : rep.checks) CHECK(c.residual <= 1e-9);

    const auto bs = parse_presentation("gens X, A; rels X A X^-1 = A^2");
    Assignment b{{"A", circle::CircleMap::from_moebius(moebius::MoebiusReal(1, 1, 0, 1))},
                 {"X", circle::CircleMap::from_moebius(moebius::MoebiusReal(std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0)))}};
    const auto bs_rep = check_relations(bs, b, 1e-9);
    CHECK(bs_rep.pass);
    CHECK(bs_rep.checks[0].residual <= 1e-9);

    b["X"] = circle::CircleMap::rotation(0.123);
    CHECK_FALSE(check_relations(bs, b, 1e-9).pass);
}

TEST_CASE("propagation reproduces forced sets") {
    SUBCASE("Baumslag-Solitar relations force zero") {
        const auto p = parse_presentation(kGammaHat);
        const auto r = propagate(p);
        for (const char* g : {"A", "B", "C"}) CHECK(marked(r, g) == RotSet());
        CHECK(replay(p, r.certificate));
    }
    SUBCASE("triangle orbifold forces 1/7") {
        const auto p = parse_presentation(kDelta);
        const auto r = propagate(p);
        CHECK(marked(r, "C") == RotSet(points({R(1, 7)})));
        CHECK(marked(r, "C").to_string() == "{0, 1/7, 6/7}");
        CHECK(replay(p, r.certificate));
        // Without the orbifold data only torsion survives.
        const auto q = parse_presentation("gens A, B, C; torsion C:7; mark C");
        CHECK(marked(propagate(q), "C") == RotSet(ClosedSet::multiples(7)));
    }
    SUBCASE("rational rotation numbers from maximal Euler class") {
        for (long q = 2; q <= 12; ++q)
            for (long p = 1; p < q; ++p) {
                const auto pres = parse_presentation(g_pq(p, q));
                const auto r = propagate(pres);
                CAPTURE(p);
                CAPTURE(q);
                CHECK(marked(r, "alpha") == RotSet(points({R(p, q)})));
                CHECK(replay(pres, r.certificate));
            }
    }
}

TEST_CASE("propagation rules") {
    // R4: commuting products add.
    const auto p = parse_presentation("gens a, b, c; commute (a, b); rels c = a b; torsion a:2, b:3; mark c");
    CHECK(marked(propagate(p), "c") == RotSet(ClosedSet::multiples(6)));
    // R1 across a conjugation annotation.
    const auto q = parse_presentation("gens g, a, b; conj (g: a^2 -> b); torsion b:3; mark a");
    CHECK(marked(propagate(q), "a") == RotSet(ClosedSet::multiples(6)));
    // Exclusion of the l = 0 interval leaves one point.
    const auto e = parse_presentation("gens g; exclude g: l=0 theta=1/4; mark g");
    CHECK(marked(propagate(e), "g") == RotSet(points({R(3, 4)})));
    // Contradictory torsion.
    const auto bad = parse_presentation("gens a; rels a^2 = 1; exclude a: l=0 theta=1/3");
    CHECK_THROWS_AS(propagate(bad), Inconsistent);
}

TEST_CASE("propagation is monotone and certificates are checked") {
    const auto base = parse_presentation("gens A, B, C; torsion A:2, B:3, C:7; mark A, B, C");
    const auto more = parse_presentation(kDelta);
    const auto r0 = propagate(base), r1 = propagate(more);
    CHECK(marked(r1, "C").subset_of(marked(r0, "C")));
    CHECK(marked(r1, "C") != marked(r0, "C"));

    auto cert = r1.certificate;
    REQUIRE(!cert.steps.empty());
    CHECK(replay(more, cert));
    cert.steps.back().set = ClosedSet::point(R(2, 7));
    CHECK_FALSE(replay(more, cert));
    cert = r1.certificate;
    cert.steps.back().premises.clear();
    CHECK_FALSE(replay(more, cert));
    cert = r1.certificate;
    std::swap(cert.steps.front(), cert.steps.back());
    CHECK_FALSE(replay(more, cert));
}

TEST_CASE("dial branches") {
    const auto p = parse_presentation("gens nu, a; rels a = nu^2; torsion nu:3; dial nu:3; mark a");
    const auto r = propagate(p);
    REQUIRE(r.dials.size() == 3);
    for (long j = 0; j < 3; ++j) {
        const auto& br = r.dials[j];
        CHECK(br.feasible);
        CHECK(br.value == Pos(R(j, 3)));
        CHECK(br.sets[0] == points({R(2 * j % 3, 3)}));
        CHECK(br.certificate.steps.front().rule == "dial");
        CHECK(br.certificate.steps.front().id == static_cast<int>(r.certificate.steps.size()));
        Certificate all = r.certificate;
        all.steps.insert(all.steps.end(), br.certificate.steps.begin(), br.certificate.steps.end());
        CHECK(replay(p, all));
    }
    const auto q = parse_presentation("gens nu; rels nu^2 = 1; dial nu:4");
    const auto rq = propagate(q);
    REQUIRE(rq.dials.size() == 4);
    CHECK(rq.dials[0].feasible);
    CHECK_FALSE(rq.dials[1].feasible);
    CHECK(rq.dials[2].feasible);
    CHECK_FALSE(rq.dials[3].feasible);
}

TEST_CASE("outer approximation") {
    SUBCASE("interval") {
        const auto s = outer_approximation(fixed_cover({{R(1, 4), R(1, 3)}}), 3);
        REQUIRE(s.size() == 3);
        const RotSet target(ClosedSet::arc(R(1, 4), R(1, 3)));
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(target.subset_of(s[i]));
            if (i) CHECK(s[i].subset_of(s[i - 1]));
        }
        CHECK(hausdorff_distance(s[2].set(), target.set()) <= std::ldexp(1.0, -7));
        CHECK(s[2] == RotSet(ClosedSet::arc(R(1, 4), R(43, 128))));
    }
    SUBCASE("point") {
        const auto s = outer_approximation(fixed_cover({{R(1, 3), R(1, 3)}}), 4);
        for (int i = 1; i <= 4; ++i) {
            const Rational d(1, Integer(1) << (i + 4));
            const Rational lo = floor(R(1, 3) / d) * d;
            CHECK(s[i - 1] == RotSet(ClosedSet::arc(lo, Rational(lo + d))));
        }
    }
    SUBCASE("cantor set") {
        const auto s = outer_approximation(cantor_cover(), 8);
        for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i].subset_of(s[i - 1]));
        // K lies in the stage-14 cover, which S_8 must contain; the stage-14
        // endpoints lie in K, so the distance to them bounds the distance to K.
        std::vector<std::pair<Pos, Pos>> arcs, ends;
        for (const auto& a : cantor_cover()(14)) {
            arcs.emplace_back(a.lo, a.hi);
            ends.emplace_back(a.lo, a.lo);
            ends.emplace_back(a.hi, a.hi);
        }
        const auto cover14 = ClosedSet::from_segments(arcs);
        const auto ends14 = ClosedSet::from_segments(ends);
        CHECK(cover14.subset_of(s[7].set()));
        const double bound = std::pow(3.0, -8) + std::ldexp(1.0, -12);
        CHECK(directed_distance(s[7].set(), ends14) <= bound);
    }
    SUBCASE("bad generator") {
        auto grow = [](int stage) { return std::vector<Arc>{{R(0, 1), R(stage, 10)}}; };
        CHECK_THROWS_AS(outer_approximation(grow, 3), InvalidCoverGenerator);
    }
}

TEST_CASE("interval group emission") {
    const auto dom = rotarith::domain_interval(1.0, Angle::from_rational(R(1, 4)));
    const rotarith::CircularInterval target(dom.hi, dom.lo);
    const auto g = emit_interval_group(target);
    CHECK(g.error <= kEmitTolerance);
    CHECK(g.presentation.generators.size() == 6);
    const auto r = propagate(g.presentation);
    const RotSet want(ClosedSet::arc(Pos::from_angle(dom.hi), Pos::from_angle(dom.lo)));
    CHECK(hausdorff_distance(marked(r, "gamma").set(), want.set()) <= kEmitTolerance);

    const auto pt = emit_interval_group(rotarith::CircularInterval(Angle::from_rational(R(2, 5)), Angle::from_rational(R(2, 5))));
    CHECK(pt.l == 0.0);
    CHECK(marked(propagate(pt.presentation), "gamma") == RotSet(points({R(2, 5)})));

    CHECK_THROWS_AS(emit_interval_group(rotarith::CircularInterval::full()), NotRepresentable);
}
