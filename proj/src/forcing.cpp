#include "rotforce/forcing.hpp"

#include "rotforce/errors.hpp"
#include "rotforce/eulerorb.hpp"
#include "rotforce/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace rotforce::forcing {

namespace {

using Sets = std::vector<ClosedSet>;

struct Instance {
    std::string rule;
    int rank = 0;
    std::string source;
    std::vector<int> inputs;  // sorted, includes every target
    std::vector<int> targets;
    std::function<ClosedSet(int, const Sets&)> derive;
};

int rule_rank(const std::string& rule) {
    if (rule == "H") return 0;
    return rule.size() == 2 && rule[0] == 'R' ? rule[1] - '0' : 99;
}

Instance make(std::string rule, std::string source, std::vector<int> targets,
              std::function<ClosedSet(int, const Sets&)> derive, std::vector<int> extra = {}) {
    Instance in;
    in.rank = rule_rank(rule);
    in.rule = std::move(rule);
    in.source = std::move(source);
    std::set<int> ts(targets.begin(), targets.end());
    in.targets.assign(ts.begin(), ts.end());
    ts.insert(extra.begin(), extra.end());
    in.inputs.assign(ts.begin(), ts.end());
    in.derive = std::move(derive);
    return in;
}

// k rot(a) = m rot(b), a != b.
Instance linear(std::string rule, std::string source, int a, long k, int b, long m) {
    return make(std::move(rule), std::move(source), {a, b}, [=](int t, const Sets& s) {
        return t == a ? s[b].scale(m).preimage(k) : s[a].scale(k).preimage(m);
    });
}

Instance torsion(std::string rule, std::string source, int a, long q) {
    return make(std::move(rule), std::move(source), {a},
                [q](int, const Sets&) { return ClosedSet::multiples(q); });
}

Instance self_conjugate(std::string source, int a, long k, long m) {
    const long d = std::labs(m - k);
    return make("R3", std::move(source), {a}, [d](int, const Sets&) { return ClosedSet::multiples(d); });
}

bool is_commutator(const Word& w) {
    if (w.letters.size() != 4) return false;
    const auto& l = w.letters;
    return l[0].gen != l[1].gen && l[2].gen == l[0].gen && l[3].gen == l[1].gen && l[0].exp == 1 && l[1].exp == 1 &&
           l[2].exp == -1 && l[3].exp == -1;
}

// x w x^-1 with w atomic: returns w.
std::optional<Letter> conjugated_letter(const Word& w) {
    if (w.letters.size() != 3) return std::nullopt;
    const auto& l = w.letters;
    if (l[0].gen != l[2].gen || l[0].exp != -l[2].exp || l[1].gen == l[0].gen) return std::nullopt;
    return l[1];
}

ClosedSet r6_slot_set(const OrbifoldData& o, int slot_gen_target, const Sets& s) {
    const std::size_t k = o.sig.cone_orders.size();
    // Allowed rotation values per cone slot.
    std::vector<std::vector<Rational>> allowed(k);
    for (std::size_t i = 0; i < k; ++i) {
        const long q = o.sig.cone_orders[i];
        ClosedSet a = ClosedSet::multiples(q);
        for (const auto& [g, slot] : o.map)
            if (static_cast<std::size_t>(slot) == i) a = a.intersect(s[g]);
        for (const auto& p : a.points()) allowed[i].push_back(*p.exact());
    }
    long combos = 1;
    for (const auto& a : allowed) {
        combos *= static_cast<long>(a.size());
        if (combos > kMaxOrbifoldCombos) return ClosedSet::full();  // too many to enumerate: no narrowing
    }
    std::vector<std::set<Rational>> seen(k);
    std::vector<std::size_t> idx(k, 0);
    if (combos > 0) {
        while (true) {
            std::vector<std::optional<Rational>> fixed;
            for (std::size_t i = 0; i < k; ++i) fixed.emplace_back(allowed[i][idx[i]]);
            if (!euler::feasible_tuples(o.sig, o.degree, o.cover_chi, fixed, o.maximal).empty())
                for (std::size_t i = 0; i < k; ++i) seen[i].insert(allowed[i][idx[i]]);
            std::size_t j = 0;
            while (j < k && ++idx[j] == allowed[j].size()) idx[j++] = 0;
            if (j == k) break;
        }
    }
    ClosedSet out = ClosedSet::full();
    for (const auto& [g, slot] : o.map) {
        if (g != slot_gen_target) continue;
        std::vector<std::pair<Pos, Pos>> segs;
        for (const auto& r : seen[slot]) segs.emplace_back(Pos(r), Pos(r));
        out = out.intersect(ClosedSet::from_segments(std::move(segs)));
    }
    return out;
}

std::vector<Instance> compile(const Presentation& p) {
    std::vector<Instance> out;
    const auto& G = p.generators;
    auto text = [&](const Relation& r) { return p.word_to_string(r.lhs) + " = " + p.word_to_string(r.rhs); };

    std::set<std::pair<int, int>> commuting;
    for (const auto& [a, b] : p.commutes) {
        commuting.insert({a, b});
        commuting.insert({b, a});
    }
    for (const auto& r : p.relations) {
        const auto& L = r.lhs.letters;
        const auto& R = r.rhs.letters;
        if (L.size() == 2 && R.size() == 2 && L[0] == R[1] && L[1] == R[0] && L[0].exp == 1 && L[1].exp == 1) {
            commuting.insert({L[0].gen, L[1].gen});
            commuting.insert({L[1].gen, L[0].gen});
        }
        for (const Word* w : {&r.lhs, &r.rhs}) {
            const Word& other = w == &r.lhs ? r.rhs : r.lhs;
            if (other.is_identity() && is_commutator(*w)) {
                commuting.insert({w->letters[0].gen, w->letters[1].gen});
                commuting.insert({w->letters[1].gen, w->letters[0].gen});
            }
        }
    }

    for (int g : p.hyperbolic)
        out.push_back(make("H", "hyperbolic " + G[g], {g}, [](int, const Sets&) { return ClosedSet::point(Rational(0)); }));

    auto conjugacy = [&](const std::string& src, const Letter& h, const Letter& h2) {
        if (h.gen == h2.gen) {
            if (h.exp != h2.exp) out.push_back(self_conjugate(src, h.gen, h.exp, h2.exp));
        } else {
            out.push_back(linear("R1", src, h.gen, h.exp, h2.gen, h2.exp));
        }
    };
    for (const auto& c : p.conjugations)
        if (c.h.is_atomic() && c.h2.is_atomic())
            conjugacy("conj (" + G[c.g] + ": " + p.word_to_string(c.h) + " -> " + p.word_to_string(c.h2) + ")",
                      c.h.letters[0], c.h2.letters[0]);

    for (const auto& r : p.relations) {
        const std::string src = text(r);
        const Word* lhs = &r.lhs;
        const Word* rhs = &r.rhs;
        if (lhs->is_identity()) std::swap(lhs, rhs);
        if (rhs->is_identity()) {
            if (lhs->is_atomic()) out.push_back(torsion("R5", src, lhs->letters[0].gen, std::labs(lhs->letters[0].exp)));
            continue;
        }
        if (lhs->is_atomic() && rhs->is_atomic()) {
            const Letter a = lhs->letters[0], b = rhs->letters[0];
            if (a.gen != b.gen) out.push_back(linear("R2", src, a.gen, a.exp, b.gen, b.exp));
            else if (a.exp != b.exp) out.push_back(torsion("R5", src, a.gen, std::labs(a.exp - b.exp)));
            continue;
        }
        for (int side = 0; side < 2; ++side) {
            const Word& w = side == 0 ? r.lhs : r.rhs;
            const Word& v = side == 0 ? r.rhs : r.lhs;
            if (!v.is_atomic()) continue;
            if (const auto h = conjugated_letter(w)) conjugacy(src, *h, v.letters[0]);
            if (w.letters.size() == 2) {
                const Letter a = w.letters[0], b = w.letters[1];
                const Letter c = v.letters[0];
                if (a.gen == b.gen || c.gen == a.gen || c.gen == b.gen || !commuting.count({a.gen, b.gen})) continue;
                const long k = c.exp, i = a.exp, j = b.exp;
                const int ga = a.gen, gb = b.gen, gc = c.gen;
                out.push_back(make("R4", src, {ga, gb, gc}, [=](int t, const Sets& s) {
                    if (t == gc) return s[ga].scale(i).sum(s[gb].scale(j)).preimage(k);
                    if (t == ga) return s[gc].scale(k).sum(s[gb].scale(j).negate()).preimage(i);
                    return s[gc].scale(k).sum(s[ga].scale(i).negate()).preimage(j);
                }));
            }
        }
    }

    for (const auto& t : p.torsions)
        out.push_back(torsion("R5", "torsion " + G[t.gen] + ":" + std::to_string(t.order), t.gen, t.order));

    for (const auto& o : p.orbifolds) {
        std::vector<int> gens;
        for (const auto& [g, slot] : o.map) gens.push_back(g);
        if (gens.empty()) continue;
        std::string src = "orbifold sig=" + o.sig.to_string() + " degree=" + std::to_string(o.degree) +
                          " coverchi=" + rotforce::to_string(o.cover_chi) + (o.maximal ? " maximal" : "");
        out.push_back(make("R6", src, gens, [o](int t, const Sets& s) { return r6_slot_set(o, t, s); }));
    }

    for (const auto& e : p.exclusions) {
        const ClosedSet allowed = [&] {
            const auto dom = rotarith::domain_interval(e.l, e.theta);
            return ClosedSet::arc(Pos::from_angle(dom.hi), Pos::from_angle(dom.lo)).symmetrize();
        }();
        out.push_back(make("R7", "exclude " + G[e.gen] + ": l=" + e.l_text + " theta=" + e.theta.to_string(), {e.gen},
                           [allowed](int, const Sets&) { return allowed; }));
    }

    std::stable_sort(out.begin(), out.end(), [](const Instance& a, const Instance& b) { return a.rank < b.rank; });
    return out;
}

struct Engine {
    const Presentation& p;
    const std::vector<Instance>& instances;
    Sets sets;
    std::vector<int> last;
    Certificate cert;
    int next_id = 0;
    int rounds = 0;

    void record(const std::string& rule, int instance, const std::string& source, int gen,
                std::vector<std::pair<int, int>> premises, ClosedSet set) {
        cert.steps.push_back({next_id, rule, instance, source, gen, std::move(premises), set});
        last[gen] = next_id++;
        sets[gen] = std::move(set);
        if (sets[gen].empty())
            throw Inconsistent("no rotation number of " + p.generators[gen] + " survives " + rule + " (" + source + ")");
    }

    void run() {
        for (rounds = 0; rounds < kMaxRounds;) {
            bool changed = false;
            for (std::size_t i = 0; i < instances.size(); ++i) {
                const Instance& in = instances[i];
                for (int t : in.targets) {
                    ClosedSet next = sets[t].intersect(in.derive(t, sets));
                    if (next == sets[t]) continue;
                    std::vector<std::pair<int, int>> premises;
                    for (int g : in.inputs) premises.emplace_back(g, last[g]);
                    record(in.rule, static_cast<int>(i), in.source, t, std::move(premises), std::move(next));
                    changed = true;
                }
            }
            ++rounds;
            if (!changed) break;
        }
    }
};

}  // namespace

PropagationResult propagate(const Presentation& p) {
    const auto instances = compile(p);
    const std::size_t n = p.generators.size();
    Engine base{p, instances, Sets(n, ClosedSet::full()), std::vector<int>(n, -1), {}, 0, 0};
    base.run();

    PropagationResult out;
    out.derived = base.sets;
    out.certificate = base.cert;
    out.rounds = base.rounds;
    for (int g : p.marked) out.marked.emplace_back(p.generators[g], RotSet(base.sets[g]));

    for (const auto& d : p.dials) {
        for (long j = 0; j < d.order; ++j) {
            DialBranch br;
            br.gen = d.gen;
            br.value = Pos(Rational(j, d.order));
            Engine e = base;
            e.cert.steps.clear();
            try {
                e.record("dial", -1, "dial " + p.generators[d.gen] + ":" + std::to_string(d.order), d.gen,
                         {{d.gen, base.last[d.gen]}}, base.sets[d.gen].intersect(ClosedSet::point(br.value)));
                e.run();
                for (int g : p.marked) br.sets.push_back(e.sets[g]);
            } catch (const Inconsistent&) {
                br.feasible = false;
                br.sets.assign(p.marked.size(), ClosedSet{});
            }
            br.certificate = e.cert;
            out.dials.push_back(std::move(br));
        }
    }
    return out;
}

bool replay(const Presentation& p, const Certificate& c) {
    const auto instances = compile(p);
    const std::size_t n = p.generators.size();
    std::map<int, const CertStep*> by_id;
    for (const auto& step : c.steps) {
        if (step.gen < 0 || static_cast<std::size_t>(step.gen) >= n) return false;
        Sets s(n, ClosedSet::full());
        for (const auto& [g, id] : step.premises) {
            if (g < 0 || static_cast<std::size_t>(g) >= n) return false;
            if (id >= 0) {
                const auto it = by_id.find(id);
                if (id >= step.id || it == by_id.end() || it->second->gen != g) return false;
                s[g] = it->second->set;
            }
        }
        ClosedSet derived;
        if (step.rule == "dial") {
            const auto dial = std::find_if(p.dials.begin(), p.dials.end(), [&](const Dial& d) { return d.gen == step.gen; });
            if (dial == p.dials.end() || step.set.points().size() > 1 || !step.set.arcs().empty()) return false;
            if (!step.set.empty() && !ClosedSet::multiples(dial->order).contains(step.set.points().front())) return false;
            derived = step.set.subset_of(s[step.gen]) ? step.set : ClosedSet{};
        } else {
            if (step.instance < 0 || static_cast<std::size_t>(step.instance) >= instances.size()) return false;
            const Instance& in = instances[step.instance];
            if (in.rule != step.rule || std::find(in.targets.begin(), in.targets.end(), step.gen) == in.targets.end())
                return false;
            for (int g : in.inputs) {
                const bool cited = std::any_of(step.premises.begin(), step.premises.end(),
                                               [g](const auto& pr) { return pr.first == g; });
                if (!cited) return false;
            }
            derived = s[step.gen].intersect(in.derive(step.gen, s));
        }
        if (!(derived == step.set)) return false;
        by_id[step.id] = &step;
    }
    return true;
}

namespace {

Pos snap(const Pos& x, int bits, bool up) {
    const double scale = std::ldexp(1.0, bits);
    if (x.is_exact()) {
        const Rational y = *x.exact() * (Integer(1) << bits);
        Integer f = floor(y);
        if (up && Rational(f) != y) ++f;
        return Pos(Rational(f) / Rational(Integer(1) << bits));
    }
    const double y = x.value() * scale;
    return Pos::from_double((up ? std::ceil(y) : std::floor(y)) / scale);
}

ClosedSet cover_set(const std::vector<Arc>& arcs) {
    std::vector<std::pair<Pos, Pos>> segs;
    for (const auto& a : arcs) {
        const auto s = ClosedSet::arc(a.lo, a.hi).segments();
        segs.insert(segs.end(), s.begin(), s.end());
    }
    return ClosedSet::from_segments(std::move(segs));
}

}  // namespace

CoverGenerator fixed_cover(std::vector<Arc> arcs) {
    return [arcs = std::move(arcs)](int) { return arcs; };
}

CoverGenerator cantor_cover() {
    return [](int stage) {
        std::vector<Integer> starts{0};
        Integer den = 1;
        for (int i = 0; i < stage; ++i) {
            std::vector<Integer> next;
            for (const auto& s : starts) {
                next.push_back(3 * s);
                next.push_back(3 * s + 2);
            }
            starts = std::move(next);
            den *= 3;
        }
        std::vector<Arc> arcs;
        for (const auto& s : starts) arcs.push_back({Pos(Rational(s, den)), Pos(Rational(s + 1, den))});
        return arcs;
    };
}

ClosedSet snap_outward(const std::vector<Arc>& arcs, int bits) {
    std::vector<std::pair<Pos, Pos>> segs;
    for (const auto& a : arcs) {
        Pos hi = a.hi;
        if (hi < a.lo) hi = hi + Pos(Rational(1));
        const Pos lo = snap(a.lo, bits, false);
        hi = snap(hi, bits, true);
        if (!(hi - lo < Pos(Rational(1)))) return ClosedSet::full();
        const auto s = ClosedSet::arc(lo, hi).segments();
        segs.insert(segs.end(), s.begin(), s.end());
    }
    return ClosedSet::from_segments(std::move(segs));
}

std::vector<RotSet> outer_approximation(const CoverGenerator& cover, int stages) {
    std::vector<RotSet> out;
    ClosedSet prev_cover;
    for (int i = 1; i <= stages; ++i) {
        const auto arcs = cover(i);
        const ClosedSet c = cover_set(arcs);
        if (i > 1 && !c.subset_of(prev_cover))
            throw InvalidCoverGenerator("stage " + std::to_string(i) + " cover is not inside stage " + std::to_string(i - 1));
        RotSet s(snap_outward(arcs, i + 4));
        if (!out.empty() && !s.subset_of(out.back()))
            throw InvalidCoverGenerator("snapped stage " + std::to_string(i) + " is not nested");
        out.push_back(std::move(s));
        prev_cover = c;
    }
    return out;
}

EmittedGroup emit_interval_group(const rotarith::CircularInterval& interval) {
    if (interval.is_full()) throw NotRepresentable("the full circle is not the complement of any I_{l,theta}");
    EmittedGroup g;
    std::string l_text, theta_text;
    if (interval.lo() == interval.hi()) {
        g.theta = -interval.lo();
        l_text = "0";
        theta_text = g.theta.to_string();
    } else {
        const auto fit = kernels::fit_complement_omp(interval.lo().value(), interval.hi().value(), 4096);
        if (fit.error > kEmitTolerance)
            throw NotRepresentable(interval.to_string() + " is matched only to " + format_double(fit.error));
        g.l = fit.l;
        g.error = fit.error;
        l_text = format_double(fit.l);
        theta_text = format_double(fit.theta);
    }
    const std::string text = "gens Lat, alpha, alphap, beta, gamma, mu;\n"
                             "conj (beta: alpha -> alphap);\n"
                             "commute (gamma, alphap);\n"
                             "conj (mu: alpha gamma -> beta);\n"
                             "hyperbolic beta;\n"
                             "exclude gamma: l=" + l_text + " theta=" + theta_text + ";\n"
                             "mark gamma;\n";
    g.presentation = parse_presentation(text);
    g.l = g.presentation.exclusions[0].l;
    g.theta = g.presentation.exclusions[0].theta;
    return g;
}

}  // namespace rotforce::forcing
