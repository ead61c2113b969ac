#include "rotforce/cli.hpp"

#include "rotforce/circle_map.hpp"
#include "rotforce/denjoy.hpp"
#include "rotforce/errors.hpp"
#include "rotforce/eulerorb.hpp"
#include "rotforce/forcing.hpp"
#include "rotforce/moebius.hpp"
#include "rotforce/quatalg.hpp"
#include "rotforce/rotarith.hpp"
#include "rotforce/solver.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace rotforce::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Json parse_json_file(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SyntaxError(e.what(), 1, static_cast<int>(e.byte));
    }
}

Angle parse_angle(const std::string& text) { return Angle::from_rational(parse_rational(text)); }

double parse_real(const std::string& text) {
    if (text.rfind("log(", 0) == 0 && text.back() == ')')
        return std::log(to_double(parse_rational(text.substr(4, text.size() - 5))));
    return to_double(parse_rational(text));
}

double json_real(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return parse_real(j.get<std::string>());
    throw SyntaxError("expected a number or numeric string, got " + j.dump(), 1, 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty() || !out.empty()) out.push_back(cur);
    return out;
}

Json matrix_json(double a, double b, double c, double d) {
    return Json::array({Json::array({format_double(a), format_double(b)}), Json::array({format_double(c), format_double(d)})});
}

Json matrix_json(const moebius::MoebiusReal& m) { return matrix_json(m.a(), m.b(), m.c(), m.d()); }

moebius::MoebiusReal json_matrix(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() || j[1].size() != 2)
        throw SyntaxError("a matrix is [[a,b],[c,d]]", 1, 1);
    return moebius::MoebiusReal(json_real(j[0][0]), json_real(j[0][1]), json_real(j[1][0]), json_real(j[1][1]));
}

// {"moebius": [[a,b],[c,d]]}, {"rotation": t}, {"breakpoints": [[x,y],...]}
// or a bare breakpoint array.
circle::CircleMap json_map(const Json& j) {
    const Json* bps = j.is_array() ? &j : nullptr;
    if (j.is_object()) {
        if (j.contains("moebius")) return circle::CircleMap::from_moebius(json_matrix(j["moebius"]));
        if (j.contains("rotation")) return circle::CircleMap::rotation(json_real(j["rotation"]));
        if (j.contains("breakpoints")) bps = &j["breakpoints"];
    }
    if (!bps) throw SyntaxError("map needs one of moebius, rotation, breakpoints", 1, 1);
    std::vector<circle::Breakpoint> pts;
    for (const auto& p : *bps) {
        if (!p.is_array() || p.size() != 2) throw SyntaxError("a breakpoint is [x, y]", 1, 1);
        pts.push_back({json_real(p[0]), json_real(p[1])});
    }
    return circle::CircleMap::piecewise_linear(std::move(pts));
}

Json rotset_json(const forcing::ClosedSet& s) {
    Json pts = Json::array(), arcs = Json::array();
    for (const auto& p : s.points()) pts.push_back(p.to_string());
    for (const auto& a : s.arcs()) arcs.push_back(Json::array({a.lo.to_string(), a.hi.to_string()}));
    return {{"points", pts}, {"intervals", arcs}};
}

Json integer_json(const Integer& n) {
    if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
        return static_cast<long long>(n);
    return n.str();
}

// Flattened "path  value" rows for --pretty.
void table(const Json& j, const std::string& path, std::ostream& out) {
    if (j.is_object()) {
        if (j.empty()) out << path << "  {}\n";
        for (const auto& [k, v] : j.items()) table(v, path.empty() ? k : path + "." + k, out);
    } else if (j.is_array()) {
        if (j.empty()) out << path << "  []\n";
        bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
        if (flat && !j.empty()) {
            out << path << " ";
            for (const auto& e : j) out << " " << (e.is_string() ? e.get<std::string>() : e.dump());
            out << "\n";
            return;
        }
        for (std::size_t i = 0; i < j.size(); ++i) table(j[i], path + "[" + std::to_string(i) + "]", out);
    } else {
        out << path << "  " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

struct Output {
    Json result;
    Json tolerances = Json::object();
};

Output cmd_rotnum(const std::string& map_path, long iters) {
    const auto f = json_map(parse_json_file(map_path));
    circle::certify_monotone(f);
    const auto est = circle::rotation_number(f, iters);
    Output o;
    o.result = {{"rotation_number", format_double(est.value)},
                {"iterations", est.iterations},
                {"error_bound", format_double(est.error_bound)}};
    if (const auto* m = f.as_moebius()) {
        const auto cls = moebius::classify(*m);
        o.result["class"] = std::string(moebius::to_string(cls));
        if (cls == moebius::IsometryClass::elliptic)
            o.result["closed_form"] = moebius::elliptic_rotation_number(*m).to_string();
    }
    o.tolerances["error_bound"] = "2/iterations";
    return o;
}

Output cmd_addl(const std::string& t1s, const std::string& t2s, const std::string& ls) {
    const Angle t1 = parse_angle(t1s), t2 = parse_angle(t2s);
    const double l = parse_real(ls);
    const Angle v = rotarith::plus_l(t1, t2, l);
    const Angle w = rotarith::plus_l_oracle(t1, t2, l);
    const double gap = std::min(std::abs(v.value() - w.value()), 1.0 - std::abs(v.value() - w.value()));
    constexpr double tol = 1e-9;
    Output o;
    o.result = {{"theta1", t1.to_string()}, {"theta2", t2.to_string()}, {"l", format_double(l)},
                {"value", v.to_string()},   {"oracle", w.to_string()},  {"oracle_gap", format_double(gap)},
                {"oracle_agrees", gap <= tol}};
    o.tolerances["oracle_gap"] = tol;
    return o;
}

Output cmd_domain(const std::string& ls, const std::string& ts) {
    const double l = parse_real(ls);
    const Angle t = parse_angle(ts);
    const auto dom = rotarith::domain_interval(l, t);
    Output o;
    o.result = {{"l", format_double(l)},
                {"theta", t.to_string()},
                {"interval", Json::array({dom.lo.to_string(), dom.hi.to_string()})},
                {"open", true},
                {"length", format_double(dom.length())},
                {"complement", Json::array({dom.hi.to_string(), dom.lo.to_string()})}};
    return o;
}

Output cmd_solve(const std::string& path, long grid, double tol) {
    const auto sys = rotarith::parse_system(read_file(path));
    rotarith::SolveOptions opt;
    opt.grid = grid;
    opt.refine_tol = tol;
    const auto sol = rotarith::solve_system(sys, opt);
    Json roots = Json::array();
    for (const auto& r : sol.roots) {
        Json vals = Json::object();
        for (std::size_t i = 0; i < r.values.size(); ++i) vals[sys.variables[i]] = r.values[i].to_string();
        roots.push_back({{"values", vals},
                         {"radius", format_double(r.radius)},
                         {"residual", format_double(r.residual)},
                         {"certified", r.certified}});
    }
    Output o;
    o.result = {{"roots", roots}, {"grid", sol.grid}};
    o.tolerances["refine_tol"] = sol.refine_tol;
    return o;
}

Output cmd_euler(const std::string& sig_text, long degree, const std::string& chi_text, const std::string& fix_text,
                 const std::string& free_text, bool maximal) {
    const auto sig = euler::OrbifoldSig::parse(sig_text);
    const std::size_t k = sig.cone_orders.size();
    std::vector<bool> is_free(k, false);
    std::vector<std::string> fixes = split(fix_text, ',');
    if (!free_text.empty()) {
        for (const auto& f : split(free_text, ',')) {
            long q = 0;
            try {
                q = std::stol(f);
            } catch (const std::exception&) {
                throw UsageError("--free takes cone orders, got '" + f + "'");
            }
            std::size_t i = 0;
            while (i < k && (is_free[i] || sig.cone_orders[i] != q)) ++i;
            if (i == k) throw UsageError("no unassigned cone point of order " + f);
            is_free[i] = true;
        }
        const auto n_free = static_cast<std::size_t>(std::count(is_free.begin(), is_free.end(), true));
        if (fixes.size() != k - n_free)
            throw UsageError("--fix gives " + std::to_string(fixes.size()) + " values for " +
                             std::to_string(k - n_free) + " fixed cone points");
    } else {
        if (fixes.size() > k) throw UsageError("more --fix values than cone points");
        for (std::size_t i = fixes.size(); i < k; ++i) is_free[i] = true;
    }
    std::vector<std::optional<Rational>> fixed(k);
    for (std::size_t i = 0, j = 0; i < k; ++i)
        if (!is_free[i]) fixed[i] = parse_rational(fixes[j++]);

    const Rational chi = parse_rational(chi_text);
    const auto tuples = euler::feasible_tuples(sig, degree, chi, fixed, maximal);
    Json list = Json::array();
    for (const auto& t : tuples) {
        Json rots = Json::array(), free = Json::array();
        for (std::size_t i = 0; i < k; ++i) {
            rots.push_back(to_string(t.tuple.rots[i]));
            if (is_free[i]) free.push_back(integer_json(numerator(t.tuple.rots[i] * sig.cone_orders[i])));
        }
        Json e{{"n", integer_json(t.tuple.n)}};
        if (free.size() == 1) e["p"] = free[0];
        e["free"] = free;
        e["rots"] = rots;
        e["euler"] = to_string(t.euler);
        e["lifted"] = to_string(t.lifted);
        e["mirror"] = t.mirror;
        list.push_back(e);
    }
    Output o;
    o.result = {{"signature", sig.to_string()},
                {"orbifold_chi", to_string(euler::orbifold_euler_char(sig))},
                {"degree", degree},
                {"cover_chi", to_string(chi)},
                {"bound", to_string(euler::milnor_wood_bound(chi))},
                {"maximal", maximal},
                {"tuples", list}};
    o.tolerances["arithmetic"] = "exact";
    return o;
}

Output cmd_quat(const std::string& path) {
    const auto file = quat::parse_algebra_file(read_file(path));
    const auto& A = file.algebra;
    const auto& F = A.field;
    Json places = Json::array();
    for (int i = 0; i < F.degree(); ++i) {
        const auto& r = F.roots()[i];
        places.push_back({{"root", format_double(F.root_value(i))},
                          {"isolating_interval", Json::array({to_string(r.lo), to_string(r.hi)})}});
    }
    const auto prof = quat::ramification_profile(A);
    Json ram = Json::array();
    for (bool b : prof.ramified) ram.push_back(b ? "ramified" : "unramified");
    const bool admissible = quat::is_fuchsian_admissible(A);
    Json elems = Json::array();
    for (const auto& [name, x] : file.elements) {
        const auto tn = quat::quat_trace_norm(A, x);
        Json e{{"name", name}, {"trace", F.to_string(tn.trace)}, {"norm", F.to_string(tn.norm)}};
        if (admissible) {
            const auto m = quat::embed_unramified(A, x);
            e["embedding"] = matrix_json(m.a, m.b, m.c, m.d);
            try {
                e["rotation_number"] = quat::arithmetic_rotation_number(A, x).to_string();
            } catch (const Error& err) {
                e["rotation_number"] = nullptr;
                e["rotation_error"] = err.kind();
            }
        }
        elems.push_back(e);
    }
    Output o;
    o.result = {{"field", F.minpoly_string()}, {"degree", F.degree()},   {"places", places},
                {"a", F.to_string(A.a)},        {"b", F.to_string(A.b)}, {"ramification", ram},
                {"admissible", admissible},     {"elements", elems}};
    if (admissible) o.result["unramified_place"] = prof.unramified_place();
    o.tolerances["signs"] = "certified";
    return o;
}

Json propagation_json(const forcing::Presentation& p, const forcing::PropagationResult& r) {
    Json marked = Json::object();
    for (const auto& [name, s] : r.marked) marked[name] = rotset_json(s.set());
    auto cert_json = [&](const forcing::Certificate& c) {
        Json steps = Json::array();
        for (const auto& s : c.steps) {
            Json prem = Json::array();
            for (const auto& [g, id] : s.premises) prem.push_back({{"generator", p.generators[g]}, {"step", id}});
            steps.push_back({{"id", s.id},
                             {"rule", s.rule},
                             {"source", s.source},
                             {"generator", p.generators[s.gen]},
                             {"premises", prem},
                             {"fact", s.set.to_string()}});
        }
        return steps;
    };
    Json dials = Json::array();
    for (const auto& d : r.dials) {
        Json m = Json::object();
        for (std::size_t i = 0; i < p.marked.size(); ++i)
            m[p.generators[p.marked[i]]] = d.feasible ? rotset_json(d.sets[i]) : Json(nullptr);
        dials.push_back({{"generator", p.generators[d.gen]},
                         {"value", d.value.to_string()},
                         {"feasible", d.feasible},
                         {"marked", m},
                         {"certificate", cert_json(d.certificate)}});
    }
    forcing::Certificate all = r.certificate;
    for (const auto& d : r.dials) all.steps.insert(all.steps.end(), d.certificate.steps.begin(), d.certificate.steps.end());
    bool replayed = forcing::replay(p, r.certificate);
    for (const auto& d : r.dials) {
        forcing::Certificate c = r.certificate;
        c.steps.insert(c.steps.end(), d.certificate.steps.begin(), d.certificate.steps.end());
        replayed = replayed && forcing::replay(p, c);
    }
    return {{"marked", marked},
            {"certificate", cert_json(r.certificate)},
            {"dials", dials},
            {"rounds", r.rounds},
            {"replayed", replayed}};
}

Output cmd_force(const std::string& path, const std::string& emit) {
    Output o;
    if (!emit.empty()) {
        const auto ends = split(emit, ',');
        if (ends.size() != 2) throw UsageError("--emit takes LO,HI");
        const auto g = forcing::emit_interval_group(rotarith::CircularInterval(parse_angle(ends[0]), parse_angle(ends[1])));
        o.result = propagation_json(g.presentation, forcing::propagate(g.presentation));
        o.result["presentation"] = forcing::print_presentation(g.presentation);
        o.result["l"] = format_double(g.l);
        o.result["theta"] = g.theta.to_string();
        o.result["fit_error"] = format_double(g.error);
        o.tolerances["fit_error"] = forcing::kEmitTolerance;
        return o;
    }
    const auto p = forcing::parse_presentation(read_file(path));
    o.result = propagation_json(p, forcing::propagate(p));
    o.tolerances["sets"] = "exact where endpoints are rational";
    return o;
}

Output cmd_approx(const std::vector<std::string>& arcs, bool cantor, int stages) {
    if (stages < 1) throw UsageError("--stages must be at least 1");
    forcing::CoverGenerator gen;
    if (cantor) {
        gen = forcing::cantor_cover();
    } else {
        if (arcs.empty()) throw UsageError("give --arc LO,HI or --cantor");
        std::vector<forcing::Arc> list;
        for (const auto& a : arcs) {
            const auto ends = split(a, ',');
            if (ends.size() != 2) throw UsageError("--arc takes LO,HI");
            list.push_back({forcing::Pos(parse_rational(ends[0])), forcing::Pos(parse_rational(ends[1]))});
        }
        gen = forcing::fixed_cover(list);
    }
    const auto sets = forcing::outer_approximation(gen, stages);
    Json out = Json::array();
    for (std::size_t i = 0; i < sets.size(); ++i) {
        Json s = rotset_json(sets[i].set());
        s["stage"] = i + 1;
        s["grid"] = "2^-" + std::to_string(i + 5);
        out.push_back(s);
    }
    Output o;
    o.result = {{"stages", out}, {"nested", true}};
    o.tolerances["snap"] = "outward to 2^-(stage+4)";
    return o;
}

Output cmd_triangle(int p, int q, int r) {
    const auto t = moebius::triangle_group_rep(p, q, r);
    auto residual = [](const moebius::MoebiusReal& m) {
        // Normalized representatives are +-I exactly when trivial.
        const double plus = std::max({std::abs(m.a() - 1), std::abs(m.b()), std::abs(m.c()), std::abs(m.d() - 1)});
        const double minus = std::max({std::abs(m.a() + 1), std::abs(m.b()), std::abs(m.c()), std::abs(m.d() + 1)});
        return std::min(plus, minus);
    };
    auto pow = [](const moebius::MoebiusReal& m, int k) {
        moebius::MoebiusReal x = moebius::MoebiusReal::identity();
        for (int i = 0; i < k; ++i) x = moebius::compose(x, m);
        return x;
    };
    const double res_p = residual(pow(t.A, p)), res_q = residual(pow(t.B, q)), res_r = residual(pow(t.C, r));
    const double res_abc = residual(moebius::compose(moebius::compose(t.A, t.B), t.C));
    Output o;
    o.result = {{"orders", Json::array({p, q, r})},
                {"A", matrix_json(t.A)},
                {"B", matrix_json(t.B)},
                {"C", matrix_json(t.C)},
                {"rotation_numbers",
                 Json::array({moebius::elliptic_rotation_number(t.A).to_string(),
                              moebius::elliptic_rotation_number(t.B).to_string(),
                              moebius::elliptic_rotation_number(t.C).to_string()})},
                {"side_pq", format_double(t.side_pq)},
                {"residuals",
                 {{"A^p", format_double(res_p)}, {"B^q", format_double(res_q)}, {"C^r", format_double(res_r)},
                  {"ABC", format_double(res_abc)}}}};
    o.tolerances["residual"] = 1e-9;
    return o;
}

Output cmd_denjoy(const std::string& gens_path, const std::string& rotation, double seed_point, int depth, long iters) {
    std::vector<moebius::MoebiusReal> gens;
    if (!gens_path.empty()) {
        const Json j = parse_json_file(gens_path);
        if (!j.is_array()) throw SyntaxError("generators file is a list of matrices", 1, 1);
        for (const auto& m : j) gens.push_back(json_matrix(m));
    } else {
        const Angle t = rotation.empty() ? Angle::from_double((std::sqrt(5.0) - 1.0) / 2.0) : parse_angle(rotation);
        gens.push_back(moebius::rotation_about(moebius::HPoint::i(), t));
    }
    circle::DenjoyOptions opt;
    opt.depth = depth;
    const auto blow = circle::denjoy_blowup(gens, seed_point, opt);
    Json gaps = Json::array();
    for (const auto& g : blow.gaps())
        gaps.push_back({{"start", format_double(g.start)},
                        {"end", format_double(g.end)},
                        {"orbit_point", format_double(g.orbit_point)},
                        {"level", g.level}});
    Json rots = Json::array();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto before = circle::rotation_number(circle::CircleMap::from_moebius(gens[i]), iters);
        const auto after = circle::rotation_number(blow.maps()[i], iters);
        double gap = std::abs(before.value - after.value);
        gap = std::min(gap, 1.0 - gap);
        rots.push_back({{"original", format_double(before.value)},
                        {"blown_up", format_double(after.value)},
                        {"difference", format_double(gap)},
                        {"bound", format_double(before.error_bound + after.error_bound)}});
    }
    Output o;
    o.result = {{"gaps", gaps},
                {"total_gap_mass", format_double(blow.total_gap_mass())},
                {"semiconjugacy_defect", format_double(circle::semiconjugacy_defect(blow, gens))},
                {"rotation_numbers", rots}};
    o.tolerances["rotation_bound"] = "2/iterations per estimate";
    return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rotation-number forcing toolkit", "rotforce"};
    app.require_subcommand(1);
    bool pretty = false;
    long seed = 0;
    app.add_flag("--pretty", pretty, "Render a plain table instead of JSON");
    app.add_option("--seed", seed, "Seed recorded in the metadata");

    std::function<Output()> action;
    std::string name;
    auto sub = [&](const std::string& n, const std::string& desc) {
        auto* s = app.add_subcommand(n, desc);
        s->callback([&name, n] { name = n; });
        return s;
    };

    std::string map_path;
    long iters = 100000;
    auto* rotnum = sub("rotnum", "Poincare rotation number of a circle map");
    rotnum->add_option("--map", map_path, "JSON map file")->required();
    rotnum->add_option("--iters", iters, "Iterations")->check(CLI::PositiveNumber);

    std::string t1, t2, l_text = "0";
    auto* addl = sub("addl", "Deformed addition +_l");
    addl->add_option("theta1", t1)->required();
    addl->add_option("theta2", t2)->required();
    addl->add_option("--l", l_text, "Parameter l >= 0");

    std::string theta;
    auto* domain = sub("domain", "Domain interval I_{l,theta}");
    domain->add_option("--l", l_text)->required();
    domain->add_option("--theta", theta)->required();

    std::string system_path;
    long grid = 4096;
    double refine = 1e-10;
    auto* solve = sub("solve", "Solve a system of +_l equations");
    solve->add_option("--system", system_path, "System file")->required();
    solve->add_option("--grid", grid)->check(CLI::PositiveNumber);
    solve->add_option("--refine-tol", refine)->check(CLI::PositiveNumber);

    std::string sig, chi, fix, free;
    long degree = 1;
    bool maximal = false;
    auto* ef = sub("euler-feasible", "Cone rotation tuples passing Milnor-Wood");
    ef->add_option("--sig", sig, "Orbifold signature g;q1,q2,...")->required();
    ef->add_option("--degree", degree)->required()->check(CLI::PositiveNumber);
    ef->add_option("--cover-chi", chi)->required();
    ef->add_option("--fix", fix, "Fixed rotations in slot order");
    ef->add_option("--free", free, "Cone orders of the free slots");
    ef->add_flag("--maximal", maximal, "Require |e| to equal the bound");

    std::string algebra_path;
    auto* qa = sub("quat", "Quaternion algebra admissibility and rotation numbers");
    qa->add_option("--algebra", algebra_path, "Algebra file")->required();

    std::string pres_path, emit;
    auto* force = sub("force", "Propagate forced rotation sets");
    auto* pres_opt = force->add_option("--presentation", pres_path, "Presentation file");
    auto* emit_opt = force->add_option("--emit", emit, "Emit and propagate the group for LO,HI");
    pres_opt->excludes(emit_opt);
    force->require_option(1);

    std::vector<std::string> arcs;
    bool cantor = false;
    int stages = 8;
    auto* approx = sub("approx", "Nested outer approximation of a closed set");
    auto* arc_opt = approx->add_option("--arc", arcs, "Closed arc LO,HI (repeatable)")->allow_extra_args(false);
    approx->add_flag("--cantor", cantor, "Middle-thirds Cantor set")->excludes(arc_opt);
    approx->add_option("--stages", stages);

    int tp = 0, tq = 0, tr = 0;
    auto* tri = sub("triangle", "Triangle group representation");
    tri->add_option("p", tp)->required();
    tri->add_option("q", tq)->required();
    tri->add_option("r", tr)->required();

    std::string gens_path, rotation;
    double seed_point = 0.1;
    int depth = 5;
    auto* dj = sub("denjoy", "Denjoy blow-up of a Moebius action");
    auto* gens_opt = dj->add_option("--generators", gens_path, "JSON list of matrices");
    dj->add_option("--rotation", rotation, "Single rotation about i (default golden mean)")->excludes(gens_opt);
    dj->add_option("--orbit-seed", seed_point);
    dj->add_option("--depth", depth)->check(CLI::Range(0, 12));
    dj->add_option("--iters", iters)->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "rotforce: " << e.what() << "\n";
        return 2;
    }

    Json doc;
    doc["command"] = name;
    auto emit_doc = [&](const Json& meta_tol) {
        doc["meta"] = {{"version", kVersion}, {"seed", seed}, {"tolerances", meta_tol}};
    };
    try {
        Output o;
        if (name == "rotnum") o = cmd_rotnum(map_path, iters);
        else if (name == "addl") o = cmd_addl(t1, t2, l_text);
        else if (name == "domain") o = cmd_domain(l_text, theta);
        else if (name == "solve") o = cmd_solve(system_path, grid, refine);
        else if (name == "euler-feasible") o = cmd_euler(sig, degree, chi, fix, free, maximal);
        else if (name == "quat") o = cmd_quat(algebra_path);
        else if (name == "force") o = cmd_force(pres_path, emit);
        else if (name == "approx") o = cmd_approx(arcs, cantor, stages);
        else if (name == "triangle") o = cmd_triangle(tp, tq, tr);
        else o = cmd_denjoy(gens_path, rotation, seed_point, depth, iters);
        emit_doc(o.tolerances);
        doc["result"] = std::move(o.result);
    } catch (const UsageError& e) {
        err << "rotforce " << name << ": " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        emit_doc(Json::object());
        doc["error"] = {{"kind", e.kind()}, {"message", e.what()}};
        if (pretty) table(doc, "", out);
        else out << doc.dump() << "\n";
        err << "rotforce " << name << ": " << e.what() << "\n";
        return 1;
    }
    if (pretty) table(doc, "", out);
    else out << doc.dump() << "\n";
    return 0;
}

}  // namespace rotforce::cli
