#include "rotforce/circle_map.hpp"

#include "rotforce/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <variant>

namespace rotforce::circle {

using moebius::MoebiusReal;

struct CircleMap::Node {
    std::variant<MoebiusReal, std::vector<Breakpoint>, std::vector<CircleMap>> body;
};

namespace {

// Displacement (in circle units) of the Moebius lift at u in [0,1).
//
// The point s of RP^1 is the line through v(s) = (-sin pi s, cos pi s). With
// a representative of non-negative trace, M v never points opposite to v, so
// the signed angle from v to M v is continuous in s.
double moebius_displacement(const MoebiusReal& m, double u) {
    double a = m.a(), b = m.b(), c = m.c(), d = m.d();
    if (a + d < 0) {
        a = -a;
        b = -b;
        c = -c;
        d = -d;
    }
    const double v0 = -std::sin(std::numbers::pi * u);
    const double v1 = std::cos(std::numbers::pi * u);
    const double w0 = a * v0 + b * v1;
    const double w1 = c * v0 + d * v1;
    const double cross = v0 * w1 - v1 * w0;
    const double dot = v0 * w0 + v1 * w1;
    return std::atan2(cross, dot) / std::numbers::pi;
}

double pl_base(const std::vector<Breakpoint>& bp, double u) {
    const Breakpoint& first = bp.front();
    const Breakpoint& last = bp.back();
    Breakpoint lo, hi;
    if (u < first.x) {
        lo = {last.x - 1.0, last.y - 1.0};
        hi = first;
    } else if (u >= last.x) {
        lo = last;
        hi = {first.x + 1.0, first.y + 1.0};
    } else {
        auto it = std::upper_bound(bp.begin(), bp.end(), u,
                                   [](double v, const Breakpoint& b) { return v < b.x; });
        hi = *it;
        lo = *(it - 1);
    }
    if (u == lo.x) return lo.y;
    return lo.y + (u - lo.x) * (hi.y - lo.y) / (hi.x - lo.x);
}

}  // namespace

CircleMap::CircleMap()
    : node_(std::make_shared<const Node>(Node{std::vector<CircleMap>{}})) {}

CircleMap CircleMap::from_moebius(const MoebiusReal& m) {
    return CircleMap(std::make_shared<const Node>(Node{m}));
}

CircleMap CircleMap::piecewise_linear(std::vector<Breakpoint> bp) {
    if (bp.empty()) throw NotMonotone("piecewise-linear map needs at least one breakpoint");
    for (std::size_t i = 0; i < bp.size(); ++i) {
        if (!std::isfinite(bp[i].x) || !std::isfinite(bp[i].y))
            throw NotMonotone("non-finite breakpoint");
        if (bp[i].x < 0.0 || bp[i].x >= 1.0)
            throw NotMonotone("breakpoint x must lie in [0,1)");
        if (i > 0 && !(bp[i].x > bp[i - 1].x)) throw NotMonotone("breakpoint x not increasing");
        if (i > 0 && !(bp[i].y > bp[i - 1].y)) throw NotMonotone("breakpoint y not increasing");
    }
    if (!(bp.back().y < bp.front().y + 1.0))
        throw NotMonotone("lift does not satisfy f(x+1) = f(x)+1 monotonically");
    return CircleMap(std::make_shared<const Node>(Node{std::move(bp)}));
}

CircleMap CircleMap::rotation(double t) { return piecewise_linear({{0.0, t}}); }

CircleMap CircleMap::word(std::vector<CircleMap> factors) {
    if (factors.size() == 1) return factors.front();
    return CircleMap(std::make_shared<const Node>(Node{std::move(factors)}));
}

CircleMap::Kind CircleMap::kind() const noexcept {
    switch (node_->body.index()) {
        case 0: return Kind::moebius;
        case 1: return Kind::piecewise_linear;
        default: return Kind::word;
    }
}

double CircleMap::lift(double s) const {
    const double k = std::floor(s);
    const double u = s - k;
    if (const auto* m = std::get_if<MoebiusReal>(&node_->body)) return s + moebius_displacement(*m, u);
    if (const auto* bp = std::get_if<std::vector<Breakpoint>>(&node_->body)) return k + pl_base(*bp, u);
    const auto& factors = std::get<std::vector<CircleMap>>(node_->body);
    double x = s;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) x = it->lift(x);
    return x;
}

double CircleMap::operator()(double s) const { return frac(lift(s)); }

CircleMap CircleMap::inverse() const {
    if (const auto* m = std::get_if<MoebiusReal>(&node_->body)) return from_moebius(m->inverse());
    if (const auto* bp = std::get_if<std::vector<Breakpoint>>(&node_->body)) {
        std::vector<Breakpoint> inv;
        inv.reserve(bp->size());
        for (const auto& b : *bp) {
            const double k = std::floor(b.y);
            inv.push_back({b.y - k, b.x - k});
        }
        std::sort(inv.begin(), inv.end(), [](const Breakpoint& l, const Breakpoint& r) { return l.x < r.x; });
        // Rotating the list can leave y values off by one; restore monotone lift.
        for (std::size_t i = 1; i < inv.size(); ++i)
            while (inv[i].y <= inv[i - 1].y) inv[i].y += 1.0;
        return piecewise_linear(std::move(inv));
    }
    const auto& factors = std::get<std::vector<CircleMap>>(node_->body);
    std::vector<CircleMap> inv;
    inv.reserve(factors.size());
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) inv.push_back(it->inverse());
    return word(std::move(inv));
}

const MoebiusReal* CircleMap::as_moebius() const noexcept {
    return std::get_if<MoebiusReal>(&node_->body);
}

const std::vector<Breakpoint>* CircleMap::as_breakpoints() const noexcept {
    return std::get_if<std::vector<Breakpoint>>(&node_->body);
}

const std::vector<CircleMap>* CircleMap::as_factors() const noexcept {
    return std::get_if<std::vector<CircleMap>>(&node_->body);
}

Lift Lift::normalized(const CircleMap& f) {
    return {f, -static_cast<long>(std::floor(f.lift(0.0)))};
}

namespace {

void collect_breakpoints(const CircleMap& f, std::vector<double>& out) {
    if (const auto* bp = f.as_breakpoints()) {
        for (const auto& b : *bp) out.push_back(b.x);
    } else if (const auto* fs = f.as_factors()) {
        for (const auto& g : *fs) collect_breakpoints(g, out);
    }
}

}  // namespace

void certify_monotone(const CircleMap& f) {
    // det > 0 and breakpoint ordering are enforced at construction
    if (f.kind() != CircleMap::Kind::word) return;
    std::vector<double> pts;
    pts.reserve(kMonotoneGrid + 16);
    for (int i = 0; i < kMonotoneGrid; ++i) pts.push_back(static_cast<double>(i) / kMonotoneGrid);
    collect_breakpoints(f, pts);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    double prev = f.lift(pts.front());
    const double start = prev;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double v = f.lift(pts[i]);
        // Nearly flat pieces can tie in floating point, so only a strict decrease fails.
        if (!(v >= prev)) throw NotMonotone("lift not increasing near x = " + format_double(pts[i]));
        prev = v;
    }
    const double wrap = f.lift(1.0);
    if (!(wrap >= prev) || std::abs(wrap - start - 1.0) > 1e-9)
        throw NotMonotone("lift does not commute with x -> x+1");
}

RotationEstimate rotation_number(const CircleMap& f, long n) {
    if (n < 1) throw std::invalid_argument("rotation_number needs n >= 1");
    certify_monotone(f);
    double x = 0.0;
    for (long i = 0; i < n; ++i) x = f.lift(x);
    return {frac(x / static_cast<double>(n)), n, 2.0 / static_cast<double>(n)};
}

CircleMap power(const CircleMap& f, long k) {
    if (k == 0) return CircleMap::identity();
    const CircleMap base = k > 0 ? f : f.inverse();
    return CircleMap::word(std::vector<CircleMap>(static_cast<std::size_t>(k > 0 ? k : -k), base));
}

int euler_cocycle(const CircleMap& f, const CircleMap& g) {
    const Lift fl = Lift::normalized(f);
    const Lift gl = Lift::normalized(g);
    const double z = fl(gl(0.0));
    // f~(g~(0)) lies in [f~(0), f~(0)+1) within [0,2); clamp rounding spill.
    if (z < 1.0) return 0;
    return 1;
}

double commutator_defect(const CircleMap& f, const CircleMap& g, int grid) {
    double worst = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double x = static_cast<double>(i) / grid;
        worst = std::max(worst, circular_distance(f(g.lift(x)), g(f.lift(x))));
    }
    return worst;
}

double identity_defect(const CircleMap& f, int grid) {
    double worst = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double x = static_cast<double>(i) / grid;
        worst = std::max(worst, circular_distance(f(x), x));
    }
    return worst;
}

}  // namespace rotforce::circle
