#include "rotforce/denjoy.hpp"

#include "rotforce/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace rotforce::circle {

using moebius::MoebiusReal;

namespace {

constexpr double kOrbitMerge = 1e-11;
constexpr double kStabilizerTol = 1e-9;

struct OrbitPoint {
    double x;
    int level;
};

// Sorted orbit with circular nearest-point lookup.
class Orbit {
public:
    explicit Orbit(std::vector<OrbitPoint> pts) : pts_(std::move(pts)) {
        std::sort(pts_.begin(), pts_.end(), [](const auto& l, const auto& r) { return l.x < r.x; });
    }

    const std::vector<OrbitPoint>& points() const noexcept { return pts_; }

    // Index of an orbit point within kOrbitMerge of u, or -1.
    long find(double u) const {
        if (pts_.empty()) return -1;
        auto it = std::lower_bound(pts_.begin(), pts_.end(), u,
                                   [](const OrbitPoint& p, double v) { return p.x < v; });
        const long n = static_cast<long>(pts_.size());
        const long hi = (it - pts_.begin()) % n;
        const long lo = (hi - 1 + n) % n;
        if (circular_distance(pts_[hi].x, u) <= kOrbitMerge) return hi;
        if (circular_distance(pts_[lo].x, u) <= kOrbitMerge) return lo;
        return -1;
    }

private:
    std::vector<OrbitPoint> pts_;
};

std::vector<OrbitPoint> orbit_ball(const std::vector<CircleMap>& letters, double seed, int depth) {
    std::vector<OrbitPoint> all{{frac(seed), 0}};
    std::vector<double> sorted{frac(seed)};
    auto known = [&](double u) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), u);
        if (it != sorted.end() && circular_distance(*it, u) <= kOrbitMerge) return true;
        if (it != sorted.begin() && circular_distance(*(it - 1), u) <= kOrbitMerge) return true;
        if (!sorted.empty() && circular_distance(sorted.front(), u) <= kOrbitMerge) return true;
        return !sorted.empty() && circular_distance(sorted.back(), u) <= kOrbitMerge;
    };
    std::size_t begin = 0;
    for (int level = 1; level <= depth; ++level) {
        const std::size_t end = all.size();
        for (std::size_t i = begin; i < end; ++i) {
            for (const auto& g : letters) {
                const double y = g(all[i].x);
                if (known(y)) continue;
                all.push_back({y, level});
                sorted.insert(std::upper_bound(sorted.begin(), sorted.end(), y), y);
            }
        }
        begin = end;
    }
    return all;
}

// Depth-first walk over reduced words; throws if one fixes the seed.
void check_stabilizer(const std::vector<MoebiusReal>& letters, double seed, int depth) {
    const int m = static_cast<int>(letters.size());
    std::function<void(const MoebiusReal&, int, int)> walk = [&](const MoebiusReal& w, int len, int last) {
        if (len > 0 && moebius::identity_residual(w) > kStabilizerTol) {
            const double image = CircleMap::from_moebius(w)(seed);
            if (circular_distance(image, seed) <= kStabilizerTol)
                throw StabilizerNotTrivial("a word of length " + std::to_string(len) +
                                           " fixes the orbit seed");
        }
        if (len == depth) return;
        for (int k = 0; k < m; ++k) {
            if (last >= 0 && k == (last ^ 1)) continue;  // letters come in (g, g^-1) pairs
            walk(letters[k] * w, len + 1, k);
        }
    };
    walk(MoebiusReal::identity(), 0, -1);
}

// Breakpoints sorted by x, duplicates dropped, y unwrapped into a monotone lift.
CircleMap assemble(std::vector<Breakpoint> bp) {
    for (auto& b : bp) {
        b.x = frac(b.x);
        b.y = frac(b.y);
    }
    std::sort(bp.begin(), bp.end(), [](const Breakpoint& l, const Breakpoint& r) { return l.x < r.x; });
    std::vector<Breakpoint> out;
    out.reserve(bp.size());
    for (const auto& b : bp) {
        if (!out.empty()) {
            if (b.x <= out.back().x) continue;
            const double step = frac(b.y - frac(out.back().y));
            if (step == 0.0) continue;
            out.push_back({b.x, out.back().y + step});
        } else {
            out.push_back(b);
        }
    }
    return CircleMap::piecewise_linear(std::move(out));
}

}  // namespace

double GapWeights::level_mass(int k) const {
    if (!per_level.empty()) {
        if (k >= static_cast<int>(per_level.size())) return 0.0;
        return per_level[static_cast<std::size_t>(k)];
    }
    return scale / ((k + 1.0) * (k + 2.0));
}

DenjoyBlowup::DenjoyBlowup(std::vector<CircleMap> maps, std::vector<Gap> gaps, double continuous_mass)
    : maps_(std::move(maps)), gaps_(std::move(gaps)), continuous_mass_(continuous_mass) {
    prefix_.reserve(gaps_.size() + 1);
    prefix_.push_back(0.0);
    for (const auto& g : gaps_) prefix_.push_back(prefix_.back() + (g.end - g.start));
}

double DenjoyBlowup::collapse(double t) const {
    t = frac(t);
    // First gap whose start exceeds t; the candidate gap is the one before.
    auto it = std::upper_bound(gaps_.begin(), gaps_.end(), t,
                               [](double v, const Gap& g) { return v < g.start; });
    const std::size_t k = static_cast<std::size_t>(it - gaps_.begin());
    if (k > 0 && t <= gaps_[k - 1].end) return gaps_[k - 1].orbit_point;
    return frac((t - prefix_[k]) / continuous_mass_);
}

double DenjoyBlowup::expand(double u) const {
    u = frac(u);
    auto it = std::lower_bound(gaps_.begin(), gaps_.end(), u,
                               [](const Gap& g, double v) { return g.orbit_point < v; });
    const std::size_t k = static_cast<std::size_t>(it - gaps_.begin());
    return continuous_mass_ * u + prefix_[k];
}

DenjoyBlowup denjoy_blowup(std::span<const MoebiusReal> generators, double orbit_seed,
                           const DenjoyOptions& options) {
    if (generators.empty()) return DenjoyBlowup({}, {}, 1.0);
    if (options.depth < 0) throw std::invalid_argument("depth must be non-negative");

    double total = 0.0;
    for (int k = 0; k <= options.depth; ++k) {
        const double w = options.weights.level_mass(k);
        if (!(w > 0.0) || !std::isfinite(w)) throw GapBudgetExceeded("gap weights must be positive");
        total += w;
    }
    if (total >= 1.0) throw GapBudgetExceeded("gap weights sum to " + format_double(total));

    std::vector<MoebiusReal> letters;
    std::vector<CircleMap> letter_maps;
    for (const auto& g : generators) {
        letters.push_back(g);
        letters.push_back(g.inverse());
    }
    for (const auto& l : letters) letter_maps.push_back(CircleMap::from_moebius(l));
    check_stabilizer(letters, frac(orbit_seed), options.depth);

    const Orbit orbit(orbit_ball(letter_maps, orbit_seed, options.depth));
    const auto& pts = orbit.points();

    std::vector<int> per_level(static_cast<std::size_t>(options.depth) + 1, 0);
    for (const auto& p : pts) ++per_level[static_cast<std::size_t>(p.level)];

    std::vector<double> mass;
    mass.reserve(pts.size());
    double placed = 0.0;
    for (const auto& p : pts) {
        mass.push_back(options.weights.level_mass(p.level) / per_level[static_cast<std::size_t>(p.level)]);
        placed += mass.back();
    }
    const double w_cont = 1.0 - placed;
    std::vector<Gap> gaps;
    gaps.reserve(pts.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        const double w = mass[i];
        const double start = w_cont * p.x + acc;
        gaps.push_back({start, start + w, p.x, p.level});
        acc += w;
    }
    DenjoyBlowup shell({}, gaps, w_cont);

    const double eta = options.eta;
    std::vector<CircleMap> maps;
    for (const auto& g : generators) {
        const CircleMap f = CircleMap::from_moebius(g);
        const CircleMap finv = f.inverse();
        std::vector<Breakpoint> bp;
        std::vector<double> avoid;  // old-circle points whose neighbourhoods are already pinned

        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double y = f(pts[i].x);
            const long j = orbit.find(y);
            if (j >= 0) {
                bp.push_back({gaps[i].start, gaps[static_cast<std::size_t>(j)].start});
                bp.push_back({gaps[i].end, gaps[static_cast<std::size_t>(j)].end});
            } else {
                // Gap leaves the ball: squeeze it into a 2*eta window around H(y).
                const double hy = shell.expand(y);
                bp.push_back({gaps[i].start, hy - eta});
                bp.push_back({gaps[i].end, hy + eta});
            }
            const double u = finv(pts[i].x);
            if (orbit.find(u) < 0) {
                // Gap enters the ball from outside: a 2*eta window opens up.
                const double hu = shell.expand(u);
                bp.push_back({hu - eta, gaps[i].start});
                bp.push_back({hu + eta, gaps[i].end});
                avoid.push_back(u);
            }
        }
        for (const auto& p : pts) avoid.push_back(p.x);
        std::sort(avoid.begin(), avoid.end());

        for (int k = 0; k < options.grid; ++k) {
            const double u = static_cast<double>(k) / options.grid;
            auto it = std::lower_bound(avoid.begin(), avoid.end(), u);
            const double margin = 1e-9;
            if (it != avoid.end() && circular_distance(*it, u) < margin) continue;
            if (it != avoid.begin() && circular_distance(*(it - 1), u) < margin) continue;
            if (!avoid.empty() && (circular_distance(avoid.front(), u) < margin ||
                                   circular_distance(avoid.back(), u) < margin))
                continue;
            bp.push_back({shell.expand(u), shell.expand(f(u))});
        }
        maps.push_back(assemble(std::move(bp)));
    }
    return DenjoyBlowup(std::move(maps), std::move(gaps), w_cont);
}

double semiconjugacy_defect(const DenjoyBlowup& blowup, std::span<const MoebiusReal> generators) {
    double worst = 0.0;
    for (std::size_t i = 0; i < generators.size() && i < blowup.maps().size(); ++i) {
        const CircleMap f = CircleMap::from_moebius(generators[i]);
        const auto* bp = blowup.maps()[i].as_breakpoints();
        if (bp == nullptr) continue;
        for (const auto& b : *bp) {
            const double lhs = blowup.collapse(b.y);
            const double rhs = f(blowup.collapse(b.x));
            worst = std::max(worst, circular_distance(lhs, rhs));
        }
    }
    return worst;
}

}  // namespace rotforce::circle
