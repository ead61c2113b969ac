#include "rotforce/rotset.hpp"

#include <algorithm>
#include <cmath>

namespace rotforce::forcing {

namespace {

using Seg = std::pair<Pos, Pos>;

const Pos& zero() {
    static const Pos z{Rational(0)};
    return z;
}
const Pos& one() {
    static const Pos o{Rational(1)};
    return o;
}

Pos max(const Pos& a, const Pos& b) { return a < b ? b : a; }
Pos min(const Pos& a, const Pos& b) { return b < a ? b : a; }

// x mod 1 in [0,1).
Pos wrap(const Pos& x) {
    Pos r = x - Pos(Rational(x.floor()));
    // Rounding in the double path can land exactly on 1.
    if (!r.is_exact() && r.value() >= 1.0) r = Pos::from_double(0.0);
    return r;
}

// Closed arc from lo of the given length (< 1), split at 1.
void push_arc(std::vector<Seg>& out, const Pos& lo, const Pos& hi) {
    const Pos shift{Rational(lo.floor())};
    const Pos a = lo - shift, b = hi - shift;
    if (b <= one()) {
        out.emplace_back(a, b);
    } else {
        out.emplace_back(a, one());
        out.emplace_back(zero(), b - one());
    }
}

double circ(double a, double b) {
    const double d = std::abs(a - b);
    return std::min(d, 1.0 - d);
}

}  // namespace

Pos::Pos(const Rational& q) : v_(to_double(q)), q_(q) {}

Pos Pos::from_angle(const Angle& a) { return a.is_exact() ? Pos(*a.exact()) : from_double(a.value()); }

std::string Pos::to_string() const { return q_ ? rotforce::to_string(*q_) : format_double(v_); }

Pos operator+(const Pos& a, const Pos& b) {
    if (a.q_ && b.q_) return Pos(*a.q_ + *b.q_);
    return Pos::from_double(a.v_ + b.v_);
}

Pos operator-(const Pos& a, const Pos& b) {
    if (a.q_ && b.q_) return Pos(*a.q_ - *b.q_);
    return Pos::from_double(a.v_ - b.v_);
}

Pos Pos::times(long k) const { return q_ ? Pos(*q_ * k) : from_double(v_ * static_cast<double>(k)); }

Pos Pos::divided(long k) const { return q_ ? Pos(*q_ / k) : from_double(v_ / static_cast<double>(k)); }

long Pos::floor() const {
    return q_ ? static_cast<long>(rotforce::floor(*q_)) : static_cast<long>(std::floor(v_));
}

bool operator<(const Pos& a, const Pos& b) {
    if (a.q_ && b.q_) return *a.q_ < *b.q_;
    return a.v_ < b.v_;
}

bool operator==(const Pos& a, const Pos& b) {
    if (a.q_ && b.q_) return *a.q_ == *b.q_;
    return a.v_ == b.v_;
}

ClosedSet ClosedSet::from_segments(std::vector<Seg> segs) {
    std::sort(segs.begin(), segs.end(), [](const Seg& x, const Seg& y) {
        if (x.first < y.first) return true;
        if (y.first < x.first) return false;
        return x.second < y.second;
    });
    ClosedSet s;
    for (auto& seg : segs) {
        if (!s.segs_.empty() && seg.first <= s.segs_.back().second) {
            s.segs_.back().second = max(s.segs_.back().second, seg.second);
        } else {
            s.segs_.push_back(std::move(seg));
        }
    }
    if (!s.segs_.empty()) {
        const bool touches0 = s.segs_.front().first == zero();
        const bool touches1 = s.segs_.back().second == one();
        if (touches1 && !touches0) s.segs_.insert(s.segs_.begin(), Seg{zero(), zero()});
        if (touches0 && !touches1) s.segs_.emplace_back(one(), one());
    }
    return s;
}

ClosedSet ClosedSet::full() { return from_segments({{zero(), one()}}); }

ClosedSet ClosedSet::point(const Pos& p) {
    const Pos w = wrap(p);
    return from_segments({{w, w}});
}

ClosedSet ClosedSet::arc(const Pos& lo, const Pos& hi) {
    const Pos a = wrap(lo), b = wrap(hi);
    if (a <= b) return from_segments({{a, b}});
    return from_segments({{a, one()}, {zero(), b}});
}

ClosedSet ClosedSet::multiples(long q) {
    std::vector<Seg> segs;
    for (long j = 0; j < q; ++j) {
        const Pos p(Rational(j, q));
        segs.emplace_back(p, p);
    }
    return from_segments(std::move(segs));
}

bool ClosedSet::is_full() const { return segs_.size() == 1 && segs_[0].first == zero() && segs_[0].second == one(); }

bool ClosedSet::contains(const Pos& x) const {
    const Pos w = wrap(x);
    auto it = std::upper_bound(segs_.begin(), segs_.end(), w, [](const Pos& v, const Seg& s) { return v < s.first; });
    if (it == segs_.begin()) return false;
    --it;
    return w <= it->second;
}

bool ClosedSet::subset_of(const ClosedSet& other) const { return intersect(other) == *this; }

ClosedSet ClosedSet::unite(const ClosedSet& other) const {
    std::vector<Seg> segs = segs_;
    segs.insert(segs.end(), other.segs_.begin(), other.segs_.end());
    return from_segments(std::move(segs));
}

ClosedSet ClosedSet::intersect(const ClosedSet& other) const {
    std::vector<Seg> segs;
    std::size_t j0 = 0;
    for (const auto& a : segs_) {
        while (j0 < other.segs_.size() && other.segs_[j0].second < a.first) ++j0;
        for (std::size_t j = j0; j < other.segs_.size() && other.segs_[j].first <= a.second; ++j) {
            const Pos lo = max(a.first, other.segs_[j].first);
            const Pos hi = min(a.second, other.segs_[j].second);
            if (lo <= hi) segs.emplace_back(lo, hi);
        }
    }
    return from_segments(std::move(segs));
}

ClosedSet ClosedSet::negate() const {
    std::vector<Seg> segs;
    for (const auto& [lo, hi] : segs_) segs.emplace_back(one() - hi, one() - lo);
    return from_segments(std::move(segs));
}

ClosedSet ClosedSet::symmetrize() const {
    auto canon = [](const Pos& x) { return x.is_exact() ? x : one() - (one() - x); };
    std::vector<Seg> segs;
    for (const auto& [lo, hi] : segs_) segs.emplace_back(canon(lo), canon(hi));
    const ClosedSet s = from_segments(std::move(segs));
    return s.unite(s.negate());
}

ClosedSet ClosedSet::scale(long k) const {
    if (empty()) return {};
    if (k == 0) return point(zero());
    if (k < 0) return negate().scale(-k);
    std::vector<Seg> segs;
    for (const auto& [lo, hi] : segs_) {
        if (!((hi - lo).times(k) < one())) return full();
        push_arc(segs, lo.times(k), hi.times(k));
    }
    return from_segments(std::move(segs));
}

ClosedSet ClosedSet::preimage(long k) const {
    if (k == 0) return contains(zero()) ? full() : ClosedSet{};
    if (k < 0) return negate().preimage(-k);
    std::vector<Seg> segs;
    for (long j = 0; j < k; ++j) {
        const Pos shift{Rational(j)};
        for (const auto& [lo, hi] : segs_) segs.emplace_back((lo + shift).divided(k), (hi + shift).divided(k));
    }
    return from_segments(std::move(segs));
}

ClosedSet ClosedSet::sum(const ClosedSet& other) const {
    if (empty() || other.empty()) return {};
    std::vector<Seg> segs;
    for (const auto& a : segs_)
        for (const auto& b : other.segs_) {
            const Pos lo = a.first + b.first, hi = a.second + b.second;
            if (!(hi - lo < one())) return full();
            push_arc(segs, lo, hi);
        }
    return from_segments(std::move(segs));
}

std::vector<Pos> ClosedSet::points() const {
    std::vector<Pos> out;
    for (const auto& [lo, hi] : segs_)
        if (lo == hi && !(lo == one())) out.push_back(lo);
    return out;
}

std::vector<Arc> ClosedSet::arcs() const {
    std::vector<Arc> out;
    for (const auto& [lo, hi] : segs_)
        if (!(lo == hi)) out.push_back({lo, hi});
    if (out.size() >= 2 && out.front().lo == zero() && out.back().hi == one()) {
        out.front().lo = out.back().lo;
        out.pop_back();
    }
    return out;
}

std::string ClosedSet::to_string() const {
    std::string s = "{";
    const auto pts = points();
    for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? ", " : "") + pts[i].to_string();
    s += "}";
    for (const auto& a : arcs()) s += " u [" + a.lo.to_string() + ", " + a.hi.to_string() + "]";
    return s;
}

bool operator==(const ClosedSet& a, const ClosedSet& b) {
    if (a.segs_.size() != b.segs_.size()) return false;
    for (std::size_t i = 0; i < a.segs_.size(); ++i)
        if (!(a.segs_[i].first == b.segs_[i].first) || !(a.segs_[i].second == b.segs_[i].second)) return false;
    return true;
}

RotSet::RotSet(const ClosedSet& s) : set_(s.symmetrize().unite(ClosedSet::point(Rational(0)))) {}

RotSet rotset_union(const RotSet& a, const RotSet& b) { return RotSet(a.set().unite(b.set())); }

RotSet rotset_intersect(const RotSet& a, const RotSet& b) { return RotSet(a.set().intersect(b.set())); }

RotSet rotset_symmetrize(const std::vector<Arc>& arcs) {
    ClosedSet s;
    for (const auto& a : arcs) s = s.unite(ClosedSet::arc(a.lo, a.hi));
    return RotSet(s);
}

namespace {

double distance_to(const std::vector<Seg>& segs, double x) {
    auto it = std::upper_bound(segs.begin(), segs.end(), x, [](double v, const Seg& s) { return v < s.first.value(); });
    double best = 1.0;
    auto consider = [&](const Seg& s) {
        if (s.first.value() <= x && x <= s.second.value()) best = 0.0;
        best = std::min({best, circ(x, s.first.value()), circ(x, s.second.value())});
    };
    if (it != segs.end()) consider(*it);
    if (it != segs.begin()) consider(*std::prev(it));
    consider(segs.front());
    consider(segs.back());
    return best;
}

}  // namespace

double directed_distance(const ClosedSet& a, const ClosedSet& b) {
    const auto& as = a.segments();
    const auto& bs = b.segments();
    if (as.empty()) return 0.0;
    if (bs.empty()) return 1.0;
    double worst = 0.0;
    for (const auto& s : as) worst = std::max({worst, distance_to(bs, s.first.value()), distance_to(bs, s.second.value())});
    // Inside a gap of B the distance peaks at the gap midpoint.
    for (std::size_t i = 0; i < bs.size(); ++i) {
        const double lo = bs[i].second.value();
        const double hi = i + 1 < bs.size() ? bs[i + 1].first.value() : bs[0].first.value() + 1.0;
        if (hi <= lo) continue;
        double mid = 0.5 * (lo + hi);
        if (mid >= 1.0) mid -= 1.0;
        if (a.contains(Pos::from_double(mid))) worst = std::max(worst, distance_to(bs, mid));
    }
    return worst;
}

double hausdorff_distance(const ClosedSet& a, const ClosedSet& b) {
    return std::max(directed_distance(a, b), directed_distance(b, a));
}

}  // namespace rotforce::forcing
