#pragma once

#include "rotforce/angle.hpp"
#include "rotforce/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rotforce::forcing {

/// A position in [0,1], exact when it carries a rational.
class Pos {
public:
    Pos() = default;
    Pos(const Rational& q);  // NOLINT: implicit on purpose
    static Pos from_double(double v) { return Pos(v, std::nullopt); }
    static Pos from_angle(const Angle& a);

    double value() const noexcept { return v_; }
    const std::optional<Rational>& exact() const noexcept { return q_; }
    bool is_exact() const noexcept { return q_.has_value(); }
    std::string to_string() const;

    friend Pos operator+(const Pos& a, const Pos& b);
    friend Pos operator-(const Pos& a, const Pos& b);
    Pos times(long k) const;
    Pos divided(long k) const;
    /// Integer part, floor.
    long floor() const;

    friend bool operator<(const Pos& a, const Pos& b);
    friend bool operator<=(const Pos& a, const Pos& b) { return !(b < a); }
    friend bool operator==(const Pos& a, const Pos& b);

private:
    Pos(double v, std::optional<Rational> q) : v_(v), q_(std::move(q)) {}
    double v_ = 0.0;
    std::optional<Rational> q_ = Rational(0);
};

/// Closed arc [lo, hi] for output; lo > hi means it wraps through 0.
struct Arc {
    Pos lo;
    Pos hi;
};

/// Finite union of closed arcs and points of R/Z.
///
/// Stored as sorted disjoint segments of [0,1]; a segment touching 1 implies
/// the point 0 and vice versa, so equal sets have equal storage.
class ClosedSet {
public:
    ClosedSet() = default;  // empty

    static ClosedSet full();
    static ClosedSet point(const Pos& p);
    /// Counterclockwise closed arc from lo to hi (both taken mod 1).
    static ClosedSet arc(const Pos& lo, const Pos& hi);
    /// {j/q : 0 <= j < q}.
    static ClosedSet multiples(long q);
    /// Union of segments [lo, hi] of [0,1] with lo <= hi.
    static ClosedSet from_segments(std::vector<std::pair<Pos, Pos>> segs);

    bool empty() const noexcept { return segs_.empty(); }
    bool is_full() const;
    bool contains(const Pos& x) const;
    bool subset_of(const ClosedSet& other) const;

    ClosedSet unite(const ClosedSet& other) const;
    ClosedSet intersect(const ClosedSet& other) const;
    /// x -> -x.
    ClosedSet negate() const;
    /// S u -S. Float endpoints below 1/2 are first nudged to 1 - (1 - x) so
    /// that negating the result is exact.
    ClosedSet symmetrize() const;
    /// {k x : x in S}.
    ClosedSet scale(long k) const;
    /// {x : k x in S}.
    ClosedSet preimage(long k) const;
    /// Minkowski sum on the circle.
    ClosedSet sum(const ClosedSet& other) const;

    /// Isolated points in [0,1).
    std::vector<Pos> points() const;
    /// Non-degenerate arcs, merged across 0.
    std::vector<Arc> arcs() const;
    /// Raw segments of [0,1].
    const std::vector<std::pair<Pos, Pos>>& segments() const noexcept { return segs_; }

    std::string to_string() const;

    friend bool operator==(const ClosedSet& a, const ClosedSet& b);

private:
    std::vector<std::pair<Pos, Pos>> segs_;
};

/// Closed set of the representation topology: contains 0 and is symmetric
/// under x -> -x. Every constructor enforces both.
class RotSet {
public:
    RotSet() : set_(ClosedSet::point(Rational(0))) {}
    /// {0} union S union -S.
    explicit RotSet(const ClosedSet& s);

    static RotSet full() { return RotSet(ClosedSet::full()); }

    const ClosedSet& set() const noexcept { return set_; }
    std::vector<Pos> points() const { return set_.points(); }
    std::vector<Arc> arcs() const { return set_.arcs(); }
    bool contains(const Pos& x) const { return set_.contains(x); }
    bool subset_of(const RotSet& o) const { return set_.subset_of(o.set_); }
    std::string to_string() const { return set_.to_string(); }

    friend bool operator==(const RotSet& a, const RotSet& b) { return a.set_ == b.set_; }

private:
    ClosedSet set_;
};

RotSet rotset_union(const RotSet& a, const RotSet& b);
RotSet rotset_intersect(const RotSet& a, const RotSet& b);
/// {0} union the arcs union their mirror images.
RotSet rotset_symmetrize(const std::vector<Arc>& arcs);

/// Hausdorff distance on R/Z between two nonempty closed sets.
double hausdorff_distance(const ClosedSet& a, const ClosedSet& b);
/// sup over a in A of the distance from a to B.
double directed_distance(const ClosedSet& a, const ClosedSet& b);

}  // namespace rotforce::forcing
