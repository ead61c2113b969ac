#pragma once

#include "rotforce/presentation.hpp"
#include "rotforce/rotarith.hpp"
#include "rotforce/rotset.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace rotforce::forcing {

/// One derived fact: rot(gen) lies in `set`.
///
/// Premises name, for every generator the rule instance reads, the step that
/// last narrowed it (-1 for the unconstrained start).
struct CertStep {
    int id = 0;
    std::string rule;    // "H", "R1".."R7", or "dial"
    int instance = -1;   // index into the compiled rule instances
    std::string source;  // the relation or annotation behind the instance
    int gen = 0;
    std::vector<std::pair<int, int>> premises;  // (generator, step id)
    ClosedSet set;
};

struct Certificate {
    std::vector<CertStep> steps;
};

/// Conditional outcome with a dial element pinned to one rotation value.
struct DialBranch {
    int gen = 0;
    Pos value;
    bool feasible = true;
    /// Per marked generator, in mark order; not symmetrized.
    std::vector<ClosedSet> sets;
    /// Continues the numbering of the unconditional certificate.
    Certificate certificate;
};

struct PropagationResult {
    /// Per generator, before 0 and the mirror are added back.
    std::vector<ClosedSet> derived;
    /// Per marked generator, in mark order.
    std::vector<std::pair<std::string, RotSet>> marked;
    Certificate certificate;
    std::vector<DialBranch> dials;
    int rounds = 0;
};

/// Rounds of the fixed-point loop before giving up on further narrowing.
inline constexpr int kMaxRounds = 64;
/// Largest cone-rotation product R6 will enumerate.
inline constexpr long kMaxOrbifoldCombos = 1'000'000;

/// Applies the forcing rules to a fixed point, in rule order then generator
/// order:
///   H   hyperbolic g                       rot(g) = 0
///   R1  conjugate powers a^k ~ b^m         k rot(a) = m rot(b)
///   R2  relation a^k = b^m                 k rot(a) = m rot(b)
///   R3  a^k conjugate to a^m               (m - k) rot(a) = 0
///   R4  c^k = a^i b^j, a and b commute     k rot(c) = i rot(a) + j rot(b)
///   R5  torsion order q                    rot in {j/q}
///   R6  orbifold data                      cone tuples pass Milnor-Wood
///   R7  exclude g: l, theta                rot(g) outside +-I_{l,theta}
/// Throws Inconsistent if a generator's set becomes empty.
PropagationResult propagate(const Presentation& p);

/// Re-runs every step from its cited premises; true iff each reproduces its
/// recorded fact exactly and cites only earlier steps.
bool replay(const Presentation& p, const Certificate& c);

/// Finite closed-arc cover of K at a stage; stage i+1 must refine stage i.
using CoverGenerator = std::function<std::vector<Arc>(int stage)>;

/// Cover that ignores the stage.
CoverGenerator fixed_cover(std::vector<Arc> arcs);
/// Middle-thirds Cantor set: 2^i arcs of length 3^-i at stage i.
CoverGenerator cantor_cover();

/// Union of the arcs with endpoints moved outward to multiples of 2^-bits.
ClosedSet snap_outward(const std::vector<Arc>& arcs, int bits);

/// S_i = {0} u sym(cover(i) snapped to 2^-(i+4)) for i = 1..stages. Throws
/// InvalidCoverGenerator unless the covers and the S_i are nested.
std::vector<RotSet> outer_approximation(const CoverGenerator& cover, int stages);

/// Largest endpoint error accepted by emit_interval_group.
inline constexpr double kEmitTolerance = 1.0 / 4096.0;

struct EmittedGroup {
    Presentation presentation;
    double l = 0.0;
    Angle theta;
    double error = 0.0;
};

/// Presentation skeleton forcing rot(gamma) into {0} u +-interval: the
/// interval is matched to the complement of some I_{l,theta} (a single point p
/// uses l = 0, theta = -p). Throws NotRepresentable.
EmittedGroup emit_interval_group(const rotarith::CircularInterval& interval);

}  // namespace rotforce::forcing
