#pragma once

#include "rotforce/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rotforce::euler {

/// Genus plus cone orders of a closed orientable 2-orbifold.
struct OrbifoldSig {
    int genus = 0;
    std::vector<int> cone_orders;

    /// "g;q1,q2,..." or just "g". Throws InvalidSignature.
    static OrbifoldSig parse(std::string_view text);
    std::string to_string() const;
    /// Throws InvalidSignature unless genus >= 0 and every order >= 2.
    void validate() const;
};

/// Integer part n and cone-point rotation numbers p_i/q_i in [0,1).
struct ConeRotTuple {
    Integer n = 0;
    std::vector<Rational> rots;

    friend bool operator==(const ConeRotTuple&, const ConeRotTuple&) = default;
};

/// chi = 2 - 2g - sum(1 - 1/q_i).
Rational orbifold_euler_char(const OrbifoldSig& sig);

/// e = n - sum rots.
Rational euler_number(const ConeRotTuple& t);

/// e multiplied by the cover degree.
Rational lift_euler(const Rational& e, long degree);

/// max(0, -chi).
Rational milnor_wood_bound(const Rational& chi);

/// Mirror under x -> -x: rots r -> 1 - r (0 stays 0), n -> m - n with m the
/// number of nonzero rots. Negates the Euler number.
ConeRotTuple mirror(const ConeRotTuple& t);

struct FeasibleTuple {
    ConeRotTuple tuple;
    Rational euler;   // e of the orbifold bundle
    Rational lifted;  // degree * e
    bool mirror = false;  // only reachable with the fixed slots mirrored
};

/// At most this many cone slots may be left free.
inline constexpr int kMaxFreeSlots = 3;

/// Every tuple with |degree * e| <= milnor_wood_bound(cover_chi) (equality
/// when `maximal`). Fixed slots are taken as given; the orientation-reversed
/// reading (fixed slots mirrored) is enumerated too and flagged. Output is in
/// lexicographic order of (mirror, n, rots). Throws BudgetExceeded when more
/// than kMaxFreeSlots slots are free, InvalidSignature on bad input.
std::vector<FeasibleTuple> feasible_tuples(const OrbifoldSig& sig, long cover_degree, const Rational& cover_chi,
                                           const std::vector<std::optional<Rational>>& fixed, bool maximal = false);

}  // namespace rotforce::euler
