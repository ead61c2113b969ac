#pragma once

#include "rotforce/moebius.hpp"

#include <memory>
#include <span>
#include <vector>

namespace rotforce::circle {

/// Breakpoint of a piecewise-linear lift: f~(x) = y.
struct Breakpoint {
    double x;
    double y;
};

/// Number of grid points used to certify monotonicity of composite maps.
inline constexpr int kMonotoneGrid = 1 << 14;

/// Degree-one orientation-preserving circle map on R/Z, carrying a lift.
///
/// Three kinds:
///  - a Moebius map acting on RP^1 in the coordinate s = -arctan(x)/pi;
///  - a piecewise-linear lift given by breakpoints on [0,1);
///  - a word f1 o f2 o ... o fk of other maps (fk applied first).
///
/// Values are immutable and cheap to copy.
class CircleMap {
public:
    enum class Kind { moebius, piecewise_linear, word };

    /// The empty word.
    CircleMap();

    static CircleMap identity() { return {}; }
    static CircleMap from_moebius(const moebius::MoebiusReal& m);
    /// Throws NotMonotone unless x is strictly increasing in [0,1), y is
    /// strictly increasing and y_last < y_first + 1.
    static CircleMap piecewise_linear(std::vector<Breakpoint> breakpoints);
    /// Rigid rotation x -> x + t as a one-breakpoint piecewise-linear map.
    static CircleMap rotation(double t);
    static CircleMap word(std::vector<CircleMap> factors);

    Kind kind() const noexcept;

    /// Value of the canonical lift at s (any real s).
    double lift(double s) const;

    /// Point of R/Z, in [0,1).
    double operator()(double s) const;

    CircleMap inverse() const;

    /// Null unless kind() matches.
    const moebius::MoebiusReal* as_moebius() const noexcept;
    const std::vector<Breakpoint>* as_breakpoints() const noexcept;
    const std::vector<CircleMap>* as_factors() const noexcept;

private:
    struct Node;
    explicit CircleMap(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Lift shifted by an integer: x -> lift(x) + offset.
struct Lift {
    CircleMap base;
    long offset = 0;

    double operator()(double x) const { return base.lift(x) + static_cast<double>(offset); }

    /// The lift with value at 0 in [0,1).
    static Lift normalized(const CircleMap& f);
};

struct RotationEstimate {
    double value = 0.0;      // in [0,1)
    long iterations = 0;
    double error_bound = 0;  // 2 / iterations
};

/// Throws NotMonotone unless the lift is strictly increasing and commutes
/// with x -> x+1 on the certification grid plus every breakpoint.
void certify_monotone(const CircleMap& f);

/// Poincare estimate lift^n(0)/n mod 1, starting from x0 = 0.
RotationEstimate rotation_number(const CircleMap& f, long n);

/// k-fold composition; negative k composes the inverse.
CircleMap power(const CircleMap& f, long k);

/// c(f,g) = f~(g~(0)) - (f o g)~(0) with lifts normalized at 0; always 0 or 1.
int euler_cocycle(const CircleMap& f, const CircleMap& g);

/// Largest circular distance between f(g(x)) and g(f(x)) over an n-point grid.
double commutator_defect(const CircleMap& f, const CircleMap& g, int grid = 1024);

/// Largest circular distance between f(x) and x over an n-point grid.
double identity_defect(const CircleMap& f, int grid = 1024);

}  // namespace rotforce::circle
