#pragma once

#include "rotforce/circle_map.hpp"

#include <span>
#include <vector>

namespace rotforce::circle {

/// Gap masses for a Denjoy blow-up. Level k (word length k) receives total
/// mass per_level[k], shared evenly by the orbit points of that level. When
/// per_level is empty the classical choice scale/((k+1)(k+2)) is used.
struct GapWeights {
    double scale = 0.5;
    std::vector<double> per_level;

    double level_mass(int k) const;
};

struct DenjoyOptions {
    int depth = 5;
    GapWeights weights;
    int grid = 4096;     // extra sample breakpoints for nonlinear generators
    double eta = 1e-13;  // half-width of the windows that absorb boundary gaps
};

struct Gap {
    double start;        // new-circle coordinates
    double end;
    double orbit_point;  // old-circle point collapsed onto
    int level;
};

/// Blown-up action: piecewise-linear maps on the new circle plus the
/// monotone collapsing map back to the original circle.
class DenjoyBlowup {
public:
    DenjoyBlowup(std::vector<CircleMap> maps, std::vector<Gap> gaps, double continuous_mass);

    const std::vector<CircleMap>& maps() const noexcept { return maps_; }
    const std::vector<Gap>& gaps() const noexcept { return gaps_; }
    double total_gap_mass() const noexcept { return 1.0 - continuous_mass_; }

    /// Collapsing map h: new circle -> old circle (gaps to orbit points).
    double collapse(double t) const;
    /// Inverse of h off the orbit: H(u) for u not an orbit point.
    double expand(double u) const;

private:
    std::vector<CircleMap> maps_;
    std::vector<Gap> gaps_;  // sorted by start
    std::vector<double> prefix_;
    double continuous_mass_;
};

/// Replace the orbit of `orbit_seed` under words of length <= depth by
/// intervals. Throws StabilizerNotTrivial if a nontrivial word of length
/// <= depth fixes the seed within 1e-9, and GapBudgetExceeded if the gap
/// masses sum to 1 or more.
DenjoyBlowup denjoy_blowup(std::span<const moebius::MoebiusReal> generators, double orbit_seed,
                           const DenjoyOptions& options);

/// Largest circular distance between h(G(t)) and g(h(t)) over the
/// breakpoints of each blown-up generator G.
double semiconjugacy_defect(const DenjoyBlowup& blowup,
                            std::span<const moebius::MoebiusReal> generators);

}  // namespace rotforce::circle
