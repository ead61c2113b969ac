#pragma once

#include "rotforce/kernels.hpp"

// Per-item work shared by the serial and OpenMP kernels.
namespace rotforce::kernels::detail {

inline void grid_point(long index, int dims, long n, std::vector<double>& x) {
    for (int d = 0; d < dims; ++d) {
        x[static_cast<std::size_t>(d)] = static_cast<double>(index % n) / static_cast<double>(n);
        index /= n;
    }
}

long grid_size(int dims, long n);

double poincare(const circle::CircleMap& f, long iterations);

/// Fit for a single theta; error 1 when theta cannot produce the arc.
ComplementFit fit_at(double lo, double hi, double theta);

/// Golden-section polish of theta around a scan winner.
ComplementFit polish(double lo, double hi, const ComplementFit& best, double radius);

}  // namespace rotforce::kernels::detail
