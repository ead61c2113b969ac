#pragma once

#include "rotforce/circle_map.hpp"

#include <functional>
#include <span>
#include <vector>

// Data-parallel kernels. Each comes as an OpenMP version and a serial
// reference; both produce bit-identical output for the same input.
namespace rotforce::kernels {

using GridFunction = std::function<double(std::span<const double>)>;

/// f at every point (k0/n, ..., k_{d-1}/n) of the periodic grid, stored at
/// index k0 + n*k1 + n^2*k2 + ...
std::vector<float> sample_grid_serial(const GridFunction& f, int dims, long n);
std::vector<float> sample_grid_omp(const GridFunction& f, int dims, long n);

/// Poincare estimates lift^n(0)/n mod 1 for a batch of maps.
std::vector<double> rotation_numbers_serial(std::span<const circle::CircleMap> maps, long iterations);
std::vector<double> rotation_numbers_omp(std::span<const circle::CircleMap> maps, long iterations);

/// Best (l, theta) whose domain-interval complement [r1, r2] matches the
/// target arc [lo, hi]; error is the larger endpoint deviation.
struct ComplementFit {
    double l = 0.0;
    double theta = 0.0;
    double error = 1.0;
};

/// Scans theta = k/theta_grid; for each, picks l matching the arc length by
/// bisection and records the endpoint error.
ComplementFit fit_complement_serial(double lo, double hi, int theta_grid);
ComplementFit fit_complement_omp(double lo, double hi, int theta_grid);

}  // namespace rotforce::kernels
