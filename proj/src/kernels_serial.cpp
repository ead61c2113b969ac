#include "kernels_detail.hpp"

#include "rotforce/rotarith.hpp"

#include <cmath>
#include <stdexcept>

namespace rotforce::kernels {

namespace detail {

long grid_size(int dims, long n) {
    if (dims < 1 || n < 1) throw std::invalid_argument("grid needs dims >= 1 and n >= 1");
    long total = 1;
    for (int d = 0; d < dims; ++d) total *= n;
    return total;
}

double poincare(const circle::CircleMap& f, long iterations) {
    double x = 0.0;
    for (long i = 0; i < iterations; ++i) x = f.lift(x);
    return frac(x / static_cast<double>(iterations));
}

ComplementFit fit_at(double lo, double hi, double theta) {
    const double target = frac(hi - lo);
    const Angle t = Angle::from_double(theta);
    // The complement always contains -theta.
    if (frac(-theta - lo) > target || theta == 0.0) return {0.0, theta, 1.0};
    auto complement_length = [&](double l) { return 1.0 - rotarith::domain_interval(l, t).length(); };
    double a = 0.0, b = 1.0;
    while (complement_length(b) < target && b < 64.0) b *= 2.0;
    for (int i = 0; i < 60 && b - a > 1e-13; ++i) {
        const double m = 0.5 * (a + b);
        if (complement_length(m) < target) a = m;
        else b = m;
    }
    const double l = 0.5 * (a + b);
    const auto dom = rotarith::domain_interval(l, t);
    const double err = std::max(circular_distance(dom.hi.value(), lo), circular_distance(dom.lo.value(), hi));
    return {l, theta, err};
}

ComplementFit polish(double lo, double hi, const ComplementFit& best, double radius) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = best.theta - radius, b = best.theta + radius;
    double c = b - g * (b - a), d = a + g * (b - a);
    ComplementFit fc = fit_at(lo, hi, frac(c)), fd = fit_at(lo, hi, frac(d));
    for (int i = 0; i < 60; ++i) {
        if (fc.error < fd.error) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = fit_at(lo, hi, frac(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = fit_at(lo, hi, frac(d));
        }
    }
    ComplementFit out = fc.error < fd.error ? fc : fd;
    return out.error < best.error ? out : best;
}

}  // namespace detail

std::vector<float> sample_grid_serial(const GridFunction& f, int dims, long n) {
    const long total = detail::grid_size(dims, n);
    std::vector<float> out(static_cast<std::size_t>(total));
    std::vector<double> x(static_cast<std::size_t>(dims));
    for (long i = 0; i < total; ++i) {
        detail::grid_point(i, dims, n, x);
        out[static_cast<std::size_t>(i)] = static_cast<float>(f(x));
    }
    return out;
}

std::vector<double> rotation_numbers_serial(std::span<const circle::CircleMap> maps, long iterations) {
    std::vector<double> out(maps.size());
    for (std::size_t i = 0; i < maps.size(); ++i) out[i] = detail::poincare(maps[i], iterations);
    return out;
}

ComplementFit fit_complement_serial(double lo, double hi, int theta_grid) {
    ComplementFit best;
    for (int k = 0; k < theta_grid; ++k) {
        const ComplementFit f = detail::fit_at(lo, hi, static_cast<double>(k) / theta_grid);
        if (f.error < best.error) best = f;
    }
    if (best.error >= 1.0) return best;
    return detail::polish(lo, hi, best, 1.0 / theta_grid);
}

}  // namespace rotforce::kernels
