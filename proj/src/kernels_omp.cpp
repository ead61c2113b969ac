#include "kernels_detail.hpp"

#include <omp.h>

namespace rotforce::kernels {

std::vector<float> sample_grid_omp(const GridFunction& f, int dims, long n) {
    const long total = detail::grid_size(dims, n);
    std::vector<float> out(static_cast<std::size_t>(total));
#pragma omp parallel
    {
        std::vector<double> x(static_cast<std::size_t>(dims));
#pragma omp for schedule(static)
        for (long i = 0; i < total; ++i) {
            detail::grid_point(i, dims, n, x);
            out[static_cast<std::size_t>(i)] = static_cast<float>(f(x));
        }
    }
    return out;
}

std::vector<double> rotation_numbers_omp(std::span<const circle::CircleMap> maps, long iterations) {
    std::vector<double> out(maps.size());
    const long count = static_cast<long>(maps.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] = detail::poincare(maps[static_cast<std::size_t>(i)], iterations);
    return out;
}

ComplementFit fit_complement_omp(double lo, double hi, int theta_grid) {
    std::vector<ComplementFit> fits(static_cast<std::size_t>(theta_grid));
#pragma omp parallel for schedule(dynamic, 16)
    for (int k = 0; k < theta_grid; ++k)
        fits[static_cast<std::size_t>(k)] = detail::fit_at(lo, hi, static_cast<double>(k) / theta_grid);
    // Reduce in index order so ties resolve as in the serial scan.
    ComplementFit best;
    for (const auto& f : fits)
        if (f.error < best.error) best = f;
    if (best.error >= 1.0) return best;
    return detail::polish(lo, hi, best, 1.0 / theta_grid);
}

}  // namespace rotforce::kernels
