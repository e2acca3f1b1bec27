#include "lpflow/core/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "lpflow/core/kernels.hpp"

namespace lpflow {

AlignedVector<double> pointwise_magnitude(const Field& field) {
    const std::size_t n = field.grid().nodes();
    AlignedVector<double> mag(n);
    const auto all = field.samples();
    const int comps = field.components();
    kernels::parallel_for(n, [&](std::size_t i) {
        if (comps == 1) {
            mag[i] = std::abs(all[i]);
            return;
        }
        double s = 0.0;
        for (int c = 0; c < comps; ++c) {
            const double v = all[static_cast<std::size_t>(c) * n + i];
            s += v * v;
        }
        mag[i] = std::sqrt(s);
    });
    return mag;
}

double lp_norm(const Field& field, double p, Region region) {
    if (!(p >= 1.0)) throw std::invalid_argument("L^p norm needs p >= 1");
    const GridSpec& grid = field.grid();
    const auto mag = pointwise_magnitude(field);
    const double radius = region == Region::window ? grid.window_radius() : kInf;
    if (std::isinf(p)) return kernels::window_sup(grid, mag, radius);
    if (p == 1.0) {
        return kernels::window_power_sum(grid, mag, 1.0, radius);
    }
    return std::pow(kernels::window_power_sum(grid, mag, p, radius), 1.0 / p);
}

double box_inner(const Field& a, const Field& b) {
    if (a.components() != 1 || b.components() != 1 || !(a.grid() == b.grid())) {
        throw std::invalid_argument("box_inner needs two scalar fields on one grid");
    }
    const auto x = a.samples();
    const auto y = b.samples();
    return kernels::deterministic_sum(x.size(), [&](std::size_t i) { return x[i] * y[i]; }) *
           a.grid().cell_volume();
}

}  // namespace lpflow
