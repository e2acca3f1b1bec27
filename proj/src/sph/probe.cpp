#include "lpflow/sph/probe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lpflow/core/kernels.hpp"
#include "lpflow/core/norms.hpp"
#include "lpflow/core/partition.hpp"
#include "lpflow/core/profile.hpp"

namespace lpflow {

CsvTable ProbeReport::to_csv() const {
    CsvTable t({"t", "value"});
    t.comment("growth_ratio=" + format_double(growth_ratio) + " monotone=" + (monotone ? "1" : "0"));
    t.comment("control_bound=" + format_double(control_bound));
    for (std::size_t i = 0; i < dilations.size(); ++i) t.add_row({dilations[i], values[i]});
    return t;
}

ProbeReport l1_unboundedness_probe(const GridSpec& grid, const MultiplierSymbol& symbol,
                                   const std::vector<double>& dilations, double seed_width,
                                   double window_radius) {
    if (!symbol.is_scalar()) throw std::invalid_argument("probe needs a scalar symbol");
    if (dilations.empty()) throw std::invalid_argument("probe needs at least one dilation");
    const double tmax = *std::max_element(dilations.begin(), dilations.end());
    const double R = window_radius > 0.0 ? window_radius : grid.window_radius() / tmax;
    if (tmax * R > grid.window_radius() * (1.0 + 1e-12)) {
        throw std::invalid_argument("dilation ladder exceeds the window: t R = " + format_double(tmax * R));
    }
    const int d = grid.dim();
    const double norm = std::pow(2.0 * std::numbers::pi * seed_width * seed_width, -0.5 * d);
    Field f = Field::from_function(grid, [&](const Vec3& x) {
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        return norm * std::exp(-0.5 * r2 / (seed_width * seed_width));
    });
    MultiplierSymbol sigma = symbol;
    // sigma(D) f keeps the mean of f in the control case; the probe symbol
    // is undefined at 0 and its zero mode is removed by (Id - chi) anyway.
    const Spectrum sf = apply_multiplier(spectrum_of(f), sigma);

    ProbeReport rep;
    for (double t : dilations) {
        Spectrum high = sf;
        auto c = high.component(0);
        kernels::for_each_mode(grid, [&](std::size_t s, const Vec3& xi) {
            c[s] *= 1.0 - chi(t * std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]));
        });
        const Field g = Field::from_spectrum(high, Rank::scalar);
        const auto mag = pointwise_magnitude(g);
        rep.dilations.push_back(t);
        rep.values.push_back(kernels::window_power_sum(grid, mag, 1.0, t * R));
    }
    const auto fs = f.samples();
    const DyadicPartition partition = build_partition(grid);
    const auto ps = partition.psi.samples();
    const double vol = grid.cell_volume();
    const double f_l1 = kernels::deterministic_sum(fs.size(), [&](std::size_t i) { return std::abs(fs[i]); }) * vol;
    const double psi_l1 = kernels::deterministic_sum(ps.size(), [&](std::size_t i) { return std::abs(ps[i]); }) * vol;
    rep.control_bound = (1.0 + psi_l1) * f_l1;
    rep.growth_ratio = rep.values.back() / rep.values.front();
    rep.monotone = true;
    for (std::size_t i = 1; i < rep.values.size(); ++i) rep.monotone = rep.monotone && rep.values[i] >= rep.values[i - 1];
    return rep;
}

}  // namespace lpflow
