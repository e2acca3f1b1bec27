#pragma once

// Serial reference versions of the kernels in kernels.hpp. Kept for tests and
// the benchmark; production code calls lpflow::kernels.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>

#include "lpflow/core/grid.hpp"

namespace lpflow::reference {

template <class Fn>
void for_each_mode(const GridSpec& grid, Fn&& fn) {
    for (std::size_t s = 0; s < grid.spectral_nodes(); ++s) fn(s, grid.frequency(s));
}

template <class Fn>
void for_each_node(const GridSpec& grid, Fn&& fn) {
    for (std::size_t i = 0; i < grid.nodes(); ++i) fn(i, grid.node_position(i));
}

template <class Fn>
double sum(std::size_t n, Fn&& term) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += term(i);
    return s;
}

inline void axpy(double a, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

inline void multiply(std::span<const double> x, std::span<const double> y, std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] * y[i];
}

template <class Symbol>
void apply_symbol(const GridSpec& grid, std::span<const Complex> in, std::span<Complex> out,
                  Symbol&& symbol) {
    for (std::size_t s = 0; s < grid.spectral_nodes(); ++s) out[s] = symbol(grid.frequency(s)) * in[s];
}

inline double window_power_sum(const GridSpec& grid, std::span<const double> magnitude, double p,
                               double radius) {
    double s = 0.0;
    for (std::size_t i = 0; i < grid.nodes(); ++i) {
        const Vec3 x = grid.node_position(i);
        if (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] <= radius * radius) {
            s += std::pow(std::abs(magnitude[i]), p) * grid.cell_volume();
        }
    }
    return s;
}

inline double window_sup(const GridSpec& grid, std::span<const double> magnitude, double radius) {
    double m = 0.0;
    for (std::size_t i = 0; i < grid.nodes(); ++i) {
        const Vec3 x = grid.node_position(i);
        if (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] <= radius * radius) {
            m = std::max(m, std::abs(magnitude[i]));
        }
    }
    return m;
}

}  // namespace lpflow::reference
