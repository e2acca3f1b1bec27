#pragma once

// OpenMP data-parallel loops shared by every module. Each kernel has a serial
// twin in reference.hpp with the same signature; tests hold them equal.
//
// Reductions split the index range into a fixed number of chunks that does not
// depend on the thread count and combine the partials serially, so results are
// bit-identical for any OMP_NUM_THREADS.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "lpflow/core/grid.hpp"

namespace lpflow::kernels {

inline constexpr std::size_t kReductionChunks = 256;

template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
}

/// Visits every half-spectrum node with its angular frequency.
template <class Fn>
void for_each_mode(const GridSpec& grid, Fn&& fn) {
    const std::size_t nh = grid.half_points();
    const std::size_t rows = grid.spectral_nodes() / nh;
    const double dk = grid.dxi();
    const int d = grid.dim();
    const auto count = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < count; ++r) {
        Vec3 xi{0.0, 0.0, 0.0};
        std::size_t rest = static_cast<std::size_t>(r);
        for (int a = d - 2; a >= 0; --a) {
            xi[static_cast<std::size_t>(a)] =
                dk * static_cast<double>(grid.full_axis_wavenumber(rest % grid.points()));
            rest /= grid.points();
        }
        const std::size_t base = static_cast<std::size_t>(r) * nh;
        for (std::size_t k = 0; k < nh; ++k) {
            xi[static_cast<std::size_t>(d - 1)] = dk * static_cast<double>(k);
            fn(base + k, xi);
        }
    }
}

/// Visits every physical node with its coordinates.
template <class Fn>
void for_each_node(const GridSpec& grid, Fn&& fn) {
    const std::size_t n = grid.points();
    const std::size_t rows = grid.nodes() / n;
    const int d = grid.dim();
    const auto count = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < count; ++r) {
        Vec3 x{0.0, 0.0, 0.0};
        std::size_t rest = static_cast<std::size_t>(r);
        for (int a = d - 2; a >= 0; --a) {
            x[static_cast<std::size_t>(a)] = grid.coord(rest % n);
            rest /= n;
        }
        const std::size_t base = static_cast<std::size_t>(r) * n;
        for (std::size_t i = 0; i < n; ++i) {
            x[static_cast<std::size_t>(d - 1)] = grid.coord(i);
            fn(base + i, x);
        }
    }
}

template <class Fn>
double deterministic_sum(std::size_t n, Fn&& term) {
    std::vector<double> partial(kReductionChunks, 0.0);
    const std::size_t chunk = (n + kReductionChunks - 1) / kReductionChunks;
    const auto chunks = static_cast<std::ptrdiff_t>(kReductionChunks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < chunks; ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        partial[static_cast<std::size_t>(c)] = s;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

template <class Fn>
double deterministic_max(std::size_t n, Fn&& term) {
    std::vector<double> partial(kReductionChunks, 0.0);
    const std::size_t chunk = (n + kReductionChunks - 1) / kReductionChunks;
    const auto chunks = static_cast<std::ptrdiff_t>(kReductionChunks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < chunks; ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        double m = 0.0;
        for (std::size_t i = lo; i < hi; ++i) m = std::max(m, term(i));
        partial[static_cast<std::size_t>(c)] = m;
    }
    return *std::max_element(partial.begin(), partial.end());
}

/// y <- a x + y
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
    parallel_for(y.size(), [&](std::size_t i) { y[i] += a * x[i]; });
}

inline void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
    parallel_for(y.size(), [&](std::size_t i) { y[i] += a * x[i]; });
}

/// out <- x * y pointwise
inline void multiply(std::span<const double> x, std::span<const double> y, std::span<double> out) {
    parallel_for(out.size(), [&](std::size_t i) { out[i] = x[i] * y[i]; });
}

/// out[s] <- symbol(xi_s) * in[s] over the half spectrum.
template <class Symbol>
void apply_symbol(const GridSpec& grid, std::span<const Complex> in, std::span<Complex> out,
                  Symbol&& symbol) {
    for_each_mode(grid, [&](std::size_t s, const Vec3& xi) { out[s] = symbol(xi) * in[s]; });
}

/// Sum of |v|^p h^d over nodes inside the trusted window (ball of radius R).
inline double window_power_sum(const GridSpec& grid, std::span<const double> magnitude, double p,
                               double radius) {
    const double r2 = radius * radius;
    const double vol = grid.cell_volume();
    return deterministic_sum(grid.nodes(), [&](std::size_t i) {
        const Vec3 x = grid.node_position(i);
        const double rr = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        if (rr > r2) return 0.0;
        return std::pow(std::abs(magnitude[i]), p) * vol;
    });
}

inline double window_sup(const GridSpec& grid, std::span<const double> magnitude, double radius) {
    const double r2 = radius * radius;
    return deterministic_max(grid.nodes(), [&](std::size_t i) {
        const Vec3 x = grid.node_position(i);
        const double rr = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        return rr > r2 ? 0.0 : std::abs(magnitude[i]);
    });
}

}  // namespace lpflow::kernels
