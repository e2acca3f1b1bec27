#include "lpflow/core/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace lpflow {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

GridSpec::GridSpec(int dim, double half_width, std::size_t points, double window_radius)
    : dim_(dim), half_width_(half_width), points_(points), window_radius_(window_radius) {}

double GridSpec::dxi() const { return std::numbers::pi / half_width_; }

double GridSpec::nyquist() const { return std::numbers::pi / spacing(); }

double GridSpec::cell_volume() const { return std::pow(spacing(), dim_); }

std::size_t GridSpec::nodes() const {
    std::size_t n = 1;
    for (int a = 0; a < dim_; ++a) n *= points_;
    return n;
}

std::size_t GridSpec::spectral_nodes() const {
    std::size_t n = half_points();
    for (int a = 1; a < dim_; ++a) n *= points_;
    return n;
}

std::array<std::size_t, 3> GridSpec::node_index(std::size_t flat) const {
    std::array<std::size_t, 3> idx{0, 0, 0};
    for (int a = dim_ - 1; a >= 0; --a) {
        idx[static_cast<std::size_t>(a)] = flat % points_;
        flat /= points_;
    }
    return idx;
}

std::size_t GridSpec::flat_index(const std::array<std::size_t, 3>& idx) const {
    std::size_t flat = 0;
    for (int a = 0; a < dim_; ++a) flat = flat * points_ + idx[static_cast<std::size_t>(a)];
    return flat;
}

Vec3 GridSpec::node_position(std::size_t flat) const {
    const auto idx = node_index(flat);
    Vec3 x{0.0, 0.0, 0.0};
    for (int a = 0; a < dim_; ++a) x[static_cast<std::size_t>(a)] = coord(idx[static_cast<std::size_t>(a)]);
    return x;
}

std::array<std::int64_t, 3> GridSpec::wavenumbers(std::size_t flat) const {
    std::array<std::int64_t, 3> k{0, 0, 0};
    const std::size_t nh = half_points();
    k[static_cast<std::size_t>(dim_ - 1)] = static_cast<std::int64_t>(flat % nh);
    flat /= nh;
    for (int a = dim_ - 2; a >= 0; --a) {
        k[static_cast<std::size_t>(a)] = full_axis_wavenumber(flat % points_);
        flat /= points_;
    }
    return k;
}

Vec3 GridSpec::frequency(std::size_t flat) const {
    const auto k = wavenumbers(flat);
    const double dk = dxi();
    return {dk * static_cast<double>(k[0]), dk * static_cast<double>(k[1]),
            dk * static_cast<double>(k[2])};
}

bool GridSpec::touches_nyquist(std::size_t flat) const {
    const auto k = wavenumbers(flat);
    const auto half = static_cast<std::int64_t>(points_ / 2);
    for (int a = 0; a < dim_; ++a) {
        if (std::llabs(k[static_cast<std::size_t>(a)]) == half) return true;
    }
    return false;
}

GridSpec GridSpec::with_window(double radius) const {
    if (!(radius > 0.0) || radius > half_width_ / 4.0 * (1.0 + 1e-12)) {
        throw std::invalid_argument("window radius must lie in (0, L/4]");
    }
    return GridSpec(dim_, half_width_, points_, radius);
}

GridSpec make_grid(int d, double half_width, std::size_t points, std::size_t node_budget) {
    if (d < 1 || d > 3) throw std::invalid_argument("grid dimension must be 1, 2 or 3");
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw std::invalid_argument("grid half width must be positive");
    }
    if (!is_power_of_two(points) || points < 16) {
        throw std::invalid_argument("points per axis must be a power of two >= 16, got " +
                                    std::to_string(points));
    }
    std::size_t total = 1;
    for (int a = 0; a < d; ++a) {
        if (total > node_budget / points) {
            throw std::length_error("grid exceeds the configured node budget");
        }
        total *= points;
    }
    return GridSpec(d, half_width, points, half_width / 4.0);
}

}  // namespace lpflow
