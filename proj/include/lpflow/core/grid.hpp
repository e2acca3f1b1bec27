#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <new>
#include <stdexcept>
#include <vector>

namespace lpflow {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;

/// 64-byte aligned allocator so every buffer satisfies the alignment FFTW
/// planned against, which lets plans be reused on arbitrary arrays.
template <class T>
struct AlignedAllocator {
    using value_type = T;
    static constexpr std::align_val_t alignment{64};

    AlignedAllocator() noexcept = default;
    template <class U>
    AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

    T* allocate(std::size_t n) {
        return static_cast<T*>(::operator new(n * sizeof(T), alignment));
    }
    void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, alignment); }

    template <class U>
    bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

template <class T>
using AlignedVector = std::vector<T, AlignedAllocator<T>>;

/// Periodic box [-L, L)^d sampled with N points per axis. It stands in for
/// R^d; only the ball |x| <= window_radius is trusted by diagnostics.
class GridSpec {
public:
    GridSpec() = default;
    GridSpec(int dim, double half_width, std::size_t points, double window_radius);

    int dim() const { return dim_; }
    double half_width() const { return half_width_; }
    std::size_t points() const { return points_; }
    double spacing() const { return 2.0 * half_width_ / static_cast<double>(points_); }
    double dxi() const;  // pi / L
    double nyquist() const;  // pi / h
    double window_radius() const { return window_radius_; }
    double cell_volume() const;

    std::size_t nodes() const;
    /// Number of complex coefficients in the real-to-complex half spectrum.
    std::size_t spectral_nodes() const;
    /// Length of the last (halved) spectral axis.
    std::size_t half_points() const { return points_ / 2 + 1; }

    double coord(std::size_t i) const {
        return -half_width_ + static_cast<double>(i) * spacing();
    }
    Vec3 node_position(std::size_t flat) const;
    std::array<std::size_t, 3> node_index(std::size_t flat) const;
    std::size_t flat_index(const std::array<std::size_t, 3>& idx) const;

    /// Signed integer wavenumber for a full-length axis index.
    std::int64_t full_axis_wavenumber(std::size_t idx) const {
        const auto n = static_cast<std::int64_t>(points_);
        const auto k = static_cast<std::int64_t>(idx);
        return k <= n / 2 ? k : k - n;
    }
    /// Angular frequency of half-spectrum node `flat`.
    Vec3 frequency(std::size_t flat) const;
    /// Integer wavenumbers of half-spectrum node `flat`.
    std::array<std::int64_t, 3> wavenumbers(std::size_t flat) const;
    /// True when some axis sits on the Nyquist index (k = N/2).
    bool touches_nyquist(std::size_t flat) const;

    GridSpec with_window(double radius) const;

    bool operator==(const GridSpec& o) const {
        return dim_ == o.dim_ && half_width_ == o.half_width_ && points_ == o.points_ &&
               window_radius_ == o.window_radius_;
    }

private:
    int dim_ = 1;
    double half_width_ = 1.0;
    std::size_t points_ = 16;
    double window_radius_ = 0.25;
};

inline constexpr std::size_t kDefaultNodeBudget = std::size_t{1} << 26;

/// Builds a grid with the default trusted window L/4.
GridSpec make_grid(int d, double half_width, std::size_t points,
                   std::size_t node_budget = kDefaultNodeBudget);

bool is_power_of_two(std::size_t n);

}  // namespace lpflow
