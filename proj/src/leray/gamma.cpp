#include "lpflow/leray/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lpflow/core/fft.hpp"
#include "lpflow/core/kernels.hpp"
#include "lpflow/core/profile.hpp"
#include "lpflow/leray/fundamental.hpp"

namespace lpflow {

const char* route_name(SingularRoute route) {
    return route == SingularRoute::cell_average ? "cell_average" : "green_identity";
}

SingularRoute parse_route(const std::string& name) {
    if (name == "cell_average") return SingularRoute::cell_average;
    if (name == "green_identity") return SingularRoute::green_identity;
    throw std::invalid_argument("unknown kernel route '" + name + "'");
}

std::array<int, 3> sorted_indices(int j, int k, int l) {
    std::array<int, 3> a{j, k, l};
    std::sort(a.begin(), a.end());
    return a;
}

namespace {

Jet far_profile(int d, double r, double theta_scale) {
    const Jet rj = Jet::variable(r);
    const Jet theta = chi((1.0 / theta_scale) * rj);
    return (Jet::constant(1.0) - theta) * fundamental_jet(d, rj);
}

double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

}  // namespace

double far_part_derivative(int d, const Vec3& x, double theta_scale, int j, int k, int l) {
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (r <= kChiFlat * theta_scale) return 0.0;
    const Jet f = far_profile(d, r, theta_scale);
    const double a = f.d2 - f.d1 / r;
    const double ap = f.d3 - f.d2 / r + f.d1 / (r * r);
    const double nj = x[static_cast<std::size_t>(j)] / r;
    const double nk = x[static_cast<std::size_t>(k)] / r;
    const double nl = x[static_cast<std::size_t>(l)] / r;
    return (ap - 2.0 * a / r) * nj * nk * nl +
           (a / r) * (delta(j, l) * nk + delta(k, l) * nj + delta(j, k) * nl);
}

double green_density(int d, double r, double theta_scale) {
    if (r <= kChiFlat * theta_scale || r >= kChiSupport * theta_scale) return 0.0;
    const Jet rj = Jet::variable(r);
    const Jet theta = chi((1.0 / theta_scale) * rj);
    const Jet e = fundamental_jet(d, rj);
    return 2.0 * theta.d1 * e.d1 + e.v * (theta.d2 + (d - 1) * theta.d1 / r);
}

LerayKernel assemble_gamma(const GridSpec& grid, const DyadicPartition& partition, double theta_scale,
                           int j, int k, int l, SingularRoute route, int image_shells) {
    const int d = grid.dim();
    if (d != 2 && d != 3) throw std::invalid_argument("Leray kernels are assembled for d = 2, 3");
    for (int idx : {j, k, l}) {
        if (idx < 0 || idx >= d) throw std::invalid_argument("kernel index out of range");
    }
    if (image_shells < 0) throw std::invalid_argument("image_shells must be >= 0");
    if (!(theta_scale > 0.0) || kChiSupport * theta_scale >= grid.window_radius()) {
        throw std::invalid_argument("theta support radius " + std::to_string(kChiSupport * theta_scale) +
                                    " must stay inside the window radius " +
                                    std::to_string(grid.window_radius()));
    }
    (void)partition;  // chi is the partition's low-pass profile

    // Smooth far part, sampled analytically.
    AlignedVector<double> far(grid.nodes());
    // The x = -L faces have no mirror node; leaving them out keeps the
    // sampled far part exactly odd.
    kernels::for_each_node(grid, [&](std::size_t i, const Vec3& x) {
        const auto idx = grid.node_index(i);
        for (int a = 0; a < d; ++a) {
            if (idx[static_cast<std::size_t>(a)] == 0) {
                far[i] = 0.0;
                return;
            }
        }
        double acc = far_part_derivative(d, x, theta_scale, j, k, l);
        if (image_shells > 0) {
            // Periodic data sees every lattice translate of the kernel.
            const int m = image_shells;
            const int mz = d == 3 ? m : 0;
            const double period = 2.0 * grid.half_width();
            double images = 0.0;
            for (int a = -m; a <= m; ++a) {
                for (int b = -m; b <= m; ++b) {
                    for (int c = -mz; c <= mz; ++c) {
                        if (a == 0 && b == 0 && c == 0) continue;
                        const Vec3 y{x[0] + a * period, x[1] + b * period, x[2] + c * period};
                        images += far_part_derivative(d, y, theta_scale, j, k, l);
                    }
                }
            }
            acc += images;
        }
        far[i] = acc;
    });
    AlignedVector<Complex> total = fft::continuous_transform(grid, far);
    far = AlignedVector<double>();

    // Near part, as a continuum transform of theta E before differentiation.
    AlignedVector<Complex> near;
    std::string regularization;
    if (route == SingularRoute::cell_average) {
        const double rho = 2.0 * grid.spacing();
        Field e = fundamental_solution(grid, rho);
        auto s = e.samples();
        kernels::for_each_node(grid, [&](std::size_t i, const Vec3& x) {
            s[i] *= chi(std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / theta_scale);
        });
        near = fft::continuous_transform(grid, e.samples());
        regularization = "E cell-averaged for |x| < 2h";
    } else {
        AlignedVector<double> dens(grid.nodes());
        kernels::for_each_node(grid, [&](std::size_t i, const Vec3& x) {
            dens[i] = green_density(d, std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]), theta_scale);
        });
        near = fft::continuous_transform(grid, dens);
        kernels::for_each_mode(grid, [&](std::size_t s, const Vec3& xi) {
            const double k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
            near[s] = s == 0 ? Complex(0.0) : (1.0 - near[s]) / k2;
        });
        regularization = "Green identity with -Laplace((1-theta)E) sampled";
    }

    const auto half = static_cast<std::int64_t>(grid.points() / 2);
    kernels::for_each_mode(grid, [&](std::size_t s, const Vec3& xi) {
        const auto kv = grid.wavenumbers(s);
        for (int a = 0; a < d; ++a) {
            if (std::llabs(kv[static_cast<std::size_t>(a)]) == half) {
                total[s] = 0.0;
                return;
            }
        }
        const double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
        const Complex deriv = Complex(0.0, xi[static_cast<std::size_t>(j)]) *
                              Complex(0.0, xi[static_cast<std::size_t>(k)]) *
                              Complex(0.0, xi[static_cast<std::size_t>(l)]);
        const double low = chi(r);
        total[s] = low * (total[s] + deriv * near[s]);
    });
    near = AlignedVector<Complex>();

    LerayKernel out;
    out.indices = {j, k, l};
    out.theta_scale = theta_scale;
    out.route = route;
    out.image_shells = image_shells;
    out.regularization = regularization;
    out.samples = Field(grid, Rank::scalar);
    {
        const auto g = fft::samples_from_transform(grid, total);
        auto s = out.samples.samples();
        std::copy(g.begin(), g.end(), s.begin());
        // Same for the assembled kernel.
        kernels::for_each_node(grid, [&](std::size_t i, const Vec3&) {
            const auto idx = grid.node_index(i);
            for (int a = 0; a < d; ++a) {
                if (idx[static_cast<std::size_t>(a)] == 0) {
                    s[i] = 0.0;
                    return;
                }
            }
        });
    }
    const auto s = out.samples.samples();
    out.l1_norm = kernels::deterministic_sum(s.size(), [&](std::size_t i) { return std::abs(s[i]); }) *
                  grid.cell_volume();
    out.samples.add_provenance(regularization);
    return out;
}

AlignedVector<Complex> kernel_symbol(const LerayKernel& kernel) {
    return fft::continuous_transform(kernel.samples.grid(), kernel.samples.samples());
}

const AlignedVector<Complex>& LerayKernelSet::symbol(int j, int k, int l) const {
    auto it = symbols.find(sorted_indices(j, k, l));
    if (it == symbols.end()) throw std::out_of_range("kernel set lacks the requested indices");
    return it->second;
}

LerayKernelSet assemble_kernel_set(const GridSpec& grid, const DyadicPartition& partition,
                                   double theta_scale, SingularRoute route, int image_shells) {
    LerayKernelSet set;
    set.image_shells = image_shells;
    set.grid = grid;
    set.theta_scale = theta_scale;
    set.route = route;
    const int d = grid.dim();
    for (int j = 0; j < d; ++j) {
        for (int k = j; k < d; ++k) {
            for (int l = k; l < d; ++l) {
                LerayKernel g = assemble_gamma(grid, partition, theta_scale, j, k, l, route, image_shells);
                set.l1_norms[{j, k, l}] = g.l1_norm;
                set.symbols[{j, k, l}] = kernel_symbol(g);
            }
        }
    }
    return set;
}

}  // namespace lpflow
