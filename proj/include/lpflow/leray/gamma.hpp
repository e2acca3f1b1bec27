#pragma once

#include <array>
#include <map>
#include <string>

#include "lpflow/core/field.hpp"
#include "lpflow/core/partition.hpp"

namespace lpflow {

/// How the singular piece psi * d^3(theta E) is evaluated.
///  cell_average: E sampled with exact cell averages near 0, derivatives taken
///                spectrally. Accurate once h resolves the unit scale of psi.
///  green_identity: uses FT(theta E) = (1 - FT(h_theta)) / |xi|^2 where
///                h_theta = -Laplace((1 - theta) E) is smooth and compactly
///                supported. Stays accurate on coarse grids.
enum class SingularRoute { cell_average, green_identity };

const char* route_name(SingularRoute route);
SingularRoute parse_route(const std::string& name);

/// Sampled low-frequency Leray kernel Gamma_jkl = psi * d_j d_k d_l E, split
/// with a cutoff theta(x) = chi(|x| / theta_scale) into a smooth far part
/// (differentiated analytically) and a near part (see SingularRoute).
struct LerayKernel {
    std::array<int, 3> indices{0, 0, 0};
    double theta_scale = 1.0;
    SingularRoute route = SingularRoute::cell_average;
    int image_shells = 0;
    std::string regularization;
    Field samples;
    /// L^1 norm over the whole box.
    double l1_norm = 0.0;
};

/// d_j d_k d_l of (1 - theta) E at x.
double far_part_derivative(int d, const Vec3& x, double theta_scale, int j, int k, int l);
/// h_theta(r) = -Laplace((1 - theta) E), a smooth bump on the transition annulus.
double green_density(int d, double r, double theta_scale);

/// image_shells = 0 gives the R^d kernel cut off at the box edge, which is
/// what decay measurements want. image_shells = M > 0 adds the far part of
/// the lattice translates |n|_inf <= M, i.e. the kernel periodised, so that
/// circular convolution on the box equals R^d convolution with periodic data.
/// The dropped translates cost O(1 / (M L)) at the lowest modes.
///
/// Throws std::invalid_argument if the theta support (radius 1.9 theta_scale)
/// reaches the grid window, or for d outside {2, 3}.
LerayKernel assemble_gamma(const GridSpec& grid, const DyadicPartition& partition, double theta_scale,
                           int j, int k, int l, SingularRoute route = SingularRoute::cell_average,
                           int image_shells = 0);

/// Convolution symbol of a sampled kernel: the rectangle-rule Fourier
/// transform, so that Gamma * f on the grid equals this multiplier.
AlignedVector<Complex> kernel_symbol(const LerayKernel& kernel);

/// All distinct kernels (Gamma is symmetric in its three indices) as symbols.
struct LerayKernelSet {
    GridSpec grid;
    double theta_scale = 1.0;
    SingularRoute route = SingularRoute::cell_average;
    int image_shells = 0;
    std::map<std::array<int, 3>, AlignedVector<Complex>> symbols;
    std::map<std::array<int, 3>, double> l1_norms;

    const AlignedVector<Complex>& symbol(int j, int k, int l) const;
};

/// The pdiv backend convolves periodic data, so its kernels are periodised.
inline constexpr int kConvolutionImageShells = 2;

LerayKernelSet assemble_kernel_set(const GridSpec& grid, const DyadicPartition& partition,
                                   double theta_scale, SingularRoute route = SingularRoute::cell_average,
                                   int image_shells = kConvolutionImageShells);

std::array<int, 3> sorted_indices(int j, int k, int l);

}  // namespace lpflow
