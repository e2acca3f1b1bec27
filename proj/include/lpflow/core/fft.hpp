#pragma once

#include <span>

#include "lpflow/core/grid.hpp"

namespace lpflow::fft {

// Unitary real-to-complex transform over the half spectrum: coefficients are
// the plain DFT scaled by 1/sqrt(N^d), so forward followed by inverse is the
// identity and Parseval holds without extra factors.
void forward(const GridSpec& grid, std::span<const double> samples, std::span<Complex> spectrum);
void inverse(const GridSpec& grid, std::span<const Complex> spectrum, std::span<double> samples);

// Continuum Fourier transform of a sampled function at the grid frequencies,
// integral of f(x) exp(-i x.xi) dx by the rectangle rule.
AlignedVector<Complex> continuous_transform(const GridSpec& grid, std::span<const double> samples);
// Inverse of continuous_transform: samples of the function whose transform is given.
AlignedVector<double> samples_from_transform(const GridSpec& grid, std::span<const Complex> ft);

// Scale between a unitary coefficient and the continuum transform at the same
// node, without the (-1)^k phase: h^d sqrt(N^d).
double continuous_scale(const GridSpec& grid);

// (-1)^(k_1 + ... + k_d) for half-spectrum node `flat`; the phase that moves
// the origin from index 0 to the box centre.
double centre_phase(const GridSpec& grid, std::size_t flat);

// Drop every cached plan. Safe only while no transform is running.
void clear_plans();

}  // namespace lpflow::fft
