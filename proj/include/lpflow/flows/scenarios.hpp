#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>

#include "lpflow/core/csv.hpp"
#include "lpflow/flows/state.hpp"
#include "lpflow/flows/steppers.hpp"

namespace lpflow {

/// 2pi-periodic box [-pi, pi)^d with N points per axis.
GridSpec flow_box(int d, std::size_t n);

/// (sin x cos y, -cos x sin y) in 2D, times cos z with zero third component in 3D.
Field taylor_green(const GridSpec& grid);
/// Parallel shear (sin(k x2), 0, ...). Steady for the Euler equations.
Field shear(const GridSpec& grid, int k = 1);

/// Random smooth field: sum of cosines over integer wave vectors with
/// 0 < |k|_inf <= kmax (in units of pi / L), amplitudes decaying like
/// |k|^-2, rescaled to sup norm `amplitude`. Reproducible for a given seed.
Field random_field(const GridSpec& grid, Rank rank, std::uint64_t seed, int kmax = 4, double amplitude = 1.0);
/// Random field with Gaussian Fourier coefficients over the whole half
/// spectrum, weighted by (1 + |k|)^-decay (k in units of pi / L), rescaled to
/// sup norm `amplitude`. Cheap at any size; fills every mode except the
/// Nyquist planes.
Field random_spectral_field(const GridSpec& grid, Rank rank, std::uint64_t seed, double decay = 1.0,
                            double amplitude = 1.0);
/// Leray-projected random vector field with zero mean, sup norm `amplitude`.
Field random_solenoidal(const GridSpec& grid, std::uint64_t seed, int kmax = 4, double amplitude = 1.0);

/// Runs `steps` steps of `stepper`.
FlowState& run(FlowState& state, int steps, const std::function<void(FlowState&)>& stepper);

struct PoiseuillePair {
    FlowState driven;
    FlowState projected;
    double f_end = 0.0;
};

/// Both trajectories from u0 = 0 up to T: the driven one solves Euler with
/// g = -f'(t) e1 (so u = f(t) e1), the projected one stays at rest.
PoiseuillePair poiseuille_pair(const GridSpec& grid, const std::function<double(double)>& f,
                               const std::function<double(double)>& fprime, double T, double dt);

struct EquivalenceResult {
    double max_residual = 0.0;  // sup over steps of |u_mhd - u_els| + |b_mhd - b_els|
    double max_div_b = 0.0;
    FlowState mhd;
    FlowState elsasser;
};

/// Projected MHD against the Elsasser system with c = 0, stepped in lockstep.
EquivalenceResult elsasser_equivalence(const Field& u0, const Field& b0, double dt, int steps);

/// Writes one field file per snapshot (u, and b when present) into `dir`
/// plus `<stem>_manifest.csv`; returns the manifest table.
CsvTable export_trajectory(const FlowState& state, const std::filesystem::path& dir, const std::string& stem);

}  // namespace lpflow
