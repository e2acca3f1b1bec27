#pragma once

#include "lpflow/core/field.hpp"
#include "lpflow/core/profile.hpp"

namespace lpflow {

/// C(d) with -Laplace E = delta: -1/(2 pi) for d = 2 (times log r),
/// 1/(4 pi) for d = 3 (times 1/r).
double fundamental_constant(int d);
double fundamental_value(int d, double r);
/// Radial jet of E at r > 0.
Jet fundamental_jet(int d, const Jet& r);

/// Exact mean of E over the axis-aligned cube of side h centred at `centre`.
double cell_average_fundamental(int d, const Vec3& centre, double h);

/// E sampled on the grid; nodes with |x| < rho carry the exact cell average
/// instead of the point value, which also defines the value at x = 0.
Field fundamental_solution(const GridSpec& grid, double rho);

}  // namespace lpflow
