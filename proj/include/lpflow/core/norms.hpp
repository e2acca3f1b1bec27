#pragma once

#include <limits>

#include "lpflow/core/field.hpp"

namespace lpflow {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Region { window, box };

/// Euclidean magnitude across components at every node.
AlignedVector<double> pointwise_magnitude(const Field& field);

/// Midpoint-rule L^p norm of the pointwise magnitude; p = kInf gives the max
/// over nodes. Region::window restricts to |x| <= grid.window_radius().
double lp_norm(const Field& field, double p, Region region = Region::window);

/// L^2 inner product of two scalar fields over the whole box.
double box_inner(const Field& a, const Field& b);

}  // namespace lpflow
