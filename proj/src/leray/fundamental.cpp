#include "lpflow/leray/fundamental.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lpflow/core/kernels.hpp"

namespace lpflow {

double fundamental_constant(int d) {
    if (d == 2) return -1.0 / (2.0 * std::numbers::pi);
    if (d == 3) return 1.0 / (4.0 * std::numbers::pi);
    throw std::invalid_argument("fundamental solution is provided for d = 2 and d = 3 only");
}

double fundamental_value(int d, double r) {
    const double c = fundamental_constant(d);
    return d == 2 ? c * std::log(r) : c / r;
}

Jet fundamental_jet(int d, const Jet& r) {
    const double c = fundamental_constant(d);
    return d == 2 ? c * log(r) : c * reciprocal(r);
}

namespace {

// Antiderivative of log(x^2 + y^2) in x and y.
double log_primitive(double x, double y) {
    return x * y * std::log(x * x + y * y) - 3.0 * x * y + x * x * std::atan(y / x) +
           y * y * std::atan(x / y);
}

// log(a + r) with r = sqrt(a^2 + b^2 + c^2), stable for a < 0.
double log_a_plus_r(double a, double r, double bc2) {
    if (a >= 0.0) return std::log(a + r);
    return std::log(bc2 / (r - a));
}

// Antiderivative of 1/r in x, y and z.
double inverse_r_primitive(double x, double y, double z) {
    const double r = std::sqrt(x * x + y * y + z * z);
    return y * z * log_a_plus_r(x, r, y * y + z * z) + x * z * log_a_plus_r(y, r, x * x + z * z) +
           x * y * log_a_plus_r(z, r, x * x + y * y) - 0.5 * x * x * std::atan(y * z / (x * r)) -
           0.5 * y * y * std::atan(x * z / (y * r)) - 0.5 * z * z * std::atan(x * y / (z * r));
}

}  // namespace

double cell_average_fundamental(int d, const Vec3& centre, double h) {
    const double c = fundamental_constant(d);
    const double hh = 0.5 * h;
    // Corners sit at half-integer multiples of h from a node, so no corner
    // coordinate is ever zero for node-centred cells.
    if (d == 2) {
        double s = 0.0;
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                const double x = centre[0] + (a ? hh : -hh);
                const double y = centre[1] + (b ? hh : -hh);
                const double sign = ((a + b) % 2 == 0) ? 1.0 : -1.0;
                s += sign * log_primitive(x, y);
            }
        }
        return c * 0.5 * s / (h * h);
    }
    double s = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int e = 0; e < 2; ++e) {
                const double x = centre[0] + (a ? hh : -hh);
                const double y = centre[1] + (b ? hh : -hh);
                const double z = centre[2] + (e ? hh : -hh);
                const double sign = ((a + b + e) % 2 == 1) ? 1.0 : -1.0;
                s += sign * inverse_r_primitive(x, y, z);
            }
        }
    }
    return c * s / (h * h * h);
}

Field fundamental_solution(const GridSpec& grid, double rho) {
    const int d = grid.dim();
    fundamental_constant(d);
    if (!(rho > 0.0)) throw std::invalid_argument("regularization radius must be positive");
    const double h = grid.spacing();
    Field e(grid, Rank::scalar);
    auto s = e.samples();
    kernels::for_each_node(grid, [&](std::size_t i, const Vec3& x) {
        const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        s[i] = r < rho ? cell_average_fundamental(d, x, h) : fundamental_value(d, r);
    });
    e.add_provenance("cell-averaged inside radius " + std::to_string(rho));
    return e;
}

}  // namespace lpflow
