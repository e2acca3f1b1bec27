#pragma once

#include <cmath>

namespace lpflow {

/// Value and first three derivatives of a scalar function of one variable.
struct Jet {
    double v = 0.0, d1 = 0.0, d2 = 0.0, d3 = 0.0;

    static Jet constant(double c) { return {c, 0.0, 0.0, 0.0}; }
    static Jet variable(double x) { return {x, 1.0, 0.0, 0.0}; }
};

inline Jet operator+(const Jet& a, const Jet& b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3}; }
inline Jet operator-(const Jet& a, const Jet& b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3}; }
inline Jet operator-(const Jet& a) { return {-a.v, -a.d1, -a.d2, -a.d3}; }
inline Jet operator*(double s, const Jet& a) { return {s * a.v, s * a.d1, s * a.d2, s * a.d3}; }
inline Jet operator*(const Jet& a, const Jet& b) {
    return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2,
            a.d3 * b.v + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.v * b.d3};
}

/// f(g) for a scalar f with derivatives f0..f3 at g.v (Faa di Bruno to third order).
inline Jet compose(const Jet& g, double f0, double f1, double f2, double f3) {
    return {f0, f1 * g.d1, f2 * g.d1 * g.d1 + f1 * g.d2,
            f3 * g.d1 * g.d1 * g.d1 + 3.0 * f2 * g.d1 * g.d2 + f1 * g.d3};
}

inline Jet reciprocal(const Jet& g) {
    const double r = 1.0 / g.v;
    return compose(g, r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r);
}
inline Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
inline Jet exp(const Jet& g) {
    const double e = std::exp(g.v);
    return compose(g, e, e, e, e);
}
inline Jet log(const Jet& g) {
    const double r = 1.0 / g.v;
    return compose(g, std::log(g.v), r, -r * r, 2.0 * r * r * r);
}

/// C-infinity step: 0 for t <= 0, 1 for t >= 1, built from exp(-1/t).
double smooth_step(double t);
Jet smooth_step(const Jet& t);

/// Radial low-pass profile: 1 for r <= kChiFlat, 0 for r >= kChiSupport,
/// nonincreasing between.
inline constexpr double kChiFlat = 1.1;
inline constexpr double kChiSupport = 1.9;

double chi(double r);
Jet chi(const Jet& r);
/// Annulus profile chi(r) - chi(2r); equals 1 on [0.95, 1.1], supported in [0.55, 1.9].
double phi(double r);

}  // namespace lpflow
