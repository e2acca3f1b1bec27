#include "lpflow/core/profile.hpp"

namespace lpflow {
namespace {

double bump(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

Jet bump(const Jet& u) {
    if (u.v <= 0.0) return {};
    return exp(-reciprocal(u));
}

constexpr double kTransition = kChiSupport - kChiFlat;

}  // namespace

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = bump(t);
    return a / (a + bump(1.0 - t));
}

Jet smooth_step(const Jet& t) {
    if (t.v <= 0.0) return Jet::constant(0.0);
    if (t.v >= 1.0) return Jet::constant(1.0);
    const Jet a = bump(t);
    const Jet b = bump(Jet::constant(1.0) - t);
    return a / (a + b);
}

double chi(double r) {
    if (r <= kChiFlat) return 1.0;
    if (r >= kChiSupport) return 0.0;
    return smooth_step((kChiSupport - r) / kTransition);
}

Jet chi(const Jet& r) {
    if (r.v <= kChiFlat) return Jet::constant(1.0);
    if (r.v >= kChiSupport) return Jet::constant(0.0);
    return smooth_step((1.0 / kTransition) * (Jet::constant(kChiSupport) - r));
}

double phi(double r) { return chi(r) - chi(2.0 * r); }

}  // namespace lpflow
