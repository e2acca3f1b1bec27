#include "lpflow/flows/state.hpp"

#include <stdexcept>

#include "lpflow/core/kernels.hpp"

namespace lpflow {

FlowState FlowState::make(Field u0, std::optional<Field> b0, double nu, bool dealias) {
    if (u0.rank() != Rank::vector) throw std::invalid_argument("velocity must be a vector field");
    if (b0 && (b0->rank() != Rank::vector || !(b0->grid() == u0.grid()))) {
        throw std::invalid_argument("magnetic field must be a vector field on the velocity grid");
    }
    if (nu < 0.0) throw std::invalid_argument("viscosity must be nonnegative");
    FlowState s;
    s.grid = u0.grid();
    s.u = std::move(u0);
    s.b = std::move(b0);
    s.nu = nu;
    s.dealias = dealias;
    s.record();
    return s;
}

void FlowState::record() { snapshots.push_back({t, u, b}); }

void FlowState::after_step() {
    ++steps;
    if (snapshot_every > 0 && steps % snapshot_every == 0) record();
}

namespace {
double half_square_integral(const Field& f) {
    const auto s = f.samples();
    return 0.5 * kernels::deterministic_sum(s.size(), [&](std::size_t i) { return s[i] * s[i]; }) *
           f.grid().cell_volume();
}
}  // namespace

double FlowState::kinetic_energy() const { return half_square_integral(u); }

double FlowState::magnetic_energy() const { return b ? half_square_integral(*b) : 0.0; }

DriveSpec DriveSpec::none() { return {}; }

std::pair<Field, Field> to_elsasser(const Field& u, const Field& b) {
    return {u + b, u - b};
}

std::pair<Field, Field> from_elsasser(const Field& alpha, const Field& beta) {
    return {0.5 * (alpha + beta), 0.5 * (alpha - beta)};
}

}  // namespace lpflow
