#include "lpflow/flows/steppers.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "lpflow/core/kernels.hpp"
#include "lpflow/core/multiplier.hpp"
#include "lpflow/core/norms.hpp"
#include "lpflow/leray/projector.hpp"

namespace lpflow {
namespace {

using SpecList = std::vector<Spectrum>;
using Rhs = std::function<SpecList(double, const SpecList&)>;
using StageFix = std::function<void(double, SpecList&)>;

struct Workspace {
    GridSpec grid;
    std::vector<double> k2;
    std::vector<unsigned char> keep;  // 2/3-rule mask
    bool dealias = true;
    double zero_scale = 1.0;          // unitary coefficient of the constant 1

    explicit Workspace(const GridSpec& g, bool dealias_on) : grid(g), dealias(dealias_on) {
        const std::size_t ns = g.spectral_nodes();
        k2.resize(ns);
        keep.resize(ns);
        const auto n = static_cast<std::int64_t>(g.points());
        kernels::for_each_mode(g, [&](std::size_t s, const Vec3& xi) {
            k2[s] = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
            const auto k = g.wavenumbers(s);
            bool ok = true;
            for (int a = 0; a < g.dim(); ++a) ok = ok && 3 * std::llabs(k[static_cast<std::size_t>(a)]) < n;
            keep[s] = ok ? 1 : 0;
        });
        zero_scale = std::sqrt(static_cast<double>(g.nodes()));
    }

    void mask(Spectrum& s) const {
        if (!dealias) return;
        const std::size_t ns = grid.spectral_nodes();
        kernels::parallel_for(s.coeffs.size(), [&](std::size_t i) {
            if (!keep[i % ns]) s.coeffs[i] = 0.0;
        });
    }

    Field physical(const Spectrum& s) const {
        if (!dealias) return Field::from_spectrum(s, Rank::vector);
        Spectrum m = s;
        mask(m);
        return Field::from_spectrum(m, Rank::vector);
    }

    /// Spectrum of a (x) b - c (x) e (second term optional), masked.
    Spectrum products(const Field& a, const Field& b, const Field* c = nullptr, const Field* e = nullptr) const {
        Field t = outer(a, b);
        if (c != nullptr) t -= outer(*c, *e);
        Spectrum s = spectrum_of(t);
        mask(s);
        return s;
    }

    void add_zero_mode(Spectrum& s, const Vec3& v, double factor) const {
        for (int c = 0; c < s.components; ++c) s.component(c)[0] += factor * v[static_cast<std::size_t>(c)] * zero_scale;
    }
};

/// (D f)_l = sum_k d_k f_kl without projection.
Spectrum plain_divergence(const Spectrum& f) {
    return apply_multiplier(f, symbols::tensor_divergence(f.grid.dim()));
}

void scale_add(Spectrum& y, Complex a, const Spectrum& x) { kernels::axpy(a, x.coeffs, y.coeffs); }

SpecList combine(const SpecList& a, double alpha, const SpecList& b) {
    SpecList out = a;
    for (std::size_t i = 0; i < out.size(); ++i) scale_add(out[i], alpha, b[i]);
    return out;
}

void apply_factor(SpecList& y, const Workspace& ws, const std::vector<double>& nu, double tau) {
    const std::size_t ns = ws.grid.spectral_nodes();
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (nu[i] == 0.0) continue;
        const double a = nu[i] * tau;
        auto& c = y[i].coeffs;
        kernels::parallel_for(c.size(), [&](std::size_t j) { c[j] *= std::exp(-a * ws.k2[j % ns]); });
    }
}

SpecList lawson_rk4(const SpecList& y0, double t, double dt, const std::vector<double>& nu,
                    const Workspace& ws, const Rhs& rhs, const StageFix& fix) {
    auto E = [&](SpecList y, double tau) {
        apply_factor(y, ws, nu, tau);
        return y;
    };
    const double half = 0.5 * dt;
    const SpecList k1 = rhs(t, y0);

    SpecList y2 = E(combine(y0, half, k1), half);
    if (fix) fix(t + half, y2);
    const SpecList k2 = rhs(t + half, y2);

    SpecList y3 = combine(E(y0, half), half, k2);
    if (fix) fix(t + half, y3);
    const SpecList k3 = rhs(t + half, y3);

    SpecList y4 = combine(E(y0, dt), dt, E(k3, half));
    if (fix) fix(t + dt, y4);
    const SpecList k4 = rhs(t + dt, y4);

    SpecList mid = k2;
    for (std::size_t i = 0; i < mid.size(); ++i) scale_add(mid[i], 1.0, k3[i]);
    SpecList y1 = E(y0, dt);
    const SpecList ek1 = E(k1, dt);
    const SpecList ehm = E(mid, half);
    for (std::size_t i = 0; i < y1.size(); ++i) {
        scale_add(y1[i], dt / 6.0, ek1[i]);
        scale_add(y1[i], dt / 3.0, ehm[i]);
        scale_add(y1[i], dt / 6.0, k4[i]);
    }
    if (fix) fix(t + dt, y1);
    return y1;
}

double sup_magnitude(const Field& f) { return lp_norm(f, kInf, Region::box); }

void check_cfl(const FlowState& state, double dt) {
    // Negative steps are allowed for inviscid reversibility checks.
    if (dt == 0.0 || !std::isfinite(dt)) throw std::invalid_argument("time step must be finite and nonzero");
    if (dt < 0.0 && state.nu > 0.0) throw std::invalid_argument("viscous runs cannot step backwards");
    const double limit = cfl_limit(state);
    if (std::abs(dt) > limit * (1.0 + 1e-12)) {
        throw CflViolation("dt = " + std::to_string(dt) + " exceeds the CFL bound " + std::to_string(limit));
    }
}

void check_finite(const Field& f) {
    const auto s = f.samples();
    const double bad = kernels::deterministic_max(s.size(), [&](std::size_t i) { return std::isfinite(s[i]) ? 0.0 : 1.0; });
    if (bad != 0.0) throw NonFiniteState("state became non-finite");
}

// Drive handling: with an exact primitive the zero mode is pinned at each
// stage; otherwise -g(t) enters the right-hand side.
StageFix drive_fix(const Workspace& ws, const DriveSpec& drive, const Spectrum& u0, double t0) {
    if (!drive.active() || !drive.impulse) return {};
    std::vector<Complex> z0;
    for (int c = 0; c < u0.components; ++c) z0.push_back(u0.component(c)[0]);
    const Vec3 g0 = drive.impulse(t0);
    return [&ws, &drive, z0, g0](double ts, SpecList& y) {
        const Vec3 gs = drive.impulse(ts);
        for (int c = 0; c < y[0].components; ++c) {
            const auto ci = static_cast<std::size_t>(c);
            y[0].component(c)[0] = z0[ci] - (gs[ci] - g0[ci]) * ws.zero_scale;
        }
    };
}

void finish_velocity(FlowState& state, Spectrum u, double dt) {
    u = leray_project(u, ZeroModePolicy::identity);
    state.u = Field::from_spectrum(u, Rank::vector);
    check_finite(state.u);
    state.max_div_u = max_divergence(state.u);
    state.t += dt;
}

FlowState& step_velocity(FlowState& state, double dt, double nu, const DriveSpec& drive) {
    if (state.b) throw std::invalid_argument("velocity stepper called on a magnetic state");
    check_cfl(state, dt);
    const Workspace ws(state.grid, state.dealias);
    const Spectrum u0 = spectrum_of(state.u);
    const bool rhs_drive = drive.active() && !drive.impulse;
    Rhs rhs = [&](double t, const SpecList& y) {
        const Field u = ws.physical(y[0]);
        Spectrum r = pdiv_spectral(ws.products(u, u));
        for (auto& c : r.coeffs) c = -c;
        if (rhs_drive) ws.add_zero_mode(r, drive.g(t), -1.0);
        return SpecList{std::move(r)};
    };
    SpecList y = lawson_rk4({u0}, state.t, dt, {nu}, ws, rhs, drive_fix(ws, drive, u0, state.t));
    finish_velocity(state, std::move(y[0]), dt);
    state.after_step();
    return state;
}

}  // namespace

double max_divergence(const Field& v) { return sup_norm(divergence(v)); }

double cfl_limit(const FlowState& state) {
    double speed = sup_magnitude(state.u);
    if (state.b) speed = std::max(speed, sup_magnitude(*state.b));
    if (speed == 0.0) return std::numeric_limits<double>::infinity();
    return 0.5 * state.grid.spacing() / speed;
}

FlowState& step_projected_euler(FlowState& state, double dt) {
    return step_velocity(state, dt, 0.0, DriveSpec::none());
}

FlowState& step_euler_with_drive(FlowState& state, double dt, const DriveSpec& drive) {
    if (drive.target != DriveSpec::Target::momentum) throw std::invalid_argument("Euler drive must target momentum");
    return step_velocity(state, dt, 0.0, drive);
}

FlowState& step_projected_ns(FlowState& state, double dt, double nu, const DriveSpec& drive) {
    if (!(nu > 0.0)) throw std::invalid_argument("Navier-Stokes needs nu > 0");
    state.nu = nu;
    return step_velocity(state, dt, nu, drive);
}

FlowState& step_elsasser(FlowState& state, double dt, const std::function<Vec3(double)>& c) {
    if (!state.b) throw std::invalid_argument("Elsasser stepping needs a magnetic field");
    check_cfl(state, dt);
    const Workspace ws(state.grid, state.dealias);
    auto [alpha, beta] = to_elsasser(state.u, *state.b);
    Rhs rhs = [&](double t, const SpecList& y) {
        const Field a = ws.physical(y[0]);
        const Field b = ws.physical(y[1]);
        Spectrum ra = pdiv_spectral(ws.products(b, a));
        Spectrum rb = pdiv_spectral(ws.products(a, b));
        for (auto& v : ra.coeffs) v = -v;
        for (auto& v : rb.coeffs) v = -v;
        if (c) {
            const Vec3 cv = c(t);
            ws.add_zero_mode(ra, cv, 0.5);
            ws.add_zero_mode(rb, cv, -0.5);
        }
        return SpecList{std::move(ra), std::move(rb)};
    };
    SpecList y = lawson_rk4({spectrum_of(alpha), spectrum_of(beta)}, state.t, dt, {0.0, 0.0}, ws, rhs, {});
    state.alpha = Field::from_spectrum(leray_project(y[0], ZeroModePolicy::identity), Rank::vector);
    state.beta = Field::from_spectrum(leray_project(y[1], ZeroModePolicy::identity), Rank::vector);
    check_finite(*state.alpha);
    check_finite(*state.beta);
    auto [u, b] = from_elsasser(*state.alpha, *state.beta);
    state.u = std::move(u);
    state.b = std::move(b);
    state.max_div_u = std::max(max_divergence(*state.alpha), max_divergence(*state.beta));
    state.max_div_b = max_divergence(*state.b);
    state.t += dt;
    state.after_step();
    return state;
}

namespace {

FlowState& step_mhd(FlowState& state, double dt, double nu, const DriveSpec& drive) {
    if (!state.b) throw std::invalid_argument("MHD stepping needs a magnetic field");
    check_cfl(state, dt);
    const Workspace ws(state.grid, state.dealias);
    const Spectrum u0 = spectrum_of(state.u);
    const bool rhs_drive = drive.active() && !drive.impulse;
    Rhs rhs = [&](double t, const SpecList& y) {
        const Field u = ws.physical(y[0]);
        const Field b = ws.physical(y[1]);
        Spectrum ru = pdiv_spectral(ws.products(u, u, &b, &b));
        Spectrum rb = plain_divergence(ws.products(u, b, &b, &u));
        for (auto& v : ru.coeffs) v = -v;
        for (auto& v : rb.coeffs) v = -v;
        if (rhs_drive) ws.add_zero_mode(ru, drive.g(t), -1.0);
        return SpecList{std::move(ru), std::move(rb)};
    };
    SpecList y = lawson_rk4({u0, spectrum_of(*state.b)}, state.t, dt, {nu, 0.0}, ws, rhs,
                            drive_fix(ws, drive, u0, state.t));
    state.b = Field::from_spectrum(y[1], Rank::vector);
    check_finite(*state.b);
    state.max_div_b = max_divergence(*state.b);
    state.alpha.reset();
    state.beta.reset();
    finish_velocity(state, std::move(y[0]), dt);
    state.after_step();
    return state;
}

}  // namespace

FlowState& step_projected_mhd(FlowState& state, double dt) { return step_mhd(state, dt, 0.0, DriveSpec::none()); }

FlowState& step_nonresistive_mhd(FlowState& state, double dt, double nu, const DriveSpec& drive) {
    if (!(nu > 0.0)) throw std::invalid_argument("non-resistive MHD needs nu > 0");
    state.nu = nu;
    return step_mhd(state, dt, nu, drive);
}

}  // namespace lpflow
