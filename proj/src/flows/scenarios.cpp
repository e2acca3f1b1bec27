#include "lpflow/flows/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include "lpflow/core/field_io.hpp"
#include "lpflow/core/kernels.hpp"
#include "lpflow/leray/projector.hpp"

namespace lpflow {

GridSpec flow_box(int d, std::size_t n) { return make_grid(d, std::numbers::pi, n); }

namespace {

Field vector_from(const GridSpec& grid, const std::function<void(const Vec3&, double*)>& fn) {
    Field u(grid, Rank::vector);
    const int d = grid.dim();
    const std::size_t n = grid.nodes();
    auto s = u.samples();
    kernels::for_each_node(grid, [&](std::size_t i, const Vec3& x) {
        double v[3] = {0.0, 0.0, 0.0};
        fn(x, v);
        for (int c = 0; c < d; ++c) s[static_cast<std::size_t>(c) * n + i] = v[c];
    });
    return u;
}

}  // namespace

Field taylor_green(const GridSpec& grid) {
    if (grid.dim() < 2) throw std::invalid_argument("Taylor-Green needs d >= 2");
    const bool three = grid.dim() == 3;
    return vector_from(grid, [three](const Vec3& x, double* v) {
        const double cz = three ? std::cos(x[2]) : 1.0;
        v[0] = std::sin(x[0]) * std::cos(x[1]) * cz;
        v[1] = -std::cos(x[0]) * std::sin(x[1]) * cz;
    });
}

Field shear(const GridSpec& grid, int k) {
    if (grid.dim() < 2) throw std::invalid_argument("shear needs d >= 2");
    return vector_from(grid, [k](const Vec3& x, double* v) { v[0] = std::sin(k * x[1]); });
}

Field random_field(const GridSpec& grid, Rank rank, std::uint64_t seed, int kmax, double amplitude) {
    if (kmax < 1) throw std::invalid_argument("kmax must be positive");
    const int d = grid.dim();
    const int comps = component_count(rank, d);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

    // Half of the wave-vector lattice (first nonzero coordinate positive).
    std::vector<std::array<int, 3>> modes;
    const int kz = d == 3 ? kmax : 0;
    const int ky = d >= 2 ? kmax : 0;
    for (int a = -kmax; a <= kmax; ++a)
        for (int b = -ky; b <= ky; ++b)
            for (int c = -kz; c <= kz; ++c) {
                const bool positive = a > 0 || (a == 0 && (b > 0 || (b == 0 && c > 0)));
                if (positive) modes.push_back({a, b, c});
            }

    struct Term {
        Vec3 k;
        double amp;
        double phase;
    };
    std::vector<std::vector<Term>> terms(static_cast<std::size_t>(comps));
    const double dk = grid.dxi();
    for (auto& comp : terms) {
        for (const auto& m : modes) {
            const double norm = std::sqrt(double(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]));
            comp.push_back({{m[0] * dk, m[1] * dk, m[2] * dk}, unit(rng) / (norm * norm), phase(rng)});
        }
    }

    Field f(grid, rank);
    const std::size_t n = grid.nodes();
    auto s = f.samples();
    kernels::for_each_node(grid, [&](std::size_t i, const Vec3& x) {
        for (int c = 0; c < comps; ++c) {
            double acc = 0.0;
            for (const Term& t : terms[static_cast<std::size_t>(c)]) {
                acc += t.amp * std::cos(t.k[0] * x[0] + t.k[1] * x[1] + t.k[2] * x[2] + t.phase);
            }
            s[static_cast<std::size_t>(c) * n + i] = acc;
        }
    });
    const double sup = sup_norm(f);
    if (sup > 0.0) f *= amplitude / sup;
    return f;
}

Field random_spectral_field(const GridSpec& grid, Rank rank, std::uint64_t seed, double decay, double amplitude) {
    const int comps = component_count(rank, grid.dim());
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Spectrum s(grid, comps);
    const std::size_t ns = grid.spectral_nodes();
    for (int c = 0; c < comps; ++c) {
        auto coef = s.component(c);
        for (std::size_t i = 0; i < ns; ++i) {
            const auto k = grid.wavenumbers(i);
            const double kk = std::sqrt(double(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]));
            // Nyquist modes stay empty: a real field cannot carry a symbol
            // that is odd in one coordinate there, so operator algebra on
            // them is not exact.
            const double w = grid.touches_nyquist(i) ? 0.0 : std::pow(1.0 + kk, -decay);
            const double re = gauss(rng);
            const double im = gauss(rng);
            coef[i] = Complex(re, im) * w;
        }
    }
    Field f = Field::from_spectrum(s, rank);
    const double sup = sup_norm(f);
    if (sup > 0.0) f *= amplitude / sup;
    return f;
}

Field random_solenoidal(const GridSpec& grid, std::uint64_t seed, int kmax, double amplitude) {
    Field u = leray_project(random_field(grid, Rank::vector, seed, kmax, 1.0), ZeroModePolicy::zero);
    const double sup = sup_norm(u);
    if (sup > 0.0) u *= amplitude / sup;
    return u;
}

FlowState& run(FlowState& state, int steps, const std::function<void(FlowState&)>& stepper) {
    for (int i = 0; i < steps; ++i) stepper(state);
    return state;
}

PoiseuillePair poiseuille_pair(const GridSpec& grid, const std::function<double(double)>& f,
                               const std::function<double(double)>& fprime, double T, double dt) {
    if (std::abs(f(0.0)) > 1e-14) throw std::invalid_argument("Poiseuille profile must vanish at t = 0");
    const int steps = static_cast<int>(std::llround(T / dt));
    if (steps < 1 || std::abs(steps * dt - T) > 1e-9 * std::max(1.0, T)) {
        throw std::invalid_argument("T must be a positive multiple of dt");
    }
    const Field zero(grid, Rank::vector);
    DriveSpec drive;
    drive.g = [fprime](double t) { return Vec3{-fprime(t), 0.0, 0.0}; };
    drive.impulse = [f](double t) { return Vec3{-f(t), 0.0, 0.0}; };

    PoiseuillePair out{FlowState::make(zero), FlowState::make(zero), f(T)};
    run(out.driven, steps, [&](FlowState& s) { step_euler_with_drive(s, dt, drive); });
    run(out.projected, steps, [&](FlowState& s) { step_projected_euler(s, dt); });
    return out;
}

EquivalenceResult elsasser_equivalence(const Field& u0, const Field& b0, double dt, int steps) {
    EquivalenceResult r{0.0, 0.0, FlowState::make(u0, b0), FlowState::make(u0, b0)};
    for (int i = 0; i < steps; ++i) {
        step_projected_mhd(r.mhd, dt);
        step_elsasser(r.elsasser, dt);
        const double res = max_abs_difference(r.mhd.u, r.elsasser.u) + max_abs_difference(*r.mhd.b, *r.elsasser.b);
        r.max_residual = std::max(r.max_residual, res);
        r.max_div_b = std::max({r.max_div_b, r.mhd.max_div_b, r.elsasser.max_div_b});
    }
    return r;
}

CsvTable export_trajectory(const FlowState& state, const std::filesystem::path& dir, const std::string& stem) {
    std::filesystem::create_directories(dir);
    const int d = state.grid.dim();
    std::vector<std::string> header{"t", "file", "energy", "max_div"};
    for (int c = 0; c < d; ++c) header.push_back("zero_mode_" + std::to_string(c));
    const bool with_b = !state.snapshots.empty() && state.snapshots.front().b.has_value();
    if (with_b) {
        header.emplace_back("b_file");
        header.emplace_back("b_max_div");
    }
    CsvTable table(header);
    table.comment("grid=" + std::to_string(d) + "x" + std::to_string(state.grid.points()) + "x" +
                  format_double(state.grid.half_width()));
    table.comment("nu=" + format_double(state.nu));
    for (std::size_t i = 0; i < state.snapshots.size(); ++i) {
        const Snapshot& snap = state.snapshots[i];
        char name[64];
        std::snprintf(name, sizeof name, "%s_u_%04zu.llab", stem.c_str(), i);
        write_field(dir / name, snap.u);
        const auto s = snap.u.samples();
        const double energy =
            0.5 * kernels::deterministic_sum(s.size(), [&](std::size_t j) { return s[j] * s[j]; }) *
            state.grid.cell_volume();
        std::vector<CsvCell> row{snap.t, std::string(name), energy, max_divergence(snap.u)};
        for (double m : component_means(snap.u)) row.emplace_back(m);
        if (with_b) {
            char bname[64];
            std::snprintf(bname, sizeof bname, "%s_b_%04zu.llab", stem.c_str(), i);
            write_field(dir / bname, *snap.b);
            row.emplace_back(std::string(bname));
            row.emplace_back(max_divergence(*snap.b));
        }
        table.add_row(std::move(row));
    }
    table.save((dir / (stem + "_manifest.csv")).string());
    return table;
}

}  // namespace lpflow
