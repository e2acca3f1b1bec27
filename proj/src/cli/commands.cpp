#include "lpflow/cli/commands.hpp"

#include <fftw3.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lpflow/besov/besov.hpp"
#include "lpflow/cli/svg.hpp"
#include "lpflow/core/field_io.hpp"
#include "lpflow/core/partition.hpp"
#include "lpflow/flows/drift.hpp"
#include "lpflow/flows/scenarios.hpp"
#include "lpflow/leray/decay.hpp"
#include "lpflow/leray/gamma.hpp"
#include "lpflow/sph/counterexample.hpp"
#include "lpflow/sph/probe.hpp"
#include "lpflow/sph/trace.hpp"

#ifndef LPFLOW_VERSION
#define LPFLOW_VERSION "dev"
#endif

namespace lpflow::cli {

namespace fs = std::filesystem;

namespace {

struct Run {
    RunConfig& cfg;
    fs::path out;
    std::ostream& log;
    RunResult result;

    void check(bool ok, const std::string& name, const std::string& detail) {
        log << (ok ? "  ok    " : "  FAIL  ") << name << ": " << detail << "\n";
        if (!ok) result.failures.push_back(name + ": " + detail);
    }

    void save(const CsvTable& table, const std::string& name) {
        table.save((out / name).string());
        result.outputs.push_back(name);
    }

    void plot(const std::string& csv, const std::string& xcol, const std::vector<std::string>& ycols,
              const PlotSpec& spec) {
        const std::string svg = fs::path(csv).replace_extension(".svg").string();
        plot_csv(out / csv, out / svg, xcol, ycols, spec);
        result.outputs.push_back(svg);
    }

    /// Returns the key's value, recording the default in the config so the
    /// persisted file pins every parameter the run used.
    std::string param(const std::string& key, const std::string& fallback) {
        if (!cfg.has(key)) cfg.set(key, fallback);
        return cfg.get(key, fallback);
    }
    double num(const std::string& key, double fallback) {
        if (!cfg.has(key)) cfg.set(key, format_double(fallback));
        return cfg.get_double(key, fallback);
    }
    long long integer(const std::string& key, long long fallback) {
        if (!cfg.has(key)) cfg.set(key, std::to_string(fallback));
        return cfg.get_int(key, fallback);
    }
    bool flag(const std::string& key, bool fallback) {
        if (!cfg.has(key)) cfg.set(key, fallback ? "true" : "false");
        return cfg.get_bool(key, fallback);
    }

    GridSpec grid(const std::string& fallback) {
        const GridArg g = parse_grid_arg(param("grid", fallback));
        if (!g.half_width) throw std::invalid_argument("this command needs the box half-width: --grid dxNxL");
        return make_grid(g.dim, *g.half_width, g.points);
    }

    /// Flows live on the 2pi box; an explicit L must be pi.
    GridSpec flow_grid(const std::string& fallback) {
        const GridArg g = parse_grid_arg(param("grid", fallback));
        if (g.half_width && std::abs(*g.half_width - std::numbers::pi) > 1e-9) {
            throw std::invalid_argument("flows run on the 2pi box: omit L or use L = pi");
        }
        return flow_box(g.dim, g.points);
    }

    std::vector<double> ladder(const std::string& fallback) {
        return LambdaLadder::parse(param("lambda", fallback)).values();
    }

    TraceMode mode() { return parse_mode(param("mode", "weak")); }
};

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
    return v;
}

Vec3 parse_vec(const std::string& text) {
    if (text == "0") return {0.0, 0.0, 0.0};
    if (text == "e1") return {1.0, 0.0, 0.0};
    if (text == "e2") return {0.0, 1.0, 0.0};
    if (text == "e3") return {0.0, 0.0, 1.0};
    const auto v = parse_list(text);
    if (v.empty() || v.size() > 3) throw std::invalid_argument("bad vector '" + text + "'");
    Vec3 out{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
    return out;
}

double vec_norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

void annotate(CsvTable& t, const ShClassification& c) {
    t.comment("verdict=" + std::string(verdict_name(c.verdict)));
    t.comment("mode=" + std::string(mode_name(c.mode)));
}

// decay ----------------------------------------------------------------------

void cmd_decay(Run& r) {
    const std::string target = r.param("target", "sign");
    if (target == "gamma") {
        const GridSpec grid = r.grid("2x1024x1024");
        // theta / h >= 32 keeps the far-part quadrature error out of the low modes.
        const double theta = r.num("theta", 64.0);
        const SingularRoute route = parse_route(r.param("route", "green_identity"));
        const auto idx = parse_list(r.param("indices", "0,0,0"));
        if (idx.size() != 3) throw std::invalid_argument("indices must be j,k,l");
        const auto lambdas = r.ladder("4:2:5");
        const DyadicPartition part = build_partition(grid);
        const LerayKernel kernel =
            assemble_gamma(grid, part, theta, int(idx[0]), int(idx[1]), int(idx[2]), route);
        const DecayReport rep = gamma_lowfreq_decay(kernel, lambdas);
        CsvTable t = rep.to_csv();
        t.comment("target=gamma");
        t.comment("route=" + std::string(route_name(route)));
        t.comment("gamma_l1=" + format_double(kernel.l1_norm));
        r.save(t, "decay.csv");
        r.plot("decay.csv", "lambda", {"value"}, {"||chi(lambda D) Gamma||_1", "lambda", "L1 norm", true, true});
        r.check(std::isfinite(kernel.l1_norm), "gamma_l1_finite", format_double(kernel.l1_norm));
        if (grid.dim() == 3) {
            r.check(std::abs(rep.slope + 1.0) <= 0.15, "gamma_slope", "slope " + format_double(rep.slope));
        } else {
            r.check(rep.log_corrected_bounded, "gamma_log_ratio", "max/min ratio " + format_double(rep.log_ratio));
        }
        return;
    }

    Field f;
    std::string expect;
    if (target == "sign") {
        const GridSpec grid = r.grid("1x1048576x32768");
        f = Field::from_function(grid, [](const Vec3& x) { return x[0] > 0 ? 1.0 : (x[0] < 0 ? -1.0 : 0.0); });
        expect = "slope";
    } else if (target == "sin") {
        const GridSpec grid = r.grid("2x256x128");
        // Whole number of periods in the box: k = n pi / L.
        const double k = static_cast<double>(r.integer("k_index", 20)) * grid.dxi();
        f = Field::from_function(grid, [k](const Vec3& x) { return std::sin(k * x[0]); });
        expect = "member";
    } else if (target == "constant") {
        const GridSpec grid = r.grid("2x256x128");
        f = Field::from_function(grid, [](const Vec3&) { return 1.0; });
        expect = "non_member";
    } else if (target == "file") {
        f = read_field(r.param("field", "field.llab"));
    } else {
        throw std::invalid_argument("unknown decay target '" + target + "'");
    }
    const auto lambdas = r.ladder(target == "sign" ? "8:2:8" : "1:2:5");
    const TraceMode mode = r.mode();
    const DecayReport rep = lowpass_trace(f, lambdas, mode);
    const ShClassification cls = classify_sph(rep, mode);
    CsvTable t = rep.to_csv();
    t.comment("target=" + target);
    annotate(t, cls);
    r.save(t, "decay.csv");
    r.plot("decay.csv", "lambda", {"value"}, {"low-pass trace: " + target, "lambda", "trace", true, true});
    if (expect == "slope" && mode == TraceMode::weak) {
        r.check(std::abs(rep.slope + 1.0) <= 0.15, "sign_slope", "slope " + format_double(rep.slope));
    } else if (expect == "member") {
        r.check(cls.verdict == Verdict::member, "sin_member", verdict_name(cls.verdict));
    } else if (expect == "non_member") {
        r.check(cls.verdict == Verdict::non_member, "constant_non_member", verdict_name(cls.verdict));
    }
}

// counterexample ---------------------------------------------------------------

void cmd_counterexample(Run& r) {
    CounterexampleSpec spec;
    const GridArg g = parse_grid_arg(r.param("grid", "1x2097152x1048576"));
    if (g.dim != 1 || !g.half_width) throw std::invalid_argument("counterexample runs on a 1xNxL grid");
    spec.points = g.points;
    spec.half_width = *g.half_width;
    spec.epsilon = r.num("epsilon", spec.epsilon);
    spec.max_index = static_cast<int>(r.integer("max_index", spec.max_index));
    spec.window_radius = r.num("radius", spec.window_radius);
    spec.scan_points = static_cast<int>(r.integer("scan_points", spec.scan_points));
    const double tolerance = r.num("tolerance", 0.5);

    const Field f = build_annuli_counterexample(spec);
    const double A = kernel_mass_radius(spec.epsilon);

    CsvTable summary({"sign", "M", "A", "window_lo", "window_hi", "lambda", "deviation"});
    CsvTable scan({"sign", "lambda", "deviation"});
    summary.comment("epsilon=" + format_double(spec.epsilon));
    for (int sign : {1, -1}) {
        const std::string tag = sign > 0 ? "+1" : "-1";
        // Report the window of every candidate index, then measure.
        for (int M = 1; M <= spec.max_index; ++M) {
            if ((M % 2 == 0 ? 1 : -1) != sign) continue;
            const LambdaWindow w = lambda_window(spec, M, A);
            summary.comment("sign=" + tag + " M=" + std::to_string(M) + " window=[" + format_double(w.lo) + ", " +
                            format_double(w.hi) + "]" + (w.empty() ? " empty" : ""));
        }
        try {
            const OscillationResult res = counterexample_oscillation(f, spec, sign);
            summary.add_row({std::int64_t(sign), std::int64_t(res.M), res.A, res.window.lo, res.window.hi, res.lambda,
                             res.deviation});
            for (std::size_t i = 0; i < res.scanned_lambdas.size(); ++i) {
                scan.add_row({std::int64_t(sign), res.scanned_lambdas[i], res.scanned_deviations[i]});
            }
            r.check(res.deviation <= tolerance, "deviation_sign" + tag,
                    "deviation " + format_double(res.deviation) + " at lambda " + format_double(res.lambda) +
                        " (M=" + std::to_string(res.M) + ")");
        } catch (const std::domain_error& e) {
            r.check(false, "deviation_sign" + tag, e.what());
        }
    }
    r.save(summary, "counterexample.csv");
    r.save(scan, "counterexample_scan.csv");

    // Strong trace on |x| <= R across both windows: no monotone decay.
    const auto lambdas = r.ladder("2:2:16");
    std::vector<double> values;
    for (double lam : lambdas) values.push_back(window_deviation(f, lam, 0.0, spec.window_radius));
    const DecayReport rep =
        make_decay_report("counterexample-trace", lambdas, values, spec.window_radius, false);
    const ShClassification cls = classify_sph(rep, TraceMode::strong);
    CsvTable t = rep.to_csv();
    annotate(t, cls);
    r.save(t, "counterexample_trace.csv");
    r.plot("counterexample_trace.csv", "lambda", {"value"},
           {"sup_{|x|<=R} |chi(lambda D) f|", "lambda", "trace", true, false});
    r.check(cls.verdict != Verdict::member, "no_monotone_decay", verdict_name(cls.verdict));
}

// flow -----------------------------------------------------------------------

CsvTable energy_table() { return CsvTable({"step", "t", "energy", "max_div"}); }

void energy_row(CsvTable& t, const FlowState& s) {
    t.add_row({std::int64_t(s.steps), s.t, s.kinetic_energy(), s.max_div_u});
}

void drift_output(Run& r, const DriftReport& rep, const std::string& name) {
    r.save(rep.to_csv(), name);
}

void cmd_flow(Run& r) {
    const std::string scenario = r.param("scenario", "poiseuille");
    const auto lambdas_for = [&](const GridSpec& g) {
        if (r.cfg.has("lambda")) return LambdaLadder::parse(r.cfg.get("lambda", "")).values();
        return drift_ladder(g);
    };

    if (scenario == "poiseuille") {
        const GridSpec grid = r.flow_grid("2x32");
        const std::string profile = r.param("profile", "sin2");
        const double T = r.num("T", 1.0);
        const double dt = r.num("dt", 0.01);
        std::function<double(double)> f, fp;
        if (profile == "sin2") {
            f = [](double t) { return std::sin(t) * std::sin(t); };
            fp = [](double t) { return std::sin(2.0 * t); };
        } else if (profile == "zero") {
            f = [](double) { return 0.0; };
            fp = [](double) { return 0.0; };
        } else {
            throw std::invalid_argument("unknown Poiseuille profile '" + profile + "'");
        }
        const PoiseuillePair pair = poiseuille_pair(grid, f, fp, T, dt);
        CsvTable t({"t", "f", "driven_zero_mode", "projected_zero_mode"});
        for (std::size_t i = 0; i < pair.driven.snapshots.size(); ++i) {
            const auto& sd = pair.driven.snapshots[i];
            const auto& sp = pair.projected.snapshots[i];
            t.add_row({sd.t, f(sd.t), component_means(sd.u)[0], component_means(sp.u)[0]});
        }
        r.save(t, "poiseuille.csv");
        r.plot("poiseuille.csv", "t", {"f", "driven_zero_mode", "projected_zero_mode"},
               {"Poiseuille pair", "t", "zero mode of u_1", false, false});
        export_trajectory(pair.driven, r.out / "trajectory", "driven");
        export_trajectory(pair.projected, r.out / "trajectory", "projected");
        r.result.outputs.push_back("trajectory/driven_manifest.csv");
        r.result.outputs.push_back("trajectory/projected_manifest.csv");

        const auto lambdas = lambdas_for(grid);
        const DriftReport dd = drift_detector(pair.driven.snapshots, lambdas, r.mode());
        const DriftReport dp = drift_detector(pair.projected.snapshots, lambdas, r.mode());
        drift_output(r, dd, "drift_driven.csv");
        drift_output(r, dp, "drift_projected.csv");

        const double gap = component_means(pair.driven.u)[0] - component_means(pair.projected.u)[0];
        r.check(std::abs(gap - pair.f_end) <= 1e-13, "zero_mode_gap",
                "difference " + format_double(gap) + " vs f(T) " + format_double(pair.f_end));
        const bool driven_expected = profile == "zero" ? dd.verdict == DriftVerdict::condition_ii_holds
                                                       : dd.verdict == DriftVerdict::violated;
        r.check(driven_expected, "driven_drift", drift_verdict_name(dd.verdict));
        r.check(dp.verdict == DriftVerdict::condition_ii_holds, "projected_drift", drift_verdict_name(dp.verdict));
        return;
    }

    const bool dealias = r.flag("dealias", true);
    const int steps = static_cast<int>(r.integer("steps", 100));
    const double dt = r.num("dt", 0.01);

    if (scenario == "taylor-green" || scenario == "shear" || scenario == "random") {
        const GridSpec grid = r.flow_grid(scenario == "taylor-green" ? "2x256" : "2x64");
        Field u0 = scenario == "taylor-green" ? taylor_green(grid)
                   : scenario == "shear"      ? shear(grid, static_cast<int>(r.integer("k", 1)))
                                              : random_solenoidal(grid, static_cast<std::uint64_t>(r.integer("seed", 0)), 4, 1.0);
        FlowState s = FlowState::make(u0, std::nullopt, 0.0, dealias);
        const DriveSpec drive = [&] {
            DriveSpec d;
            const Vec3 g = parse_vec(r.param("drive", "0"));
            if (vec_norm(g) > 0.0) d.g = [g](double) { return g; };
            return d;
        }();
        CsvTable et = energy_table();
        energy_row(et, s);
        const double e0 = s.kinetic_energy();
        double worst = 0.0;
        for (int i = 0; i < steps; ++i) {
            if (drive.active()) step_euler_with_drive(s, dt, drive);
            else step_projected_euler(s, dt);
            energy_row(et, s);
            worst = std::max(worst, std::abs(s.kinetic_energy() - e0) / std::max(e0, 1e-300));
        }
        r.save(et, "energy.csv");
        r.plot("energy.csv", "t", {"energy"}, {"kinetic energy", "t", "E", false, false});
        export_trajectory(s, r.out / "trajectory", scenario);
        r.result.outputs.push_back("trajectory/" + scenario + "_manifest.csv");
        const DriftReport dr = drift_detector(s.snapshots, lambdas_for(grid), r.mode());
        drift_output(r, dr, "drift.csv");
        r.check(s.max_div_u < 1e-10, "divergence", format_double(s.max_div_u));
        if (!drive.active()) {
            r.check(worst < 1e-6, "energy_drift", "relative " + format_double(worst));
            r.check(dr.verdict == DriftVerdict::condition_ii_holds, "drift", drift_verdict_name(dr.verdict));
        } else {
            r.check(dr.verdict == DriftVerdict::violated, "driven_drift", drift_verdict_name(dr.verdict));
        }
        if (scenario == "shear") {
            r.check(max_abs_difference(s.u, u0) < 1e-10, "shear_steady", format_double(max_abs_difference(s.u, u0)));
        }
        if (scenario == "taylor-green" && r.flag("reverse", true) && !drive.active()) {
            FlowState back = s;
            for (int i = 0; i < steps; ++i) step_projected_euler(back, -dt);
            const double res = max_abs_difference(back.u, u0);
            r.check(res < 1e-9, "reversibility", format_double(res));
        }
        return;
    }

    if (scenario == "ns") {
        const GridSpec grid = r.flow_grid("2x64");
        const double nu = r.num("nu", 0.01);
        const std::string init = r.param("initial", "random");
        Field u0;
        int k = 0;
        if (init == "mode") {
            k = static_cast<int>(r.integer("k", 3));
            u0 = shear(grid, k);
        } else {
            u0 = random_solenoidal(grid, static_cast<std::uint64_t>(r.integer("seed", 0)), 4, 1.0);
        }
        FlowState s = FlowState::make(u0, std::nullopt, nu, dealias);
        CsvTable et = energy_table();
        energy_row(et, s);
        bool monotone = true;
        double prev = s.kinetic_energy();
        double mode_err = 0.0;
        for (int i = 0; i < steps; ++i) {
            step_projected_ns(s, dt, nu);
            energy_row(et, s);
            const double e = s.kinetic_energy();
            monotone = monotone && e <= prev * (1.0 + 1e-14);
            prev = e;
            if (k > 0) {
                const double a = std::exp(-nu * k * k * s.t);
                mode_err = std::max(mode_err, max_abs_difference(s.u, a * u0));
            }
        }
        r.save(et, "energy.csv");
        r.plot("energy.csv", "t", {"energy"}, {"kinetic energy", "t", "E", false, true});
        r.check(monotone, "energy_monotone", "final " + format_double(prev));
        if (k > 0) r.check(mode_err < 1e-8, "heat_factor", format_double(mode_err));
        r.check(s.max_div_u < 1e-10, "divergence", format_double(s.max_div_u));
        return;
    }
    throw std::invalid_argument("unknown flow scenario '" + scenario + "'");
}

// mhd ------------------------------------------------------------------------

void cmd_mhd(Run& r) {
    const GridSpec grid = r.flow_grid("2x64");
    const Vec3 c = parse_vec(r.param("split", "0"));
    const int steps = static_cast<int>(r.integer("steps", 50));
    const double dt = r.num("dt", 0.01);
    const bool dealias = r.flag("dealias", true);
    const auto lambdas = r.cfg.has("lambda") ? LambdaLadder::parse(r.cfg.get("lambda", "")).values() : drift_ladder(grid);
    const bool split = vec_norm(c) > 0.0;
    const std::string init = r.param("initial", split ? "zero" : "random");
    const std::uint64_t seed = static_cast<std::uint64_t>(r.integer("seed", 0));

    Field u0(grid, Rank::vector), b0(grid, Rank::vector);
    if (init == "random") {
        u0 = random_solenoidal(grid, seed, 4, 1.0);
        b0 = random_solenoidal(grid, seed + 1, 4, r.num("b_amplitude", 0.5));
    } else if (init == "no-b") {
        u0 = random_solenoidal(grid, seed, 4, 1.0);
    } else if (init != "zero") {
        throw std::invalid_argument("unknown MHD initial data '" + init + "'");
    }

    CsvTable t({"step", "t", "residual", "max_div_b", "kinetic", "magnetic", "b_zero_mode"});
    if (!split) {
        FlowState mhd = FlowState::make(u0, b0, 0.0, dealias);
        FlowState els = FlowState::make(u0, b0, 0.0, dealias);
        double worst = 0.0, divb = 0.0;
        FlowState euler = FlowState::make(u0, std::nullopt, 0.0, dealias);
        double euler_gap = 0.0;
        for (int i = 0; i < steps; ++i) {
            step_projected_mhd(mhd, dt);
            step_elsasser(els, dt);
            const double res = max_abs_difference(mhd.u, els.u) + max_abs_difference(*mhd.b, *els.b);
            worst = std::max(worst, res);
            divb = std::max({divb, mhd.max_div_b, els.max_div_b});
            t.add_row({std::int64_t(mhd.steps), mhd.t, res, mhd.max_div_b, mhd.kinetic_energy(), mhd.magnetic_energy(),
                       component_means(*mhd.b)[0]});
            if (init == "no-b") {
                step_projected_euler(euler, dt);
                euler_gap = std::max(euler_gap, max_abs_difference(euler.u, mhd.u));
            }
        }
        r.save(t, "mhd.csv");
        r.plot("mhd.csv", "t", {"residual"}, {"MHD vs Elsasser residual", "t", "residual", false, false});
        export_trajectory(mhd, r.out / "trajectory", "mhd");
        r.result.outputs.push_back("trajectory/mhd_manifest.csv");
        const DriftReport dr = drift_detector(mhd.snapshots, lambdas, r.mode());
        r.save(dr.to_csv(), "drift.csv");
        r.check(worst < 1e-8, "elsasser_equivalence", format_double(worst));
        r.check(divb < 1e-9, "div_b", format_double(divb));
        r.check(dr.verdict_b.value_or(DriftVerdict::condition_ii_holds) == DriftVerdict::condition_ii_holds, "b_drift",
                drift_verdict_name(dr.verdict_b.value_or(DriftVerdict::condition_ii_holds)));
        if (init == "no-b") r.check(euler_gap < 1e-12, "euler_reduction", format_double(euler_gap));
        return;
    }

    FlowState els = FlowState::make(u0, b0, 0.0, dealias);
    const Vec3 b_start{component_means(b0)[0], grid.dim() > 1 ? component_means(b0)[1] : 0.0,
                       grid.dim() > 2 ? component_means(b0)[2] : 0.0};
    double worst = 0.0, divb = 0.0;
    const auto cfun = [c](double) { return c; };
    for (int i = 0; i < steps; ++i) {
        step_elsasser(els, dt, cfun);
        const auto mb = component_means(*els.b);
        double err = 0.0;
        for (int a = 0; a < grid.dim(); ++a) {
            const auto ai = static_cast<std::size_t>(a);
            err = std::max(err, std::abs(mb[ai] - (b_start[ai] + 0.5 * els.t * c[ai])));
        }
        worst = std::max(worst, err);
        divb = std::max(divb, els.max_div_b);
        t.add_row({std::int64_t(els.steps), els.t, err, els.max_div_b, els.kinetic_energy(), els.magnetic_energy(),
                   mb[0]});
    }
    r.save(t, "mhd.csv");
    r.plot("mhd.csv", "t", {"b_zero_mode"}, {"b zero mode under the pressure split", "t", "b_1", false, false});
    const DriftReport dr = drift_detector(els.snapshots, lambdas, r.mode());
    r.save(dr.to_csv(), "drift.csv");
    r.check(worst < 1e-10, "b_linear_growth", "max |b - (b0 + t c/2)| " + format_double(worst));
    r.check(divb < 1e-9, "div_b", format_double(divb));
    r.check(dr.verdict_b == DriftVerdict::violated, "b_drift",
            drift_verdict_name(dr.verdict_b.value_or(DriftVerdict::condition_ii_holds)));
}

// probe ----------------------------------------------------------------------

void cmd_probe(Run& r) {
    const GridSpec grid = r.grid("2x1024x256");
    const std::string which = r.param("symbol", "leray");
    const auto dilations = parse_list(r.param("dilations", "1,2,4,8,16"));
    const double width = r.num("seed_width", 2.0);
    MultiplierSymbol sym;
    if (which == "leray") {
        // Off-diagonal Leray entry -xi_1 xi_2 / |xi|^2.
        sym = scalar_symbol(
            "leray01",
            [](const Vec3& xi) {
                const double n2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
                return Complex(-xi[0] * xi[1] / n2);
            },
            0, ZeroModePolicy::zero);
    } else if (which == "constant") {
        sym = symbols::identity();
    } else {
        throw std::invalid_argument("unknown probe symbol '" + which + "'");
    }
    const ProbeReport rep = l1_unboundedness_probe(grid, sym, dilations, width);
    CsvTable t = rep.to_csv();
    t.comment("symbol=" + which);
    r.save(t, "probe.csv");
    r.plot("probe.csv", "t", {"value"}, {"high-pass L1 probe: " + which, "t", "L1 norm", true, true});
    if (which == "constant") {
        double top = 0.0;
        for (double v : rep.values) top = std::max(top, v);
        r.check(top <= rep.control_bound, "control_bounded",
                "max " + format_double(top) + " (bound (1 + ||psi||_1) ||f||_1 = " + format_double(rep.control_bound) + ")");
    } else {
        r.check(rep.growth_ratio > 2.0, "growth", "ratio " + format_double(rep.growth_ratio));
    }
}

// besov ----------------------------------------------------------------------

void cmd_besov(Run& r) {
    const std::string source = r.param("field", "random");
    Field f;
    if (source == "random") {
        const GridSpec grid = r.grid("2x256x64");
        f = random_spectral_field(grid, Rank::scalar, static_cast<std::uint64_t>(r.integer("seed", 0)),
                                  r.num("decay", 1.0));
    } else if (source == "sign") {
        const GridSpec grid = r.grid("1x4096x64");
        f = Field::from_function(grid, [](const Vec3& x) { return x[0] > 0 ? 1.0 : (x[0] < 0 ? -1.0 : 0.0); });
    } else {
        f = read_field(source);
    }
    BesovParams p;
    p.s = r.num("s", 0.0);
    p.p = r.num("p", kInf);
    p.r = r.num("r", kInf);
    p.homogeneous = r.flag("homogeneous", false);
    p.region = r.param("region", "window") == "box" ? Region::box : Region::window;
    const DyadicPartition part = build_partition(f.grid());
    const BesovNormReport rep = besov_norm(f, part, p);
    r.save(rep.to_csv(), "besov.csv");
    r.plot("besov.csv", "m", {"block_norm", "weighted"}, {"dyadic block norms", "m", "norm", false, true});

    // Non-homogeneous blocks must add back up to the field.
    Field sum(f.grid(), f.rank());
    for (int m = -1; m <= part.top; ++m) sum += dyadic_block(f, part, m, false);
    const double residual = max_abs_difference(sum, f);
    r.check(residual < 1e-11, "reconstruction", format_double(residual));
    r.check(std::isfinite(rep.total), "norm_finite", format_double(rep.total));
}

}  // namespace

RunResult run_command(RunConfig cfg, const fs::path& out, std::ostream& log) {
    const std::string command = cfg.get("command", "");
    if (command.empty()) throw std::invalid_argument("no command given");
    fs::create_directories(out);
    const auto start = std::chrono::steady_clock::now();
    Run run{cfg, out, log, {}};
    log << "lpflow " << command << " -> " << out.string() << "\n";

    if (command == "decay") cmd_decay(run);
    else if (command == "counterexample") cmd_counterexample(run);
    else if (command == "flow") cmd_flow(run);
    else if (command == "mhd") cmd_mhd(run);
    else if (command == "probe") cmd_probe(run);
    else if (command == "besov") cmd_besov(run);
    else throw std::invalid_argument("unknown command '" + command + "'");

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    cfg.save(out / "config.txt");
    {
        std::ofstream f(out / "failures.txt", std::ios::binary);
        for (const auto& line : run.result.failures) f << line << "\n";
    }
    {
        std::ofstream m(out / "manifest.txt", std::ios::binary);
        m << "lpflow_version=" << LPFLOW_VERSION << "\n";
        m << "fftw_version=" << fftw_version << "\n";
        m << "wall_seconds=" << format_double(wall) << "\n";
        m << "status=" << (run.result.failures.empty() ? "pass" : "fail") << "\n";
        for (const auto& o : run.result.outputs) m << "output=" << o << "\n";
        m << "# config\n" << cfg.str();
    }
    log << (run.result.failures.empty() ? "all checks passed" : std::to_string(run.result.failures.size()) + " check(s) failed")
        << " in " << wall << " s\n";
    return run.result;
}

}  // namespace lpflow::cli
