#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "lpflow/cli/commands.hpp"
#include "lpflow/cli/config.hpp"
#include "lpflow/cli/svg.hpp"
#include "lpflow/core/csv.hpp"
#include "lpflow/core/kernels.hpp"
#include "lpflow/core/norms.hpp"
#include "lpflow/flows/drift.hpp"
#include "lpflow/flows/scenarios.hpp"
#include "lpflow/leray/projector.hpp"

using namespace lpflow;

namespace {

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("lpflow_unit_" + name);
    std::filesystem::remove_all(p);
    return p;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_SUITE("steppers") {
    TEST_CASE("zero stays zero") {
        const GridSpec g = flow_box(2, 32);
        FlowState s = FlowState::make(Field(g, Rank::vector));
        for (int i = 0; i < 5; ++i) step_projected_euler(s, 0.1);
        CHECK(sup_norm(s.u) == 0.0);
        CHECK(s.t == doctest::Approx(0.5));
    }

    TEST_CASE("parallel shear is steady") {
        const GridSpec g = flow_box(2, 64);
        const Field u0 = shear(g, 2);
        FlowState s = FlowState::make(u0);
        for (int i = 0; i < 20; ++i) step_projected_euler(s, 0.01);
        CHECK(max_abs_difference(s.u, u0) < 1e-13);
    }

    TEST_CASE("Galilean drift of the mean is preserved") {
        const GridSpec g = flow_box(2, 32);
        Field u0 = random_solenoidal(g, 2);
        for (double& v : u0.component(0)) v += 0.3;
        FlowState s = FlowState::make(u0);
        for (int i = 0; i < 10; ++i) step_projected_euler(s, 0.01);
        CHECK(component_means(s.u)[0] == doctest::Approx(0.3).epsilon(1e-13));
        CHECK(s.max_div_u < 1e-12);
    }

    TEST_CASE("constant drive moves only the mean") {
        const GridSpec g = flow_box(2, 32);
        DriveSpec drive;
        drive.g = [](double) { return Vec3{0.5, 0.0, 0.0}; };
        FlowState s = FlowState::make(Field(g, Rank::vector));
        for (int i = 0; i < 10; ++i) step_euler_with_drive(s, 0.1, drive);
        CHECK(component_means(s.u)[0] == doctest::Approx(-0.5).epsilon(1e-13));
        CHECK_THROWS(step_euler_with_drive(s, 0.1, DriveSpec{DriveSpec::Target::elsasser_pressure_split, drive.g, {}}));
    }

    TEST_CASE("heat factor for a single mode") {
        const GridSpec g = flow_box(3, 16);
        Field u0(g, Rank::vector);
        kernels::for_each_node(g, [&](std::size_t i, const Vec3& x) { u0.component(0)[i] = std::sin(2 * x[2]); });
        FlowState s = FlowState::make(u0, std::nullopt, 0.1);
        for (int i = 0; i < 10; ++i) step_projected_ns(s, 0.05, 0.1);
        CHECK(max_abs_difference(s.u, std::exp(-0.1 * 4 * s.t) * u0) < 1e-12);
        CHECK_THROWS(step_projected_ns(s, -0.05, 0.1));
        CHECK_THROWS(step_projected_ns(s, 0.05, 0.0));
    }

    TEST_CASE("Elsasser variables round trip") {
        const GridSpec g = flow_box(2, 32);
        const Field u = random_solenoidal(g, 1), b = random_solenoidal(g, 2);
        const auto [a, z] = to_elsasser(u, b);
        const auto [u2, b2] = from_elsasser(a, z);
        CHECK(max_abs_difference(u, u2) < 1e-15);
        CHECK(max_abs_difference(b, b2) < 1e-15);
    }

    TEST_CASE("MHD with b = 0 is Euler") {
        const GridSpec g = flow_box(2, 32);
        const Field u0 = random_solenoidal(g, 4);
        FlowState m = FlowState::make(u0, Field(g, Rank::vector));
        FlowState e = FlowState::make(u0);
        for (int i = 0; i < 10; ++i) {
            step_projected_mhd(m, 0.01);
            step_projected_euler(e, 0.01);
        }
        CHECK(max_abs_difference(m.u, e.u) < 1e-13);
        CHECK(sup_norm(*m.b) == 0.0);
    }

    TEST_CASE("nonresistive MHD damps u only") {
        const GridSpec g = flow_box(2, 32);
        FlowState s = FlowState::make(shear(g, 1), shear(g, 3), 0.1);
        const double eb = s.magnetic_energy();
        for (int i = 0; i < 10; ++i) step_nonresistive_mhd(s, 0.01, 0.1);
        CHECK(s.kinetic_energy() < 0.99 * 0.5 * 2 * std::numbers::pi * 2 * std::numbers::pi * 0.5);
        // Both shears depend on x2 only, so the induction term vanishes.
        CHECK(s.magnetic_energy() == doctest::Approx(eb).epsilon(1e-12));
    }

    TEST_CASE("CFL and finiteness guards") {
        const GridSpec g = flow_box(2, 32);
        FlowState s = FlowState::make(taylor_green(g));
        CHECK(cfl_limit(s) == doctest::Approx(0.5 * g.spacing()));
        CHECK_THROWS_AS(step_projected_euler(s, 1.0), CflViolation);
        CHECK_THROWS_AS(step_projected_euler(s, 0.0), std::invalid_argument);
        Field bad = taylor_green(g);
        bad.samples()[5] = std::nan("");
        FlowState broken = FlowState::make(bad);
        CHECK_THROWS(step_projected_euler(broken, 0.001));
    }

    TEST_CASE("projected divergence stays zero") {
        const GridSpec g = flow_box(2, 32);
        FlowState s = FlowState::make(random_solenoidal(g, 8), random_solenoidal(g, 9, 4, 0.5));
        for (int i = 0; i < 5; ++i) step_projected_mhd(s, 0.01);
        CHECK(s.max_div_u < 1e-12);
        CHECK(s.max_div_b < 1e-12);
        CHECK(max_divergence(s.u) == s.max_div_u);
    }
}

TEST_SUITE("drift") {
    TEST_CASE("needs three snapshots from t = 0") {
        const GridSpec g = flow_box(2, 16);
        const Field z(g, Rank::vector);
        CHECK_THROWS_AS(drift_detector({{0.0, z, {}}, {0.1, z, {}}}, drift_ladder(g)), std::invalid_argument);
        CHECK_THROWS_AS(drift_detector({{0.1, z, {}}, {0.2, z, {}}, {0.3, z, {}}}, drift_ladder(g)),
                        std::invalid_argument);
    }

    TEST_CASE("mean shift is a violation, oscillation is not") {
        const GridSpec g = flow_box(2, 32);
        const Field u0 = shear(g, 2);
        std::vector<Snapshot> moving, wobbling;
        for (int i = 0; i < 4; ++i) {
            Field a = u0;
            for (double& v : a.component(1)) v += 0.1 * i;
            moving.push_back({0.1 * i, a, {}});
            Field b = u0;
            b *= std::cos(0.1 * i);
            wobbling.push_back({0.1 * i, b, {}});
        }
        const DriftReport m = drift_detector(moving, drift_ladder(g));
        CHECK(m.verdict == DriftVerdict::violated);
        CHECK(m.max_zero_u == doctest::Approx(0.3));
        CHECK(drift_detector(wobbling, drift_ladder(g)).verdict == DriftVerdict::condition_ii_holds);
        const ParsedCsv p = parse_csv(m.to_csv().str());
        CHECK(p.rows.size() == 4);
    }
}

TEST_SUITE("scenarios") {
    TEST_CASE("random fields are reproducible") {
        const GridSpec g = flow_box(2, 32);
        CHECK(max_abs_difference(random_field(g, Rank::vector, 5), random_field(g, Rank::vector, 5)) == 0.0);
        CHECK(max_abs_difference(random_field(g, Rank::vector, 5), random_field(g, Rank::vector, 6)) > 0.1);
        CHECK(sup_norm(random_spectral_field(g, Rank::scalar, 1, 1.0, 2.0)) == doctest::Approx(2.0));
        CHECK(sup_norm(divergence(random_solenoidal(g, 3))) < 1e-12);
    }

    TEST_CASE("Poiseuille pair with f = 0 does nothing") {
        const GridSpec g = flow_box(2, 16);
        const auto zero = [](double) { return 0.0; };
        const PoiseuillePair p = poiseuille_pair(g, zero, zero, 0.5, 0.1);
        CHECK(sup_norm(p.driven.u) == 0.0);
        CHECK_THROWS(poiseuille_pair(g, [](double t) { return 1.0 + t; }, zero, 0.5, 0.1));
        CHECK_THROWS(poiseuille_pair(g, zero, zero, 0.55, 0.1));
    }

    TEST_CASE("Poiseuille without a primitive integrates the drive") {
        const GridSpec g = flow_box(2, 16);
        DriveSpec drive;
        drive.g = [](double t) { return Vec3{-std::sin(2 * t), 0.0, 0.0}; };
        FlowState s = FlowState::make(Field(g, Rank::vector));
        for (int i = 0; i < 100; ++i) step_euler_with_drive(s, 0.01, drive);
        CHECK(component_means(s.u)[0] == doctest::Approx(std::sin(1.0) * std::sin(1.0)).epsilon(1e-9));
    }

    TEST_CASE("trajectory export") {
        const GridSpec g = flow_box(2, 16);
        FlowState s = FlowState::make(taylor_green(g));
        s.snapshot_every = 2;
        for (int i = 0; i < 4; ++i) step_projected_euler(s, 0.01);
        const auto dir = scratch("traj");
        const CsvTable t = export_trajectory(s, dir, "tg");
        CHECK(t.rows().size() == 3);
        CHECK(std::filesystem::exists(dir / "tg_u_0002.llab"));
        CHECK(std::filesystem::exists(dir / "tg_manifest.csv"));
        std::filesystem::remove_all(dir);
    }
}

TEST_SUITE("config") {
    TEST_CASE("parse and canonical form") {
        const auto c = cli::RunConfig::parse("# comment\nb = 2\na=x y\n\nflag=true\n");
        CHECK(c.get("a", "") == "x y");
        CHECK(c.get_int("b", 0) == 2);
        CHECK(c.get_bool("flag", false));
        CHECK(c.get_double("missing", 1.5) == 1.5);
        CHECK(c.str() == cli::RunConfig::parse(c.str()).str());
        CHECK(c.str().find("a=") < c.str().find("b="));
        CHECK_THROWS(cli::RunConfig::parse("novalue\n"));
        CHECK(cli::RunConfig::parse("x=inf\n").get_double("x", 0) == kInf);
        CHECK_THROWS(cli::RunConfig::parse("x=abc\n").get_double("x", 0));
    }

    TEST_CASE("grid argument") {
        const auto a = cli::parse_grid_arg("3x64");
        CHECK(a.dim == 3);
        CHECK(a.points == 64);
        CHECK_FALSE(a.half_width);
        CHECK(*cli::parse_grid_arg("1x2097152x1048576").half_width == 1048576.0);
        CHECK_THROWS(cli::parse_grid_arg("2x"));
        CHECK_THROWS(cli::parse_grid_arg("banana"));
    }
}

TEST_SUITE("svg") {
    TEST_CASE("renders a chart") {
        const std::string s = cli::render_svg({"t", "x", "y", true, true}, {{"a", {1, 2, 4}, {1, 0.5, 0.25}}});
        CHECK(s.find("<svg") == 0);
        CHECK(s.find("</svg>") != std::string::npos);
        CHECK(s.find("polyline") != std::string::npos);
    }
}

TEST_SUITE("commands") {
    TEST_CASE("sin decay run writes its outputs and re-runs identically") {
        const auto a = scratch("cmd_a"), b = scratch("cmd_b");
        std::ostringstream log;
        const auto cfg = cli::RunConfig::parse("command=decay\ntarget=sin\ngrid=2x256x128\n");
        const cli::RunResult r = cli::run_command(cfg, a, log);
        CHECK(r.exit_code() == 0);
        for (const char* f : {"decay.csv", "decay.svg", "config.txt", "manifest.txt", "failures.txt"})
            CHECK(std::filesystem::exists(a / f));
        CHECK(slurp(a / "failures.txt").empty());
        CHECK(slurp(a / "manifest.txt").find("status=") != std::string::npos);
        const cli::RunResult r2 = cli::run_command(cli::RunConfig::load(a / "config.txt"), b, log);
        CHECK(r2.exit_code() == 0);
        CHECK(slurp(a / "decay.csv") == slurp(b / "decay.csv"));
        CHECK(slurp(a / "config.txt") == slurp(b / "config.txt"));
        std::filesystem::remove_all(a);
        std::filesystem::remove_all(b);
    }

    TEST_CASE("a failed in-run check is reported, not thrown") {
        const auto a = scratch("cmd_fail");
        std::ostringstream log;
        // With max_index = 2 the only window for sigma = +1 is empty.
        const auto cfg = cli::RunConfig::parse("command=counterexample\ngrid=1x4096x2048\nmax_index=2\n");
        const cli::RunResult r = cli::run_command(cfg, a, log);
        CHECK(r.exit_code() == 1);
        CHECK(slurp(a / "failures.txt").find("deviation_sign+1") != std::string::npos);
        std::filesystem::remove_all(a);
        CHECK_THROWS(cli::run_command(cli::RunConfig::parse("command=nope\n"), a, log));
        std::filesystem::remove_all(a);
    }
}
