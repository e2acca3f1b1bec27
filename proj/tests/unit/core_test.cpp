#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lpflow/core/bernstein.hpp"
#include "lpflow/core/csv.hpp"
#include "lpflow/core/fft.hpp"
#include "lpflow/core/field.hpp"
#include "lpflow/core/field_io.hpp"
#include "lpflow/core/grid.hpp"
#include "lpflow/core/kernels.hpp"
#include "lpflow/core/multiplier.hpp"
#include "lpflow/core/norms.hpp"
#include "lpflow/core/partition.hpp"
#include "lpflow/core/profile.hpp"
#include "lpflow/core/reference.hpp"
#include "lpflow/flows/scenarios.hpp"

using namespace lpflow;
using std::numbers::pi;

namespace {

// Single Fourier mode cos(k . x) with k on the lattice pi / L.
Field cosine_mode(const GridSpec& g, const Vec3& k) {
    return Field::from_function(g, [k](const Vec3& x) { return std::cos(k[0] * x[0] + k[1] * x[1] + k[2] * x[2]); });
}

std::size_t nonzero_modes(const Field& f, double tol) {
    const auto s = f.spectrum();
    std::size_t n = 0;
    for (const Complex& c : s->coeffs) n += std::abs(c) > tol;
    return n;
}

}  // namespace

TEST_SUITE("grid") {
    TEST_CASE("make_grid examples") {
        const GridSpec a = make_grid(1, 1048576.0, 2097152);
        CHECK(a.spacing() == 1.0);
        const GridSpec b = make_grid(2, 64.0, 512);
        CHECK(b.dxi() == doctest::Approx(pi / 64).epsilon(1e-15));
        const GridSpec c = make_grid(3, 16.0, 128);
        CHECK(c.nodes() == 2097152);
        CHECK(c.nyquist() == doctest::Approx(pi / c.spacing()));
        CHECK(c.window_radius() == 4.0);
    }

    TEST_CASE("make_grid rejects bad input") {
        CHECK_THROWS_AS(make_grid(2, 1.0, 100), std::invalid_argument);
        CHECK_THROWS_AS(make_grid(2, 1.0, 8), std::invalid_argument);
        CHECK_THROWS_AS(make_grid(4, 1.0, 16), std::invalid_argument);
        CHECK_THROWS_AS(make_grid(2, -1.0, 16), std::invalid_argument);
        CHECK_THROWS(make_grid(3, 1.0, 1024));  // 2^30 nodes, over the default budget
    }

    TEST_CASE("node indexing round trip") {
        const GridSpec g = make_grid(3, 2.0, 16);
        for (std::size_t i : {0ul, 17ul, 4095ul, 1234ul}) CHECK(g.flat_index(g.node_index(i)) == i);
        const Vec3 x = g.node_position(0);
        CHECK(x[0] == -2.0);
        CHECK(x[2] == -2.0);
    }
}

TEST_SUITE("transform") {
    TEST_CASE("constant is a single zero mode") {
        const GridSpec g = make_grid(2, 8.0, 64);
        const Field one = Field::from_function(g, [](const Vec3&) { return 1.0; });
        const auto s = one.spectrum();
        CHECK(std::abs(s->coeffs[0] - Complex(std::sqrt(double(g.nodes())), 0.0)) < 1e-10);
        CHECK(nonzero_modes(one, 1e-10) == 1);
    }

    TEST_CASE("sin(x1) has two modes when L is a multiple of pi") {
        // The half spectrum stores one of each +-k pair, except along the
        // halved axis; x1 is a full axis so both appear.
        const GridSpec g = make_grid(2, 4 * pi, 64);
        const Field f = Field::from_function(g, [](const Vec3& x) { return std::sin(x[0]); });
        CHECK(nonzero_modes(f, 1e-9) == 2);
    }

    TEST_CASE("random round trip") {
        const GridSpec g = make_grid(3, 1.0, 32);
        const Field f = random_spectral_field(g, Rank::vector, 7);
        const Field back = inverse_transform(transform(f));
        CHECK(max_abs_difference(f, back) < 1e-12);
    }

    TEST_CASE("transform caches and rejects non-finite samples") {
        const GridSpec g = make_grid(1, 1.0, 16);
        Field f(g, Rank::scalar);
        const Field t = transform(f);
        CHECK(t.has_spectrum());
        CHECK(transform(t).has_spectrum());
        f.samples()[3] = std::nan("");
        CHECK_THROWS_AS(transform(f), std::domain_error);
    }

    TEST_CASE("hermitian symmetry on the halved axis") {
        // On the k_last = 0 plane, coefficient at -k is the conjugate of +k.
        const GridSpec g = make_grid(2, 1.0, 16);
        const Field f = random_spectral_field(g, Rank::scalar, 3);
        const auto s = f.spectrum();
        const std::size_t nh = g.half_points();
        for (std::size_t a = 1; a < g.points(); ++a) {
            const Complex p = s->coeffs[a * nh];
            const Complex m = s->coeffs[(g.points() - a) * nh];
            CHECK(std::abs(p - std::conj(m)) < 1e-13);
        }
    }

    TEST_CASE("continuous transform of a Gaussian") {
        const GridSpec g = make_grid(1, 20.0, 512);
        const Field f = Field::from_function(g, [](const Vec3& x) { return std::exp(-0.5 * x[0] * x[0]); });
        const auto ft = fft::continuous_transform(g, f.samples());
        for (std::size_t s = 0; s < 20; ++s) {
            const double xi = g.frequency(s)[0];
            CHECK(std::abs(ft[s] - Complex(std::sqrt(2 * pi) * std::exp(-0.5 * xi * xi), 0.0)) < 1e-12);
        }
        const auto back = fft::samples_from_transform(g, ft);
        for (std::size_t i = 0; i < g.nodes(); ++i) CHECK(back[i] == doctest::Approx(f.samples()[i]).epsilon(1e-12));
    }
}

TEST_SUITE("multiplier") {
    TEST_CASE("derivative of a constant vanishes") {
        const GridSpec g = make_grid(2, 4.0, 32);
        const Field one = Field::from_function(g, [](const Vec3&) { return 1.0; });
        CHECK(sup_norm(apply_multiplier(one, symbols::derivative(0))) < 1e-14);
    }

    TEST_CASE("derivative of a mode") {
        const GridSpec g = make_grid(2, pi, 32);
        const Field f = Field::from_function(g, [](const Vec3& x) { return std::sin(3 * x[0]) * std::cos(x[1]); });
        const Field d = apply_multiplier(f, symbols::derivative(0));
        const Field want = Field::from_function(g, [](const Vec3& x) { return 3 * std::cos(3 * x[0]) * std::cos(x[1]); });
        CHECK(max_abs_difference(d, want) < 1e-12);
    }

    TEST_CASE("riesz pair composition") {
        const GridSpec g = make_grid(2, 8.0, 64);
        const Field f = random_spectral_field(g, Rank::scalar, 11);
        const MultiplierSymbol r = symbols::riesz_pair(0, 1);
        const Field twice = apply_multiplier(apply_multiplier(f, r), r);
        const MultiplierSymbol squared = scalar_symbol(
            "r01^2",
            [r](const Vec3& xi) {
                const Complex v = r.scalar(xi);
                return v * v;
            },
            0, ZeroModePolicy::zero);
        CHECK(max_abs_difference(twice, apply_multiplier(f, squared)) < 1e-12);
    }

    TEST_CASE("homogeneity of the standard symbols") {
        const GridSpec g = make_grid(2, 8.0, 64);
        CHECK(homogeneity_defect(symbols::derivative(1), g) < 1e-12);
        CHECK(homogeneity_defect(symbols::laplacian(), g) < 1e-12);
        CHECK(homogeneity_defect(symbols::riesz_pair(0, 1), g) < 1e-12);
    }

    TEST_CASE("zero policy gives mean-zero output") {
        const GridSpec g = make_grid(2, 8.0, 64);
        Field f = random_spectral_field(g, Rank::scalar, 5);
        for (double& v : f.samples()) v += 2.0;
        const Field out = apply_multiplier(f, scalar_symbol("one", [](const Vec3&) { return Complex(1.0); }, 0,
                                                            ZeroModePolicy::zero));
        CHECK(std::abs(component_means(out)[0]) < 1e-14);
        const Field keep = apply_multiplier(f, scalar_symbol("one", [](const Vec3&) { return Complex(1.0); }, 0,
                                                             ZeroModePolicy::passthrough));
        CHECK(keep.has_provenance(kZeroModePassthrough));
        CHECK(max_abs_difference(keep, f) < 1e-13);
    }

    TEST_CASE("NaN symbol at a nonzero frequency is an error") {
        const GridSpec g = make_grid(1, 1.0, 16);
        const Field f = random_spectral_field(g, Rank::scalar, 1);
        const MultiplierSymbol bad = scalar_symbol(
            "bad", [](const Vec3& xi) { return Complex(xi[0] > 3.0 ? std::nan("") : 1.0); }, std::nullopt,
            ZeroModePolicy::zero);
        CHECK_THROWS(apply_multiplier(f, bad));
    }
}

TEST_SUITE("partition") {
    TEST_CASE("profile support and flat region") {
        CHECK(chi(0.0) == 1.0);
        CHECK(chi(1.1) == 1.0);
        CHECK(chi(1.9) == 0.0);
        CHECK(chi(2.0) == 0.0);
        for (double r = 0.0; r < 2.5; r += 0.01) CHECK(chi(r + 0.01) <= chi(r));
        CHECK(phi(1.0) == 1.0);
        CHECK(phi(0.5) == 0.0);
        CHECK(phi(1.5) == doctest::Approx(0.5).epsilon(1e-12));
    }

    TEST_CASE("profile jet matches finite differences") {
        const double r = 1.4, e = 1e-4;
        const Jet j = chi(Jet::variable(r));
        CHECK(j.v == doctest::Approx(chi(r)));
        CHECK(j.d1 == doctest::Approx((chi(r + e) - chi(r - e)) / (2 * e)).epsilon(1e-6));
        CHECK(j.d2 == doctest::Approx((chi(r + e) - 2 * chi(r) + chi(r - e)) / (e * e)).epsilon(1e-4));
    }

    TEST_CASE("telescoping identity") {
        const GridSpec g = make_grid(2, 16.0, 128);
        const DyadicPartition p = build_partition(g);
        double worst = 0.0;
        for (std::size_t s = 0; s < g.spectral_nodes(); ++s) {
            const Vec3 xi = g.frequency(s);
            const double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1]);
            for (int M = 0; M <= p.top; ++M) {
                double sum = p.block_symbol(-1, r);
                for (int m = 0; m <= M; ++m) sum += p.block_symbol(m, r);
                worst = std::max(worst, std::abs(sum - chi(std::ldexp(r, -M - 1))));
            }
        }
        CHECK(worst < 1e-14);
    }

    TEST_CASE("homogeneous blocks sum to one away from zero") {
        const GridSpec g = make_grid(2, 16.0, 128);
        const DyadicPartition p = build_partition(g);
        CHECK(p.m_max >= p.m_min + 3);
        for (std::size_t s = 1; s < g.spectral_nodes(); ++s) {
            const Vec3 xi = g.frequency(s);
            const double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1]);
            double sum = 0.0;
            for (int m = p.m_min; m <= p.m_max; ++m) sum += p.homogeneous_symbol(m, r);
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    TEST_CASE("psi is real, radial and has unit mass") {
        const GridSpec g = make_grid(2, 16.0, 128);
        const DyadicPartition p = build_partition(g);
        const auto s = p.psi.samples();
        double mass = 0.0;
        for (double v : s) mass += v;
        CHECK(mass * g.cell_volume() == doctest::Approx(1.0).epsilon(1e-10));
        // Radial: psi(x, y) = psi(y, x) = psi(-x, y).
        const std::size_t n = g.points();
        for (std::size_t i = 1; i < n; i += 7)
            for (std::size_t j = 1; j < n; j += 5) {
                CHECK(std::abs(s[i * n + j] - s[j * n + i]) < 1e-13);
                CHECK(std::abs(s[i * n + j] - s[(n - i) * n + j]) < 1e-13);
            }
    }

    TEST_CASE("low block fixes constants") {
        const GridSpec g = make_grid(2, 8.0, 64);
        const DyadicPartition p = build_partition(g);
        const Field one = Field::from_function(g, [](const Vec3&) { return 1.0; });
        CHECK(max_abs_difference(dyadic_block(one, p, -1, false), one) < 1e-13);
    }

    TEST_CASE("single shell sits in one homogeneous block") {
        const GridSpec g = make_grid(2, 8 * pi, 256);
        const DyadicPartition p = build_partition(g);
        const int m = 1;  // |xi| = 2: phi = 1 there
        const Field u = cosine_mode(g, {2.0, 0.0, 0.0});
        for (int k = p.m_min; k <= p.m_max; ++k) {
            const double err = k == m ? max_abs_difference(dyadic_block(u, p, k, true), u)
                                      : sup_norm(dyadic_block(u, p, k, true));
            CHECK(err < 1e-12);
        }
    }

    TEST_CASE("non-homogeneous reconstruction") {
        const GridSpec g = make_grid(2, 16.0, 128);
        const DyadicPartition p = build_partition(g);
        const Field u = random_spectral_field(g, Rank::scalar, 9);
        Field sum(g, Rank::scalar);
        for (int m = -1; m <= p.top; ++m) sum += dyadic_block(u, p, m, false);
        CHECK(max_abs_difference(sum, u) < 1e-12);
        CHECK_THROWS(dyadic_block(u, p, -2, false));
    }

    TEST_CASE("far blocks are orthogonal") {
        const GridSpec g = make_grid(2, 16.0, 128);
        const DyadicPartition p = build_partition(g);
        const Field u = random_spectral_field(g, Rank::scalar, 4);
        for (int m = p.m_min; m <= p.m_max - 2; ++m) {
            const Field a = dyadic_block(dyadic_block(u, p, m, true), p, m + 2, true);
            CHECK(sup_norm(a) < 1e-12);
        }
    }

    TEST_CASE("blocks commute with a homogeneous multiplier") {
        const GridSpec g = make_grid(2, 16.0, 128);
        const DyadicPartition p = build_partition(g);
        const Field u = random_spectral_field(g, Rank::scalar, 4);
        const MultiplierSymbol s = symbols::riesz_pair(0, 1);
        for (int m = p.m_min; m <= p.m_max; ++m) {
            const Field a = dyadic_block(apply_multiplier(u, s), p, m, true);
            const Field b = apply_multiplier(dyadic_block(u, p, m, true), s);
            CHECK(max_abs_difference(a, b) < 1e-15);
        }
    }
}

TEST_SUITE("bernstein") {
    TEST_CASE("constant field, k = 1") {
        const GridSpec g = make_grid(2, 8.0, 64);
        const Field one = Field::from_function(g, [](const Vec3&) { return 1.0; });
        const BernsteinReport r = bernstein_check(one, 1, kInf, kInf, 1.0, BallSupport{1.0});
        CHECK(r.ball_ratio < 1e-13);
    }

    TEST_CASE("annulus ratios stay in a fixed band") {
        const GridSpec g = make_grid(2, 4 * pi, 1024);  // Nyquist 128
        std::vector<double> ratios;
        for (int m = 2; m <= 6; ++m) {
            const double lam = std::ldexp(1.0, m);
            const Field u = cosine_mode(g, {lam, 0.0, 0.0});
            ratios.push_back(*bernstein_check(u, 1, 2.0, 2.0, lam, AnnulusSupport{0.75, 2.0}).annulus_ratio);
        }
        const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
        CHECK(*lo > 0.25);
        CHECK(*hi < 4.0);
    }

    TEST_CASE("ball ratio stable across lambda") {
        const GridSpec g = make_grid(2, 16 * pi, 256);
        std::vector<double> ratios;
        for (double lam : {1.0, 2.0, 4.0, 8.0}) {
            const Field base = random_spectral_field(g, Rank::scalar, 21);
            const Field u = apply_radial(base, [lam](double r) { return r <= lam ? 1.0 : 0.0; });
            ratios.push_back(bernstein_check(u, 1, kInf, kInf, lam, BallSupport{1.0}).ball_ratio);
        }
        const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
        CHECK(*hi <= 2.0 * *lo);
    }

    TEST_CASE("support violation is rejected") {
        const GridSpec g = make_grid(2, 8 * pi, 128);
        const Field u = cosine_mode(g, {4.0, 0.0, 0.0});
        CHECK_THROWS_AS(bernstein_check(u, 1, 2.0, 2.0, 1.0, BallSupport{1.0}), std::domain_error);
    }

    TEST_CASE("multiplier block bound") {
        const GridSpec g = make_grid(2, 8 * pi, 256);
        const DyadicPartition p = build_partition(g);
        const Field u = cosine_mode(g, {4.0, 0.0, 0.0});
        const BlockBoundReport d = multiplier_block_bound(u, symbols::derivative(0), p, 2, kInf);
        REQUIRE(d.ratio);
        CHECK(*d.ratio >= 0.5);
        CHECK(*d.ratio <= 2.0);
        const BlockBoundReport id = multiplier_block_bound(u, symbols::identity(), p, 2, kInf);
        CHECK(*id.ratio == 1.0);
        CHECK(multiplier_block_bound(u, symbols::identity(), p, 0, kInf).skipped);
    }
}

TEST_SUITE("norms") {
    TEST_CASE("window quadrature") {
        const GridSpec g = make_grid(2, 8.0, 256);
        const Field one = Field::from_function(g, [](const Vec3&) { return 1.0; });
        const double R = g.window_radius();
        CHECK(lp_norm(one, 1.0) == doctest::Approx(pi * R * R).epsilon(0.01));
        CHECK(lp_norm(one, 1.0, Region::box) == doctest::Approx(256.0).epsilon(1e-12));
        CHECK(lp_norm(one, kInf) == 1.0);
    }
}

TEST_SUITE("io") {
    TEST_CASE("field file round trip") {
        const GridSpec g = make_grid(2, 3.0, 32);
        const Field f = random_spectral_field(g, Rank::tensor, 8);
        const auto path = std::filesystem::temp_directory_path() / "lpflow_unit_field.llab";
        write_field(path, f);
        const Field back = read_field(path);
        std::filesystem::remove(path);
        CHECK(back.grid().points() == 32);
        CHECK(back.grid().half_width() == 3.0);
        CHECK(back.rank() == Rank::tensor);
        CHECK(max_abs_difference(back, f) == 0.0);
    }

    TEST_CASE("csv round trip is exact") {
        CsvTable t({"a", "b"});
        t.comment("note=1");
        t.add_row({0.1, std::string("x,y")});
        t.add_row({1.0 / 3.0, std::int64_t(7)});
        const ParsedCsv p = parse_csv(t.str());
        CHECK(p.header == std::vector<std::string>{"a", "b"});
        CHECK(p.column("a")[1] == 1.0 / 3.0);
        CHECK(p.rows[0][1] == "x,y");
    }
}

TEST_SUITE("kernels") {
    // OpenMP kernels against their serial twins.
    TEST_CASE("apply_symbol matches the reference") {
        const GridSpec g = make_grid(2, 8.0, 128);
        const Field f = random_spectral_field(g, Rank::scalar, 2);
        const auto in = f.spectrum();
        AlignedVector<Complex> a(g.spectral_nodes()), b(g.spectral_nodes());
        const auto sym = [](const Vec3& xi) { return Complex(chi(std::hypot(xi[0], xi[1]) / 2.0), xi[0]); };
        kernels::apply_symbol(g, in->coeffs, a, sym);
        reference::apply_symbol(g, in->coeffs, b, sym);
        CHECK(a == b);
    }

    TEST_CASE("node and mode visitors agree with the reference") {
        const GridSpec g = make_grid(3, 2.0, 16);
        std::vector<Vec3> a(g.nodes()), b(g.nodes());
        kernels::for_each_node(g, [&](std::size_t i, const Vec3& x) { a[i] = x; });
        reference::for_each_node(g, [&](std::size_t i, const Vec3& x) { b[i] = x; });
        CHECK(a == b);
        std::vector<Vec3> c(g.spectral_nodes()), e(g.spectral_nodes());
        kernels::for_each_mode(g, [&](std::size_t s, const Vec3& xi) { c[s] = xi; });
        reference::for_each_mode(g, [&](std::size_t s, const Vec3& xi) { e[s] = xi; });
        CHECK(c == e);
    }

    TEST_CASE("reductions and axpy match the reference") {
        const GridSpec g = make_grid(2, 8.0, 256);
        const Field f = random_spectral_field(g, Rank::scalar, 6);
        const auto s = f.samples();
        const double R = g.window_radius();
        CHECK(kernels::window_power_sum(g, s, 3.0, R) ==
              doctest::Approx(reference::window_power_sum(g, s, 3.0, R)).epsilon(1e-13));
        CHECK(kernels::window_sup(g, s, R) == reference::window_sup(g, s, R));

        std::vector<double> y1(s.begin(), s.end()), y2(s.begin(), s.end());
        kernels::axpy(0.3, s, y1);
        reference::axpy(0.3, s, y2);
        CHECK(y1 == y2);
        kernels::multiply(s, y1, y1);
        reference::multiply(s, y2, y2);
        CHECK(y1 == y2);
    }

    TEST_CASE("deterministic sum does not depend on the thread count") {
        std::vector<double> v(100003);
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u(-1, 1);
        for (double& x : v) x = u(rng);
        const double a = kernels::deterministic_sum(v.size(), [&](std::size_t i) { return v[i]; });
        const double b = kernels::deterministic_sum(v.size(), [&](std::size_t i) { return v[i]; });
        CHECK(a == b);
        CHECK(a == doctest::Approx(reference::sum(v.size(), [&](std::size_t i) { return v[i]; })).epsilon(1e-12));
    }
}
