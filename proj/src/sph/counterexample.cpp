#include "lpflow/sph/counterexample.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lpflow/core/fft.hpp"
#include "lpflow/core/kernels.hpp"
#include "lpflow/core/profile.hpp"

namespace lpflow {

double kernel_mass_radius(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
    // psi decays fast; |x| <= 8192 with h = 1/64 holds all of its mass.
    const GridSpec aux = make_grid(1, 8192.0, std::size_t{1} << 20);
    AlignedVector<Complex> ft(aux.spectral_nodes());
    kernels::for_each_mode(aux, [&](std::size_t s, const Vec3& xi) { ft[s] = chi(std::abs(xi[0])); });
    const auto psi = fft::samples_from_transform(aux, ft);
    const std::size_t n = aux.points();
    const std::size_t centre = n / 2;
    const double h = aux.spacing();
    // Accumulate the tail mass from the box edge inwards.
    double tail = std::abs(psi[0]) * h;
    for (std::size_t off = centre - 1; off >= 1; --off) {
        const double add = (std::abs(psi[centre + off]) + std::abs(psi[centre - off])) * h;
        if (tail + add > epsilon) return static_cast<double>(off) * h;
        tail += add;
    }
    return 0.0;
}

LambdaWindow lambda_window(const CounterexampleSpec& spec, int M, double A) {
    LambdaWindow w;
    w.lo = std::exp2(static_cast<double>(M * M)) / spec.epsilon;
    w.hi = (spec.window_radius + std::exp2(static_cast<double>((M + 1) * (M + 1)))) / A;
    return w;
}

Field build_annuli_counterexample(const CounterexampleSpec& spec) {
    const GridSpec grid = make_grid(1, spec.half_width, spec.points);
    const double outer = std::exp2(static_cast<double>((spec.max_index + 1) * (spec.max_index + 1)));
    if (outer > spec.half_width / 2.0) {
        throw std::invalid_argument("box too small: annulus " + std::to_string(spec.max_index) +
                                    " reaches " + std::to_string(outer) + " > L/2");
    }
    Field f(grid, Rank::scalar);
    auto s = f.samples();
    kernels::for_each_node(grid, [&](std::size_t i, const Vec3& x) {
        const double r = std::abs(x[0]);
        double v = 0.0;
        for (int m = 0;; ++m) {
            const double lo = std::exp2(static_cast<double>(m * m));
            if (lo > r) break;
            const double hi = std::exp2(static_cast<double>((m + 1) * (m + 1)));
            if (r < hi) {
                v = (m % 2 == 0) ? 1.0 : -1.0;
                break;
            }
        }
        s[i] = v;
    });
    return f;
}

double window_deviation(const Field& f, double lambda, double sign, double radius) {
    const GridSpec& grid = f.grid();
    Spectrum s = *f.spectrum();
    auto c = s.component(0);
    kernels::for_each_mode(grid, [&](std::size_t k, const Vec3& xi) { c[k] *= chi(lambda * std::abs(xi[0])); });
    AlignedVector<double> g(grid.nodes());
    fft::inverse(grid, c, g);
    const double r2 = radius * radius;
    return kernels::deterministic_max(g.size(), [&](std::size_t i) {
        const double x = grid.coord(i);
        return x * x <= r2 ? std::abs(g[i] - sign) : 0.0;
    });
}

OscillationResult counterexample_oscillation(const Field& f, const CounterexampleSpec& spec, int sign,
                                             std::optional<int> M) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    if (f.grid().dim() != 1) throw std::invalid_argument("the annuli field is one-dimensional");
    OscillationResult out;
    out.sign = sign;
    out.A = kernel_mass_radius(spec.epsilon);
    if (M) {
        if (((*M % 2 == 0) ? 1 : -1) != sign) throw std::invalid_argument("(-1)^M must equal the sign");
        out.M = *M;
        out.window = lambda_window(spec, *M, out.A);
    } else {
        out.M = -1;
        for (int m = spec.max_index; m >= 0; --m) {
            if (((m % 2 == 0) ? 1 : -1) != sign) continue;
            const LambdaWindow w = lambda_window(spec, m, out.A);
            if (out.M < 0) {
                out.M = m;
                out.window = w;
            }
            if (!w.empty()) {
                out.M = m;
                out.window = w;
                break;
            }
        }
    }
    if (out.window.empty()) {
        throw std::domain_error("empty lambda window for M = " + std::to_string(out.M) + ": [" +
                                format_double(out.window.lo) + ", " + format_double(out.window.hi) +
                                "] with A = " + format_double(out.A));
    }
    const int n = std::max(spec.scan_points, 2);
    out.deviation = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        const double lambda = out.window.lo * std::pow(out.window.hi / out.window.lo, t);
        const double dev = window_deviation(f, lambda, sign, spec.window_radius);
        out.scanned_lambdas.push_back(lambda);
        out.scanned_deviations.push_back(dev);
        if (dev < out.deviation) {
            out.deviation = dev;
            out.lambda = lambda;
        }
    }
    return out;
}

}  // namespace lpflow
