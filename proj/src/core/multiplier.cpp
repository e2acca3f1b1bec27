#include "lpflow/core/multiplier.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "lpflow/core/kernels.hpp"
#include "lpflow/core/profile.hpp"

namespace lpflow {
namespace {

double norm2(const Vec3& xi) { return xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]; }

constexpr int kMaxEntries = 81;

}  // namespace

MultiplierSymbol scalar_symbol(std::string name, std::function<Complex(const Vec3&)> f,
                               std::optional<int> degree, ZeroModePolicy zero_mode, Parity parity) {
    MultiplierSymbol s;
    s.name = std::move(name);
    s.eval = [f = std::move(f)](const Vec3& xi, Complex* out) { *out = f(xi); };
    s.degree = degree;
    s.zero_mode = zero_mode;
    s.parity = parity;
    return s;
}

namespace symbols {

MultiplierSymbol identity() {
    return scalar_symbol("identity", [](const Vec3&) { return Complex(1.0); }, 0,
                         ZeroModePolicy::identity);
}

MultiplierSymbol derivative(int j) {
    return scalar_symbol(
        "d" + std::to_string(j), [j](const Vec3& xi) { return Complex(0.0, xi[static_cast<std::size_t>(j)]); },
        1, ZeroModePolicy::zero, Parity::odd);
}

MultiplierSymbol laplacian() {
    return scalar_symbol("laplacian", [](const Vec3& xi) { return Complex(-norm2(xi)); }, 2,
                         ZeroModePolicy::zero);
}

MultiplierSymbol riesz_pair(int a, int b) {
    return scalar_symbol(
        "riesz" + std::to_string(a) + std::to_string(b),
        [a, b](const Vec3& xi) {
            return Complex(xi[static_cast<std::size_t>(a)] * xi[static_cast<std::size_t>(b)] / norm2(xi));
        },
        0, ZeroModePolicy::zero);
}

MultiplierSymbol leray(int dim, ZeroModePolicy zero_mode) {
    MultiplierSymbol s;
    s.name = "leray";
    s.rows = s.cols = dim;
    s.degree = 0;
    s.zero_mode = zero_mode;
    s.eval = [dim](const Vec3& xi, Complex* out) {
        const double n2 = norm2(xi);
        for (int a = 0; a < dim; ++a) {
            for (int b = 0; b < dim; ++b) {
                const double delta = a == b ? 1.0 : 0.0;
                out[a * dim + b] = delta - xi[static_cast<std::size_t>(a)] * xi[static_cast<std::size_t>(b)] / n2;
            }
        }
    };
    return s;
}

MultiplierSymbol divergence(int dim) {
    MultiplierSymbol s;
    s.name = "divergence";
    s.rows = 1;
    s.cols = dim;
    s.degree = 1;
    s.parity = Parity::odd;
    s.eval = [dim](const Vec3& xi, Complex* out) {
        for (int k = 0; k < dim; ++k) out[k] = Complex(0.0, xi[static_cast<std::size_t>(k)]);
    };
    return s;
}

MultiplierSymbol gradient(int dim) {
    MultiplierSymbol s = divergence(dim);
    s.name = "gradient";
    s.rows = dim;
    s.cols = 1;
    return s;
}

MultiplierSymbol tensor_divergence(int dim) {
    MultiplierSymbol s;
    s.name = "tensor-divergence";
    s.rows = dim;
    s.cols = dim * dim;
    s.degree = 1;
    s.parity = Parity::odd;
    s.eval = [dim](const Vec3& xi, Complex* out) {
        for (int l = 0; l < dim; ++l) {
            for (int c = 0; c < dim * dim; ++c) out[l * dim * dim + c] = 0.0;
            for (int k = 0; k < dim; ++k) {
                out[l * dim * dim + k * dim + l] = Complex(0.0, xi[static_cast<std::size_t>(k)]);
            }
        }
    };
    return s;
}

MultiplierSymbol lowpass(double lambda) {
    return scalar_symbol(
        "lowpass", [lambda](const Vec3& xi) { return Complex(chi(lambda * std::sqrt(norm2(xi)))); },
        std::nullopt, ZeroModePolicy::identity);
}

}  // namespace symbols

double homogeneity_defect(const MultiplierSymbol& symbol, const GridSpec& grid) {
    if (!symbol.degree) throw std::invalid_argument("symbol has no homogeneity degree");
    const double factor = std::ldexp(1.0, *symbol.degree);
    const int entries = symbol.rows * symbol.cols;
    double worst = 0.0;
    for (std::size_t s = 1; s < grid.spectral_nodes(); ++s) {
        const Vec3 xi = grid.frequency(s);
        const Vec3 xi2{2.0 * xi[0], 2.0 * xi[1], 2.0 * xi[2]};
        std::array<Complex, kMaxEntries> a{}, b{};
        symbol.eval(xi, a.data());
        symbol.eval(xi2, b.data());
        for (int e = 0; e < entries; ++e) {
            const double scale = std::max(1.0, std::abs(factor * a[static_cast<std::size_t>(e)]));
            worst = std::max(worst, std::abs(b[static_cast<std::size_t>(e)] - factor * a[static_cast<std::size_t>(e)]) / scale);
        }
    }
    return worst;
}

Spectrum apply_multiplier(const Spectrum& in, const MultiplierSymbol& symbol) {
    const GridSpec& grid = in.grid;
    const int entries = symbol.rows * symbol.cols;
    if (entries > kMaxEntries) throw std::invalid_argument("matrix symbol too large");
    const bool scalar = symbol.is_scalar();
    if (!scalar && in.components != symbol.cols) {
        throw std::invalid_argument("matrix symbol " + symbol.name + " expects " +
                                    std::to_string(symbol.cols) + " components, got " +
                                    std::to_string(in.components));
    }
    const int out_comps = scalar ? in.components : symbol.rows;
    Spectrum out(grid, out_comps);
    const std::size_t ns = grid.spectral_nodes();
    const bool odd = symbol.parity == Parity::odd;
    const auto half = static_cast<std::int64_t>(grid.points() / 2);
    int bad = 0;

    kernels::for_each_mode(grid, [&](std::size_t s, const Vec3& xi) {
        if (s == 0) return;
        if (odd) {
            const auto k = grid.wavenumbers(s);
            bool nyq = false;
            for (int a = 0; a < grid.dim(); ++a) nyq = nyq || std::llabs(k[static_cast<std::size_t>(a)]) == half;
            if (nyq) {
                for (int r = 0; r < out_comps; ++r) out.coeffs[static_cast<std::size_t>(r) * ns + s] = 0.0;
                return;
            }
        }
        std::array<Complex, kMaxEntries> m;
        symbol.eval(xi, m.data());
        for (int e = 0; e < entries; ++e) {
            if (!std::isfinite(m[static_cast<std::size_t>(e)].real()) || !std::isfinite(m[static_cast<std::size_t>(e)].imag())) {
#pragma omp atomic write
                bad = 1;
            }
        }
        if (scalar) {
            for (int c = 0; c < out_comps; ++c) {
                const std::size_t idx = static_cast<std::size_t>(c) * ns + s;
                out.coeffs[idx] = m[0] * in.coeffs[idx];
            }
        } else {
            for (int r = 0; r < symbol.rows; ++r) {
                Complex acc = 0.0;
                for (int c = 0; c < symbol.cols; ++c) {
                    acc += m[static_cast<std::size_t>(r * symbol.cols + c)] * in.coeffs[static_cast<std::size_t>(c) * ns + s];
                }
                out.coeffs[static_cast<std::size_t>(r) * ns + s] = acc;
            }
        }
    });
    if (bad) throw std::domain_error("symbol " + symbol.name + " is not finite at a nonzero frequency");

    switch (symbol.zero_mode) {
        case ZeroModePolicy::zero:
            for (int r = 0; r < out_comps; ++r) out.coeffs[static_cast<std::size_t>(r) * ns] = 0.0;
            break;
        case ZeroModePolicy::identity:
        case ZeroModePolicy::passthrough:
            for (int r = 0; r < out_comps; ++r) {
                out.coeffs[static_cast<std::size_t>(r) * ns] =
                    r < in.components ? in.coeffs[static_cast<std::size_t>(r) * ns] : Complex(0.0);
            }
            break;
    }
    return out;
}

Field apply_multiplier(const Field& field, const MultiplierSymbol& symbol) {
    const auto spec = field.spectrum();
    if (!symbol.is_scalar() && symbol.rows != symbol.cols && symbol.zero_mode != ZeroModePolicy::zero) {
        throw std::invalid_argument("non-square symbol " + symbol.name + " needs zero-mode policy zero");
    }
    Spectrum out = apply_multiplier(*spec, symbol);
    const Rank rank = symbol.is_scalar() ? field.rank() : rank_for_components(out.components, field.grid().dim());
    Field result = Field::from_spectrum(out, rank);
    for (const auto& note : field.provenance()) result.add_provenance(note);
    if (symbol.zero_mode == ZeroModePolicy::passthrough && !result.has_provenance(kZeroModePassthrough)) {
        result.add_provenance(kZeroModePassthrough);
    }
    return result;
}

Spectrum apply_radial(const Spectrum& in, const std::function<double(double)>& g) {
    Spectrum out(in.grid, in.components);
    const std::size_t ns = in.grid.spectral_nodes();
    kernels::for_each_mode(in.grid, [&](std::size_t s, const Vec3& xi) {
        const double w = g(std::sqrt(norm2(xi)));
        for (int c = 0; c < in.components; ++c) {
            const std::size_t idx = static_cast<std::size_t>(c) * ns + s;
            out.coeffs[idx] = w * in.coeffs[idx];
        }
    });
    return out;
}

Field apply_radial(const Field& field, const std::function<double(double)>& g) {
    const auto spec = field.spectrum();
    Field result = Field::from_spectrum(apply_radial(*spec, g), field.rank());
    for (const auto& note : field.provenance()) result.add_provenance(note);
    return result;
}

}  // namespace lpflow
