#include "lpflow/leray/projector.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "lpflow/core/kernels.hpp"
#include "lpflow/core/profile.hpp"
#include "lpflow/sph/trace.hpp"

namespace lpflow {

Field leray_project(const Field& u, ZeroModePolicy zero_mode) {
    if (u.rank() != Rank::vector) throw std::invalid_argument("leray_project needs a vector field");
    return apply_multiplier(u, symbols::leray(u.grid().dim(), zero_mode));
}

Spectrum leray_project(const Spectrum& u, ZeroModePolicy zero_mode) {
    return apply_multiplier(u, symbols::leray(u.grid.dim(), zero_mode));
}

Field divergence(const Field& u) {
    if (u.rank() != Rank::vector) throw std::invalid_argument("divergence needs a vector field");
    return apply_multiplier(u, symbols::divergence(u.grid().dim()));
}

Field gradient(const Field& g) {
    if (g.rank() != Rank::scalar) throw std::invalid_argument("gradient needs a scalar field");
    return apply_multiplier(g, symbols::gradient(g.grid().dim()));
}

const char* backend_name(PdivBackend b) { return b == PdivBackend::spectral ? "spectral" : "pakpark"; }

PdivBackend parse_backend(const std::string& name) {
    if (name == "spectral") return PdivBackend::spectral;
    if (name == "pakpark") return PdivBackend::pakpark;
    throw std::invalid_argument("unknown pdiv backend '" + name + "'");
}

namespace {

bool on_nyquist(const GridSpec& grid, std::size_t s) {
    const auto k = grid.wavenumbers(s);
    const auto half = static_cast<std::int64_t>(grid.points() / 2);
    for (int a = 0; a < grid.dim(); ++a) {
        if (std::llabs(k[static_cast<std::size_t>(a)]) == half) return true;
    }
    return false;
}

}  // namespace

Spectrum pdiv_spectral(const Spectrum& f) {
    const GridSpec& grid = f.grid;
    const int d = grid.dim();
    if (f.components != d * d) throw std::invalid_argument("pdiv needs a tensor field");
    const std::size_t ns = grid.spectral_nodes();
    Spectrum out(grid, d);
    kernels::for_each_mode(grid, [&](std::size_t s, const Vec3& xi) {
        if (s == 0 || on_nyquist(grid, s)) {
            for (int j = 0; j < d; ++j) out.coeffs[static_cast<std::size_t>(j) * ns + s] = 0.0;
            return;
        }
        std::array<Complex, 3> w{};
        for (int l = 0; l < d; ++l) {
            Complex acc = 0.0;
            for (int k = 0; k < d; ++k) {
                acc += Complex(0.0, xi[static_cast<std::size_t>(k)]) * f.coeffs[static_cast<std::size_t>(k * d + l) * ns + s];
            }
            w[static_cast<std::size_t>(l)] = acc;
        }
        const double k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        Complex dot = 0.0;
        for (int l = 0; l < d; ++l) dot += xi[static_cast<std::size_t>(l)] * w[static_cast<std::size_t>(l)];
        for (int j = 0; j < d; ++j) {
            out.coeffs[static_cast<std::size_t>(j) * ns + s] =
                w[static_cast<std::size_t>(j)] - xi[static_cast<std::size_t>(j)] * dot / k2;
        }
    });
    return out;
}

namespace {

Spectrum pdiv_pakpark(const Spectrum& f, const LerayKernelSet& set) {
    const GridSpec& grid = f.grid;
    const int d = grid.dim();
    if (!(set.grid == grid) && !(set.grid.dim() == grid.dim() && set.grid.points() == grid.points() &&
                                 set.grid.half_width() == grid.half_width())) {
        throw std::invalid_argument("Leray kernels were assembled on a different grid");
    }
    const std::size_t ns = grid.spectral_nodes();
    const Spectrum full = pdiv_spectral(f);
    Spectrum out(grid, d);
    // Gather kernel pointers once; Gamma is symmetric in its indices.
    std::array<const AlignedVector<Complex>*, 27> gam{};
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l) gam[static_cast<std::size_t>((j * 3 + k) * 3 + l)] = &set.symbol(j, k, l);

    kernels::for_each_mode(grid, [&](std::size_t s, const Vec3& xi) {
        const double low = chi(std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]));
        const bool nyq = on_nyquist(grid, s);
        for (int j = 0; j < d; ++j) {
            // low-frequency part: chi(D) sum_k d_k f_kj + sum_kl Gamma_jkl * f_kl
            Complex lowpart = 0.0;
            if (!nyq) {
                for (int k = 0; k < d; ++k) {
                    lowpart += low * Complex(0.0, xi[static_cast<std::size_t>(k)]) *
                               f.coeffs[static_cast<std::size_t>(k * d + j) * ns + s];
                }
            }
            for (int k = 0; k < d; ++k) {
                for (int l = 0; l < d; ++l) {
                    lowpart += (*gam[static_cast<std::size_t>((j * 3 + k) * 3 + l)])[s] *
                               f.coeffs[static_cast<std::size_t>(k * d + l) * ns + s];
                }
            }
            const std::size_t idx = static_cast<std::size_t>(j) * ns + s;
            out.coeffs[idx] = lowpart + (1.0 - low) * full.coeffs[idx];
        }
    });
    return out;
}

}  // namespace

Field pdiv(const Field& f, PdivBackend backend, const LerayKernelSet* kernels) {
    if (f.rank() != Rank::tensor) throw std::invalid_argument("pdiv needs a tensor field");
    const auto spec = f.spectrum();
    if (backend == PdivBackend::spectral) return Field::from_spectrum(pdiv_spectral(*spec), Rank::vector);
    if (kernels == nullptr) throw std::invalid_argument("pakpark backend needs assembled Leray kernels");
    return Field::from_spectrum(pdiv_pakpark(*spec, *kernels), Rank::vector);
}

DecayReport pdiv_sph_certificate(const Field& f, const std::vector<double>& lambdas, bool whole_space) {
    const Field w = pdiv(f, PdivBackend::spectral);
    DecayReport rep = lowpass_trace(w, lambdas, TraceMode::weak, whole_space);
    rep.label = "pdiv-certificate";
    return rep;
}

}  // namespace lpflow
