#include "lpflow/core/bernstein.hpp"

#include <cmath>
#include <stdexcept>

#include "lpflow/core/fft.hpp"
#include "lpflow/core/kernels.hpp"
#include "lpflow/core/norms.hpp"

namespace lpflow {

Field derivative_tensor(const Field& scalar, int k) {
    if (scalar.components() != 1) throw std::invalid_argument("derivative_tensor needs a scalar field");
    const GridSpec& grid = scalar.grid();
    const int d = grid.dim();
    std::vector<Spectrum> level{spectrum_of(scalar)};
    for (int order = 0; order < k; ++order) {
        std::vector<Spectrum> next;
        for (const auto& s : level) {
            for (int j = 0; j < d; ++j) next.push_back(apply_multiplier(s, symbols::derivative(j)));
        }
        level = std::move(next);
    }
    const int comps = static_cast<int>(level.size());
    Field out;
    if (comps == 1) {
        out = Field::from_spectrum(level[0], Rank::scalar);
    } else {
        // d^k components do not match a named rank beyond k = 2; pack them as
        // consecutive scalars and keep only the magnitude.
        Field mag(grid, Rank::scalar);
        auto m = mag.samples();
        AlignedVector<double> tmp(grid.nodes());
        for (const auto& s : level) {
            fft::inverse(grid, s.component(0), tmp);
            kernels::parallel_for(tmp.size(), [&](std::size_t i) { m[i] += tmp[i] * tmp[i]; });
        }
        kernels::parallel_for(m.size(), [&](std::size_t i) { m[i] = std::sqrt(m[i]); });
        out = std::move(mag);
    }
    return out;
}

namespace {

double outside_fraction(const Spectrum& s, double lambda, const SpectralSupport& support) {
    double lo = 0.0, hi = 0.0;
    if (const auto* b = std::get_if<BallSupport>(&support)) {
        hi = lambda * b->radius;
    } else {
        const auto& a = std::get<AnnulusSupport>(support);
        lo = lambda * a.inner;
        hi = lambda * a.outer;
    }
    const GridSpec& grid = s.grid;
    const std::size_t nh = grid.half_points();
    double total = 0.0, outside = 0.0;
    for (std::size_t i = 0; i < grid.spectral_nodes(); ++i) {
        const Vec3 xi = grid.frequency(i);
        const double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
        // interior half-spectrum columns stand for two modes
        const std::size_t col = i % nh;
        const double w = (col == 0 || col == nh - 1) ? 1.0 : 2.0;
        const double e = w * std::norm(s.coeffs[i]);
        total += e;
        if (r < lo * (1.0 - 1e-12) || r > hi * (1.0 + 1e-12)) outside += e;
    }
    return total > 0.0 ? outside / total : 0.0;
}

}  // namespace

BernsteinReport bernstein_check(const Field& u, int k, double p, double q, double lambda,
                                const SpectralSupport& support) {
    if (u.components() != 1) throw std::invalid_argument("bernstein_check needs a scalar field");
    if (k < 0 || !(lambda > 0.0)) throw std::invalid_argument("bernstein_check needs k >= 0, lambda > 0");
    BernsteinReport rep;
    rep.outside_mass = outside_fraction(spectrum_of(u), lambda, support);
    if (rep.outside_mass > 1e-10) {
        throw std::domain_error("field spectrum leaves the claimed support");
    }
    const int d = u.grid().dim();
    const Field grad = derivative_tensor(u, k);
    const double up = lp_norm(u, p);
    if (up == 0.0) return rep;
    const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
    rep.ball_ratio = lp_norm(grad, q) / (std::pow(lambda, k + d * (inv_p - inv_q)) * up);
    if (std::holds_alternative<AnnulusSupport>(support)) {
        rep.annulus_ratio = lp_norm(grad, p) / (std::pow(lambda, k) * up);
    }
    return rep;
}

BlockBoundReport multiplier_block_bound(const Field& f, const MultiplierSymbol& symbol,
                                        const DyadicPartition& partition, int m, double p) {
    if (!symbol.degree) throw std::invalid_argument("multiplier_block_bound needs a homogeneous symbol");
    BlockBoundReport rep;
    const Spectrum fs = spectrum_of(f);
    const Spectrum block = dyadic_block(fs, partition, m, true);
    // A block holding only rounding noise (amplitude below 1e-12 of the
    // field) counts as zero; its ratio would be noise over noise.
    double block_mass = 0.0, total_mass = 0.0;
    for (std::size_t i = 0; i < fs.coeffs.size(); ++i) {
        block_mass += std::norm(block.coeffs[i]);
        total_mass += std::norm(fs.coeffs[i]);
    }
    const Field block_f = Field::from_spectrum(block, f.rank());
    const double den = lp_norm(block_f, p) * std::ldexp(1.0, m * *symbol.degree);
    if (den == 0.0 || block_mass <= 1e-24 * total_mass) {
        rep.skipped = true;
        return rep;
    }
    const Spectrum sb = apply_multiplier(block, symbol);
    const Field num = Field::from_spectrum(sb);
    rep.ratio = lp_norm(num, p) / den;
    return rep;
}

}  // namespace lpflow
