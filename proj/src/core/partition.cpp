#include "lpflow/core/partition.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lpflow/core/fft.hpp"
#include "lpflow/core/kernels.hpp"
#include "lpflow/core/multiplier.hpp"
#include "lpflow/core/profile.hpp"

namespace lpflow {

double corner_frequency(const GridSpec& grid) {
    return std::sqrt(static_cast<double>(grid.dim())) * grid.nyquist();
}

double DyadicPartition::homogeneous_symbol(int m, double r) const { return phi(std::ldexp(r, -m)); }

double DyadicPartition::block_symbol(int m, double r) const {
    if (m == -1) return chi(r);
    return phi(std::ldexp(r, -(m + 1)));
}

DyadicPartition build_partition(const GridSpec& grid) {
    DyadicPartition p;
    p.grid = grid;
    p.m_min = static_cast<int>(std::floor(std::log2(grid.dxi() / kChiSupport))) + 1;
    p.m_max = static_cast<int>(std::ceil(std::log2(corner_frequency(grid) / kChiFlat)));
    if (p.m_max < p.m_min + 3) {
        throw std::invalid_argument("grid too coarse: homogeneous blocks " + std::to_string(p.m_min) +
                                    ".." + std::to_string(p.m_max));
    }
    p.top = std::max(p.m_max - 1, -1);

    AlignedVector<Complex> ft(grid.spectral_nodes());
    kernels::for_each_mode(grid, [&](std::size_t s, const Vec3& xi) {
        ft[s] = chi(std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]));
    });
    const auto samples = fft::samples_from_transform(grid, ft);
    p.psi = Field(grid, Rank::scalar);
    auto s = p.psi.samples();
    std::copy(samples.begin(), samples.end(), s.begin());
    return p;
}

Spectrum dyadic_block(const Spectrum& spectrum, const DyadicPartition& partition, int m,
                      bool homogeneous) {
    if (homogeneous) {
        if (m < partition.m_min || m > partition.m_max) {
            throw std::out_of_range("homogeneous block " + std::to_string(m) + " outside " +
                                    std::to_string(partition.m_min) + ".." +
                                    std::to_string(partition.m_max));
        }
        Spectrum out = apply_radial(spectrum, [&](double r) { return partition.homogeneous_symbol(m, r); });
        for (int c = 0; c < out.components; ++c) out.component(c)[0] = 0.0;
        return out;
    }
    if (m < -1) throw std::out_of_range("non-homogeneous block index must be >= -1");
    return apply_radial(spectrum, [&](double r) { return partition.block_symbol(m, r); });
}

Field dyadic_block(const Field& field, const DyadicPartition& partition, int m, bool homogeneous) {
    const auto spec = field.spectrum();
    return Field::from_spectrum(dyadic_block(*spec, partition, m, homogeneous), field.rank());
}

}  // namespace lpflow
