#pragma once

#include "lpflow/core/field.hpp"

namespace lpflow {

/// Littlewood-Paley blocks on a grid.
///
/// Homogeneous block m has symbol phi(2^-m |xi|). Non-homogeneous blocks are
/// chi(|xi|) for m = -1 and phi(2^-(m+1) |xi|) for m >= 0, so that
/// chi + sum_{m=0..M} telescopes to chi(2^-(M+1) |xi|).
struct DyadicPartition {
    GridSpec grid;
    /// Representable homogeneous range: sum_{m_min..m_max} phi(2^-m xi) = 1 at
    /// every grid xi != 0.
    int m_min = 0;
    int m_max = 0;
    /// Top non-homogeneous index: chi(2^-(top+1) xi) = 1 on the whole grid.
    int top = 0;
    /// Kernel whose Fourier transform is chi.
    Field psi;

    double homogeneous_symbol(int m, double r) const;
    double block_symbol(int m, double r) const;
};

/// Throws std::invalid_argument when the grid represents fewer than four
/// homogeneous blocks.
DyadicPartition build_partition(const GridSpec& grid);

Field dyadic_block(const Field& field, const DyadicPartition& partition, int m, bool homogeneous);
Spectrum dyadic_block(const Spectrum& spectrum, const DyadicPartition& partition, int m,
                      bool homogeneous);

/// Frequency of the farthest corner of the spectral box, sqrt(d) pi / h.
double corner_frequency(const GridSpec& grid);

}  // namespace lpflow
