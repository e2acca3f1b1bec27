#pragma once

#include <vector>

#include "lpflow/core/csv.hpp"
#include "lpflow/core/field.hpp"
#include "lpflow/core/norms.hpp"
#include "lpflow/core/partition.hpp"

namespace lpflow {

struct BesovParams {
    double s = 0.0;
    double p = kInf;
    double r = kInf;
    bool homogeneous = false;
    Region region = Region::window;
};

/// s < d/p, or s = d/p with r = 1: the homogeneous space is then a space of
/// distributions rather than a quotient.
bool supercritical(const BesovParams& params, int dim);

struct BesovContribution {
    int m = 0;
    double block_norm = 0.0;
    double weighted = 0.0;  // 2^(m s) * block_norm
};

struct BesovNormReport {
    BesovParams params;
    std::vector<BesovContribution> contributions;
    double total = 0.0;
    /// The two highest representable blocks hold more than 1% of the l^r mass.
    bool truncated = false;
    /// Homogeneous norm of a field with nonzero mean: the mean was dropped.
    bool zero_mode_excluded = false;

    CsvTable to_csv() const;
};

/// l^r aggregate of a sequence; r = kInf gives the max.
double lr_aggregate(const std::vector<double>& values, double r);

BesovNormReport besov_norm(const Field& field, const DyadicPartition& partition,
                           const BesovParams& params);

struct Reconstruction {
    Field reconstructed;
    Field residual;
};

/// Sum of all representable homogeneous blocks, and what it misses. The
/// residual is spectrally supported on the zero mode: the box analogue of
/// the polynomial left over by a homogeneous decomposition.
Reconstruction homogeneous_reconstruct(const Field& field, const DyadicPartition& partition);

}  // namespace lpflow
