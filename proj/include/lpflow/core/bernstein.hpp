#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "lpflow/core/field.hpp"
#include "lpflow/core/multiplier.hpp"
#include "lpflow/core/partition.hpp"

namespace lpflow {

/// Spectral support claims: |xi| <= lambda R, or lambda r1 <= |xi| <= lambda r2.
struct BallSupport {
    double radius = 1.0;
};
struct AnnulusSupport {
    double inner = 0.75;
    double outer = 2.0;
};
using SpectralSupport = std::variant<BallSupport, AnnulusSupport>;

struct BernsteinReport {
    /// ||grad^k u||_q / (lambda^(k + d(1/p - 1/q)) ||u||_p)
    double ball_ratio = 0.0;
    /// For annulus support: ||grad^k u||_p / (lambda^k ||u||_p), which the
    /// inequalities bound below by C^-(k+1) and above by C^(k+1).
    std::optional<double> annulus_ratio;
    /// Fraction of spectral L^2 mass outside the claimed support.
    double outside_mass = 0.0;
};

/// Magnitude of all k-th order partial derivatives, as a field with d^k components.
Field derivative_tensor(const Field& scalar, int k);

/// Norms are taken on the grid window. Throws std::domain_error if more than
/// 1e-10 of the spectral mass lies outside the claimed support.
BernsteinReport bernstein_check(const Field& u, int k, double p, double q, double lambda,
                                const SpectralSupport& support);

struct BlockBoundReport {
    std::optional<double> ratio;
    bool skipped = false;  // denominator block vanished
};

/// ||block_m sigma(D) f||_p / (2^(m deg) ||block_m f||_p) on the window.
BlockBoundReport multiplier_block_bound(const Field& f, const MultiplierSymbol& symbol,
                                        const DyadicPartition& partition, int m, double p);

}  // namespace lpflow
