#pragma once

#include <optional>
#include <vector>

#include "lpflow/core/csv.hpp"
#include "lpflow/core/field.hpp"

namespace lpflow {

/// One-dimensional field f = sum_m (-1)^m 1_{C_m} over the annuli
/// C_m = {2^(m^2) <= |x| < 2^((m+1)^2)}, sampled on the box [-L, L).
struct CounterexampleSpec {
    /// Largest annulus index whose low-pass window is probed.
    int max_index = 3;
    double epsilon = 0.1;
    /// Radius of the set |x| <= R on which chi(lambda D) f is compared with +-1.
    double window_radius = 4.0;
    double half_width = 1048576.0;     // 2^20
    std::size_t points = 2097152;      // 2^21, h = 1
    /// Number of lambdas scanned inside each window.
    int scan_points = 33;
};

/// Smallest A with the L^1 mass of psi outside [-A, A] at most epsilon,
/// measured on a fine auxiliary 1D grid (h = 1/64).
double kernel_mass_radius(double epsilon);

struct LambdaWindow {
    double lo = 0.0;
    double hi = 0.0;
    bool empty() const { return !(lo <= hi); }
};

/// [2^(M^2) / epsilon, (R + 2^((M+1)^2)) / A] for d = 1.
LambdaWindow lambda_window(const CounterexampleSpec& spec, int M, double A);

/// Throws std::invalid_argument when 2^((max_index+1)^2) > L/2.
Field build_annuli_counterexample(const CounterexampleSpec& spec);

struct OscillationResult {
    int sign = 1;
    int M = 0;
    double A = 0.0;
    LambdaWindow window;
    double lambda = 0.0;
    /// sup_{|x| <= R} |chi(lambda D) f - sign| at `lambda`.
    double deviation = 0.0;
    std::vector<double> scanned_lambdas;
    std::vector<double> scanned_deviations;
};

/// Scans the window of index M (default: the largest M <= max_index with
/// (-1)^M = sign and a nonempty window) and returns the best lambda.
/// Throws std::domain_error when the chosen window is empty.
OscillationResult counterexample_oscillation(const Field& f, const CounterexampleSpec& spec, int sign,
                                             std::optional<int> M = std::nullopt);

/// sup_{|x| <= R} |chi(lambda D) f - sign|.
double window_deviation(const Field& f, double lambda, double sign, double radius);

}  // namespace lpflow
