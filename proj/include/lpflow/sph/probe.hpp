#pragma once

#include <vector>

#include "lpflow/core/csv.hpp"
#include "lpflow/core/multiplier.hpp"

namespace lpflow {

struct ProbeReport {
    std::vector<double> dilations;
    std::vector<double> values;
    /// values.back() / values.front()
    double growth_ratio = 0.0;
    bool monotone = false;
    /// (1 + ||psi||_1) ||f||_1: bounds every value when sigma = 1, since
    /// (Id - chi(t D)) f = f - psi_t * f.
    double control_bound = 0.0;

    CsvTable to_csv() const;
};

/// ||(Id - chi(D)) sigma(D) f_t||_{L^1(window)} for the unit-mass dilates
/// f_t(x) = t^d f(t x) of a Gaussian f of width `seed_width`.
///
/// By scaling this equals ||(Id - chi(t D)) sigma(D) f||_{L^1} on the window
/// of radius t R, and the dilate is evaluated that way so that f never has
/// to be resolved below the grid spacing. Throws if t * R exceeds L/2 for
/// the largest t.
ProbeReport l1_unboundedness_probe(const GridSpec& grid, const MultiplierSymbol& symbol,
                                   const std::vector<double>& dilations, double seed_width = 2.0,
                                   double window_radius = 0.0);

}  // namespace lpflow
