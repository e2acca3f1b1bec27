#pragma once

#include <string>
#include <vector>

#include "lpflow/core/csv.hpp"
#include "lpflow/core/grid.hpp"
#include "lpflow/leray/gamma.hpp"

namespace lpflow {

/// Geometric ladder start * factor^i, i < count.
struct LambdaLadder {
    double start = 1.0;
    double factor = 2.0;
    int count = 5;

    std::vector<double> values() const;
    /// "start:factor:count"
    static LambdaLadder parse(const std::string& text);
    std::string str() const;
};

/// Validates a ladder: strictly increasing, at least four points, and, when
/// emulating R^d, max lambda <= L/8 so the low-pass kernel fits the window.
void check_ladder(const std::vector<double>& lambdas, const GridSpec& grid, bool whole_space);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

/// Least-squares fit of log(values) against log(lambdas). Values are floored
/// at `floor` so exact zeros do not poison the logarithm.
LineFit fit_loglog(const std::vector<double>& lambdas, const std::vector<double>& values,
                   double floor = 1e-300);

struct DecayReport {
    std::string label;
    std::vector<double> lambdas;
    std::vector<double> values;
    double slope = 0.0;
    /// Half-width of the slope band, two standard errors.
    double slope_band = 0.0;
    double intercept = 0.0;
    /// max/min of lambda q(lambda) / log(lambda) over the ladder (lambda > 1 only).
    double log_ratio = 0.0;
    /// log_ratio < 3: the decay is O(log(lambda)/lambda) across the ladder.
    bool log_corrected_bounded = false;
    /// Fit dropped the two largest lambdas because the tail was unreliable.
    bool truncated = false;
    double window_radius = 0.0;
    bool whole_box = false;
    /// Optional signed measurements behind each value (weak pairings per
    /// test function and component), one row per lambda.
    std::vector<std::vector<double>> pairings;
    /// Zero-mode content (box mean) of the measured field per lambda.
    std::vector<double> zero_mode;

    CsvTable to_csv() const;
};

/// Builds a report and its fit. With `truncated` and at least six points the
/// two largest lambdas are left out of the fit.
DecayReport make_decay_report(std::string label, std::vector<double> lambdas, std::vector<double> values,
                              double window_radius, bool whole_box, bool truncated = false);

/// ||chi(lambda D) Gamma||_1 over the whole box for each lambda.
DecayReport gamma_lowfreq_decay(const LerayKernel& kernel, const std::vector<double>& lambdas);

}  // namespace lpflow
