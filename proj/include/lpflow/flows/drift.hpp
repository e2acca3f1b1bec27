#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lpflow/core/csv.hpp"
#include "lpflow/flows/state.hpp"
#include "lpflow/sph/trace.hpp"

namespace lpflow {

enum class DriftVerdict { condition_ii_holds, violated };
const char* drift_verdict_name(DriftVerdict v);

struct DriftEntry {
    double t = 0.0;
    /// Classification of u(t) - u(0), and of b(t) - b(0) when b is tracked.
    ShClassification u;
    std::optional<ShClassification> b;
    std::vector<double> zero_u;  // mean of u(t) - u(0)
    std::vector<double> zero_b;
};

struct DriftReport {
    std::vector<DriftEntry> entries;
    /// Zero-mode displacement tolerance: max(1e-8 sup|u0|, 1e-14).
    double threshold = 0.0;
    double max_zero_u = 0.0;
    double max_zero_b = 0.0;
    DriftVerdict verdict_u = DriftVerdict::condition_ii_holds;
    std::optional<DriftVerdict> verdict_b;
    /// Violated if either field violates.
    DriftVerdict verdict = DriftVerdict::condition_ii_holds;
    std::vector<std::string> reasons;

    CsvTable to_csv() const;
};

/// Periodic-box ladder used for drift checks: the low-pass reaches the
/// first nonzero shell (|xi| = pi / L) from below and passes it.
std::vector<double> drift_ladder(const GridSpec& grid);

/// Classifies u(t) - u(0) (and b(t) - b(0) when `check_b` and the snapshots
/// carry b) at every snapshot. Needs at least three snapshots, the first at
/// t = 0; throws std::invalid_argument otherwise.
DriftReport drift_detector(const std::vector<Snapshot>& trajectory, const std::vector<double>& lambdas,
                           TraceMode mode = TraceMode::weak, bool check_b = true);

}  // namespace lpflow
