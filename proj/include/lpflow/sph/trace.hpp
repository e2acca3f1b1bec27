#pragma once

#include <string>
#include <vector>

#include "lpflow/core/field.hpp"
#include "lpflow/leray/decay.hpp"

namespace lpflow {

enum class TraceMode { weak, strong };
const char* mode_name(TraceMode mode);
TraceMode parse_mode(const std::string& name);

/// Five unit-mass Gaussians of width w centred at -2w..2w along the main
/// diagonal of the window. The width follows the smallest lambda of the
/// ladder (w = max(lambda_min / 4, 2h)) so the pairings resolve the low-pass
/// scale the ladder probes.
struct DualFamily {
    double width = 1.0;
    std::vector<Vec3> centres;
    std::vector<Spectrum> spectra;  // unitary spectra of the test functions
    std::vector<double> l1_norms;   // box quadrature of |phi_i|

    static DualFamily standard(const GridSpec& grid, double lambda_min);
};

/// Low-pass trace chi(lambda D) f over the ladder.
///  weak:   value = max_i |<chi(lambda D) f, phi_i>| (Euclidean over components),
///          signed pairings kept in report.pairings.
///  strong: value = sup over the window of |chi(lambda D) f|.
/// `whole_space` applies the lambda <= L/8 rule; periodic-box diagnostics
/// switch it off.
DecayReport lowpass_trace(const Field& f, const std::vector<double>& lambdas, TraceMode mode,
                          bool whole_space = true);
DecayReport lowpass_trace(const Field& f, const std::vector<double>& lambdas, TraceMode mode,
                          const DualFamily& family, bool whole_space = true);

enum class Verdict { member, non_member, inconclusive };
const char* verdict_name(Verdict v);

struct ShClassification {
    Verdict verdict = Verdict::inconclusive;
    TraceMode mode = TraceMode::weak;
    DecayReport evidence;
    /// Zero-mode content per lambda: what a non-decaying trace accumulates to.
    std::vector<double> accumulation;
};

/// Thresholds, relative to the largest trace value ("reference"):
///  member       slope < -0.3 and last value < 0.05 reference
///  non_member   last value > 0.5 reference
///  inconclusive otherwise.
/// A trace whose reference is below kTraceFloor is numerically zero: member.
inline constexpr double kMemberSlope = -0.3;
inline constexpr double kMemberFraction = 0.05;
inline constexpr double kNonMemberFraction = 0.5;
inline constexpr double kTraceFloor = 1e-12;

ShClassification classify_sph(const DecayReport& report, TraceMode mode);

}  // namespace lpflow
