#pragma once

#include <functional>
#include <stdexcept>

#include "lpflow/flows/state.hpp"

namespace lpflow {

class CflViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonFiniteState : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Largest dt allowed by the advective bound 0.5 h / sup|u| (infinite for u = 0).
double cfl_limit(const FlowState& state);

// All steppers advance `state` by one fourth-order Runge-Kutta step in
// Fourier space (Lawson integrating factor for viscous terms), with the 2/3
// dealiasing mask on quadratic terms when state.dealias is set. Velocity and
// Elsasser fields are Leray-projected after the step (zero mode kept).
// They throw CflViolation when dt exceeds cfl_limit and NonFiniteState when
// the result is not finite.

/// u' = -P D(u (x) u)
FlowState& step_projected_euler(FlowState& state, double dt);
/// u' = -P D(u (x) u) - g(t), g acting on the zero mode only.
FlowState& step_euler_with_drive(FlowState& state, double dt, const DriveSpec& drive);
/// u' = -P D(u (x) u) + nu Laplace u (- g(t) if a drive is given)
FlowState& step_projected_ns(FlowState& state, double dt, double nu, const DriveSpec& drive = DriveSpec::none());
/// alpha' = -P D(beta (x) alpha) + c/2,  beta' = -P D(alpha (x) beta) - c/2.
/// The split enters the induction equation only: b' gains +c/2, u' nothing.
FlowState& step_elsasser(FlowState& state, double dt, const std::function<Vec3(double)>& c = {});
/// u' = -P D(u (x) u - b (x) b),  b' = -D(u (x) b - b (x) u) (not projected)
FlowState& step_projected_mhd(FlowState& state, double dt);
/// Viscous momentum, ideal induction; optional momentum drive.
FlowState& step_nonresistive_mhd(FlowState& state, double dt, double nu,
                                 const DriveSpec& drive = DriveSpec::none());

/// sup |div v| computed spectrally.
double max_divergence(const Field& v);

}  // namespace lpflow
