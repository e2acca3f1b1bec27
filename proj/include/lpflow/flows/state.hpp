#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "lpflow/core/field.hpp"

namespace lpflow {

struct Snapshot {
    double t = 0.0;
    Field u;
    std::optional<Field> b;
};

/// Velocity (and optionally magnetic) field being time-stepped on a periodic
/// box. Snapshots are taken at t = 0 and every `snapshot_every` steps.
struct FlowState {
    GridSpec grid;
    double t = 0.0;
    Field u;
    std::optional<Field> b;
    /// Elsasser pair, held after an Elsasser step alongside u and b.
    std::optional<Field> alpha;
    std::optional<Field> beta;
    bool dealias = true;
    double nu = 0.0;
    int steps = 0;
    int snapshot_every = 10;
    std::vector<Snapshot> snapshots;
    /// sup |div u| and sup |div b| after the most recent step.
    double max_div_u = 0.0;
    double max_div_b = 0.0;

    static FlowState make(Field u0, std::optional<Field> b0 = std::nullopt, double nu = 0.0,
                          bool dealias = true);

    void record();
    /// Records a snapshot when the step count hits the cadence.
    void after_step();
    /// 1/2 int |u|^2 over the box.
    double kinetic_energy() const;
    double magnetic_energy() const;
};

/// Spatially constant force g(t) (the gradient of a degree-one pressure
/// polynomial) entering the momentum equation as -g(t).
struct DriveSpec {
    enum class Target { momentum, elsasser_pressure_split };
    Target target = Target::momentum;
    std::function<Vec3(double)> g;
    /// Optional exact primitive G(t) = int_0^t g. When present the zero mode
    /// is set from it at every stage, which removes the quadrature error.
    std::function<Vec3(double)> impulse;

    static DriveSpec none();
    bool active() const { return static_cast<bool>(g); }
};

/// alpha = u + b, beta = u - b
std::pair<Field, Field> to_elsasser(const Field& u, const Field& b);
/// u = (alpha + beta) / 2, b = (alpha - beta) / 2
std::pair<Field, Field> from_elsasser(const Field& alpha, const Field& beta);

}  // namespace lpflow
