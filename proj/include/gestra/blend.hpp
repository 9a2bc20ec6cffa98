#pragma once

#include "gestra/core.hpp"

#include <span>

namespace gestra {

/// Speaker-neutral fallback values per control parameter, plus the guard
/// threshold below which the blend denominator is treated as zero.
struct NeutralConfig {
    TargetMap targets;
    double epsilon = 1e-6;

    /// Schwa-like tract, open glottis, lowered velum, zero closures.
    static NeutralConfig default_config();
};

/// Single-gesture displacement: activation(g, t) * target.
/// Throws std::invalid_argument if g does not govern p.
double displacement(const GestureInstance& g, ControlParamId p, double t);

/// Normalized pull-weighted blend of all governing instances at time t.
/// Falls back to the neutral target when the weight sum is below epsilon.
double blend_param(std::span<const GestureInstance> active, ControlParamId p,
                   double t, const NeutralConfig& neutral);

/// Shape annotation at time t: the lateral shape of the consonantal-tier
/// instance with the largest pull-weighted activation, or normal.
LateralShape lateral_shape_at(const GestureScore& score, double t);

/// Samples all nine control parameters plus the lateral-shape channel on
/// the grid t_i = window.begin + i*dt. Throws std::invalid_argument on
/// non-positive dt and std::runtime_error on an invalid score.
TrajectorySet sample_trajectories(const GestureScore& score, double dt,
                                  const NeutralConfig& neutral);

}  // namespace gestra
