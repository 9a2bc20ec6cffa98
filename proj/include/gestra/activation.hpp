#pragma once

#include "gestra/core.hpp"

namespace gestra {

/// Piecewise cosine activation level of a gesture instance at time t.
///
/// Five cases over the half-open window [t_s, t_e): zero outside, cosine
/// rise over [t_s, t_s + tau_on), unit plateau, cosine fall over
/// [t_e - tau_off, t_e). C1-continuous across all case boundaries.
double activation(const GestureInstance& g, double t);

/// Analytic first derivative of activation (per ms). Zero outside the
/// flanks and on the plateau.
double activation_derivative(const GestureInstance& g, double t);

}  // namespace gestra
