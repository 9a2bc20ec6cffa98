#include "gestra/activation.hpp"

#include <cmath>
#include <numbers>

namespace gestra {

double activation(const GestureInstance& g, double t) {
    if (t < g.t_s || t >= g.t_e) return 0.0;
    const double rise_end = g.t_s + g.tau_on;
    const double fall_begin = g.t_e - g.tau_off;
    if (t < rise_end) {
        return 0.5 * (1.0 - std::cos(std::numbers::pi * (t - g.t_s) / g.tau_on));
    }
    if (t < fall_begin) return 1.0;
    return 0.5 * (1.0 + std::cos(std::numbers::pi * (t - fall_begin) / g.tau_off));
}

double activation_derivative(const GestureInstance& g, double t) {
    if (t < g.t_s || t >= g.t_e) return 0.0;
    const double rise_end = g.t_s + g.tau_on;
    const double fall_begin = g.t_e - g.tau_off;
    if (t < rise_end) {
        return 0.5 * std::numbers::pi / g.tau_on *
               std::sin(std::numbers::pi * (t - g.t_s) / g.tau_on);
    }
    if (t < fall_begin) return 0.0;
    return -0.5 * std::numbers::pi / g.tau_off *
           std::sin(std::numbers::pi * (t - fall_begin) / g.tau_off);
}

}  // namespace gestra
