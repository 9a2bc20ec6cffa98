#include "gestra/blend.hpp"

#include "gestra/activation.hpp"

#include <cmath>
#include <stdexcept>

namespace gestra {

NeutralConfig NeutralConfig::default_config() {
    NeutralConfig cfg;
    cfg.targets = {
        {ControlParamId::hei, -0.80},
        {ControlParamId::pos, 0.20},
        {ControlParamId::rou, 0.00},
        {ControlParamId::clo_lab, 0.0},
        {ControlParamId::clo_api, 0.0},
        {ControlParamId::clo_dor, 0.0},
        {ControlParamId::vel, -0.5},
        {ControlParamId::opg, 0.01},
        {ControlParamId::pres, 0.0},
    };
    cfg.epsilon = 1e-6;
    return cfg;
}

double displacement(const GestureInstance& g, ControlParamId p, double t) {
    auto it = g.targets.find(p);
    if (it == g.targets.end()) {
        throw std::invalid_argument("gesture '" + g.spec_name +
                                    "' does not govern parameter " +
                                    std::string(to_string(p)));
    }
    return activation(g, t) * it->second;
}

double blend_param(std::span<const GestureInstance> active, ControlParamId p,
                   double t, const NeutralConfig& neutral) {
    double num = 0.0;
    double den = 0.0;
    for (const GestureInstance& g : active) {
        auto it = g.targets.find(p);
        if (it == g.targets.end()) continue;
        if (!g.active_at(t)) continue;
        const double w = g.pull * activation(g, t);
        num += w * it->second;
        den += w;
    }
    if (den < neutral.epsilon) {
        auto it = neutral.targets.find(p);
        return it == neutral.targets.end() ? 0.0 : it->second;
    }
    return num / den;
}

LateralShape lateral_shape_at(const GestureScore& score, double t) {
    const auto& consonantal = score.tier(TierId::consonantal);
    LateralShape best = LateralShape::normal;
    double best_weight = 0.0;
    for (const GestureInstance& g : consonantal) {
        if (!g.active_at(t)) continue;
        const double w = g.pull * activation(g, t);
        if (w > best_weight) {
            best_weight = w;
            best = g.lateral_shape;
        }
    }
    return best;
}

TrajectorySet sample_trajectories(const GestureScore& score, double dt,
                                  const NeutralConfig& neutral) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("sample step dt must be positive");
    }
    const auto violations = validate_score(score);
    if (!violations.empty()) {
        throw std::runtime_error("cannot sample invalid score: " +
                                 violations.front().message);
    }

    // Flatten the tiers once; blend_param re-filters per parameter.
    std::vector<GestureInstance> all;
    for (TierId tier_id : kAllTiers) {
        const auto& tier = score.tier(tier_id);
        all.insert(all.end(), tier.begin(), tier.end());
    }

    TrajectorySet out;
    out.dt_ms = dt;
    out.t0_ms = score.window.begin_ms;
    const std::size_t n =
        sample_count_for(score.window.begin_ms, score.window.end_ms, dt);
    for (ControlParamId p : kAllControlParams) out.series[p].reserve(n);
    out.lateral_series.reserve(n);

    for (std::size_t i = 0; i < n; ++i) {
        const double t = score.window.begin_ms + static_cast<double>(i) * dt;
        for (ControlParamId p : kAllControlParams) {
            out.series[p].push_back(blend_param(all, p, t, neutral));
        }
        out.lateral_series.push_back(lateral_shape_at(score, t));
    }
    return out;
}

}  // namespace gestra
