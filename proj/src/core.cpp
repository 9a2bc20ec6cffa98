#include "gestra/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gestra {

ParamRange param_range(ControlParamId p) {
    switch (p) {
        case ControlParamId::hei:
        case ControlParamId::pos:
        case ControlParamId::rou:
            return {-1.0, 1.0};
        case ControlParamId::clo_lab:
        case ControlParamId::clo_api:
        case ControlParamId::clo_dor:
            return {0.0, 1.5};
        case ControlParamId::vel:
            return {-1.0, 1.5};
        case ControlParamId::opg:
            return {-1.0, 1.0};
        case ControlParamId::pres:
            return {0.0, 1.0};
    }
    return {0.0, 0.0};
}

std::string_view to_string(ControlParamId p) {
    switch (p) {
        case ControlParamId::hei: return "hei";
        case ControlParamId::pos: return "pos";
        case ControlParamId::rou: return "rou";
        case ControlParamId::clo_lab: return "clo_lab";
        case ControlParamId::clo_api: return "clo_api";
        case ControlParamId::clo_dor: return "clo_dor";
        case ControlParamId::vel: return "vel";
        case ControlParamId::opg: return "opg";
        case ControlParamId::pres: return "pres";
    }
    return "?";
}

std::optional<ControlParamId> control_param_from_string(std::string_view s) {
    for (ControlParamId p : kAllControlParams) {
        if (to_string(p) == s) return p;
    }
    return std::nullopt;
}

std::string_view to_string(TierId t) {
    switch (t) {
        case TierId::vocalic: return "vocalic";
        case TierId::consonantal: return "consonantal";
        case TierId::velopharyngeal: return "velopharyngeal";
        case TierId::glottal: return "glottal";
        case TierId::pulmonary: return "pulmonary";
    }
    return "?";
}

std::optional<TierId> tier_from_string(std::string_view s) {
    for (TierId t : kAllTiers) {
        if (to_string(t) == s) return t;
    }
    return std::nullopt;
}

const std::vector<ControlParamId>& tier_params(TierId t) {
    static const std::vector<ControlParamId> vocalic = {
        ControlParamId::hei, ControlParamId::pos, ControlParamId::rou};
    static const std::vector<ControlParamId> consonantal = {
        ControlParamId::clo_lab, ControlParamId::clo_api, ControlParamId::clo_dor};
    static const std::vector<ControlParamId> velopharyngeal = {ControlParamId::vel};
    static const std::vector<ControlParamId> glottal = {ControlParamId::opg};
    static const std::vector<ControlParamId> pulmonary = {ControlParamId::pres};
    switch (t) {
        case TierId::vocalic: return vocalic;
        case TierId::consonantal: return consonantal;
        case TierId::velopharyngeal: return velopharyngeal;
        case TierId::glottal: return glottal;
        case TierId::pulmonary: return pulmonary;
    }
    return vocalic;
}

TierId param_tier(ControlParamId p) {
    switch (p) {
        case ControlParamId::hei:
        case ControlParamId::pos:
        case ControlParamId::rou:
            return TierId::vocalic;
        case ControlParamId::clo_lab:
        case ControlParamId::clo_api:
        case ControlParamId::clo_dor:
            return TierId::consonantal;
        case ControlParamId::vel:
            return TierId::velopharyngeal;
        case ControlParamId::opg:
            return TierId::glottal;
        case ControlParamId::pres:
            return TierId::pulmonary;
    }
    return TierId::vocalic;
}

std::string_view to_string(LateralShape s) {
    switch (s) {
        case LateralShape::normal: return "normal";
        case LateralShape::mid: return "mid";
        case LateralShape::lateral: return "lateral";
        case LateralShape::to_teeth: return "to_teeth";
    }
    return "?";
}

std::optional<LateralShape> lateral_shape_from_string(std::string_view s) {
    for (LateralShape ls : {LateralShape::normal, LateralShape::mid,
                            LateralShape::lateral, LateralShape::to_teeth}) {
        if (to_string(ls) == s) return ls;
    }
    return std::nullopt;
}

const std::vector<GestureInstance>& GestureScore::tier(TierId t) const {
    static const std::vector<GestureInstance> empty;
    auto it = tiers.find(t);
    return it == tiers.end() ? empty : it->second;
}

std::size_t sample_count_for(double t0, double t_end, double dt) {
    if (dt <= 0.0 || t_end < t0) return 0;
    return static_cast<std::size_t>(std::floor((t_end - t0) / dt)) + 1;
}

namespace {

bool owns_param(TierId tier, ControlParamId p) {
    const auto& owned = tier_params(tier);
    return std::find(owned.begin(), owned.end(), p) != owned.end();
}

}  // namespace

std::vector<Violation> validate_score(const GestureScore& score) {
    std::vector<Violation> out;
    auto add = [&](TierId tier, std::size_t idx, const char* rule, std::string msg) {
        out.push_back({tier, idx, rule, std::move(msg)});
    };

    if (score.window.end_ms < score.window.begin_ms) {
        add(TierId::vocalic, Violation::kTierLevel, "window-order",
            "window end precedes window begin");
    }

    for (TierId tier_id : kAllTiers) {
        const auto& instances = score.tier(tier_id);
        double prev_start = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < instances.size(); ++i) {
            const GestureInstance& g = instances[i];
            if (!(g.t_s < g.t_e)) {
                add(tier_id, i, "interval-order",
                    g.spec_name + ": t_s must precede t_e");
            }
            if (!(g.tau_on > 0.0) || !(g.tau_off > 0.0)) {
                add(tier_id, i, "flank-positive",
                    g.spec_name + ": flank durations must be positive");
            } else if (g.tau_on + g.tau_off > g.duration() + 1e-9) {
                add(tier_id, i, "flank-budget",
                    g.spec_name + ": tau_on + tau_off exceeds duration");
            }
            if (g.t_s < score.window.begin_ms - 1e-9 ||
                g.t_e > score.window.end_ms + 1e-9) {
                add(tier_id, i, "window-containment",
                    g.spec_name + ": instance outside score window");
            }
            if (g.targets.empty()) {
                add(tier_id, i, "targets-empty", g.spec_name + ": no targets");
            }
            for (const auto& [p, v] : g.targets) {
                if (!owns_param(tier_id, p)) {
                    add(tier_id, i, "tier-ownership",
                        g.spec_name + ": parameter " + std::string(to_string(p)) +
                            " not owned by tier " + std::string(to_string(tier_id)));
                }
                const ParamRange r = param_range(p);
                if (v < r.lo - 1e-12 || v > r.hi + 1e-12) {
                    add(tier_id, i, "target-range",
                        g.spec_name + ": target " + std::string(to_string(p)) +
                            " = " + std::to_string(v) + " out of range");
                }
            }
            if (!(g.pull > 0.0)) {
                add(tier_id, i, "pull-positive", g.spec_name + ": pull must be > 0");
            }
            if (!g.is_neutral) {
                if (g.t_s < prev_start) {
                    add(tier_id, i, "tier-order",
                        g.spec_name + ": non-neutral instances not sorted by t_s");
                }
                prev_start = g.t_s;
            }
        }
    }
    return out;
}

std::vector<Violation> check_coverage(const GestureScore& score) {
    std::vector<Violation> out;
    for (TierId tier_id : kAllTiers) {
        const auto& instances = score.tier(tier_id);
        // Sweep merged [t_s, t_e) intervals against the window.
        std::vector<std::pair<double, double>> spans;
        spans.reserve(instances.size());
        for (const auto& g : instances) spans.emplace_back(g.t_s, g.t_e);
        std::sort(spans.begin(), spans.end());
        double cursor = score.window.begin_ms;
        auto report_gap = [&](double from, double to) {
            out.push_back({tier_id, Violation::kTierLevel, "coverage",
                           std::string(to_string(tier_id)) + ": uncovered [" +
                               std::to_string(from) + ", " + std::to_string(to) + ")"});
        };
        for (const auto& [s, e] : spans) {
            if (s > cursor + 1e-9) report_gap(cursor, s);
            cursor = std::max(cursor, e);
        }
        if (cursor < score.window.end_ms - 1e-9) {
            report_gap(cursor, score.window.end_ms);
        }
    }
    return out;
}

}  // namespace gestra
