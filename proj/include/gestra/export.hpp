#pragma once

#include "gestra/core.hpp"
#include "gestra/errors.hpp"

#include <map>
#include <string>

namespace gestra {

/// Versioned JSON serialization of a gesture score. Field order is stable;
/// round-trips are lossless on valid scores.
std::string write_score_json(const GestureScore& score);

/// Inverse of write_score_json. Throws ParseError on malformed documents
/// (bad JSON, missing tier keys, wrong version tag, unknown enums).
GestureScore read_score_json(const std::string& document);

/// CSV emission of a trajectory set: header
/// t_ms,hei,pos,rou,clo_lab,clo_api,clo_dor,vel,opg,pres,lateral
/// then one row per sample, reals with 6 significant digits.
std::string write_traj_csv(const TrajectorySet& ts);

/// Rendering options for score/trajectory plots.
struct PlotStyle {
    bool show_activations = true;   // dashed per-instance curves
    bool show_trajectories = true;  // solid per-parameter curves
    bool tier_banding = true;       // alternating panel background
    int width = 960;
    int height = 720;
    std::map<ControlParamId, std::string> param_colors;

    static PlotStyle default_style();
};

/// Renders a standalone SVG document: one panel per tier, dashed
/// activation curves per instance (neutral instances in a distinct
/// stroke), solid trajectory curves for the parameters the tier's
/// gestures target, time axis in ms.
///
/// Throws std::invalid_argument when the trajectory set does not cover
/// the score window on its stated grid.
std::string render_plot(const GestureScore& score, const TrajectorySet& ts,
                        const PlotStyle& style = PlotStyle::default_style());

}  // namespace gestra
