#include "gestra/export.hpp"

#include "gestra/activation.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace gestra {

namespace {

constexpr int kScoreFormatVersion = 1;
constexpr const char* kScoreFormatName = "gestra.score";

using ordered_json = nlohmann::ordered_json;

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string write_score_json(const GestureScore& score) {
    ordered_json doc;
    doc["format"] = kScoreFormatName;
    doc["version"] = kScoreFormatVersion;
    doc["label"] = score.label;
    doc["window"] = {{"begin_ms", score.window.begin_ms},
                     {"end_ms", score.window.end_ms}};
    ordered_json tiers = ordered_json::object();
    for (TierId tier_id : kAllTiers) {
        ordered_json list = ordered_json::array();
        for (const GestureInstance& g : score.tier(tier_id)) {
            ordered_json targets = ordered_json::object();
            for (const auto& [p, v] : g.targets) targets[std::string(to_string(p))] = v;
            list.push_back({{"spec", g.spec_name},
                            {"t_s", g.t_s},
                            {"t_e", g.t_e},
                            {"tau_on", g.tau_on},
                            {"tau_off", g.tau_off},
                            {"pull", g.pull},
                            {"neutral", g.is_neutral},
                            {"lateral", std::string(to_string(g.lateral_shape))},
                            {"targets", std::move(targets)}});
        }
        tiers[std::string(to_string(tier_id))] = std::move(list);
    }
    doc["tiers"] = std::move(tiers);
    return doc.dump(2) + "\n";
}

GestureScore read_score_json(const std::string& document) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(document);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed score document: ") + e.what());
    }
    try {
        if (!doc.is_object() || doc.value("format", "") != kScoreFormatName) {
            throw ParseError("not a gesture-score document");
        }
        if (doc.at("version").get<int>() != kScoreFormatVersion) {
            throw ParseError("unsupported score format version " +
                             doc.at("version").dump());
        }
        GestureScore score;
        score.label = doc.at("label").get<std::string>();
        score.window.begin_ms = doc.at("window").at("begin_ms").get<double>();
        score.window.end_ms = doc.at("window").at("end_ms").get<double>();
        const auto& tiers = doc.at("tiers");
        for (TierId tier_id : kAllTiers) {
            const std::string key(to_string(tier_id));
            if (!tiers.contains(key)) {
                throw ParseError("missing tier key '" + key + "'");
            }
            auto& out = score.tiers[tier_id];
            for (const auto& item : tiers.at(key)) {
                GestureInstance g;
                g.spec_name = item.at("spec").get<std::string>();
                g.t_s = item.at("t_s").get<double>();
                g.t_e = item.at("t_e").get<double>();
                g.tau_on = item.at("tau_on").get<double>();
                g.tau_off = item.at("tau_off").get<double>();
                g.pull = item.at("pull").get<double>();
                g.is_neutral = item.at("neutral").get<bool>();
                auto shape = lateral_shape_from_string(
                    item.at("lateral").get<std::string>());
                if (!shape) {
                    throw ParseError("unknown lateral shape '" +
                                     item.at("lateral").get<std::string>() + "'");
                }
                g.lateral_shape = *shape;
                for (const auto& [name, value] : item.at("targets").items()) {
                    auto p = control_param_from_string(name);
                    if (!p) throw ParseError("unknown control parameter '" + name + "'");
                    g.targets[*p] = value.get<double>();
                }
                out.push_back(std::move(g));
            }
        }
        return score;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed score document: ") + e.what());
    }
}

std::string write_traj_csv(const TrajectorySet& ts) {
    std::ostringstream out;
    out << "t_ms,hei,pos,rou,clo_lab,clo_api,clo_dor,vel,opg,pres,lateral\n";
    for (std::size_t i = 0; i < ts.sample_count(); ++i) {
        const double t = ts.t0_ms + static_cast<double>(i) * ts.dt_ms;
        out << format_real(t);
        for (ControlParamId p : kAllControlParams) {
            out << ',' << format_real(ts.series.at(p)[i]);
        }
        out << ',' << to_string(ts.lateral_series[i]) << '\n';
    }
    return out.str();
}

PlotStyle PlotStyle::default_style() {
    PlotStyle style;
    style.param_colors = {
        {ControlParamId::hei, "#c23b22"},      // red
        {ControlParamId::pos, "#2a9d8f"},      // green-blue
        {ControlParamId::rou, "#3a3a3a"},      // gray-black
        {ControlParamId::clo_lab, "#2a9d8f"},  // green-blue
        {ControlParamId::clo_api, "#1d3a8f"},  // dark blue
        {ControlParamId::clo_dor, "#c23b22"},  // red
        {ControlParamId::vel, "#2a9d8f"},
        {ControlParamId::opg, "#c23b22"},
        {ControlParamId::pres, "#2a9d8f"},
    };
    return style;
}

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_plot(const GestureScore& score, const TrajectorySet& ts,
                        const PlotStyle& style) {
    const std::size_t n =
        sample_count_for(score.window.begin_ms, score.window.end_ms, ts.dt_ms);
    if (ts.sample_count() != n ||
        std::abs(ts.t0_ms - score.window.begin_ms) > 1e-9) {
        throw std::invalid_argument(
            "trajectory set does not match the score window/grid");
    }

    const double margin_left = 70.0;
    const double margin_right = 20.0;
    const double margin_top = 30.0;
    const double margin_bottom = 40.0;
    const double panel_gap = 12.0;
    const double plot_w = style.width - margin_left - margin_right;
    const double panel_h =
        (style.height - margin_top - margin_bottom - 4 * panel_gap) / 5.0;

    const double t0 = score.window.begin_ms;
    const double t1 = std::max(score.window.end_ms, t0 + 1.0);
    auto x_of = [&](double t) {
        return margin_left + (t - t0) / (t1 - t0) * plot_w;
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.width
        << "\" height=\"" << style.height << "\" viewBox=\"0 0 " << style.width
        << " " << style.height << "\">\n";
    svg << "  <title>" << xml_escape(score.label) << "</title>\n";

    for (std::size_t tier_index = 0; tier_index < kAllTiers.size(); ++tier_index) {
        const TierId tier_id = kAllTiers[tier_index];
        const auto& instances = score.tier(tier_id);
        const double top = margin_top + tier_index * (panel_h + panel_gap);
        const double bottom = top + panel_h;

        // Panel value range: the tier's parameter ranges, widened to hold
        // the unit activation scale.
        double lo = 0.0;
        double hi = 1.0;
        for (ControlParamId p : tier_params(tier_id)) {
            lo = std::min(lo, param_range(p).lo);
            hi = std::max(hi, param_range(p).hi);
        }
        auto y_of = [&](double v) {
            return bottom - (v - lo) / (hi - lo) * panel_h;
        };

        svg << "  <g class=\"tier\" data-tier=\"" << to_string(tier_id) << "\">\n";
        if (style.tier_banding && tier_index % 2 == 1) {
            svg << "    <rect x=\"" << margin_left << "\" y=\"" << top
                << "\" width=\"" << plot_w << "\" height=\"" << panel_h
                << "\" fill=\"#e4f0ee\"/>\n";
        }
        svg << "    <rect x=\"" << margin_left << "\" y=\"" << top
            << "\" width=\"" << plot_w << "\" height=\"" << panel_h
            << "\" fill=\"none\" stroke=\"#888\"/>\n";
        svg << "    <text x=\"8\" y=\"" << top + 14
            << "\" font-size=\"11\" fill=\"#333\">" << to_string(tier_id)
            << "</text>\n";
        if (lo < 0.0 && hi > 0.0) {
            svg << "    <line x1=\"" << margin_left << "\" y1=\"" << y_of(0.0)
                << "\" x2=\"" << margin_left + plot_w << "\" y2=\"" << y_of(0.0)
                << "\" stroke=\"#ccc\"/>\n";
        }

        if (style.show_activations) {
            for (const GestureInstance& g : instances) {
                std::ostringstream d;
                for (std::size_t i = 0; i < n; ++i) {
                    const double t = t0 + static_cast<double>(i) * ts.dt_ms;
                    const double a = activation(g, t);
                    d << (i == 0 ? 'M' : 'L') << x_of(t) << ' '
                      << y_of(lo + a * (hi - lo));
                }
                const char* cls = g.is_neutral ? "activation neutral" : "activation";
                const char* stroke = g.is_neutral ? "#cc4444" : "#555555";
                svg << "    <path class=\"" << cls << "\" d=\"" << d.str()
                    << "\" fill=\"none\" stroke=\"" << stroke
                    << "\" stroke-width=\"0.8\" stroke-dasharray=\""
                    << (g.is_neutral ? "2 3" : "5 3") << "\"/>\n";
            }
        }

        if (style.show_trajectories) {
            // Only parameters the tier's gestures actually target.
            std::set<ControlParamId> used;
            for (const GestureInstance& g : instances) {
                for (const auto& [p, v] : g.targets) used.insert(p);
            }
            for (ControlParamId p : used) {
                const auto& series = ts.series.at(p);
                std::ostringstream d;
                for (std::size_t i = 0; i < n; ++i) {
                    const double t = t0 + static_cast<double>(i) * ts.dt_ms;
                    d << (i == 0 ? 'M' : 'L') << x_of(t) << ' ' << y_of(series[i]);
                }
                auto color_it = style.param_colors.find(p);
                const std::string color = color_it == style.param_colors.end()
                                              ? "#000000"
                                              : color_it->second;
                svg << "    <path class=\"trajectory\" data-param=\""
                    << to_string(p) << "\" d=\"" << d.str()
                    << "\" fill=\"none\" stroke=\"" << color
                    << "\" stroke-width=\"2\"/>\n";
            }
        }
        svg << "  </g>\n";
    }

    // Time axis under the last panel.
    const double axis_y = margin_top + 5 * panel_h + 4 * panel_gap + 4.0;
    svg << "  <g class=\"time-axis\">\n";
    const double span = t1 - t0;
    double tick_step = 100.0;
    while (span / tick_step > 14.0) tick_step *= 2.0;
    for (double t = std::ceil(t0 / tick_step) * tick_step; t <= t1 + 1e-9;
         t += tick_step) {
        svg << "    <line x1=\"" << x_of(t) << "\" y1=\"" << axis_y - 4.0
            << "\" x2=\"" << x_of(t) << "\" y2=\"" << axis_y << "\" stroke=\"#333\"/>\n";
        svg << "    <text x=\"" << x_of(t) << "\" y=\"" << axis_y + 14.0
            << "\" font-size=\"10\" text-anchor=\"middle\">" << format_real(t)
            << "</text>\n";
    }
    svg << "    <text x=\"" << margin_left + plot_w / 2.0 << "\" y=\""
        << axis_y + 30.0 << "\" font-size=\"11\" text-anchor=\"middle\">time (ms)"
        << "</text>\n";
    svg << "  </g>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace gestra
