#pragma once

// Shared fixtures: the inventory shipped with the repo, the three-gesture
// /pa:i:/ demo score, and the golden timing table for "kam.flik".

#include "gestra/blend.hpp"
#include "gestra/inventory.hpp"
#include "gestra/phoneme_parser.hpp"
#include "gestra/score_builder.hpp"

#include <string>
#include <vector>

#ifndef GESTRA_DATA_DIR
#define GESTRA_DATA_DIR "data"
#endif

namespace fixtures {

inline const gestra::Inventory& inventory() {
    static const gestra::Inventory inv =
        gestra::load_inventory_file(std::string(GESTRA_DATA_DIR) + "/german.inv");
    return inv;
}

// Three-gesture demo: a labial closing gesture followed by overlapping
// a- and i-shaping gestures, on an empty-elsewhere score.
inline gestra::GestureScore pai_demo_score() {
    const auto& inv = inventory();
    gestra::GestureScore score;
    score.label = "pa:i:";
    for (gestra::TierId t : gestra::kAllTiers) score.tiers[t];
    score.window = {0.0, 350.0};

    auto add = [&](const char* spec, double t_s, double t_e) {
        const auto& s = inv.spec(spec);
        score.tier(s.tier).push_back(gestra::make_instance(inv, s, t_s, t_e));
    };
    add("labial closing", 50.0, 150.0);
    add("vocalic a-shaping", 90.0, 240.0);
    add("vocalic i-shaping", 150.0, 300.0);
    return score;
}

struct GoldenRow {
    const char* sound;
    const char* gesture;
    double onset;
    double offset;
};

// Rule-generated activation times for "kam.flik", one row per gesture.
inline const std::vector<GoldenRow>& kamflik_golden() {
    static const std::vector<GoldenRow> rows = {
        {"k", "dorsal closing", 50, 150},
        {"k", "velopharyngeal tight closing", 50, 145},
        {"k", "glottal opening", 80, 160},
        {"a", "vocalic a-shaping", 90, 200},
        {"a", "velopharyngeal closing", 125, 180},
        {"a", "glottal opening", 140, 200},
        {"m", "labial closing", 150, 250},
        {"m", "velopharyngeal opening", 160, 240},
        {"m", "glottal closing", 180, 235},
        {"f", "labio-dental near closing", 250, 350},
        {"f", "velopharyngeal tight closing", 250, 345},
        {"f", "glottal opening", 280, 355},
        {"l", "apical lateral closing", 310, 400},
        {"l", "velopharyngeal closing", 325, 395},
        {"l", "glottal closing", 355, 410},
        {"i", "vocalic i-shaping", 340, 450},
        {"i", "velopharyngeal closing", 375, 430},
        {"i", "glottal closing", 390, 450},
        {"k", "dorsal closing", 400, 500},
        {"k", "velopharyngeal tight closing", 410, 490},
        {"k", "glottal opening", 430, 510},
    };
    return rows;
}

inline gestra::GestureScore kamflik_rule_score() {
    const auto& inv = inventory();
    const auto u = gestra::parse_utterance("kam.flik", inv);
    return gestra::build_score_rule(u, inv);
}

inline gestra::GestureScore kamflik_pipeline_score() {
    const auto& inv = inventory();
    const auto u = gestra::parse_utterance("kam.flik", inv);
    return gestra::build_score_pipeline(u, inv);
}

}  // namespace fixtures
