// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on
// any failure. Tolerances are pinned in the checks below.

#include "gestra/activation.hpp"
#include "gestra/blend.hpp"
#include "gestra/export.hpp"
#include "gestra/phoneme_parser.hpp"
#include "gestra/score_builder.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "support/xml_check.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using gestra::ControlParamId;
using gestra::GestureInstance;
using gestra::GestureScore;
using gestra::TierId;

namespace {

struct Result {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

// --- 1: activation correctness --------------------------------------------

Result criterion_activation() {
    Result r;
    const auto t0 = std::chrono::steady_clock::now();

    GestureInstance g;
    g.spec_name = "probe";
    g.t_s = 100.0;
    g.t_e = 200.0;
    g.tau_on = 20.0;
    g.tau_off = 20.0;

    for (long i = 0; i <= 2000; ++i) {  // 0.1 ms grid over [50, 250]
        const double t = 50.0 + 0.1 * static_cast<double>(i);
        const double got = gestra::activation(g, t);
        const double want = oracle::activation(g, t);
        if (std::abs(got - want) > 1e-12) {
            r.fail("oracle mismatch at t=" + std::to_string(t));
            break;
        }
    }
    if (std::abs(gestra::activation(g, 110.0) - 0.5) > 1e-12)
        r.fail("rise midpoint != 0.5");
    if (std::abs(gestra::activation(g, 190.0) - 0.5) > 1e-12)
        r.fail("fall midpoint != 0.5");

    const double h = 1e-3;
    for (double boundary : {100.0, 120.0, 180.0, 200.0}) {
        const double left =
            (gestra::activation(g, boundary) - gestra::activation(g, boundary - h)) / h;
        const double right =
            (gestra::activation(g, boundary + h) - gestra::activation(g, boundary)) / h;
        if (std::abs(right - left) > 1e-4)
            r.fail("slope jump at boundary t=" + std::to_string(boundary));
    }
    if (seconds_since(t0) >= 1.0) r.fail("runtime >= 1 s");
    return r;
}

// --- 2: blending properties over randomized scores -------------------------

GestureScore random_score(std::mt19937& rng) {
    std::uniform_int_distribution<int> n_dist(1, 6);
    std::uniform_real_distribution<double> t_dist(0.0, 440.0);
    std::uniform_real_distribution<double> dur_dist(20.0, 160.0);
    std::uniform_real_distribution<double> pull_dist(0.5, 100.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> tier_dist(0, gestra::kAllTiers.size() - 1);

    GestureScore score;
    score.window = {0.0, 600.0};
    for (TierId t : gestra::kAllTiers) score.tiers[t];

    const int n = n_dist(rng);
    for (int i = 0; i < n; ++i) {
        const TierId tier = gestra::kAllTiers[tier_dist(rng)];
        GestureInstance g;
        g.spec_name = "rand";
        g.t_s = t_dist(rng);
        g.t_e = g.t_s + dur_dist(rng);
        g.tau_on = g.duration() * (0.1 + 0.4 * unit(rng));
        g.tau_off = g.duration() * (0.1 + 0.4 * unit(rng));
        g.pull = pull_dist(rng);
        for (ControlParamId p : gestra::tier_params(tier)) {
            const auto range = gestra::param_range(p);
            g.targets[p] = range.lo + (range.hi - range.lo) * unit(rng);
        }
        score.tier(tier).push_back(g);
    }
    return score;
}

Result criterion_blend_properties() {
    Result r;
    const auto t0 = std::chrono::steady_clock::now();
    const auto neutral = gestra::NeutralConfig::default_config();
    std::mt19937 rng(424242);

    for (int trial = 0; trial < 1000 && r.ok; ++trial) {
        const auto score = random_score(rng);
        auto scaled = score;
        const double lambda = 3.7;
        for (TierId t : gestra::kAllTiers)
            for (auto& g : scaled.tier(t)) g.pull *= lambda;

        std::vector<GestureInstance> flat;
        for (TierId t : gestra::kAllTiers)
            for (const auto& g : score.tier(t)) flat.push_back(g);
        std::vector<GestureInstance> flat_scaled;
        for (TierId t : gestra::kAllTiers)
            for (const auto& g : scaled.tier(t)) flat_scaled.push_back(g);

        for (double t = 0.0; t <= 600.0 && r.ok; t += 23.0) {
            for (ControlParamId p : gestra::kAllControlParams) {
                double den = 0.0, lo = 1e9, hi = -1e9;
                for (const auto& g : flat) {
                    if (!g.active_at(t)) continue;
                    auto it = g.targets.find(p);
                    if (it == g.targets.end()) continue;
                    den += g.pull * gestra::activation(g, t);
                    lo = std::min(lo, it->second);
                    hi = std::max(hi, it->second);
                }
                const double v = gestra::blend_param(flat, p, t, neutral);

                if (den >= 1e-3) {
                    // Pull-scaling invariance, away from the epsilon guard.
                    const double vs = gestra::blend_param(flat_scaled, p, t, neutral);
                    const double scale = std::max(1.0, std::abs(v));
                    if (std::abs(vs - v) > 1e-12 * scale) {
                        r.fail("pull-scaling broke at trial " + std::to_string(trial));
                        break;
                    }
                    // Convexity: blend lies within the active targets' hull.
                    if (v < lo - 1e-9 || v > hi + 1e-9) {
                        r.fail("convexity broke at trial " + std::to_string(trial));
                        break;
                    }
                } else if (den < neutral.epsilon) {
                    if (v != neutral.targets.at(p)) {
                        r.fail("neutral fallback broke at trial " + std::to_string(trial));
                        break;
                    }
                }
            }
        }

        // Single fully active gesture reproduces its target.
        if (r.ok && !flat.empty()) {
            const auto& g = flat[static_cast<std::size_t>(trial) % flat.size()];
            if (g.tau_on + g.tau_off < g.duration()) {
                const double mid = g.t_s + g.tau_on +
                                   0.5 * (g.duration() - g.tau_on - g.tau_off);
                const std::vector<GestureInstance> solo = {g};
                for (const auto& [p, target] : g.targets) {
                    const double v = gestra::blend_param(solo, p, mid, neutral);
                    if (std::abs(v - target) > 1e-12)
                        r.fail("single-active identity broke at trial " +
                               std::to_string(trial));
                }
            }
        }
    }
    if (seconds_since(t0) >= 10.0) r.fail("runtime >= 10 s");
    return r;
}

// --- 3: sampler vs brute-force oracle ---------------------------------------

Result criterion_sampler_oracle() {
    Result r;
    const auto neutral = gestra::NeutralConfig::default_config();
    const std::vector<GestureScore> scores = {fixtures::pai_demo_score(),
                                              fixtures::kamflik_pipeline_score()};
    for (const auto& score : scores) {
        const auto ts = gestra::sample_trajectories(score, 5.0, neutral);
        for (std::size_t i = 0; i < ts.sample_count(); ++i) {
            const double t = ts.t0_ms + 5.0 * static_cast<double>(i);
            for (ControlParamId p : gestra::kAllControlParams) {
                const double want =
                    oracle::blend(score, p, t, neutral.targets, neutral.epsilon);
                if (std::abs(ts.series.at(p)[i] - want) > 1e-9) {
                    r.fail(score.label + ": mismatch at t=" + std::to_string(t));
                    return r;
                }
            }
        }
    }
    return r;
}

// --- 4: golden kamflik timing -----------------------------------------------

Result criterion_golden_timing() {
    Result r;
    const auto score = fixtures::kamflik_rule_score();
    const auto& golden = fixtures::kamflik_golden();

    std::size_t total = 0;
    for (TierId t : gestra::kAllTiers) total += score.tier(t).size();
    if (total != golden.size())
        r.fail("expected " + std::to_string(golden.size()) + " instances, got " +
               std::to_string(total));

    for (const auto& row : golden) {
        bool found = false;
        for (TierId t : gestra::kAllTiers) {
            for (const auto& g : score.tier(t)) {
                if (g.spec_name == row.gesture && g.t_s == row.onset &&
                    g.t_e == row.offset)
                    found = true;
            }
        }
        if (!found)
            r.fail(std::string("missing ") + row.gesture + " [" +
                   std::to_string(row.onset) + "," + std::to_string(row.offset) + "]");
    }

    const auto merged = gestra::merge_adjacent(score, 20.0);
    bool merged_ok = false;
    for (const auto& g : merged.tier(TierId::velopharyngeal)) {
        if (g.spec_name == "velopharyngeal closing" && g.t_s == 325.0 &&
            g.t_e == 430.0)
            merged_ok = true;
    }
    if (!merged_ok) r.fail("velopharyngeal pair did not merge to [325,430]");
    return r;
}

// --- 5: phoneme-to-gesture mapping ------------------------------------------

Result criterion_phoneme_map() {
    Result r;
    const auto& inv = fixtures::inventory();
    struct Row {
        const char* phoneme;
        std::vector<const char*> gestures;
    };
    const std::vector<Row> rows = {
        {"a", {"vocalic a-shaping", "velopharyngeal closing", "glottal closing"}},
        {"i", {"vocalic i-shaping", "velopharyngeal closing", "glottal closing"}},
        {"u", {"vocalic u-shaping", "velopharyngeal closing", "glottal closing"}},
        {"@", {"vocalic schwa-shaping", "velopharyngeal closing", "glottal closing"}},
        {"p", {"labial closing", "velopharyngeal tight closing", "glottal opening"}},
        {"t", {"apical closing", "velopharyngeal tight closing", "glottal opening"}},
        {"k", {"dorsal closing", "velopharyngeal tight closing", "glottal opening"}},
        {"f", {"labio-dental near closing", "velopharyngeal tight closing",
               "glottal opening"}},
        {"s", {"alveolar near closing", "velopharyngeal tight closing",
               "glottal opening"}},
        {"b", {"labial closing", "velopharyngeal tight closing", "glottal closing"}},
        {"d", {"apical closing", "velopharyngeal tight closing", "glottal closing"}},
        {"g", {"dorsal closing", "velopharyngeal tight closing", "glottal closing"}},
        {"v", {"labio-dental near closing", "velopharyngeal tight closing",
               "glottal closing"}},
        {"z", {"alveolar near closing", "velopharyngeal tight closing",
               "glottal closing"}},
        {"m", {"labial closing", "velopharyngeal opening", "glottal closing"}},
        {"n", {"apical closing", "velopharyngeal opening", "glottal closing"}},
        {"N", {"dorsal closing", "velopharyngeal opening", "glottal closing"}},
        {"l", {"apical lateral closing", "velopharyngeal closing", "glottal closing"}},
        {"j", {"palatal approximant", "velopharyngeal closing", "glottal closing"}},
        {"?", {"glottal tight closing"}},
        {"h", {"glottal near opening"}},
    };
    for (const auto& row : rows) {
        const auto gestures = gestra::gestures_for_phoneme(inv, row.phoneme);
        bool ok = gestures.size() == row.gestures.size();
        for (std::size_t i = 0; ok && i < gestures.size(); ++i)
            ok = gestures[i].name == row.gestures[i];
        if (!ok) r.fail(std::string("mapping wrong for /") + row.phoneme + "/");
    }
    return r;
}

// --- 6: /pa:i:/ scenario -----------------------------------------------------

Result criterion_pai_scenario() {
    Result r;
    const auto neutral = gestra::NeutralConfig::default_config();
    const auto score = fixtures::pai_demo_score();
    const auto ts = gestra::sample_trajectories(score, 1.0, neutral);

    auto at = [&](ControlParamId p, double t) {
        return ts.series.at(p)[static_cast<std::size_t>(t - ts.t0_ms)];
    };

    // (a) clo_lab plateau at 1.07 during full labial-closing activation.
    // Flanks are 1000/30 ms, so the plateau covers about [84, 116].
    for (double t = 85.0; t <= 115.0; t += 5.0) {
        if (std::abs(at(ControlParamId::clo_lab, t) - 1.07) > 1e-9)
            r.fail("clo_lab plateau missed 1.07 at t=" + std::to_string(t));
    }

    // (b) hei climbs monotonically from -0.80 toward 0.90 across the
    // vocalic overlap.
    if (std::abs(at(ControlParamId::hei, 140.0) + 0.80) > 1e-9)
        r.fail("hei not at -0.80 before the overlap");
    double prev = at(ControlParamId::hei, 150.0);
    for (double t = 151.0; t <= 260.0; t += 1.0) {
        const double v = at(ControlParamId::hei, t);
        if (v + 1e-12 < prev) {
            r.fail("hei not monotone at t=" + std::to_string(t));
            break;
        }
        prev = v;
    }
    if (std::abs(at(ControlParamId::hei, 250.0) - 0.90) > 1e-9)
        r.fail("hei did not reach 0.90 after the overlap");

    // (c) plot structure: 3 dashed activation curves, 4 solid trajectories.
    const auto ts5 = gestra::sample_trajectories(score, 5.0, neutral);
    const std::string svg = gestra::render_plot(score, ts5);
    if (count_occurrences(svg, "class=\"activation\"") != 3)
        r.fail("expected exactly 3 dashed activation curves");
    if (count_occurrences(svg, "class=\"trajectory\"") != 4)
        r.fail("expected exactly 4 solid trajectory curves");
    return r;
}

// --- 7: round trips and formats ----------------------------------------------

Result criterion_formats() {
    Result r;
    const auto neutral = gestra::NeutralConfig::default_config();
    const std::vector<GestureScore> fixtures_list = {
        fixtures::pai_demo_score(),
        fixtures::kamflik_rule_score(),
        fixtures::kamflik_pipeline_score(),
    };
    for (const auto& score : fixtures_list) {
        const std::string doc = gestra::write_score_json(score);
        if (gestra::write_score_json(gestra::read_score_json(doc)) != doc) {
            r.fail("JSON round trip not identical for " + score.label);
        }
    }

    const auto kam = fixtures::kamflik_pipeline_score();
    const auto ts = gestra::sample_trajectories(kam, 5.0, neutral);
    const std::string csv = gestra::write_traj_csv(ts);
    const std::size_t rows = count_occurrences(csv, "\n") - 1;
    if (rows != 113)
        r.fail("expected 113 CSV data rows, got " + std::to_string(rows));

    for (const auto& score : fixtures_list) {
        const auto grid = gestra::sample_trajectories(score, 5.0, neutral);
        std::string why;
        if (!xml_check::well_formed(gestra::render_plot(score, grid), &why))
            r.fail("SVG not well formed for " + score.label + ": " + why);
    }
    return r;
}

// --- 8: parser suite -----------------------------------------------------------

Result criterion_parser() {
    Result r;
    const auto& inv = fixtures::inventory();
    auto expect = [&](const char* text,
                      std::vector<std::vector<std::vector<const char*>>> want) {
        const auto u = gestra::parse_utterance(text, inv);
        bool ok = u.syllables.size() == want.size();
        for (std::size_t s = 0; ok && s < want.size(); ++s) {
            const auto& syl = u.syllables[s];
            const std::vector<std::vector<std::string>> got = {syl.onset, syl.nucleus,
                                                               syl.coda};
            for (int part = 0; ok && part < 3; ++part) {
                ok = got[part].size() == want[s][part].size();
                for (std::size_t i = 0; ok && i < got[part].size(); ++i)
                    ok = got[part][i] == want[s][part][i];
            }
        }
        if (!ok) r.fail(std::string("wrong structure for ") + text);
    };

    expect("kam.flik", {{{"k"}, {"a"}, {"m"}}, {{"f", "l"}, {"i"}, {"k"}}});
    expect("pa:i:", {{{"p"}, {"a:", "i:"}, {}}});
    expect("Spi:lt", {{{"S", "p"}, {"i:"}, {"l", "t"}}});
    expect("klatS", {{{"k", "l"}, {"a"}, {"t", "S"}}});
    expect("faI6", {{{"f"}, {"a", "I", "6"}, {}}});

    auto rejects = [&](const char* text, const char* what, auto check) {
        try {
            gestra::parse_utterance(text, inv);
            r.fail(std::string(text) + " unexpectedly accepted");
        } catch (const std::exception& e) {
            if (!check(e)) r.fail(std::string(text) + ": wrong error class (" + what + ")");
        }
    };
    auto is_structure = [](const std::exception& e) {
        return dynamic_cast<const gestra::StructureError*>(&e) != nullptr;
    };
    rejects("kstra", "StructureError", is_structure);
    rejects("pst", "StructureError", is_structure);
    rejects("faI6a", "StructureError", is_structure);
    rejects("ka.ta.pa.ma", "StructureError", is_structure);
    rejects("kata", "VowelAfterCodaError", [](const std::exception& e) {
        return dynamic_cast<const gestra::VowelAfterCodaError*>(&e) != nullptr;
    });
    rejects("ka..ta", "EmptySyllableError", [](const std::exception& e) {
        return dynamic_cast<const gestra::EmptySyllableError*>(&e) != nullptr;
    });
    rejects("kaw", "UnknownSymbolError", [](const std::exception& e) {
        return dynamic_cast<const gestra::UnknownSymbolError*>(&e) != nullptr;
    });
    return r;
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        const char* title;
        Result (*run)();
    };
    const std::vector<Criterion> criteria = {
        {1, "activation matches the reference formula (<=1e-12, C1 flanks)",
         criterion_activation},
        {2, "blending invariants over 1000 randomized scores (<=1e-12)",
         criterion_blend_properties},
        {3, "sampler matches brute-force blending (<=1e-9, dt=5)",
         criterion_sampler_oracle},
        {4, "kam.flik rule timing exact (0 ms) and velopharyngeal merge",
         criterion_golden_timing},
        {5, "phoneme-to-gesture mapping incl. glottal consonants",
         criterion_phoneme_map},
        {6, "pa:i: plateau 1.07, monotone hei, 3+4 plot curves",
         criterion_pai_scenario},
        {7, "JSON round trip, 113 CSV rows, well-formed SVG", criterion_formats},
        {8, "parser structures and rejection classes", criterion_parser},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        Result r;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            r.fail(std::string("exception: ") + e.what());
        }
        if (r.ok) {
            std::printf("PASS  %d  %s\n", c.number, c.title);
        } else {
            std::printf("FAIL  %d  %s -- %s\n", c.number, c.title, r.detail.c_str());
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}
