#pragma once

#include "gestra/core.hpp"
#include "gestra/inventory.hpp"
#include "gestra/phoneme_parser.hpp"

#include <filesystem>
#include <istream>
#include <map>
#include <string>

namespace gestra {

/// Onset lag and offset lead (ms) of a companion gesture relative to the
/// tract gesture of the same sound. Negative lead extends past the tract
/// offset.
struct FlankOffsets {
    double lag = 0.0;
    double lead = 0.0;
};

/// Named constants (ms) of the rule-based timing system. The defaults
/// are calibrated so that the rule route reproduces the shipped golden
/// timing fixture for "kam.flik" exactly.
struct TimingProfile {
    double lead_in = 50.0;        // silence before the first gesture
    double lead_out = 50.0;       // window padding after the last offset
    double onset_cluster_stagger = 60.0;   // onset C -> next onset C
    double vowel_lag_single_onset = 40.0;  // lone onset C -> first vowel
    double vowel_lag_cluster_onset = 30.0; // last C of a cluster -> first vowel
    double nucleus_stagger = 60.0;         // vowel -> next vowel (diphthongs)
    double coda_lag = 60.0;                // last vowel -> first coda C
    double coda_cluster_stagger = 60.0;    // coda C -> next coda C
    double release_overlap = 60.0;   // prevocalic C extends this far past vowel onset
    double vowel_coda_overlap = 50.0;  // vowel extends this far past coda onset
    double syllable_gap = 0.0;  // next syllable starts this long after the
                                // previous syllable's last tract offset

    // Velopharyngeal companion timing per sound class / syllable role.
    FlankOffsets vp_vowel{35.0, 20.0};
    FlankOffsets vp_onset_obstruent{0.0, 5.0};
    FlankOffsets vp_onset_sonorant{15.0, 5.0};
    FlankOffsets vp_coda{10.0, 10.0};

    // Glottal companion timing.
    FlankOffsets gl_vowel{50.0, 0.0};
    FlankOffsets gl_obstruent{30.0, -10.0};
    FlankOffsets gl_nasal{30.0, 15.0};
    FlankOffsets gl_sonorant{45.0, -10.0};
    // Obstruents followed by another consonant in the same onset release
    // their glottal gesture earlier.
    double gl_obstruent_cluster_lead = -5.0;
};

/// Stored gesture-score fragment for one syllable: (spec name, onset,
/// offset) triples relative to syllable start, plus the tract span used
/// to chain the next syllable.
struct SyllabaryEntry {
    struct Entry {
        std::string spec_name;
        double onset;
        double offset;
    };
    std::vector<Entry> gestures;
    double tract_extent = 0.0;  // last tract offset relative to syllable start
};

/// Mental syllabary: looked up before falling back to the timing rules.
struct Syllabary {
    std::map<std::string, SyllabaryEntry> entries;  // key: normalized SAMPA
};

/// Parses a syllabary document (same structured-text family as the
/// inventory). Throws ParseError / InventoryError.
Syllabary load_syllabary(std::istream& in, const Inventory& inv);
Syllabary load_syllabary(const std::string& text, const Inventory& inv);
Syllabary load_syllabary_file(const std::filesystem::path& path, const Inventory& inv);

std::string write_syllabary(const Syllabary& syl);

/// Syllabary key of a parsed syllable (its SAMPA segments, concatenated).
std::string syllable_key(const Syllable& syl);

/// Builds the syllabary entry the rule route would produce for one
/// syllable, relative to syllable start.
SyllabaryEntry rule_syllabary_entry(const Syllable& syl, const Inventory& inv,
                                    const TimingProfile& profile);

/// Rule route: instantiates every gesture of the utterance with onsets and
/// offsets computed from the timing profile.
GestureScore build_score_rule(const Utterance& u, const Inventory& inv,
                              const TimingProfile& profile = {});

/// Dual route: per syllable, uses the stored syllabary fragment when
/// present and falls back to the rule route otherwise.
GestureScore build_score_lexicon(const Utterance& u, const Syllabary& syl,
                                 const Inventory& inv,
                                 const TimingProfile& profile = {});

/// Merges directly adjacent same-name instances on the velopharyngeal and
/// glottal tiers (inter-instance gap <= gap_threshold) into one instance
/// spanning both; flanks come from the outer instances. Idempotent.
GestureScore merge_adjacent(const GestureScore& score, double gap_threshold = 20.0);

/// Fills every uncovered interval of each tier with a neutral instance,
/// extended by one flank width into its neighbours where the window
/// allows. Idempotent.
GestureScore fill_neutral(const GestureScore& score, const Inventory& inv);

/// Adds the single pulmonary pressure gesture spanning the utterance
/// (first non-neutral onset minus one flank to last non-neutral offset
/// plus one flank). No-op on scores without non-neutral gestures.
GestureScore add_pulmonary(const GestureScore& score, const Inventory& inv);

/// Full pipeline: rule/lexicon build, merge, neutral fill, pulmonary.
GestureScore build_score_pipeline(const Utterance& u, const Inventory& inv,
                                  const Syllabary* syl = nullptr,
                                  const TimingProfile& profile = {},
                                  double gap_threshold = 20.0);

}  // namespace gestra
