#include "gestra/score_builder.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace gestra {

namespace {

struct TimedGesture {
    GestureSpec spec;
    double onset;
    double offset;
};

bool cluster_internal(const std::vector<std::string>& group, std::size_t index) {
    return index + 1 < group.size();
}

FlankOffsets vp_offsets(const TimingProfile& profile, SoundClass cls, bool in_coda) {
    if (cls == SoundClass::vowel) return profile.vp_vowel;
    if (in_coda) return profile.vp_coda;
    if (cls == SoundClass::obstruent) return profile.vp_onset_obstruent;
    return profile.vp_onset_sonorant;
}

FlankOffsets gl_offsets(const TimingProfile& profile, SoundClass cls,
                        bool is_cluster_internal) {
    switch (cls) {
        case SoundClass::vowel: return profile.gl_vowel;
        case SoundClass::nasal: return profile.gl_nasal;
        case SoundClass::sonorant: return profile.gl_sonorant;
        default: break;
    }
    FlankOffsets f = profile.gl_obstruent;
    if (is_cluster_internal) f.lead = profile.gl_obstruent_cluster_lead;
    return f;
}

}  // namespace

std::string syllable_key(const Syllable& syl) {
    std::string key;
    for (const auto& seg : syl.segments()) key += seg;
    return key;
}

SyllabaryEntry rule_syllabary_entry(const Syllable& syl, const Inventory& inv,
                                    const TimingProfile& profile) {
    // Tract-role onsets, chained through onset cluster, nucleus, coda.
    struct Slot {
        std::string symbol;
        enum class Role { onset, nucleus, coda } role;
        std::size_t group_index;
        double ts = 0.0;
        double te = 0.0;
    };
    std::vector<Slot> slots;
    for (std::size_t i = 0; i < syl.onset.size(); ++i) {
        slots.push_back({syl.onset[i], Slot::Role::onset, i});
    }
    const std::size_t nucleus_begin = slots.size();
    for (std::size_t i = 0; i < syl.nucleus.size(); ++i) {
        slots.push_back({syl.nucleus[i], Slot::Role::nucleus, i});
    }
    const std::size_t coda_begin = slots.size();
    for (std::size_t i = 0; i < syl.coda.size(); ++i) {
        slots.push_back({syl.coda[i], Slot::Role::coda, i});
    }

    // Onsets.
    for (std::size_t i = 0; i < slots.size(); ++i) {
        Slot& s = slots[i];
        switch (s.role) {
            case Slot::Role::onset:
                s.ts = static_cast<double>(s.group_index) * profile.onset_cluster_stagger;
                break;
            case Slot::Role::nucleus:
                if (s.group_index == 0) {
                    if (syl.onset.empty()) {
                        s.ts = 0.0;
                    } else {
                        const double last_c = slots[nucleus_begin - 1].ts;
                        s.ts = last_c + (syl.onset.size() == 1
                                             ? profile.vowel_lag_single_onset
                                             : profile.vowel_lag_cluster_onset);
                    }
                } else {
                    s.ts = slots[i - 1].ts + profile.nucleus_stagger;
                }
                break;
            case Slot::Role::coda:
                s.ts = s.group_index == 0
                           ? slots[coda_begin - 1].ts + profile.coda_lag
                           : slots[i - 1].ts + profile.coda_cluster_stagger;
                break;
        }
    }

    // Offsets.
    for (std::size_t i = 0; i < slots.size(); ++i) {
        Slot& s = slots[i];
        const auto gestures = gestures_for_phoneme(inv, s.symbol);
        const double mean = gestures.front().mean_duration_ms;
        switch (s.role) {
            case Slot::Role::onset:
                // The prevocalic consonant releases into the vowel.
                s.te = cluster_internal(syl.onset, s.group_index)
                           ? s.ts + mean
                           : slots[nucleus_begin].ts + profile.release_overlap;
                break;
            case Slot::Role::nucleus:
                if (s.group_index + 1 == syl.nucleus.size() && !syl.coda.empty()) {
                    s.te = slots[coda_begin].ts + profile.vowel_coda_overlap;
                } else {
                    s.te = s.ts + mean;
                }
                break;
            case Slot::Role::coda:
                s.te = s.ts + mean;
                break;
        }
    }

    SyllabaryEntry entry;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        const Slot& s = slots[i];
        auto gestures = gestures_for_phoneme(inv, s.symbol);
        const SoundClass cls = classify_phoneme(inv, s.symbol);
        entry.gestures.push_back({gestures.front().name, s.ts, s.te});
        entry.tract_extent = std::max(entry.tract_extent, s.te);
        if (gestures.size() < 3) continue;  // glottal consonant

        const bool in_coda = s.role == Slot::Role::coda;
        const bool internal =
            (s.role == Slot::Role::onset && cluster_internal(syl.onset, s.group_index)) ||
            (in_coda && cluster_internal(syl.coda, s.group_index));

        const FlankOffsets vp = vp_offsets(profile, cls, in_coda);
        entry.gestures.push_back({gestures[1].name, s.ts + vp.lag, s.te - vp.lead});

        // A vowel after a voiceless sound keeps the open glottis of that
        // sound (aspiration carry-over) instead of its own closing gesture.
        std::string glottal_name = gestures[2].name;
        if (cls == SoundClass::vowel && i > 0) {
            const std::string& prev = slots[i - 1].symbol;
            if (is_voiceless(inv, prev)) {
                const auto prev_gestures = gestures_for_phoneme(inv, prev);
                glottal_name = prev_gestures.back().name;
            }
        }
        const FlankOffsets gl = gl_offsets(profile, cls, internal);
        entry.gestures.push_back({glottal_name, s.ts + gl.lag, s.te - gl.lead});
    }
    return entry;
}

namespace {

GestureScore assemble(const Utterance& u, const Inventory& inv,
                      const TimingProfile& profile,
                      const Syllabary* syllabary) {
    GestureScore score;
    score.label = u.source;
    for (TierId t : kAllTiers) score.tiers[t];

    double base = profile.lead_in;
    double max_offset = 0.0;
    for (const Syllable& syl : u.syllables) {
        const SyllabaryEntry* entry = nullptr;
        SyllabaryEntry rule_entry;
        if (syllabary) {
            auto it = syllabary->entries.find(syllable_key(syl));
            if (it != syllabary->entries.end()) entry = &it->second;
        }
        if (!entry) {
            rule_entry = rule_syllabary_entry(syl, inv, profile);
            entry = &rule_entry;
        }
        for (const auto& g : entry->gestures) {
            const GestureSpec& spec = inv.spec(g.spec_name);
            GestureInstance instance =
                make_instance(inv, spec, base + g.onset, base + g.offset);
            max_offset = std::max(max_offset, instance.t_e);
            score.tier(spec.tier).push_back(std::move(instance));
        }
        base += entry->tract_extent + profile.syllable_gap;
    }

    score.window = {0.0, max_offset + profile.lead_out};
    for (auto& [tier, instances] : score.tiers) {
        std::stable_sort(instances.begin(), instances.end(),
                         [](const auto& a, const auto& b) { return a.t_s < b.t_s; });
    }
    return score;
}

}  // namespace

GestureScore build_score_rule(const Utterance& u, const Inventory& inv,
                              const TimingProfile& profile) {
    return assemble(u, inv, profile, nullptr);
}

GestureScore build_score_lexicon(const Utterance& u, const Syllabary& syl,
                                 const Inventory& inv,
                                 const TimingProfile& profile) {
    return assemble(u, inv, profile, &syl);
}

GestureScore merge_adjacent(const GestureScore& score, double gap_threshold) {
    GestureScore out = score;
    for (TierId tier_id : {TierId::velopharyngeal, TierId::glottal}) {
        auto it = out.tiers.find(tier_id);
        if (it == out.tiers.end()) continue;
        std::vector<GestureInstance> merged;
        for (const GestureInstance& g : it->second) {
            if (!merged.empty() && merged.back().spec_name == g.spec_name &&
                g.t_s - merged.back().t_e <= gap_threshold) {
                if (g.t_e > merged.back().t_e) {
                    merged.back().t_e = g.t_e;
                    merged.back().tau_off = g.tau_off;
                }
            } else {
                merged.push_back(g);
            }
        }
        it->second = std::move(merged);
    }
    return out;
}

GestureScore fill_neutral(const GestureScore& score, const Inventory& inv) {
    GestureScore out = score;
    for (TierId tier_id : kAllTiers) {
        const GestureSpec& neutral = inv.neutral_spec(tier_id);
        const double flank =
            inv.kappa_for(tier_id) / neutral.rapidity;

        auto& instances = out.tiers[tier_id];
        std::vector<std::pair<double, double>> spans;
        for (const auto& g : instances) spans.emplace_back(g.t_s, g.t_e);
        std::sort(spans.begin(), spans.end());

        std::vector<std::pair<double, double>> gaps;
        double cursor = out.window.begin_ms;
        for (const auto& [s, e] : spans) {
            if (s > cursor + 1e-9) gaps.emplace_back(cursor, s);
            cursor = std::max(cursor, e);
        }
        if (cursor < out.window.end_ms - 1e-9) {
            gaps.emplace_back(cursor, out.window.end_ms);
        }

        for (const auto& [a, b] : gaps) {
            const double t_s = std::max(out.window.begin_ms, a - flank);
            const double t_e = std::min(out.window.end_ms, b + flank);
            instances.push_back(make_instance(inv, neutral, t_s, t_e, true));
        }
        std::stable_sort(instances.begin(), instances.end(),
                         [](const auto& x, const auto& y) { return x.t_s < y.t_s; });
    }
    return out;
}

GestureScore add_pulmonary(const GestureScore& score, const Inventory& inv) {
    double first = std::numeric_limits<double>::infinity();
    double last = -std::numeric_limits<double>::infinity();
    for (TierId tier_id : kAllTiers) {
        for (const auto& g : score.tier(tier_id)) {
            if (g.is_neutral) continue;
            first = std::min(first, g.t_s);
            last = std::max(last, g.t_e);
        }
    }
    if (!(first < last)) return score;  // nothing to breathe over

    GestureScore out = score;
    if (inv.pulmonary_spec.empty()) {
        throw InventoryError("inventory has no pulmonary spec");
    }
    const GestureSpec& spec = inv.spec(inv.pulmonary_spec);
    const double flank = inv.kappa_for(TierId::pulmonary) / spec.rapidity;
    const double t_s = std::max(out.window.begin_ms, first - flank);
    const double t_e = std::min(out.window.end_ms, last + flank);
    auto& tier = out.tiers[TierId::pulmonary];
    tier.push_back(make_instance(inv, spec, t_s, t_e));
    std::stable_sort(tier.begin(), tier.end(),
                     [](const auto& a, const auto& b) { return a.t_s < b.t_s; });
    return out;
}

GestureScore build_score_pipeline(const Utterance& u, const Inventory& inv,
                                  const Syllabary* syl,
                                  const TimingProfile& profile,
                                  double gap_threshold) {
    GestureScore score = syl ? build_score_lexicon(u, *syl, inv, profile)
                             : build_score_rule(u, inv, profile);
    score = merge_adjacent(score, gap_threshold);
    score = add_pulmonary(score, inv);
    score = fill_neutral(score, inv);
    return score;
}

Syllabary load_syllabary(std::istream& in, const Inventory& inv) {
    Syllabary syl;
    std::string line;
    std::size_t line_no = 0;
    bool in_block = false;
    std::string key;
    SyllabaryEntry entry;

    auto tokenize = [&](const std::string& l) {
        std::vector<std::string> tokens;
        std::size_t i = 0;
        while (i < l.size()) {
            if (std::isspace(static_cast<unsigned char>(l[i]))) { ++i; continue; }
            if (l[i] == '#') break;
            if (l[i] == '"') {
                const std::size_t start = ++i;
                while (i < l.size() && l[i] != '"') ++i;
                if (i == l.size()) throw ParseError("unterminated quoted string", line_no, start);
                tokens.push_back(l.substr(start, i - start));
                ++i;
            } else {
                const std::size_t start = i;
                while (i < l.size() && !std::isspace(static_cast<unsigned char>(l[i])) && l[i] != '#') ++i;
                tokens.push_back(l.substr(start, i - start));
            }
        }
        return tokens;
    };
    auto number = [&](const std::string& tok) {
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw ParseError("expected a number, got '" + tok + "'", line_no, 1);
        }
    };

    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (in_block) {
            if (tokens[0] == "}") {
                if (syl.entries.count(key)) {
                    throw InventoryError("duplicate syllabary entry '" + key + "'");
                }
                syl.entries.emplace(key, std::move(entry));
                entry = {};
                in_block = false;
            } else if (tokens[0] == "gesture" && tokens.size() == 4) {
                const std::string& name = tokens[1];
                if (!inv.specs.count(name)) {
                    throw InventoryError("syllabary entry '" + key +
                                         "' references unknown gesture '" + name + "'");
                }
                const double onset = number(tokens[2]);
                const double offset = number(tokens[3]);
                if (!(onset < offset)) {
                    throw InventoryError("syllabary entry '" + key +
                                         "': gesture onset must precede offset");
                }
                entry.gestures.push_back({name, onset, offset});
            } else if (tokens[0] == "extent" && tokens.size() == 2) {
                entry.tract_extent = number(tokens[1]);
            } else {
                throw ParseError("unexpected syllabary attribute '" + tokens[0] + "'",
                                 line_no, 1);
            }
        } else if (tokens[0] == "syllable" && tokens.size() == 3 && tokens[2] == "{") {
            key = tokens[1];
            in_block = true;
        } else {
            throw ParseError("unexpected directive '" + tokens[0] + "'", line_no, 1);
        }
    }
    if (in_block) throw ParseError("unterminated syllable block '" + key + "'", line_no, 1);
    return syl;
}

Syllabary load_syllabary(const std::string& text, const Inventory& inv) {
    std::istringstream in(text);
    return load_syllabary(in, inv);
}

Syllabary load_syllabary_file(const std::filesystem::path& path, const Inventory& inv) {
    std::ifstream in(path);
    if (!in) {
        throw InventoryError("cannot open syllabary file '" + path.string() + "'");
    }
    return load_syllabary(in, inv);
}

std::string write_syllabary(const Syllabary& syl) {
    std::ostringstream out;
    for (const auto& [key, entry] : syl.entries) {
        out << "syllable \"" << key << "\" {\n";
        for (const auto& g : entry.gestures) {
            out << "  gesture \"" << g.spec_name << "\" " << g.onset << " "
                << g.offset << "\n";
        }
        out << "  extent " << entry.tract_extent << "\n";
        out << "}\n";
    }
    return out.str();
}

}  // namespace gestra
