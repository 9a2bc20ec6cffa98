#pragma once

#include "gestra/core.hpp"
#include "gestra/errors.hpp"

#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <vector>

namespace gestra {

/// Broad sound class used by the timing rules.
enum class SoundClass {
    vowel,
    obstruent,   // velopharyngeal tight closing
    nasal,       // velopharyngeal opening
    sonorant,    // oral sonorant (velopharyngeal closing)
    glottal,     // single-gesture glottal consonant
};

/// How rapidity maps to the blending weight of derived instances.
enum class PullMode {
    rapidity,    // pull = rapidity (default)
    reciprocal,  // pull = 1 / rapidity
};

/// Language-specific gesture inventory: gesture specs, the phoneme map,
/// tier-neutral specs, and the flank conversion constant kappa.
struct Inventory {
    std::map<std::string, GestureSpec> specs;
    // Ordered tract, velopharyngeal, glottal; glottal consonants have one entry.
    std::map<std::string, std::vector<std::string>> phoneme_map;
    double kappa = 1000.0;                     // ms * rapidity
    std::map<TierId, double> kappa_overrides;  // per-tier
    std::map<TierId, std::string> neutral_specs;
    std::string pulmonary_spec;
    PullMode pull_mode = PullMode::rapidity;

    double kappa_for(TierId tier) const;
    const GestureSpec& spec(const std::string& name) const;
    const GestureSpec& neutral_spec(TierId tier) const;
};

/// Parses an inventory document. Throws ParseError (with line/column) on
/// syntax problems and InventoryError on dangling references, arity
/// violations of the phoneme map, or out-of-range targets.
Inventory load_inventory(std::istream& in);
Inventory load_inventory(const std::string& text);
Inventory load_inventory_file(const std::filesystem::path& path);

/// Resolved gesture specs for a phoneme, in tract / velopharyngeal /
/// glottal order. Throws UnknownSymbolError for unmapped phonemes.
std::vector<GestureSpec> gestures_for_phoneme(const Inventory& inv,
                                              const std::string& phoneme);

struct DerivedParams {
    double tau_on;
    double tau_off;
    double pull;
};

/// Converts spec-level rapidity into instance flanks and pull weight:
/// tau_on = tau_off = kappa / rapidity, pull = rapidity (or its
/// reciprocal, depending on mode).
DerivedParams derive_instance_params(const GestureSpec& spec, double kappa,
                                     PullMode mode = PullMode::rapidity);

/// Builds a timed instance of a spec. Flanks come from
/// derive_instance_params and are clamped to half the actual duration when
/// the interval is too short to carry full flanks.
GestureInstance make_instance(const Inventory& inv, const GestureSpec& spec,
                              double t_s, double t_e, bool is_neutral = false);

SoundClass classify_phoneme(const Inventory& inv, const std::string& phoneme);

/// True when the phoneme's glottal gesture is an opening one (devoicing).
bool is_voiceless(const Inventory& inv, const std::string& phoneme);

bool is_vowel(const Inventory& inv, const std::string& phoneme);

}  // namespace gestra
