#include "gestra/inventory.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace gestra {

namespace {

// Splits one line into whitespace-separated tokens; double-quoted tokens
// may contain spaces. '#' starts a comment outside quotes.
std::vector<std::string> tokenize_line(const std::string& line, std::size_t line_no) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        if (line[i] == '"') {
            const std::size_t start = ++i;
            while (i < line.size() && line[i] != '"') ++i;
            if (i == line.size()) {
                throw ParseError("unterminated quoted string", line_no, start);
            }
            tokens.push_back(line.substr(start, i - start));
            ++i;
        } else {
            const std::size_t start = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
                   line[i] != '#') {
                ++i;
            }
            tokens.push_back(line.substr(start, i - start));
        }
    }
    return tokens;
}

double parse_number(const std::string& tok, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected a number, got '" + tok + "'", line_no, 1);
    }
}

void validate_spec(const GestureSpec& spec) {
    if (spec.targets.empty()) {
        throw InventoryError("gesture '" + spec.name + "': no targets");
    }
    for (const auto& [p, v] : spec.targets) {
        const auto& owned = tier_params(spec.tier);
        if (std::find(owned.begin(), owned.end(), p) == owned.end()) {
            throw InventoryError("gesture '" + spec.name + "': parameter " +
                                 std::string(to_string(p)) + " not owned by tier " +
                                 std::string(to_string(spec.tier)));
        }
        const ParamRange r = param_range(p);
        if (v < r.lo || v > r.hi) {
            throw InventoryError("gesture '" + spec.name + "': target " +
                                 std::string(to_string(p)) + " = " + std::to_string(v) +
                                 " out of range");
        }
    }
    if (!(spec.mean_duration_ms > 0.0)) {
        throw InventoryError("gesture '" + spec.name + "': duration must be > 0");
    }
    if (!(spec.rapidity > 0.0)) {
        throw InventoryError("gesture '" + spec.name + "': rapidity must be > 0");
    }
}

}  // namespace

double Inventory::kappa_for(TierId tier) const {
    auto it = kappa_overrides.find(tier);
    return it == kappa_overrides.end() ? kappa : it->second;
}

const GestureSpec& Inventory::spec(const std::string& name) const {
    auto it = specs.find(name);
    if (it == specs.end()) {
        throw InventoryError("unknown gesture spec '" + name + "'");
    }
    return it->second;
}

const GestureSpec& Inventory::neutral_spec(TierId tier) const {
    auto it = neutral_specs.find(tier);
    if (it == neutral_specs.end()) {
        throw InventoryError("no neutral spec configured for tier " +
                             std::string(to_string(tier)));
    }
    return spec(it->second);
}

Inventory load_inventory(std::istream& in) {
    Inventory inv;
    std::string line;
    std::size_t line_no = 0;

    bool in_gesture = false;
    GestureSpec current;

    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = tokenize_line(line, line_no);
        if (tokens.empty()) continue;
        const std::string& head = tokens[0];

        if (in_gesture) {
            if (head == "}") {
                validate_spec(current);
                if (inv.specs.count(current.name)) {
                    throw InventoryError("duplicate gesture '" + current.name + "'");
                }
                inv.specs.emplace(current.name, std::move(current));
                current = {};
                in_gesture = false;
            } else if (head == "tier" && tokens.size() == 2) {
                auto tier = tier_from_string(tokens[1]);
                if (!tier) throw ParseError("unknown tier '" + tokens[1] + "'", line_no, 1);
                current.tier = *tier;
            } else if (head == "articulators" && tokens.size() >= 2) {
                current.main_articulators.assign(tokens.begin() + 1, tokens.end());
            } else if (head == "lateral" && tokens.size() == 2) {
                auto shape = lateral_shape_from_string(tokens[1]);
                if (!shape) {
                    throw ParseError("unknown lateral shape '" + tokens[1] + "'", line_no, 1);
                }
                current.lateral_shape = *shape;
            } else if (head == "target" && tokens.size() == 3) {
                auto p = control_param_from_string(tokens[1]);
                if (!p) {
                    throw ParseError("unknown control parameter '" + tokens[1] + "'",
                                     line_no, 1);
                }
                current.targets[*p] = parse_number(tokens[2], line_no);
            } else if (head == "duration" && tokens.size() == 2) {
                current.mean_duration_ms = parse_number(tokens[1], line_no);
            } else if (head == "rapidity" && tokens.size() == 2) {
                current.rapidity = parse_number(tokens[1], line_no);
            } else {
                throw ParseError("unexpected gesture attribute '" + head + "'", line_no, 1);
            }
            continue;
        }

        if (head == "gesture" && tokens.size() == 3 && tokens[2] == "{") {
            current = {};
            current.name = tokens[1];
            in_gesture = true;
        } else if (head == "kappa" && tokens.size() == 2) {
            inv.kappa = parse_number(tokens[1], line_no);
        } else if (head == "kappa" && tokens.size() == 3) {
            auto tier = tier_from_string(tokens[1]);
            if (!tier) throw ParseError("unknown tier '" + tokens[1] + "'", line_no, 1);
            inv.kappa_overrides[*tier] = parse_number(tokens[2], line_no);
        } else if (head == "pull_mode" && tokens.size() == 2) {
            if (tokens[1] == "rapidity") {
                inv.pull_mode = PullMode::rapidity;
            } else if (tokens[1] == "reciprocal") {
                inv.pull_mode = PullMode::reciprocal;
            } else {
                throw ParseError("unknown pull mode '" + tokens[1] + "'", line_no, 1);
            }
        } else if (head == "phoneme" && tokens.size() >= 3) {
            std::vector<std::string> names(tokens.begin() + 2, tokens.end());
            if (inv.phoneme_map.count(tokens[1])) {
                throw InventoryError("duplicate phoneme '" + tokens[1] + "'");
            }
            inv.phoneme_map.emplace(tokens[1], std::move(names));
        } else if (head == "neutral" && tokens.size() == 3) {
            auto tier = tier_from_string(tokens[1]);
            if (!tier) throw ParseError("unknown tier '" + tokens[1] + "'", line_no, 1);
            inv.neutral_specs[*tier] = tokens[2];
        } else if (head == "pulmonary" && tokens.size() == 2) {
            inv.pulmonary_spec = tokens[1];
        } else {
            throw ParseError("unexpected directive '" + head + "'", line_no, 1);
        }
    }
    if (in_gesture) {
        throw ParseError("unterminated gesture block '" + current.name + "'", line_no, 1);
    }

    // Reference integrity and phoneme-map arity.
    for (const auto& [phoneme, names] : inv.phoneme_map) {
        for (const auto& name : names) {
            if (!inv.specs.count(name)) {
                throw InventoryError("phoneme '" + phoneme +
                                     "' references unknown gesture '" + name + "'");
            }
        }
        const bool glottal_only =
            names.size() == 1 && inv.spec(names[0]).tier == TierId::glottal;
        if (!glottal_only && names.size() != 3) {
            throw InventoryError("phoneme '" + phoneme +
                                 "' must map to 3 gestures (or 1 glottal gesture)");
        }
    }
    for (const auto& [tier, name] : inv.neutral_specs) {
        if (!inv.specs.count(name)) {
            throw InventoryError("neutral spec '" + name + "' for tier " +
                                 std::string(to_string(tier)) + " is unknown");
        }
    }
    if (!inv.pulmonary_spec.empty() && !inv.specs.count(inv.pulmonary_spec)) {
        throw InventoryError("pulmonary spec '" + inv.pulmonary_spec + "' is unknown");
    }
    if (!(inv.kappa > 0.0)) throw InventoryError("kappa must be > 0");
    return inv;
}

Inventory load_inventory(const std::string& text) {
    std::istringstream in(text);
    return load_inventory(in);
}

Inventory load_inventory_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InventoryError("cannot open inventory file '" + path.string() + "'");
    }
    return load_inventory(in);
}

std::vector<GestureSpec> gestures_for_phoneme(const Inventory& inv,
                                              const std::string& phoneme) {
    auto it = inv.phoneme_map.find(phoneme);
    if (it == inv.phoneme_map.end()) {
        throw UnknownSymbolError("unknown phoneme '" + phoneme + "'", 0);
    }
    std::vector<GestureSpec> out;
    out.reserve(it->second.size());
    for (const auto& name : it->second) out.push_back(inv.spec(name));
    return out;
}

DerivedParams derive_instance_params(const GestureSpec& spec, double kappa,
                                     PullMode mode) {
    const double tau = kappa / spec.rapidity;
    const double pull =
        mode == PullMode::rapidity ? spec.rapidity : 1.0 / spec.rapidity;
    return {tau, tau, pull};
}

GestureInstance make_instance(const Inventory& inv, const GestureSpec& spec,
                              double t_s, double t_e, bool is_neutral) {
    const auto derived =
        derive_instance_params(spec, inv.kappa_for(spec.tier), inv.pull_mode);
    GestureInstance g;
    g.spec_name = spec.name;
    g.t_s = t_s;
    g.t_e = t_e;
    // Short instances cannot carry full flanks; split the interval evenly.
    const double half = (t_e - t_s) / 2.0;
    g.tau_on = std::min(derived.tau_on, half);
    g.tau_off = std::min(derived.tau_off, half);
    g.targets = spec.targets;
    g.pull = derived.pull;
    g.is_neutral = is_neutral;
    g.lateral_shape = spec.lateral_shape;
    return g;
}

SoundClass classify_phoneme(const Inventory& inv, const std::string& phoneme) {
    const auto gestures = gestures_for_phoneme(inv, phoneme);
    if (gestures.size() == 1 && gestures[0].tier == TierId::glottal) {
        return SoundClass::glottal;
    }
    if (gestures[0].tier == TierId::vocalic) return SoundClass::vowel;
    // Velopharyngeal target decides: opening (< -0.25) nasal, tight
    // closing (> 0.25) obstruent, plain closing sonorant.
    const double vel = gestures[1].targets.at(ControlParamId::vel);
    if (vel < -0.25) return SoundClass::nasal;
    if (vel > 0.25) return SoundClass::obstruent;
    return SoundClass::sonorant;
}

bool is_voiceless(const Inventory& inv, const std::string& phoneme) {
    const auto gestures = gestures_for_phoneme(inv, phoneme);
    const GestureSpec& glottal = gestures.back();
    if (glottal.tier != TierId::glottal) return false;
    // Open glottis (small opg closing value) means no phonation.
    return glottal.targets.at(ControlParamId::opg) < 0.25;
}

bool is_vowel(const Inventory& inv, const std::string& phoneme) {
    return classify_phoneme(inv, phoneme) == SoundClass::vowel;
}

}  // namespace gestra
