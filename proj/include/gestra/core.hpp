#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gestra {

/// The nine continuous, normalized control parameters driven by gestures.
enum class ControlParamId {
    hei,      // vocalic height
    pos,      // vocalic fronting
    rou,      // lip rounding (negative = spreading)
    clo_lab,  // labial closure
    clo_api,  // apical closure
    clo_dor,  // dorsal closure
    vel,      // velopharyngeal closure (negative = velum lowered)
    opg,      // glottal opening
    pres,     // subglottal pressure
};

inline constexpr std::array<ControlParamId, 9> kAllControlParams = {
    ControlParamId::hei,     ControlParamId::pos,     ControlParamId::rou,
    ControlParamId::clo_lab, ControlParamId::clo_api, ControlParamId::clo_dor,
    ControlParamId::vel,     ControlParamId::opg,     ControlParamId::pres,
};

struct ParamRange {
    double lo;
    double hi;
};

/// Admissible value range of a control parameter.
ParamRange param_range(ControlParamId p);

std::string_view to_string(ControlParamId p);
std::optional<ControlParamId> control_param_from_string(std::string_view s);

/// The five parallel channels of a gesture score.
enum class TierId {
    vocalic,
    consonantal,
    velopharyngeal,
    glottal,
    pulmonary,
};

inline constexpr std::array<TierId, 5> kAllTiers = {
    TierId::vocalic, TierId::consonantal, TierId::velopharyngeal,
    TierId::glottal, TierId::pulmonary,
};

std::string_view to_string(TierId t);
std::optional<TierId> tier_from_string(std::string_view s);

/// Control parameters owned by a tier; targets of a gesture on that tier
/// may only name these.
const std::vector<ControlParamId>& tier_params(TierId t);

/// Tier a control parameter belongs to.
TierId param_tier(ControlParamId p);

/// Main-articulator shape annotation (manner of articulation channel).
enum class LateralShape {
    normal,
    mid,       // central groove (fricatives)
    lateral,   // lateral lowering (/l/)
    to_teeth,  // labio-dental
};

std::string_view to_string(LateralShape s);
std::optional<LateralShape> lateral_shape_from_string(std::string_view s);

using TargetMap = std::map<ControlParamId, double>;

/// Language-inventory entry: one row of the gesture parameter table.
struct GestureSpec {
    std::string name;
    TierId tier = TierId::vocalic;
    std::vector<std::string> main_articulators;
    LateralShape lateral_shape = LateralShape::normal;
    TargetMap targets;
    double mean_duration_ms = 0.0;
    double rapidity = 0.0;
};

/// One timed activation of a gesture within a score.
///
/// The activation window is the half-open interval [t_s, t_e); tau_on and
/// tau_off are the rising/falling flank durations.
struct GestureInstance {
    std::string spec_name;
    double t_s = 0.0;
    double t_e = 0.0;
    double tau_on = 0.0;
    double tau_off = 0.0;
    TargetMap targets;
    double pull = 1.0;
    bool is_neutral = false;
    LateralShape lateral_shape = LateralShape::normal;

    double duration() const { return t_e - t_s; }
    bool active_at(double t) const { return t_s <= t && t < t_e; }
};

struct TimeWindow {
    double begin_ms = 0.0;
    double end_ms = 0.0;
};

/// Utterance-level gesture plan: five tiers of time-ordered instances.
struct GestureScore {
    std::string label;
    std::map<TierId, std::vector<GestureInstance>> tiers;
    TimeWindow window;

    std::vector<GestureInstance>& tier(TierId t) { return tiers[t]; }
    const std::vector<GestureInstance>& tier(TierId t) const;
};

/// Sampled control-parameter output.
struct TrajectorySet {
    double dt_ms = 5.0;
    double t0_ms = 0.0;
    std::map<ControlParamId, std::vector<double>> series;
    std::vector<LateralShape> lateral_series;

    std::size_t sample_count() const { return lateral_series.size(); }
};

/// Number of samples for a window [t0, t_end] at step dt:
/// floor((t_end - t0)/dt) + 1.
std::size_t sample_count_for(double t0, double t_end, double dt);

/// One broken invariant found by validate_score.
struct Violation {
    TierId tier;
    std::size_t instance_index;  // index within tier; npos for tier-level rules
    std::string rule;
    std::string message;

    static constexpr std::size_t kTierLevel = static_cast<std::size_t>(-1);
};

/// Checks every structural invariant of a score: instance ordering, flank
/// budgets, target ranges, tier ownership, window containment. Returns an
/// empty list iff the score is well formed. Deterministic and order-stable.
///
/// Tier coverage (no gaps) only holds after neutral fill, so it is checked
/// separately by check_coverage.
std::vector<Violation> validate_score(const GestureScore& score);

/// Gap check: one violation per maximal uncovered interval of [begin, end).
std::vector<Violation> check_coverage(const GestureScore& score);

}  // namespace gestra
