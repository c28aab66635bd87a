#pragma once

// Per-epsilon growth curves aggregated into an entropy profile: fitted
// symbolic classes, family projections, and the nonwandering/full-space
// entropy-number pair.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "oge/estimators.hpp"
#include "oge/growth.hpp"
#include "oge/systems.hpp"

namespace oge {

/// How the sample mesh is derived from each epsilon.
struct DeltaRule {
    enum class Kind { Ratio, Fixed } kind = Kind::Ratio;
    double value = 0.25;  // delta = value * eps, or delta = value

    static DeltaRule ratio(double r = 0.25) { return {Kind::Ratio, r}; }
    static DeltaRule fixed(double d) { return {Kind::Fixed, d}; }
    double delta_for(double eps) const { return kind == Kind::Ratio ? value * eps : value; }
};

struct EntropyProfile {
    std::vector<double> epsilons;  // strictly descending
    std::vector<GrowthSequence> curves;
    std::vector<Classification> fitted;  // one per epsilon
    double h = 0.0;      // exponential projection of the smallest-eps curve
    double h_pol = 0.0;  // polynomial projection of the smallest-eps curve
    std::optional<SymbolicOrder> stable_class;  // empty = not stabilized / unresolved
    bool stabilized = false;
    nlohmann::json system_params;
    std::string system_name;

    nlohmann::json to_json() const;
};

/// Landmark classes used to report entropy numbers (plus an adaptive
/// exponential candidate when the rate projection is positive).
std::vector<SymbolicOrder> landmark_catalog();

/// Computes growth_curve per epsilon, classifies each curve, reports the
/// family projections of the smallest-epsilon curve, and the stabilized
/// class (agreement of the two smallest epsilons). Requires >= 3 strictly
/// descending epsilons.
EntropyProfile entropy_profile(const DynamicalSystemSpec& spec, const std::vector<double>& epsilons,
                               std::size_t n_max, const DeltaRule& rule = DeltaRule::ratio());

/// Same, on caller-supplied samples (restriction to a compact subset).
EntropyProfile entropy_profile_on(const DynamicalSystemSpec& spec,
                                  const std::vector<Point>& samples,
                                  const std::vector<double>& epsilons, std::size_t n_max);

struct EntropyNumbers {
    SymbolicOrder omega;  // class on the nonwandering samples
    SymbolicOrder full;   // class on the full space
    bool omega_resolved = false;
    bool full_resolved = false;
    EntropyProfile omega_profile;
    EntropyProfile full_profile;

    nlohmann::json to_json() const;
};

/// The pair (class on omega samples, class on the full space), computed on
/// the same epsilon grid and snapped to the landmark catalog. Requires an
/// omega_sampler; enforces omega <= full under compare_symbolic.
EntropyNumbers entropy_numbers(const DynamicalSystemSpec& spec, const std::vector<double>& epsilons,
                               std::size_t n_max, const DeltaRule& rule = DeltaRule::ratio());

}  // namespace oge
