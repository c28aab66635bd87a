#include "oge/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oge {

namespace {

void validate_epsilons(const std::vector<double>& eps) {
    if (eps.size() < 3) throw std::invalid_argument("entropy profile: need >= 3 epsilons");
    for (std::size_t i = 0; i + 1 < eps.size(); ++i)
        if (!(eps[i] > eps[i + 1]))
            throw std::invalid_argument("entropy profile: epsilons must be strictly descending");
    if (!(eps.back() > 0)) throw std::invalid_argument("entropy profile: epsilons must be positive");
}

GrowthSequence curve_from_table(const OrbitTable& table, double eps, std::size_t n_max) {
    std::vector<double> counts(n_max);
    for (std::size_t n = 1; n <= n_max; ++n)
        counts[n - 1] = static_cast<double>(greedy_separated(table, n, eps).count);
    return GrowthSequence::running_max(counts);
}

nlohmann::json num_or_inf(double v) {
    if (std::isinf(v)) return "inf";
    return v;
}

EntropyProfile profile_impl(const DynamicalSystemSpec& spec, const std::vector<double>& epsilons,
                            std::size_t n_max, const std::vector<std::vector<Point>>& samples_per_eps) {
    EntropyProfile out;
    out.epsilons = epsilons;
    out.system_name = spec.name;
    out.system_params = spec.params;

    for (std::size_t e = 0; e < epsilons.size(); ++e) {
        OrbitTable table(spec, samples_per_eps[e], n_max);
        out.curves.push_back(curve_from_table(table, epsilons[e], n_max));
    }

    // Projections come from the smallest-epsilon curve.
    const GrowthSequence& finest = out.curves.back();
    out.h = project_onto_family(finest, FamilyBase::Exponential);
    out.h_pol = project_onto_family(finest, FamilyBase::Polynomial);

    // Shared catalog: landmarks plus one exponential candidate fitted on the
    // finest curve, so that agreeing curves classify to the same element.
    auto catalog = landmark_catalog();
    if (std::isfinite(out.h) && out.h > 0.02) catalog.push_back(SymbolicOrder::exponential(out.h));

    for (const auto& c : out.curves) out.fitted.push_back(classify_sequence(c, catalog));

    const auto& last = out.fitted[out.fitted.size() - 1];
    const auto& prev = out.fitted[out.fitted.size() - 2];
    if (last.cls && prev.cls && compare_symbolic(*last.cls, *prev.cls) == OrderRelation::Equivalent) {
        out.stabilized = true;
        out.stable_class = last.cls;
    }
    return out;
}

// Snap a profile to a reportable class: the stabilized class if any, else
// the landmark classification of the finest curve; Unresolved is reported,
// never guessed.
std::pair<SymbolicOrder, bool> snap_class(const EntropyProfile& p) {
    if (p.stabilized && p.stable_class) return {*p.stable_class, true};
    auto catalog = landmark_catalog();
    if (std::isfinite(p.h) && p.h > 0.02) catalog.push_back(SymbolicOrder::exponential(p.h));
    auto cls = classify_sequence(p.curves.back(), catalog);
    if (cls.cls) return {*cls.cls, true};
    return {SymbolicOrder::zero(), false};
}

}  // namespace

std::vector<SymbolicOrder> landmark_catalog() {
    return {
        SymbolicOrder::zero(),          SymbolicOrder::poly_log(0, 1),  // log n
        SymbolicOrder::polynomial(0.5), SymbolicOrder::polynomial(1),
        SymbolicOrder::poly_log(1, 1),  // n log n
        SymbolicOrder::polynomial(1.5), SymbolicOrder::polynomial(2),
        SymbolicOrder::polynomial(3),
    };
}

EntropyProfile entropy_profile(const DynamicalSystemSpec& spec, const std::vector<double>& epsilons,
                               std::size_t n_max, const DeltaRule& rule) {
    validate_epsilons(epsilons);
    std::vector<std::vector<Point>> samples;
    for (double eps : epsilons) {
        const double delta = rule.delta_for(eps);
        if (!(delta <= eps / 4.0))
            throw std::invalid_argument("entropy_profile: delta rule violates delta <= eps/4");
        samples.push_back(spec.sampler(delta));
    }
    return profile_impl(spec, epsilons, n_max, samples);
}

EntropyProfile entropy_profile_on(const DynamicalSystemSpec& spec, const std::vector<Point>& samples,
                                  const std::vector<double>& epsilons, std::size_t n_max) {
    validate_epsilons(epsilons);
    std::vector<std::vector<Point>> per_eps(epsilons.size(), samples);
    return profile_impl(spec, epsilons, n_max, per_eps);
}

nlohmann::json EntropyProfile::to_json() const {
    nlohmann::json j;
    j["system"] = system_name;
    j["params"] = system_params;
    j["epsilons"] = epsilons;
    j["n_max"] = curves.empty() ? 0 : curves.front().window();
    nlohmann::json curves_json = nlohmann::json::array();
    for (const auto& c : curves) curves_json.push_back(c.values());
    j["curves"] = curves_json;
    nlohmann::json fitted_json = nlohmann::json::array();
    for (const auto& f : fitted) {
        nlohmann::json fj;
        fj["class"] = f.cls ? f.cls->to_string() : "Unresolved";
        fj["residual"] = f.residual;
        fitted_json.push_back(fj);
    }
    j["fitted"] = fitted_json;
    j["h"] = num_or_inf(h);
    j["h_pol"] = num_or_inf(h_pol);
    j["stable_class"] = stable_class ? stable_class->to_string() : "Unresolved";
    j["stabilized"] = stabilized;
    return j;
}

nlohmann::json EntropyNumbers::to_json() const {
    nlohmann::json j;
    j["omega"] = omega_resolved ? omega.to_string() : "Unresolved";
    j["full"] = full_resolved ? full.to_string() : "Unresolved";
    j["omega_profile"] = omega_profile.to_json();
    j["full_profile"] = full_profile.to_json();
    return j;
}

EntropyNumbers entropy_numbers(const DynamicalSystemSpec& spec, const std::vector<double>& epsilons,
                               std::size_t n_max, const DeltaRule& rule) {
    if (!spec.omega_sampler)
        throw std::invalid_argument(
            "entropy_numbers: system supplies no omega sampler; use entropy_profile for the "
            "full-space class");
    validate_epsilons(epsilons);

    EntropyNumbers out;
    out.full_profile = entropy_profile(spec, epsilons, n_max, rule);

    std::vector<std::vector<Point>> omega_samples;
    for (double eps : epsilons) omega_samples.push_back(spec.omega_sampler(rule.delta_for(eps)));
    out.omega_profile = profile_impl(spec, epsilons, n_max, omega_samples);

    auto [oc, ook] = snap_class(out.omega_profile);
    auto [fc, fok] = snap_class(out.full_profile);
    out.omega = oc;
    out.full = fc;
    out.omega_resolved = ook;
    out.full_resolved = fok;

    if (ook && fok && compare_symbolic(out.omega, out.full) == OrderRelation::Greater)
        throw std::logic_error("entropy_numbers: omega class exceeds the full-space class");
    return out;
}

}  // namespace oge
