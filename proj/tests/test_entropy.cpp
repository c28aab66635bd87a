#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oge/entropy.hpp"

#include <cmath>

using namespace oge;

namespace {
constexpr double kGolden = 0.6180339887498949;
}

TEST_CASE("rotation profile: stable class 0, zero projections") {
    auto p = entropy_profile(rotation(kGolden), {0.2, 0.1, 0.05}, 100);
    CHECK(p.h == 0.0);
    CHECK(p.h_pol == 0.0);
    REQUIRE(p.stabilized);
    CHECK(p.stable_class->to_string() == "0");
    // Curves pointwise monotone non-increasing in eps.
    for (std::size_t n = 1; n <= 100; ++n) {
        CHECK(p.curves[0].value(n) <= p.curves[1].value(n));
        CHECK(p.curves[1].value(n) <= p.curves[2].value(n));
    }
}

TEST_CASE("full shift profile: exponential class at rate log 2") {
    auto spec = full_shift(2, 14);
    auto p = entropy_profile(spec, {0.25, 0.125, 0.0625}, 10,
                             DeltaRule::fixed(std::pow(2.0, -14)));
    CHECK(std::isfinite(p.h));
    CHECK(p.h == doctest::Approx(std::log(2.0)).epsilon(0.05));
    REQUIRE(p.stabilized);
    CHECK(p.stable_class->exp_rate == doctest::Approx(std::log(2.0)).epsilon(0.05));
}

TEST_CASE("twist annulus profile: linear class") {
    // Vertical refinement must resolve eps/(2 n span) for the counts to
    // keep growing linearly through the horizon.
    auto spec = twist_annulus(0.0, 1.0, 40);
    auto p = entropy_profile(spec, {0.4, 0.2, 0.1}, 60);
    CHECK(p.h_pol == doctest::Approx(1.0).epsilon(0.25));
    REQUIRE(p.stabilized);
    CHECK(p.stable_class->poly_deg == 1.0);
    CHECK(p.stable_class->log_deg == 0.0);
}

TEST_CASE("profile validation") {
    auto r = rotation(kGolden);
    CHECK_THROWS(entropy_profile(r, {0.2, 0.1}, 50));        // too few epsilons
    CHECK_THROWS(entropy_profile(r, {0.1, 0.1, 0.05}, 50));  // not strictly descending
    CHECK_THROWS(entropy_profile(r, {0.2, 0.1, 0.05}, 50, DeltaRule::fixed(0.04)));
}

TEST_CASE("entropy numbers: circle trichotomy") {
    // Rotation -> (0, 0); Lyapunov stable.
    auto rn = entropy_numbers(rotation(kGolden), {0.2, 0.1, 0.05}, 150);
    REQUIRE(rn.omega_resolved);
    REQUIRE(rn.full_resolved);
    CHECK(rn.omega.to_string() == "0");
    CHECK(rn.full.to_string() == "0");

    // Morse-Smale -> (0, [n]); not Lyapunov stable, has periodic points.
    auto mn = entropy_numbers(morse_smale_circle(0.05), {0.2, 0.1, 0.05}, 200);
    REQUIRE(mn.omega_resolved);
    REQUIRE(mn.full_resolved);
    CHECK(mn.omega.to_string() == "0");
    CHECK(mn.full.poly_deg == 1.0);
    CHECK(mn.full.exp_rate == 0.0);
    CHECK(mn.full.log_deg == 0.0);

    // Denjoy-type -> ([n], [n]).
    auto dn = entropy_numbers(denjoy(kGolden, 2.0, 2000), {0.1, 0.08, 0.06}, 200);
    REQUIRE(dn.omega_resolved);
    REQUIRE(dn.full_resolved);
    CHECK(dn.omega.poly_deg == 1.0);
    CHECK(dn.full.poly_deg == 1.0);
}

TEST_CASE("entropy numbers: omega never exceeds full") {
    std::vector<DynamicalSystemSpec> cat;
    cat.push_back(rotation(kGolden));
    cat.push_back(morse_smale_circle(0.05));
    cat.push_back(twist_annulus(0.0, 1.0));
    for (const auto& spec : cat) {
        auto nn = entropy_numbers(spec, {0.4, 0.2, 0.1}, 80);
        if (nn.omega_resolved && nn.full_resolved)
            CHECK(compare_symbolic(nn.omega, nn.full) != OrderRelation::Greater);
    }
}

TEST_CASE("entropy numbers require an omega sampler") {
    auto spec = rotation(kGolden);
    spec.omega_sampler = nullptr;
    CHECK_THROWS(entropy_numbers(spec, {0.2, 0.1, 0.05}, 50));
}

TEST_CASE("backward-orbit law: wandering points force at least linear growth") {
    // Catalog systems with verified wandering sample points report a full
    // class at or above [n].
    const SymbolicOrder linear = SymbolicOrder::polynomial(1);

    auto ms = morse_smale_circle(0.05);
    // Verify a wandering point: x=0.25 never returns near itself.
    Point x{0.25};
    double closest = 1.0;
    Point y = x;
    for (int t = 0; t < 400; ++t) {
        y = ms.step(y);
        closest = std::min(closest, ms.metric(x, y));
    }
    REQUIRE(closest >= 0.0499);
    auto mn = entropy_numbers(ms, {0.2, 0.1, 0.05}, 200);
    CHECK(compare_symbolic(mn.full, linear) != OrderRelation::Less);

    auto dj = denjoy(kGolden, 2.0, 1500);
    auto dn = entropy_numbers(dj, {0.1, 0.08, 0.06}, 150);
    CHECK(compare_symbolic(dn.full, linear) != OrderRelation::Less);
}

TEST_CASE("itinerary bound caps the exponential rate") {
    // No fitted class exceeds the exponential family, and the fitted rate is
    // at most log(cover cardinality) at that eps.
    auto spec = full_shift(2, 12);
    auto p = entropy_profile(spec, {0.25, 0.125, 0.0625}, 8, DeltaRule::fixed(std::pow(2.0, -12)));
    REQUIRE(p.stabilized);
    CHECK(compare_symbolic(*p.stable_class, SymbolicOrder::abstract(Sentinel::SupE)) ==
          OrderRelation::Less);
    // Cover by cylinders on enough coordinates to have diameter <= eps/2:
    // cardinality k^m with m = ceil(log2(2/eps)); the rate never exceeds its log.
    const double eps = 0.0625;
    const double m = std::ceil(std::log2(2.0 / eps));
    CHECK(p.h <= std::log(std::pow(2.0, m)) + 1e-9);
}

TEST_CASE("profile json shape") {
    auto p = entropy_profile(rotation(kGolden), {0.2, 0.1, 0.05}, 40);
    auto j = p.to_json();
    CHECK(j["system"] == "rotation");
    CHECK(j["curves"].size() == 3);
    CHECK(j["stabilized"] == true);
    CHECK(j.contains("h_pol"));
}
