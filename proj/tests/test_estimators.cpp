#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oge/estimators.hpp"

#include <cmath>
#include <random>

using namespace oge;

namespace {
constexpr double kGolden = 0.6180339887498949;
}

TEST_CASE("dynamical distance basics") {
    auto shift = full_shift(2, 16);
    auto pts = sample_space(shift, std::pow(2.0, -6));
    OrbitTable table(shift, pts, 10);

    // d_n(x,x) = 0 for all n.
    CHECK(dynamical_distance(table, 3, 3, 7).value == 0.0);

    // Words differing first at coordinate 5: d_5 = 1 (disagreement shifted
    // to coordinate 0).
    Point x(16, 1.0), y(16, 1.0);
    y[5] = 2.0;
    OrbitTable t2(shift, {x, y}, 8);
    CHECK(dynamical_distance(t2, 0, 1, 5).value == doctest::Approx(1.0));
    CHECK(dynamical_distance(t2, 0, 1, 0).value == doctest::Approx(std::pow(2.0, -5)));

    // Monotone in n.
    double prev = 0;
    for (std::size_t n = 0; n <= 8; ++n) {
        const double d = dynamical_distance(t2, 0, 1, n).value;
        CHECK(d >= prev);
        prev = d;
    }

    // Early exit reports a lower bound.
    auto r = dynamical_distance(t2, 0, 1, 8, 0.01);
    CHECK(r.lower_bound);
    CHECK(r.value > 0.01);

    // Rotation: isometry, d_n = d for all n.
    auto rot = rotation(kGolden);
    OrbitTable rt(rot, sample_space(rot, 0.05), 50);
    const double d0 = dynamical_distance(rt, 2, 9, 0).value;
    CHECK(dynamical_distance(rt, 2, 9, 50).value == doctest::Approx(d0));
}

TEST_CASE("greedy separated on rotation: arc packing") {
    auto rot = rotation(kGolden);
    OrbitTable table(rot, sample_space(rot, 0.05), 60);
    for (std::size_t n : {1ul, 10ul, 60ul}) {
        auto res = greedy_separated(table, n, 0.25);
        // Strict separation: 3 arcs of length > 0.25 fit on the circle.
        CHECK(res.count == 3);
        CHECK(res.count == greedy_separated(table, n, 0.26).count);
    }
}

TEST_CASE("greedy separated on the shift matches the word count") {
    auto shift = full_shift(2, 16);
    OrbitTable table(shift, sample_space(shift, std::pow(2.0, -10)), 8);
    // eps = 2^-3: strictly separated iff some disagreement sits within the
    // first n + 3 coordinates (d_n = 2^{-(j-n)} > 2^-3 iff j < n+3).
    auto res = greedy_separated(table, 4, std::pow(2.0, -3));
    CHECK(res.count == 128);  // 2^(4+3)

    // Oracle: exhaustive pairwise check that the kept set is separated and
    // maximal among the samples.
    for (std::size_t a = 0; a < res.kept.size(); ++a)
        for (std::size_t b = a + 1; b < res.kept.size(); ++b) {
            const double d = dynamical_distance(table, res.kept[a], res.kept[b], 4).value;
            CHECK(d > std::pow(2.0, -3));
        }
    // Law: counts scale like k^(n + const), the constant set by the metric
    // convention.
    auto res5 = greedy_separated(table, 5, std::pow(2.0, -3));
    CHECK(res5.count == 256);

    // Ultrametric: closed dynamical balls coincide with the separation
    // classes, so the greedy cover is exactly as large.
    auto span = greedy_spanning(table, 4, std::pow(2.0, -3));
    CHECK(span.count == 128);
    CHECK(verify_spanning(table, span.kept, 4, std::pow(2.0, -3)));
}

TEST_CASE("eps larger than the diameter keeps one point") {
    auto rot = rotation(kGolden);
    OrbitTable table(rot, sample_space(rot, 0.1), 4);
    CHECK(greedy_separated(table, 1, 0.75).count == 1);
}

TEST_CASE("greedy spanning on rotation covers with few arcs") {
    auto rot = rotation(kGolden);
    OrbitTable table(rot, sample_space(rot, 0.05), 500);
    for (std::size_t n : {1ul, 100ul, 500ul}) {
        auto res = greedy_spanning(table, n, 0.25);
        CHECK(res.count <= 8);  // cover of the circle by arcs, greedy factor <= 2
        CHECK(verify_spanning(table, res.kept, n, 0.25));
    }
    OrbitTable single(rot, {Point{0.5}}, 4);
    CHECK(greedy_spanning(single, 2, 0.1).count == 1);
}

TEST_CASE("sandwich: spanning <= separated <= spanning at eps/2 (with greedy slack)") {
    std::vector<DynamicalSystemSpec> cat;
    cat.push_back(rotation(kGolden));
    cat.push_back(morse_smale_circle(0.05, 64));
    cat.push_back(twist_annulus(0.0, 1.0));
    for (const auto& spec : cat) {
        const double eps = 0.2;
        OrbitTable table(spec, sample_space(spec, eps / 8.01), 50);
        const double lnP = std::log(static_cast<double>(table.size())) + 1.0;
        for (std::size_t n : {5ul, 25ul, 50ul}) {
            const auto sep = greedy_separated(table, n, eps).count;
            const auto span = greedy_spanning(table, n, eps).count;
            const auto span_half = greedy_spanning(table, n, eps / 2).count;
            CHECK(static_cast<double>(span) <= lnP * static_cast<double>(sep));
            CHECK(static_cast<double>(sep) <= lnP * static_cast<double>(span_half));
        }
    }
}

TEST_CASE("maximal separated set spans the sample") {
    std::vector<DynamicalSystemSpec> cat;
    cat.push_back(rotation(kGolden));
    cat.push_back(morse_smale_circle(0.05, 64));
    cat.push_back(full_shift(2, 12));
    cat.push_back(twist_annulus(0.0, 1.0));
    for (const auto& spec : cat) {
        const double eps = spec.name == "full_shift" ? std::pow(2.0, -3) : 0.2;
        OrbitTable table(spec, sample_space(spec, eps / 4.01), 30);
        for (std::size_t n : {3ul, 30ul}) {
            auto res = greedy_separated(table, n, eps);
            CHECK(verify_spanning(table, res.kept, n, eps));
        }
    }
}

TEST_CASE("growth_curve: rotation constant, shift exponential, monotone in eps") {
    auto rot = rotation(kGolden);
    auto c = growth_curve(rot, 0.1, 100, 0.02);
    CHECK(c.value(1) == c.value(100));  // isometry: d_n = d

    CHECK_THROWS(growth_curve(rot, 0.1, 50, 0.05));  // delta > eps/4 rejected

    auto shift = full_shift(2, 14);
    auto cs = growth_curve(shift, std::pow(2.0, -3), 10, std::pow(2.0, -14));
    CHECK(project_onto_family(cs, FamilyBase::Exponential) == doctest::Approx(std::log(2.0)).epsilon(0.05));

    // Monotone non-increasing in eps, pointwise (same delta).
    auto c1 = growth_curve(rot, 0.08, 64, 0.02);
    auto c2 = growth_curve(rot, 0.16, 64, 0.02);
    for (std::size_t n = 1; n <= 64; ++n) CHECK(c1.value(n) >= c2.value(n));
}

TEST_CASE("growth_curve: morse-smale is linear-class") {
    auto ms = morse_smale_circle(0.05);
    auto c = growth_curve(ms, 0.05, 200, 0.05 / 4.01);
    const double deg = project_onto_family(c, FamilyBase::Polynomial);
    CHECK(deg > 0.8);
    CHECK(deg < 1.2);
}

TEST_CASE("itinerary counts dominate separated counts") {
    auto ms = morse_smale_circle(0.05, 64);
    const double eps = 0.1;
    auto pts = sample_space(ms, eps / 4.01);
    OrbitTable table(ms, pts, 40, /*force_orbits=*/true);

    // Cover by arcs of radius eps/2 centered on a eps/2-grid.
    std::vector<CoverBall> part;
    const int k = static_cast<int>(std::ceil(2.0 / eps));
    for (int i = 0; i < k; ++i) part.push_back({{static_cast<double>(i) / k}, eps / 2});

    for (std::size_t n : {5ul, 20ul, 40ul}) {
        const auto itin = itinerary_upper_bound(table, part, n);
        const auto sep = greedy_separated(table, n, eps).count;
        CHECK(itin >= sep);
        CHECK(itin <= 4 * static_cast<std::size_t>(k) * n + 4ul * k);  // circle itinerary bound
    }

    // Identity map: any partition, any n -> #realized cells.
    auto rot0 = rotation(kGolden);
    DynamicalSystemSpec ident = rot0;
    ident.step = [](const Point& p) { return p; };
    ident.analytic_dn = nullptr;
    OrbitTable it(ident, sample_space(ident, 0.05), 10, true);
    CHECK(itinerary_upper_bound(it, part, 7) <= part.size());

    // Non-covering partition rejected.
    std::vector<CoverBall> holes = {{{0.0}, 0.01}};
    CHECK_THROWS(itinerary_upper_bound(table, holes, 3));
}

TEST_CASE("itinerary count on the shift equals 2^n") {
    auto shift = full_shift(2, 12);
    auto pts = sample_space(shift, std::pow(2.0, -8));
    OrbitTable table(shift, pts, 6, true);
    // Cylinder partition on coordinate 0: two balls of radius 1/2 around
    // words starting with 1 and 2.
    std::vector<CoverBall> part;
    part.push_back({Point(12, 1.0), 0.5});
    Point w2(12, 1.0);
    w2[0] = 2.0;
    part.push_back({w2, 0.5});
    for (std::size_t n : {2ul, 4ul, 6ul})
        CHECK(itinerary_upper_bound(table, part, n) == (1ul << n));
}

TEST_CASE("open cover growth: rotation bounded, shift exponential, sandwich") {
    auto rot = rotation(kGolden);
    std::vector<CoverBall> arcs;
    for (int i = 0; i < 3; ++i) arcs.push_back({{i / 3.0}, 0.2});  // 3 overlapping arcs
    auto c = open_cover_growth(rot, arcs, 40, 0.02);
    // Lyapunov stable: refinement counts stay in the bounded class.
    CHECK(c.value(40) <= 4.0 * c.value(5));

    auto shift = full_shift(2, 12);
    std::vector<CoverBall> cyl;
    cyl.push_back({Point(12, 1.0), 0.5});
    Point w2(12, 1.0);
    w2[0] = 2.0;
    cyl.push_back({w2, 0.5});
    auto cs = open_cover_growth(shift, cyl, 6, std::pow(2.0, -8));
    for (std::size_t n : {2ul, 4ul, 6ul}) CHECK(cs.value(n) == doctest::Approx(std::pow(2.0, n)));

    // Morse-Smale: 8-arc cover gives a linear-class curve, consistent with
    // the ball-based curve within the cover/ball sandwich.
    auto ms = morse_smale_circle(0.05, 48);
    std::vector<CoverBall> arcs8;
    for (int i = 0; i < 8; ++i) arcs8.push_back({{i / 8.0}, 0.1});
    auto cm = open_cover_growth(ms, arcs8, 60, 0.03);
    const double deg = project_onto_family(cm, FamilyBase::Polynomial);
    CHECK(deg > 0.5);
    CHECK(deg < 1.5);
}

TEST_CASE("bucket-accelerated greedy agrees with brute force") {
    auto tw = twist_annulus(0.0, 1.0);
    auto pts = sample_space(tw, 0.05);
    OrbitTable fast(tw, pts, 40);

    DynamicalSystemSpec slow = tw;
    slow.max_metric = false;  // disable bucket path
    slow.analytic_dn = nullptr;
    slow.dn_coord_window = nullptr;
    OrbitTable brute(slow, pts, 40);

    // Off-grid eps keeps distance comparisons away from exact ties, where
    // the closed-form and iterated paths may round differently.
    const double eps = 0.2031;
    for (std::size_t n : {1ul, 7ul, 23ul, 40ul}) {
        auto a = greedy_separated(fast, n, eps);
        auto b = greedy_separated(brute, n, eps);
        REQUIRE(a.count == b.count);
        CHECK(a.kept == b.kept);
        auto sa = greedy_spanning(fast, n, eps);
        auto sb = greedy_spanning(brute, n, eps);
        REQUIRE(sa.count == sb.count);
        CHECK(sa.kept == sb.kept);
    }
}
