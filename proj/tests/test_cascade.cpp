#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oge/cascade.hpp"
#include "oge/estimators.hpp"

#include <cmath>

using namespace oge;

namespace {
constexpr double kGolden = 0.6180339887498949;

std::vector<BigInt> ones(int n) { return std::vector<BigInt>(n, 1); }
}  // namespace

TEST_CASE("convergents: golden, silver, single quotient") {
    auto g = convergents(ones(6));
    std::vector<long long> expect = {1, 1, 2, 3, 5, 8, 13};
    for (int k = 0; k <= 6; ++k) CHECK(g[k].q == expect[k]);

    auto s = convergents(std::vector<BigInt>(4, 2));
    CHECK(s[1].q == 2);
    CHECK(s[2].q == 5);
    CHECK(s[3].q == 12);
    CHECK(s[4].q == 29);

    auto one = convergents({BigInt(7)});
    CHECK(one[1].q == 7);
    CHECK(one[1].p == 1);

    CHECK_THROWS(convergents({BigInt(0)}));
}

TEST_CASE("convergents: approximation brackets hold") {
    for (auto quotients : {ones(10), std::vector<BigInt>{1, 2, 3, 4, 5, 6},
                           std::vector<BigInt>{3, 7, 15, 1, 292}}) {
        auto conv = convergents(quotients);
        for (std::size_t k = 1; k + 1 < conv.size(); ++k) CHECK(conv[k].bracket_ok);
    }
}

TEST_CASE("weyl_sum: empty sum and the two derivative bounds") {
    CHECK(weyl_sum(0.1, 5, kGolden, 0, 0.3, true) == 0.0);
    CHECK(weyl_sum(0.1, 5, kGolden, 0, 0.3, false) == 0.0);

    // b = 0.1, q = 5 with the golden rotation: ||5 alpha|| from the next
    // golden denominator 8 brackets the uniform bound.
    const double b = 0.1, q = 5.0;
    const double dist = std::fabs(5.0 * kGolden - std::round(5.0 * kGolden));
    const double uniform = 4.0 * std::numbers::pi * b * q / dist;
    const double n_lin = std::sqrt(8.0) / (std::numbers::pi * std::sqrt(2.0 * b * q));
    double worst_u = 0, worst_l = 0;
    for (int ix = 0; ix < 10000; ++ix) {
        const double x = ix / 10000.0;
        for (std::size_t n : {1ul, 2ul, 3ul, 10ul, 100ul, 1000ul}) {
            const double s = std::fabs(weyl_sum(b, q, kGolden, n, x, true));
            worst_u = std::max(worst_u, s / uniform);
            if (static_cast<double>(n) <= n_lin)
                worst_l = std::max(worst_l, s / (2.0 * std::numbers::pi * b * q * n + 1.0));
        }
    }
    CHECK(worst_u <= 1.0);
    CHECK(worst_l <= 1.0);
}

TEST_CASE("build_cascade: log2 target, 5 stages, certificate passes") {
    auto params = build_cascade(TargetSpec::log2_shifted(), 5);
    CHECK(params.certificate.all_pass);
    CHECK(params.partial_quotients.size() == 6);
    CHECK(params.q.size() == 7);

    // The recurrence is exact by construction.
    for (int k = 1; k <= 5; ++k)
        CHECK(params.q[k + 1] == params.partial_quotients[k] * params.q[k] + params.q[k - 1]);

    // Envelope below the target at dense sample points of every piece.
    const TargetSpec target = TargetSpec::log2_shifted();
    for (int k = 1; k <= 5; ++k) {
        const BigInt lo = k == 1 ? BigInt(1) : params.cutpoints[k - 2];
        const BigInt hi = params.cutpoints[k - 1];
        for (int s = 0; s <= 8; ++s) {
            BigInt n = lo + (hi - lo) * s / 8;
            if (n < 1) n = 1;
            CHECK(envelope_eval(params, n) <= target.eval(n) + 1e-9);
        }
    }

    // Envelope conventions: e(1) = C_1 + D_1 with D_1 = 0; e(m_k) = D_{k+1};
    // non-decreasing on a sample ladder.
    CHECK(params.offsets[0] == 0);
    const double e1 = envelope_eval(params, 1);
    const double c1 = static_cast<double>(numerator(params.slopes[0])) /
                      static_cast<double>(denominator(params.slopes[0]));
    CHECK(e1 == doctest::Approx(c1).epsilon(1e-12));
    double prev = 0.0;
    for (int k = 1; k <= 5; ++k) {
        const double at_cut = envelope_eval(params, params.cutpoints[k - 1]);
        const BigInt before = params.cutpoints[k - 1] - 1;
        if (before >= 1) CHECK(envelope_eval(params, before) <= at_cut + 1e-12);
        CHECK(at_cut >= prev);
        prev = at_cut;
    }
    CHECK_THROWS(envelope_eval(params, params.cutpoints.back() + 1));

    // Slopes strictly decrease.
    for (int k = 1; k < 5; ++k) CHECK(params.slopes[k - 1] > params.slopes[k]);
}

TEST_CASE("build_cascade: quarter-power target, 6 stages") {
    auto params = build_cascade(TargetSpec::quarter_power(), 6);
    CHECK(params.certificate.all_pass);
    const TargetSpec target = TargetSpec::quarter_power();
    for (int k = 1; k <= 6; ++k) {
        const BigInt lo = k == 1 ? BigInt(1) : params.cutpoints[k - 2];
        const BigInt hi = params.cutpoints[k - 1];
        for (int s = 0; s <= 6; ++s) {
            BigInt n = lo + (hi - lo) * s / 6;
            if (n < 1) n = 1;
            CHECK(envelope_eval(params, n) <= target.eval(n) + 1e-9);
        }
    }
}

TEST_CASE("build_cascade rejects bounded targets and bad arguments") {
    CHECK_THROWS(build_cascade(TargetSpec::constant_seq(5.0), 5));
    CHECK_THROWS(build_cascade(TargetSpec::log2_shifted(), 1));
    CHECK_THROWS(build_cascade(TargetSpec::log2_shifted(), 5, 0.3));
}

TEST_CASE("verify_bounds catches perturbed parameters") {
    auto params = build_cascade(TargetSpec::log2_shifted(), 5);

    // Amplitude blown up by 10^3: the envelope caps or the summability break.
    auto tampered = params;
    tampered.amplitudes[1] *= 1000;
    auto cert = verify_bounds(tampered, 256, params.eps);
    CHECK(!cert.all_pass);
    bool envelope_family_failed = false;
    for (const auto& it : cert.items)
        if (!it.pass &&
            (it.id == "summable_c1" || it.id == "margin_prev_cut" || it.id == "margin_new_segment" ||
             it.id == "offset_below_target" || it.id == "tail_c1_proximity" ||
             it.id == "params_consistent" || it.id == "envelope_below_target"))
            envelope_family_failed = true;
    CHECK(envelope_family_failed);

    // Broken recurrence: the convergent invariant fails exactly.
    auto broken = params;
    broken.q[3] /= 2;
    auto cert2 = verify_bounds(broken, 256, params.eps);
    bool recurrence_failed = false;
    for (const auto& it : cert2.items)
        if (!it.pass && it.id == "convergent_recurrence") recurrence_failed = true;
    CHECK(recurrence_failed);
}

TEST_CASE("separation witness certifies q_k points for k <= 3") {
    for (auto params : {build_cascade(TargetSpec::log2_shifted(), 5),
                        build_cascade(TargetSpec::quarter_power(), 6)}) {
        int witnessed = 0;
        for (const auto& it : params.certificate.items)
            if (it.id == "separation_witness") {
                CHECK(it.pass);
                CHECK(it.lhs >= it.rhs);
                ++witnessed;
            }
        CHECK(witnessed == 3);
    }
}

TEST_CASE("params serialize and round trip with exact integers") {
    auto params = build_cascade(TargetSpec::log2_shifted(), 5);
    auto j = params.to_json();
    CHECK(j["q"].back().is_string());  // exact integers as strings
    auto back = CascadeParams::from_json(j);
    CHECK(back.q == params.q);
    CHECK(back.amplitudes == params.amplitudes);
    CHECK(back.cutpoints == params.cutpoints);
    auto cert = verify_bounds(back, 256, back.eps);
    CHECK(cert.all_pass);
}

TEST_CASE("cascade system: growth curve sits below the scaled envelope") {
    auto params = build_cascade(TargetSpec::log2_shifted(), 5);
    auto spec = params.to_system();

    // The fiber coordinate never separates faster than the derivative sums
    // allow: counts at scale eps stay within (envelope + margin)/eps^2 with
    // the base-direction packing folded into the constant.
    const double eps = 0.05;
    const std::size_t horizon =
        static_cast<std::size_t>(std::min<double>(300.0, params.cutpoints.back().convert_to<double>()));
    auto curve = growth_curve(spec, eps, horizon, eps / 4.01);
    for (std::size_t n : {horizon / 4, horizon / 2, horizon}) {
        if (n < 1) continue;
        const double env = envelope_eval(params, BigInt(static_cast<long long>(n)));
        CHECK(curve.value(n) * eps * eps <= 16.0 * (env + 2.0));
    }

    // Never classified as the zero class once the witness passes: the curve
    // must keep growing across the window.
    CHECK(curve.value(horizon) > 4.0 * curve.value(std::max<std::size_t>(1, horizon / 8)));
}

TEST_CASE("cascade orbit visits every cell of a 20x20 torus grid") {
    auto params = build_cascade(TargetSpec::log2_shifted(), 5);
    auto spec = params.to_system();
    std::vector<char> visited(400, 0);
    std::size_t count = 0;
    Point x{0.0, 0.0};
    for (int t = 0; t < 300000 && count < 400; ++t) {
        x = spec.step(x);
        const int cx = std::min(19, static_cast<int>(x[0] * 20.0));
        const int cy = std::min(19, static_cast<int>(x[1] * 20.0));
        if (!visited[cx * 20 + cy]) {
            visited[cx * 20 + cy] = 1;
            ++count;
        }
    }
    CHECK(count == 400);
}
