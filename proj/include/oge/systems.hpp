#pragma once

// Sampled metric dynamical systems: a uniform description of the catalog
// (full shifts, circle maps, annulus twists, torus automorphisms,
// cylindrical cascades) as step/metric/sampler triples plus the metadata
// the estimators use for acceleration.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace oge {

using Point = std::vector<double>;

struct DynamicalSystemSpec {
    std::string name;
    int dim = 1;
    nlohmann::json params;  // echoed into every result file

    std::function<Point(const Point&)> step;
    std::function<Point(const Point&)> inverse;  // empty when not invertible
    std::function<double(const Point&, const Point&)> metric;
    std::function<std::vector<Point>(double)> sampler;
    std::function<std::vector<Point>(double)> omega_sampler;  // empty when not supplied

    // Estimator acceleration metadata.
    // Period of each coordinate (0 = line segment, p > 0 = circle of length p).
    std::vector<double> coord_periods;
    // True when metric(x,y) >= per-coordinate distance for every coordinate
    // (max metrics); enables spatial-bucket pruning of candidate pairs.
    bool max_metric = false;
    // Exact closed form for the dynamical distance d_n, when one exists.
    std::function<double(const Point&, const Point&, std::size_t)> analytic_dn;
    // Per-coordinate width w(c) such that d_n(x,y) <= eps implies the
    // c-coordinates differ by at most w(c). Sharpens bucket pruning.
    std::function<std::vector<double>(std::size_t, double)> dn_coord_window;
    // For ultrametric systems: key with d_n(x,y) < eps iff keys are equal.
    std::function<std::string(const Point&, std::size_t, double)> separation_key;

    bool invertible() const { return static_cast<bool>(inverse); }
};

// --- catalog constructors -------------------------------------------------

/// Full shift on k symbols, truncated to words of length word_len.
/// Metric 2^{-j} with j the first disagreeing coordinate.
DynamicalSystemSpec full_shift(int k, int word_len);

/// Rigid circle rotation by alpha.
DynamicalSystemSpec rotation(double alpha);

/// x + amplitude*sin(2*pi*x) on the circle; fixed points at 0 (repelling)
/// and 1/2 (attracting). amplitude must lie in (0, 1/(2*pi)).
/// ladder_depth controls the geometric sample refinement near the repeller.
DynamicalSystemSpec morse_smale_circle(double amplitude, int ladder_depth = 256);

/// Piecewise-linear circle homeomorphism with wandering intervals of length
/// c/(|j|+2)^tail_exponent inserted along the rotation orbit of 0, |j| <= depth.
/// Separated counts are trusted only for n <= depth/10.
DynamicalSystemSpec denjoy(double alpha, double tail_exponent, int depth);

/// Annulus twist (s,t) -> (s + alpha(t), t) with the linear monotone profile
/// alpha(t) = alpha0 + (alpha1 - alpha0) t. t_refine multiplies the sampler's
/// vertical resolution (the grid stays delta-dense).
DynamicalSystemSpec twist_annulus(double alpha0, double alpha1, int t_refine = 1);

/// Torus automorphism induced by an integer 2x2 matrix with |det| = 1.
DynamicalSystemSpec torus_linear(const std::array<std::array<long long, 2>, 2>& A);

/// One finished stage of a cylindrical-cascade potential.
struct CascadeStage {
    double amplitude = 0.0;  // b_k
    double frequency = 0.0;  // q_k (exact when representable)
    double phase_step = 0.0; // frac(q_k * alpha)
};

/// Cylindrical cascade projected to the 2-torus:
/// (x, y) -> (x + alpha, y + sum_k b_k cos(2 pi q_k (x + alpha))).
DynamicalSystemSpec cascade_system(const std::vector<CascadeStage>& stages, double alpha,
                                   const nlohmann::json& params = {});

/// Catalog dispatch by name + JSON parameter object (CLI entry).
DynamicalSystemSpec make_system(const std::string& kind, const nlohmann::json& params);

// --- derived systems ------------------------------------------------------

/// The p-th iterate f^p as a system.
DynamicalSystemSpec power_system(const DynamicalSystemSpec& spec, int p);

/// Conjugate h o f o h^{-1} on the same model space.
DynamicalSystemSpec conjugate_system(const DynamicalSystemSpec& spec,
                                     std::function<Point(const Point&)> h,
                                     std::function<Point(const Point&)> h_inv);

/// Same dynamics, sampler replaced by a fixed finite subset.
DynamicalSystemSpec restricted_system(const DynamicalSystemSpec& spec, std::vector<Point> samples);

// --- operations -----------------------------------------------------------

/// n-fold composition of step; step_n(spec, x, 0) = x.
Point step_n(const DynamicalSystemSpec& spec, Point x, std::size_t n);

/// Deterministic delta-dense sample of the model space. Throws when the
/// estimated footprint exceeds the memory budget (OGE_MEM_BUDGET bytes),
/// naming the minimal admissible delta.
std::vector<Point> sample_space(const DynamicalSystemSpec& spec, double delta);

/// Displacement-average rotation number estimate for circle systems.
double rotation_number_estimate(const DynamicalSystemSpec& spec, double x0, std::size_t n);

double memory_budget_bytes();

}  // namespace oge
