#pragma once

// Raw growth-curve estimators: orbit memoization, dynamical distances with
// early exit, greedy separated/spanning sets, itinerary counts, and
// open-cover refinement counts.

#include <cstdint>
#include <limits>
#include <vector>

#include "oge/growth.hpp"
#include "oge/systems.hpp"

namespace oge {

/// Memoized forward orbits of a fixed sample set.
/// orbits[i][j+1] = step(orbits[i][j]); built once, then immutable.
class OrbitTable {
public:
    /// Orbits are memoized unless the spec carries a closed-form d_n;
    /// force_orbits overrides (itinerary and cover counts walk raw orbits).
    OrbitTable(const DynamicalSystemSpec& spec, std::vector<Point> samples, std::size_t n_max,
               bool force_orbits = false);

    const DynamicalSystemSpec& spec() const { return *spec_; }
    std::size_t size() const { return points_.size(); }
    std::size_t n_max() const { return n_max_; }
    const std::vector<Point>& points() const { return points_; }
    bool has_orbits() const { return !data_.empty(); }

    /// Pointer to the dim coordinates of orbit entry (i, t).
    const double* orbit_at(std::size_t i, std::size_t t) const {
        return data_.data() + (i * (n_max_ + 1) + t) * dim_;
    }
    int dim() const { return dim_; }

private:
    const DynamicalSystemSpec* spec_;
    std::vector<Point> points_;
    std::size_t n_max_;
    int dim_;
    std::vector<double> data_;
};

struct DistResult {
    double value = 0.0;
    bool lower_bound = false;  // true when early exit fired: true d_n >= value
};

/// d_n(x_i, x_j) = max over 0..n of the metric along the orbits. Early exit
/// reports a lower bound once the caller's threshold is exceeded.
DistResult dynamical_distance(const OrbitTable& table, std::size_t i, std::size_t j, std::size_t n,
                              double early_exit_at = std::numeric_limits<double>::infinity());

struct GreedyResult {
    std::vector<std::size_t> kept;
    std::size_t count = 0;
};

/// Greedy maximal (n,eps)-separated subset of the samples (closed-ball
/// convention: kept points are pairwise d_n > eps apart), scanned in fixed
/// ascending index order. The output is maximal, hence simultaneously a
/// lower-bound certificate for s_{f,eps}(n) and an (n,eps)-spanning set of
/// the sample. Deterministic.
GreedyResult greedy_separated(const OrbitTable& table, std::size_t n, double eps);

/// Greedy set cover by dynamical eps-balls (largest uncovered gain first,
/// ties to the lowest index): an upper-bound estimate of g_{f,eps}(n) over
/// the sample, within the usual ln|samples| greedy factor. Deterministic.
GreedyResult greedy_spanning(const OrbitTable& table, std::size_t n, double eps);

/// Checks that the dynamical eps-balls around `kept` cover every sample.
bool verify_spanning(const OrbitTable& table, const std::vector<std::size_t>& kept, std::size_t n,
                     double eps);

/// n -> greedy_separated cardinality for n = 1..n_max, monotone by running
/// max. Requires delta <= eps/4 so sampling out-resolves the separation scale.
GrowthSequence growth_curve(const DynamicalSystemSpec& spec, double eps, std::size_t n_max,
                            double delta);

/// Same, on a caller-supplied sample set (restricted/nonwandering subsets).
GrowthSequence growth_curve_on(const DynamicalSystemSpec& spec, std::vector<Point> samples,
                               double eps, std::size_t n_max);

/// A metric ball used as a partition/cover element.
struct CoverBall {
    Point center;
    double radius = 0.0;
};

/// Number of distinct length-n itineraries of sampled orbits through a
/// cover by metric balls (first containing ball per step). Upper bound for
/// the separated count at matching eps. Throws if some orbit point is
/// uncovered.
std::size_t itinerary_upper_bound(const OrbitTable& table, const std::vector<CoverBall>& partition,
                                  std::size_t n);

/// Greedy minimal-subcover cardinality of the n-th refinement of the cover,
/// per n = 1..n_max, evaluated on the sample set.
GrowthSequence open_cover_growth(const DynamicalSystemSpec& spec, const std::vector<CoverBall>& cover,
                                 std::size_t n_max, double delta);

}  // namespace oge
